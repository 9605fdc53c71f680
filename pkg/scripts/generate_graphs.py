#!/usr/bin/env python3
"""
Generate the standard graph files used in the README examples.

Writes theta, loop, K4 and K5 graphs plus one inadmissible graph as .sg
files in the graphs/ directory at the project root.
"""

from pathlib import Path

from spinnet.graph import (
    Edge,
    LabeledGraph,
    complete_graph,
    k5_graph,
    loop_graph,
    serialize_graph,
    theta_graph,
)


def standard_graphs() -> dict:
    """File name -> graph."""
    return {
        "theta.sg": theta_graph(2, 2, 2),
        "loop2.sg": loop_graph(2),
        "k4_spin2.sg": complete_graph(4, 2),
        "k5_spin2.sg": k5_graph(2),
        # spin-3 edge ending on a monovalent vertex
        "bad.sg": LabeledGraph(
            ("a", "b", "c", "d"),
            (Edge("a", "b", 3), Edge("b", "c", 1), Edge("b", "d", 2)),
        ),
    }


def main():
    """Write every standard graph."""
    script_dir = Path(__file__).parent
    output_dir = script_dir.parent / "graphs"
    output_dir.mkdir(parents=True, exist_ok=True)

    for name, graph in standard_graphs().items():
        path = output_dir / name
        path.write_text(serialize_graph(graph), encoding="utf-8")
        print(f"Wrote {path}: {len(graph.vertices)} vertices, {len(graph.edges)} edges")


if __name__ == "__main__":
    main()
