"""
Command-line front end.

Subcommands: check, simplify, eval, expand and geometry. Every command writes
JSON (default) or an aligned text table to stdout. Failures print one
``error: <category>: <reason>`` line on stderr and map onto exit codes:
1 for usage and configuration errors, 2 for input and graph errors, 3 for
computation errors.
"""

import argparse
import hashlib
import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from .config import SpinNetConfig
from .errors import (
    ConfigurationError,
    DimensionCapError,
    EvaluationError,
    GeometryError,
    GraphParseError,
    GraphStructureError,
    ReductionBudgetError,
    SamplingError,
    SpinNetError,
)
from .exact import eval_relativistic_exact
from .geometry import GeometryStatus, sample_geometries
from .graph import (
    LabeledGraph,
    check_admissibility,
    expand_vertex,
    parse_graph,
    serialize_graph,
    simplify,
)
from .montecarlo import mc_evaluate
from .projector import contract_evaluate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_COMPUTATION = 3

DEFAULT_SAMPLES = 100_000

_ERROR_CATEGORIES: Tuple[Tuple[type, str, int], ...] = (
    (ConfigurationError, "config", EXIT_USAGE),
    (SamplingError, "sampling", EXIT_USAGE),
    (GraphParseError, "parse", EXIT_INPUT),
    (GraphStructureError, "structure", EXIT_INPUT),
    (DimensionCapError, "dimension-cap", EXIT_COMPUTATION),
    (ReductionBudgetError, "budget", EXIT_COMPUTATION),
    (EvaluationError, "evaluation", EXIT_COMPUTATION),
    (GeometryError, "geometry", EXIT_COMPUTATION),
)

_GROUP_RE = re.compile(r"\(([^()]*)\)")


class UsageError(Exception):
    """Bad command-line arguments."""
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def rational_value(value: Fraction) -> Dict[str, str]:
    return {"kind": "rational", "num": str(value.numerator), "den": str(value.denominator)}


def float_value(value: float, stderr: float = 0.0, samples: int = 0, seed: Optional[int] = None) -> Dict[str, Any]:
    return {"kind": "float", "value": value, "stderr": stderr, "samples": samples, "seed": seed}


def graph_digest(graph: LabeledGraph) -> str:
    """Stable hash of the canonical serialization."""
    return "sha256:" + hashlib.sha256(serialize_graph(graph).encode("utf-8")).hexdigest()


def parse_split(text: str) -> Tuple[List[int], List[int]]:
    """Parse "(0 1)(2 3)" into two groups of edge indices."""
    groups = _GROUP_RE.findall(text)
    if len(groups) != 2 or _GROUP_RE.sub("", text).strip():
        raise UsageError(f"split must look like '(0 1)(2 3)', got: {text!r}")
    parsed = []
    for group in groups:
        tokens = [t for t in re.split(r"[\s,]+", group.strip()) if t]
        if not tokens or not all(t.isdigit() for t in tokens):
            raise UsageError(f"split groups must be nonempty lists of indices, got: {text!r}")
        parsed.append([int(t) for t in tokens])
    return parsed[0], parsed[1]


class SpinNetCLI:
    """Command handlers; each returns a JSON-ready dict or list of dicts."""

    def __init__(self, config: SpinNetConfig, stderr: TextIO = sys.stderr):
        self.config = config
        self.stderr = stderr

    def check(self, graph: LabeledGraph) -> Dict[str, Any]:
        report = check_admissibility(graph)
        return {
            "status": "admissible" if report.admissible else "inadmissible",
            "failures": {v: [r.value for r in reasons] for v, reasons in report.failures.items()},
            "graph_digest": graph_digest(graph),
        }

    def simplify(self, graph: LabeledGraph) -> Dict[str, Any]:
        result = simplify(graph)
        return {
            "multiplier": rational_value(result.multiplier),
            "graph": serialize_graph(result.graph),
            "graph_digest": graph_digest(result.graph),
        }

    def evaluate(
        self,
        graph: LabeledGraph,
        method: str,
        samples: int = DEFAULT_SAMPLES,
        seed: int = 0,
        workers: Optional[int] = None,
    ) -> Dict[str, Any]:
        logger.info(f"evaluating with method={method}")
        if method == "exact":
            try:
                value = eval_relativistic_exact(
                    graph,
                    step_budget=self.config.step_budget,
                    max_terms=self.config.max_expansion_terms,
                )
                return self._eval_result("exact", rational_value(value), graph)
            except ReductionBudgetError as e:
                if not self.config.exact_fallback:
                    raise
                logger.warning(f"exact evaluation over budget, falling back to contract: {e}")
                print(f"notice: exact evaluation exceeded its budget ({e}); using contract", file=self.stderr)
                method = "contract"

        if method == "contract":
            value = contract_evaluate(graph, dim_cap=self.config.dim_cap)
            return self._eval_result("contract", float_value(value), graph)

        estimate = mc_evaluate(
            graph,
            samples,
            seed=seed,
            workers=workers if workers is not None else self.config.workers,
            chunk_size=self.config.chunk_size,
        )
        return self._eval_result(
            "mc",
            float_value(estimate.mean, estimate.stderr, estimate.n_samples, estimate.seed),
            graph,
        )

    def _eval_result(self, method: str, value: Dict[str, Any], graph: LabeledGraph) -> Dict[str, Any]:
        return {"method": method, "value": value, "graph_digest": graph_digest(graph)}

    def expand(self, graph: LabeledGraph, vertex: str, split: Tuple[List[int], List[int]]) -> Dict[str, Any]:
        terms = expand_vertex(graph, vertex, split)
        return {
            "vertex": vertex,
            "split": [list(split[0]), list(split[1])],
            "terms": [
                {"coefficient": rational_value(t.coefficient), "graph": serialize_graph(t.graph)}
                for t in terms
            ],
        }

    def geometry(self, spins: Sequence[int], samples: int, seed: int, workers: Optional[int] = None) -> List[Dict[str, Any]]:
        records = []
        for sample in sample_geometries(
            spins,
            samples,
            seed=seed,
            chunk_size=self.config.chunk_size,
            workers=workers if workers is not None else self.config.workers,
        ):
            records.append({
                "index": sample.index,
                "status": sample.status.value,
                "angles": list(sample.angles),
                "weights": list(sample.weights) if sample.weights is not None else None,
                "integrand": sample.integrand,
            })
        if not any(r["status"] == GeometryStatus.SIMPLEX.value for r in records):
            raise GeometryError(f"none of the {len(records)} samples bounds a 4-simplex")
        return records


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinnet", description="Classical relativistic spin network invariant")
    parser.add_argument("--format", choices=["json", "text"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="admissibility report")
    check.add_argument("file")

    simp = sub.add_parser("simplify", help="rewritten graph and exact multiplier")
    simp.add_argument("file")

    ev = sub.add_parser("eval", help="evaluate the invariant")
    ev.add_argument("file")
    ev.add_argument("--method", choices=["exact", "contract", "mc"], default="exact")
    ev.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--workers", type=int, default=None)

    ex = sub.add_parser("expand", help="tree-expand one vertex")
    ex.add_argument("file")
    ex.add_argument("--vertex", required=True)
    ex.add_argument("--split", required=True, help="edge indices, e.g. '(0 1)(2 3)'")

    geo = sub.add_parser("geometry", help="sample K5 simplex geometries")
    geo.add_argument("--spins", type=int, nargs=10, required=True)
    geo.add_argument("--samples", type=int, default=1000)
    geo.add_argument("--seed", type=int, default=0)
    geo.add_argument("--workers", type=int, default=None)

    # --format is accepted after the subcommand too
    for p in (check, simp, ev, ex, geo):
        p.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    return parser


def _load_graph(path: str) -> LabeledGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise GraphParseError(f"cannot read {path}: {e.strerror or e}", line=0, column=0) from e
    except UnicodeDecodeError as e:
        raise GraphParseError(f"{path} is not valid UTF-8: {e.reason} at byte {e.start}", line=0, column=0) from e
    return parse_graph(text)


def _flatten(prefix: str, value: Any, rows: List[Tuple[str, str]]) -> None:
    if isinstance(value, dict) and value.get("kind") == "rational":
        rows.append((prefix, value["num"] if value["den"] == "1" else f"{value['num']}/{value['den']}"))
    elif isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else key, item, rows)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)
    elif isinstance(value, list):
        rows.append((prefix, " ".join(str(v) for v in value)))
    elif isinstance(value, str) and "\n" in value:
        for i, line in enumerate(value.splitlines()):
            rows.append((prefix if i == 0 else "", line))
    else:
        rows.append((prefix, "null" if value is None else str(value)))


def format_text(payload: Any) -> str:
    """Aligned key/value table."""
    rows: List[Tuple[str, str]] = []
    _flatten("", payload, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k:<{width}}  {v}".rstrip() for k, v in rows)


def _emit(payload: Any, fmt: str, out: TextIO, lines: bool = False) -> None:
    if fmt == "text":
        print(format_text(payload), file=out)
    elif lines:
        for record in payload:
            print(json.dumps(record), file=out)
    else:
        print(json.dumps(payload), file=out)


def _fail(category: str, message: str, code: int, err: TextIO) -> int:
    print(f"error: {category}: {' '.join(str(message).split())}", file=err)
    return code


def setup_logging(level: str = "WARNING") -> None:
    """Set up logging configuration."""
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def run_cli(
    argv: Sequence[str],
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """Run one command and return its exit code."""
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        config = SpinNetConfig.from_environment()
        config.validate()
        setup_logging(config.log_level)
        cli = SpinNetCLI(config, stderr=err)

        if args.command == "geometry":
            _emit(cli.geometry(args.spins, args.samples, args.seed, args.workers), args.format, out, lines=True)
            return EXIT_OK

        graph = _load_graph(args.file)
        if args.command == "check":
            payload = cli.check(graph)
        elif args.command == "simplify":
            payload = cli.simplify(graph)
        elif args.command == "eval":
            payload = cli.evaluate(graph, args.method, args.samples, args.seed, args.workers)
        else:
            payload = cli.expand(graph, args.vertex, parse_split(args.split))
        _emit(payload, args.format, out)
        return EXIT_OK

    except UsageError as e:
        return _fail("usage", str(e), EXIT_USAGE, err)
    except SpinNetError as e:
        for kind, category, code in _ERROR_CATEGORIES:
            if isinstance(e, kind):
                return _fail(category, str(e), code, err)
        return _fail("error", str(e), EXIT_COMPUTATION, err)
