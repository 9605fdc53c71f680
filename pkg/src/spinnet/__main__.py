"""
Entry point for the spinnet command-line tool.
"""

import sys

from .cli import run_cli


def main() -> None:
    """Main entry point for the spinnet CLI."""
    try:
        sys.exit(run_cli(sys.argv[1:]))
    except KeyboardInterrupt:
        print("\ninterrupted by user", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
