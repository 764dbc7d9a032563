"""
Entry point for the ``multexact`` console script.

Usage:
    multexact --help
    python -m multexact.main test --data data/example_table1.json --method greedy
    uvicorn multexact.api.app:app --host 127.0.0.1 --port 8766
"""

import sys

from .cli import run


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
