import argparse
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List

from gaborbench.models.window import WindowKind

WINDOW_CHOICES = [k.value for k in WindowKind if k != WindowKind.CUSTOM]


@dataclass
class Table:
    rows: List[Dict[str, Any]]
    columns: List[str]


def parse_m_range(text: str) -> List[int]:
    """a:b:step (inclusive of b) or a comma list."""
    try:
        if ":" in text:
            parts = [int(v) for v in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            start, stop, step = parts
            if step < 1 or stop < start:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:step or a comma list, got '{text}'")


def parse_float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got '{text}'")


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="root seed for every random draw")
    parser.add_argument("--out", type=Path, help="output file (stdout when omitted)")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")
    parser.add_argument("--threads", type=int, help="worker count (default: GABORBENCH_THREADS)")
    parser.add_argument("--full-precision", action="store_true", help="print floats with full precision")
    parser.add_argument("--solver", choices=["auto", "jacobi", "lapack"], help="eigensolver")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")


def add_dimension_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--M", type=int, help="dimension")
    parser.add_argument("--M-range", type=parse_m_range, help="dimensions as a:b:step")


def add_window_argument(parser: argparse.ArgumentParser, default: str) -> None:
    parser.add_argument("--window", choices=WINDOW_CHOICES, default=default)


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got '{text}'")
