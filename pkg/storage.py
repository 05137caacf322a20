import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from gaborbench.schemas.experiment import OutputFormat


def format_value(value: Any, full_precision: bool = False) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return repr(value) if full_precision else f"{value:.6f}"
    return str(value)


def render_csv(rows: Sequence[Dict[str, Any]], columns: Sequence[str], full_precision: bool = False) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c], full_precision) for c in columns])
    return buffer.getvalue()


def _json_row(row: Dict[str, Any], columns: Sequence[str], full_precision: bool) -> Dict[str, Any]:
    out = {}
    for c in columns:
        value = row[c]
        if hasattr(value, "item"):
            # numpy scalar
            value = value.item()
        if isinstance(value, float):
            infinite = math.isinf(value)
            out[c] = None if infinite or math.isnan(value) else (value if full_precision else round(value, 6))
            out[f"{c}_is_inf"] = infinite
        else:
            out[c] = value
    return out


def render_json(rows: Sequence[Dict[str, Any]], columns: Sequence[str], full_precision: bool = False) -> str:
    return json.dumps([_json_row(r, columns, full_precision) for r in rows], indent=2) + "\n"


def write_atomic(path: Path, text: str) -> None:
    """Write to a temp file in the target directory, then rename over the target."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
    try:
        with os.fdopen(fd, "w", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_rows(
    rows: List[Dict[str, Any]],
    columns: Sequence[str],
    out: Optional[Path],
    fmt: OutputFormat = OutputFormat.CSV,
    full_precision: bool = False,
) -> None:
    """Render the rows and write them to `out`, or to stdout when no path is given."""
    if fmt == OutputFormat.JSON:
        text = render_json(rows, columns, full_precision)
    else:
        text = render_csv(rows, columns, full_precision)
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)
