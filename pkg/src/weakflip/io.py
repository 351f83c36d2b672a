"""Reading and writing code files and CSV tables."""

from __future__ import annotations

import csv
import io
import json
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from .code_model import Codebook, TypeVector, as_type, codebook_from_type, type_from_json


def package_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def load_code(path) -> TypeVector | Codebook:
    """Code JSON ({"m", "type"} or {"m", "rows"}) or plain codebook text."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        if "code" in obj and isinstance(obj["code"], dict):  # a search report
            obj = obj["code"]
        return type_from_json(obj)
    return Codebook.from_text(text)


def save_code(code, path) -> list[Path]:
    """Write code JSON to `path` and the codebook text next to it (.txt)."""
    path = Path(path)
    t = as_type(code)
    obj = t.to_json()
    if isinstance(code, Codebook):
        obj["rows"] = code.to_json()["rows"]
        cb = code
    else:
        cb = codebook_from_type(t)
    path.write_text(json.dumps(obj) + "\n")
    txt = path.with_suffix(".txt") if path.suffix != ".txt" else path.with_suffix(".codebook.txt")
    txt.write_text(cb.to_text())
    return [path, txt]


def format_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render_csv(header, rows, meta: dict | None = None) -> str:
    buf = io.StringIO()
    for key, val in (meta or {}).items():
        buf.write(f"# {key}: {val}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_value(row.get(h)) for h in header])
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))
