"""Decimal-string serialization helpers (JSON and CSV)"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

SCHEMA_VERSION = 1


def decimal_string(x, digits: int, mp) -> str:
    """Render an mpf with ``digits`` significant digits; None becomes ''"""
    if x is None:
        return ""
    return mp.nstr(x, digits, strip_zeros=False)


def decimal_strings(values: Sequence, digits: int, mp) -> List[str]:
    return [decimal_string(v, digits, mp) for v in values]


def parse_decimal(text: str, mp):
    """Inverse of :func:`decimal_string`"""
    if text is None or text == "":
        return None
    return mp.mpf(text)


def write_json(payload: Dict[str, Any], path: Optional[Union[str, Path]] = None) -> str:
    """Dump ``payload``; also writes it to ``path`` when given"""
    text = json.dumps(payload, indent=2)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")
    return text


def read_json(source: Union[str, Path]) -> Dict[str, Any]:
    """Load JSON from a path or from a JSON string"""
    if isinstance(source, Path) or not str(source).lstrip().startswith(("{", "[")):
        return json.loads(Path(source).read_text())
    return json.loads(source)


def write_csv(header: Sequence[str], rows: Sequence[Sequence[str]], path: Optional[Union[str, Path]] = None) -> str:
    """Render rows of strings as CSV; also writes them to ``path`` when given"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buffer.getvalue()
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return text


def read_csv(source: Union[str, Path]) -> List[Dict[str, str]]:
    """Rows of a CSV file (or CSV text) as dicts"""
    text = source
    if isinstance(source, Path) or "\n" not in str(source):
        text = Path(source).read_text()
    return list(csv.DictReader(io.StringIO(text)))
