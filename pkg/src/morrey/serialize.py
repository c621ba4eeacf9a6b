"""JSON and CSV formats for sequences, radial functions and reports."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

from .errors import MalformedInput, MorreyError
from .lattice import SparseSequence
from .params import format_scalar, parse_scalar
from .radial import PiecewisePowerFn


def sequence_to_json(x: SparseSequence) -> dict:
    return {
        "d": x.d,
        "entries": [{"k": list(k), "v": format_scalar(v)} for k, v in sorted(x.entries.items())],
    }


def sequence_from_json(obj, exact: bool = False) -> SparseSequence:
    """Parse ``{"d": int, "entries": [{"k": [...], "v": num | "p/q"}]}``."""
    try:
        d = obj["d"]
        raw = obj["entries"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 1 or not isinstance(raw, list):
            raise MalformedInput("'d' must be a positive integer and 'entries' a list")
        entries = {}
        for item in raw:
            k = item["k"]
            if not isinstance(k, list) or len(k) != d or not all(isinstance(c, int) and not isinstance(c, bool) for c in k):
                raise MalformedInput(f"lattice point {k!r} must be a list of {d} integers")
            k = tuple(k)
            if k in entries:
                raise MalformedInput(f"duplicate lattice point {list(k)}")
            entries[k] = parse_scalar(item["v"], exact=exact)
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad sequence JSON: {exc}") from exc
    except MalformedInput:
        raise
    except MorreyError as exc:
        raise MalformedInput(str(exc)) from exc
    return SparseSequence(entries, d=d)


def _num(v):
    return "inf" if v == math.inf else v


def fn_to_json(f: PiecewisePowerFn) -> dict:
    return {
        "d": f.d,
        "pieces": [{"lo": pc.lo, "hi": _num(pc.hi), "c": pc.c, "alpha": pc.alpha} for pc in f.pieces],
    }


def fn_from_json(obj) -> PiecewisePowerFn:
    """Parse ``{"d": int, "pieces": [{"lo", "hi" | "inf", "c", "alpha"}]}``."""
    try:
        d = obj["d"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 1:
            raise MalformedInput("'d' must be a positive integer")
        pieces = []
        for pc in obj["pieces"]:
            hi = math.inf if pc["hi"] in ("inf", "Infinity") else float(parse_scalar(pc["hi"]))
            lo, c, alpha = (float(parse_scalar(pc[key])) for key in ("lo", "c", "alpha"))
            pieces.append((lo, hi, c, alpha))
        return PiecewisePowerFn(pieces, d=d)
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad function JSON: {exc}") from exc
    except MalformedInput:
        raise
    except MorreyError as exc:
        raise MalformedInput(str(exc)) from exc


def vector_to_json(v) -> dict:
    if isinstance(v, SparseSequence):
        return sequence_to_json(v)
    if isinstance(v, PiecewisePowerFn):
        return fn_to_json(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def vector_from_json(obj, exact: bool = False):
    if isinstance(obj, dict) and "pieces" in obj:
        return fn_from_json(obj)
    return sequence_from_json(obj, exact=exact)


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def dumps(payload) -> str:
    return json.dumps(payload, indent=2, allow_nan=False, default=_default)


def _default(o):
    if o == math.inf:
        return "inf"
    raise TypeError(f"not JSON serializable: {o!r}")


def flatten(obj, prefix: str = "") -> dict:
    """Dotted-key flattening used for CSV rows."""
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            out.update(flatten(v, f"{prefix}{i}."))
    else:
        out[prefix[:-1]] = obj
    return out


def records(payload: dict) -> list[dict]:
    """Rows for CSV output: one per check for reports, else the flattened payload."""
    if "checks" in payload:
        head = {k: v for k, v in payload.items() if k not in ("checks", "norms", "functionals")}
        base = flatten(head)
        return [{**base, **flatten(chk, "check.")} for chk in payload["checks"]]
    if "rows" in payload:
        head = flatten({k: v for k, v in payload.items() if k != "rows"})
        return [{**head, **flatten(row, "row.")} for row in payload["rows"]]
    return [flatten(payload)]


def to_csv(payload: dict) -> str:
    rows = records(payload)
    fields = []
    for row in rows:
        fields.extend(k for k in row if k not in fields)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in fields})
    return buf.getvalue()
