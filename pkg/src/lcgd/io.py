"""JSON forms of sequences, partitioned genus distributions and graphs.

Integers are written as decimal strings so that consumers with fixed-width
integers never truncate them.  Readers accept plain JSON integers as well.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .chains import PARTIALS, DoubleRootPGD, SingleRootPGD, check_double, check_single
from .embed import Graph
from .seqcore import Frac, Seq, Verdict, Witness


class FormatError(ValueError):
    pass


def _int(x) -> int:
    if isinstance(x, bool):
        raise FormatError(f"not an integer: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str) and x.strip().isdigit():
        return int(x)
    raise FormatError(f"not a nonnegative decimal integer: {x!r}")


def seq_to_json(s: Seq) -> dict:
    return {"entries": [str(x) for x in s.entries], "offset": s.offset}


def seq_from_json(obj) -> Seq:
    if isinstance(obj, list):
        return Seq([_int(x) for x in obj])
    if not isinstance(obj, dict) or "entries" not in obj:
        raise FormatError(f"expected a sequence object with 'entries', got {obj!r}")
    offset = obj.get("offset", 0)
    if not isinstance(offset, int) or isinstance(offset, bool):
        raise FormatError(f"offset must be an integer, got {offset!r}")
    try:
        return Seq([_int(x) for x in obj["entries"]], offset)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def single_to_json(p: SingleRootPGD) -> dict:
    return {"D": seq_to_json(p.D), "S": seq_to_json(p.S)}


def single_from_json(obj, label: str = "") -> SingleRootPGD:
    if not isinstance(obj, dict) or set(obj) - {"D", "S"} or not {"D", "S"} <= set(obj):
        raise FormatError(f"{label}: a single-root distribution has exactly the keys D and S")
    return check_single(SingleRootPGD(seq_from_json(obj["D"]), seq_from_json(obj["S"])), label)


def double_to_json(p: DoubleRootPGD) -> dict:
    return {k: seq_to_json(v) for k, v in p.items()}


def double_from_json(obj, label: str = "") -> DoubleRootPGD:
    if not isinstance(obj, dict):
        raise FormatError(f"{label}: expected an object")
    extra = set(obj) - set(PARTIALS)
    missing = set(PARTIALS) - set(obj)
    if extra or missing:
        raise FormatError(f"{label}: keys must be {', '.join(PARTIALS)} (missing {sorted(missing)}, extra {sorted(extra)})")
    return check_double(DoubleRootPGD(**{k: seq_from_json(obj[k]) for k in PARTIALS}), label)


def frac_to_json(f: Frac) -> str:
    return f"{f.num}/{f.den}"


def _value(x):
    if isinstance(x, Frac):
        return frac_to_json(x)
    if isinstance(x, int):
        return str(x)
    return x


def verdict_to_json(v: Verdict | None) -> dict | None:
    if v is None:
        return None
    if v.holds:
        return {"holds": True}
    w: Witness = v.witness
    return {
        "holds": False,
        "witness": {
            "relation": w.relation,
            "k": list(w.k) if isinstance(w.k, tuple) else w.k,
            "lhs": _value(w.lhs),
            "rhs": _value(w.rhs),
            "where": list(w.where),
        },
    }


def load_json(path) -> object:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def load_seq(path) -> Seq:
    return seq_from_json(load_json(path))


def load_single(path) -> SingleRootPGD:
    return single_from_json(load_json(path), str(path))


def load_double(path) -> DoubleRootPGD:
    return double_from_json(load_json(path), str(path))


def load_graph(path) -> Graph:
    return Graph.from_json(load_json(path))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Bundled data
# ---------------------------------------------------------------------------


def data_path(name: str) -> Path:
    return Path(str(resources.files("lcgd") / "data" / name))


def bundled_single(name: str) -> SingleRootPGD:
    """``w4``, ``ml4``, ``k4`` or ``circ7``."""
    return load_single(data_path(f"{name}_init.json"))


def bundled_double(name: str) -> DoubleRootPGD:
    return load_double(data_path(f"{name}_pgd.json"))


def bundled_graph(name: str) -> Graph:
    return load_graph(data_path(f"{name}.json"))
