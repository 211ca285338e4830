# -*- coding: utf-8 -*-

"""FnSpec parsing: --fn <catalog-id | JSON object | @file>.

JSON forms:
- {"id": "abs1"}                                   catalog entry
- {"type": "power", "mu": 1.5}                     (x - a)^mu
- {"type": "poly", "coefficients": [1, 0, 2]}      Σ c_i (x - a)^i
- {"type": "abspow", "n": 1, "poly": [1, 1]}       Σ poly_i (x - a)^i + (x - a)^n |x - a|
- {"type": "sin"}
Every constructed form also takes "a" (base point) and "domain": [lo, hi].

Anything malformed raises SpecError naming the JSON line/column or the field.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any

from cdiff.catalog import CatalogEntry, abspow_entry, lookup, poly_entry, power_entry, sin_entry
from cdiff.errors import CatalogError, CdiffError, SpecError

logger = logging.getLogger(__name__)

_COMMON_FIELDS = {"type", "a", "domain", "id"}
_TYPE_FIELDS = {
    "power": {"mu"},
    "poly": {"coefficients"},
    "abspow": {"n", "poly"},
    "sin": set(),
}


def _number(obj: dict[str, Any], key: str, default: float | None = None) -> float:
    if key not in obj:
        if default is None:
            raise SpecError("required field is missing", where=f"field {key!r}")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SpecError(f"expected a finite number, got {v!r}", where=f"field {key!r}")
    return float(v)


def _numbers(obj: dict[str, Any], key: str, *, required: bool = True) -> list[float]:
    if key not in obj:
        if required:
            raise SpecError("required field is missing", where=f"field {key!r}")
        return []
    v = obj[key]
    if not isinstance(v, list):
        raise SpecError(f"expected a list of numbers, got {v!r}", where=f"field {key!r}")
    return [_number({key: item}, key) for item in v]


def _domain(obj: dict[str, Any]) -> tuple[float, float] | None:
    if "domain" not in obj:
        return None
    lo_hi = _numbers(obj, "domain")
    if len(lo_hi) != 2:
        raise SpecError(f"expected [lo, hi], got {obj['domain']!r}", where="field 'domain'")
    return lo_hi[0], lo_hi[1]


def _load_text(text: str) -> str:
    if not text.startswith("@"):
        return text
    path = Path(text[1:])
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError(f"cannot read: {e.strerror or e}", where=str(path)) from e


def _build(obj: dict[str, Any], a: float | None) -> CatalogEntry:
    if "type" not in obj:
        if set(obj) == {"id"} and isinstance(obj["id"], str):
            return _catalog(obj["id"], a)
        raise SpecError("expected \"type\" or a lone \"id\"", where="field 'type'")
    kind = obj["type"]
    if kind not in _TYPE_FIELDS:
        raise SpecError(f"expected one of {', '.join(_TYPE_FIELDS)}, got {kind!r}", where="field 'type'")
    for key in obj:
        if key not in _COMMON_FIELDS | _TYPE_FIELDS[kind]:
            raise SpecError(f"not a field of {kind!r}", where=f"field {key!r}")
    if a is None:
        a = _number(obj, "a", 0.0)
    domain = _domain(obj)
    name = obj.get("id")
    if name is not None and not isinstance(name, str):
        raise SpecError(f"expected a string, got {name!r}", where="field 'id'")

    if kind == "power":
        return power_entry(_number(obj, "mu"), a, domain, id=name)
    if kind == "poly":
        return poly_entry(_numbers(obj, "coefficients"), a, domain, id=name or "poly")
    if kind == "abspow":
        n = _number(obj, "n")
        if n != int(n) or n < 0:
            raise SpecError(f"expected an integer >= 0, got {obj['n']!r}", where="field 'n'")
        return abspow_entry(int(n), _numbers(obj, "poly", required=False), a, domain, id=name)
    return sin_entry(a, domain, id=name or "sin")


def _catalog(entry_id: str, a: float | None = None) -> CatalogEntry:
    try:
        entry = lookup(entry_id)
    except CatalogError as e:
        raise SpecError(str(e), where="--fn") from e
    if a is not None and a != entry.handle.base_point:
        raise SpecError(f"catalog entry {entry_id!r} is fixed at a={entry.handle.base_point!r}", where="--a")
    return entry


def parse_fn(text: str, a: float | None = None) -> CatalogEntry:
    """Resolve a --fn argument to a catalog entry; `a` overrides the base point of constructed ones.

    Constructed entries are validated like catalog ones.
    """
    raw = _load_text(text.strip()).strip()
    if not raw.startswith(("{", "[")):
        return _catalog(raw, a)
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SpecError(e.msg, where=f"line {e.lineno} column {e.colno}") from e
    if not isinstance(obj, dict):
        raise SpecError("expected a JSON object", where="line 1 column 1")
    try:
        entry = _build(obj, a)
        entry.handle.validate()
        entry.self_check()
    except SpecError:
        raise
    except CdiffError as e:
        raise SpecError(str(e), where="--fn") from e
    logger.debug("fnspec_parsed id=%s k=%s a=%r", entry.id, entry.handle.smoothness_k, entry.handle.base_point)
    return entry
