"""JSON file formats for posets, integer functions, monotone maps and modules.

Poset:    {"elements": ["a", "b"], "relations": [["a", "b"]]}
Function: {"values": {"a": 2, "b": 1}}
Map:      {"values": {"a": "x", "b": "y"}}
Module:   {"field": {"kind": "rationals"}, "dims": {"a": 2, "b": 1},
           "maps": {"a<b": [[1, 0]]}, "poset": <optional poset object>}

Module matrices are ``dims(y) x dims(x)`` for the cover ``x<y`` and act on
column vectors; entries are integers or ``"p/q"`` strings.  Without an
embedded ``"poset"`` the poset is generated by the keys of ``"dims"`` (in
order) and the covers named in ``"maps"``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ParseError
from .incidence import GrFunction
from .linalg import FieldSpec, Matrix
from .modules import PosetModule
from .posets import MonotoneMap, Poset, poset_from_relations


def read_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ParseError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return data


def _require(data: dict, key: str, kind, what: str):
    if key not in data:
        raise ParseError(f"{what} is missing the {key!r} key")
    if not isinstance(data[key], kind):
        raise ParseError(f"{what}: {key!r} has the wrong type")
    return data[key]


def poset_from_json(data: dict, max_size: int | None = None) -> Poset:
    elements = _require(data, "elements", list, "poset")
    relations = data.get("relations", [])
    if not isinstance(relations, list) or any(
        not isinstance(r, list) or len(r) != 2 for r in relations
    ):
        raise ParseError("poset: 'relations' must be a list of [lower, upper] pairs")
    if any(not isinstance(x, str) for x in elements):
        raise ParseError("poset: element identifiers must be strings")
    kwargs = {} if max_size is None else {"max_size": max_size}
    return poset_from_relations(elements, [tuple(r) for r in relations], **kwargs)


def poset_to_json(p: Poset) -> dict:
    return {"elements": list(p.elements), "relations": [list(c) for c in p.covers]}


def function_from_json(data: dict, poset: Poset) -> GrFunction:
    values = _require(data, "values", dict, "function")
    if any(isinstance(v, bool) or not isinstance(v, int) for v in values.values()):
        raise ParseError("function values must be integers")
    return GrFunction(poset, values)


def function_to_json(f: GrFunction) -> dict:
    return {"values": dict(f.values)}


def map_from_json(data: dict, source: Poset, target: Poset) -> MonotoneMap:
    values = _require(data, "values", dict, "map")
    return MonotoneMap(source, target, values)


def field_from_json(data) -> FieldSpec:
    if data is None:
        return FieldSpec.rationals()
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError("field must look like {\"kind\": \"rationals\"} or {\"kind\": \"prime\", \"p\": 7}")
    try:
        return FieldSpec(data["kind"], data.get("p"))
    except ValueError as exc:
        raise ParseError(f"field: {exc}") from None


def _split_cover(key: str, elements) -> tuple:
    known = set(elements)
    for i, ch in enumerate(key):
        if ch == "<" and key[:i] in known and key[i + 1 :] in known:
            return key[:i], key[i + 1 :]
    raise ParseError(f"map key {key!r} is not of the form 'x<y' with known elements")


def _matrix(raw, field: FieldSpec, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(raw, list) or len(raw) != rows or any(
        not isinstance(r, list) or len(r) != cols for r in raw
    ):
        raise ParseError(f"map on cover {where} must be a {rows}x{cols} matrix")
    try:
        return Matrix.from_rows(field, raw, cols)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"map on cover {where}: bad entry ({exc})") from None


def module_from_json(data: dict, poset: Poset | None = None) -> PosetModule:
    field = field_from_json(data.get("field"))
    dims = _require(data, "dims", dict, "module")
    if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in dims.values()):
        raise ParseError("module dims must be non-negative integers")
    raw_maps = data.get("maps", {})
    if not isinstance(raw_maps, dict):
        raise ParseError("module 'maps' must be an object keyed by covers 'x<y'")
    if poset is None:
        if "poset" in data:
            poset = poset_from_json(data["poset"])
        else:
            elements = list(dims)
            poset = poset_from_relations(elements, [_split_cover(k, elements) for k in raw_maps])
    missing = [a for a in poset if a not in dims]
    if missing:
        raise ParseError(f"module gives no dimension for element {missing[0]!r}")
    extra = [a for a in dims if a not in poset]
    if extra:
        raise ParseError(f"module gives a dimension for unknown element {extra[0]!r}")
    covers = set(poset.covers)
    maps = {}
    for key, raw in raw_maps.items():
        a, b = _split_cover(key, poset.elements)
        if (a, b) not in covers:
            raise ParseError(f"{key!r} is not a covering relation of the poset")
        maps[a, b] = _matrix(raw, field, dims[b], dims[a], key)
    for a, b in poset.covers:
        if (a, b) not in maps and dims[a] and dims[b]:
            raise ParseError(f"module has no map for cover {a}<{b}")
    return PosetModule(poset, field, dims, maps)


def module_to_json(M: PosetModule) -> dict:
    return {
        "field": M.field.to_json(),
        "dims": dict(M.dims),
        "maps": {f"{a}<{b}": m.to_json() for (a, b), m in M.cover_maps.items()},
        "poset": poset_to_json(M.poset),
    }
