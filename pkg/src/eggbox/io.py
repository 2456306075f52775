"""JSON serialization for every object the command line accepts or emits.

Schemas:
  semigroup       {"degree": n, "generators": [[...], ...]}
                  or {"elements": k, "table": [[...]]}
  group           {"order": k, "table": [[...]]}
  group action    {"degree": n, "group_generators": [[...], ...]}
  sandwich matrix {"group": {...}, "rows": m, "cols": n,
                   "entries": [["g<idx>" | 0, ...], ...]}
  general matrix  {"action": {...}, "rows": m, "cols": n,
                   "entries": [[{"perm": [...]} | {"const": x}
                                | {"map": [...]}, ...], ...]}
  representation  {"carrier": n, "elements": [{"name": ..., "map": [...]}],
                   "products": [[i, j, k-or-null], ...]}   (products optional)
"""

from __future__ import annotations

import json

from .actions import GroupAction
from .groups import FiniteGroup
from .ramified import (
    CONST,
    PERM,
    RamifiedMatrix,
    const_entry,
    map_entry,
    perm_entry,
)
from .rees import SandwichMatrix
from .representation import Representation
from .semigroup import FiniteSemigroup, close
from .transform import Transformation


class SchemaError(ValueError):
    """Input does not match the declared JSON schema."""


def _need(obj: dict, key: str, kind: str):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{kind}: missing field {key!r}")
    return obj[key]


def _as_images(v, kind: str) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise SchemaError(f"{kind}: map must be a list of integers")
    return tuple(v)


def load_semigroup(obj: dict) -> FiniteSemigroup:
    if isinstance(obj, dict) and "generators" in obj:
        degree = _need(obj, "degree", "semigroup")
        gens = [
            Transformation(_as_images(g, "semigroup")) for g in obj["generators"]
        ]
        for g in gens:
            if g.degree != degree:
                raise SchemaError("semigroup: generator degree mismatch")
        if not gens:
            raise SchemaError("semigroup: no generators")
        return close(gens)
    k = _need(obj, "elements", "semigroup")
    table = _need(obj, "table", "semigroup")
    if len(table) != k or any(len(row) != k for row in table):
        raise SchemaError("semigroup: table is not elements x elements")
    zero = identity = None
    for i in range(k):
        if all(table[i][j] == i == table[j][i] for j in range(k)):
            zero = i
        if all(table[i][j] == j and table[j][i] == j for j in range(k)):
            identity = i
    s = FiniteSemigroup(
        [str(i) for i in range(k)], table, zero=zero, identity=identity
    )
    try:
        s.validate()
    except ValueError as e:
        raise SchemaError(f"semigroup: {e}") from None
    return s


def dump_semigroup(s: FiniteSemigroup) -> dict:
    return {"elements": s.size, "table": [list(row) for row in s.table]}


def load_group(obj: dict) -> FiniteGroup:
    table = _need(obj, "table", "group")
    try:
        return FiniteGroup(tuple(tuple(row) for row in table))
    except ValueError as e:
        raise SchemaError(f"group: {e}") from None


def dump_group(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": [list(row) for row in g.table]}


def load_action(obj: dict) -> GroupAction:
    degree = _need(obj, "degree", "action")
    gens = _need(obj, "group_generators", "action")
    perms = [Transformation(_as_images(p, "action")) for p in gens]
    for p in perms:
        if p.degree != degree:
            raise SchemaError("action: generator degree mismatch")
        if not p.is_permutation():
            raise SchemaError("action: generator is not a permutation")
    if not perms:
        raise SchemaError("action: at least one generator is required")
    return GroupAction.from_generators(perms)


def dump_action(action: GroupAction) -> dict:
    return {
        "degree": action.degree,
        "group_generators": [list(p.images) for p in action.generators],
    }


def load_sandwich(obj: dict) -> SandwichMatrix:
    group = load_group(_need(obj, "group", "sandwich"))
    rows = _need(obj, "rows", "sandwich")
    cols = _need(obj, "cols", "sandwich")
    raw = _need(obj, "entries", "sandwich")
    if len(raw) != rows or any(len(r) != cols for r in raw):
        raise SchemaError("sandwich: entries are not rows x cols")
    entries = []
    for r in raw:
        row = []
        for v in r:
            if v == 0 and isinstance(v, int):
                row.append(None)
            elif isinstance(v, str) and v.startswith("g") and v[1:].isdigit():
                row.append(int(v[1:]))
            else:
                raise SchemaError(f"sandwich: bad entry {v!r} (use 0 or \"g<idx>\")")
        entries.append(row)
    try:
        return SandwichMatrix(group, entries)
    except ValueError as e:
        raise SchemaError(f"sandwich: {e}") from None


def dump_sandwich(q: SandwichMatrix) -> dict:
    return {
        "group": dump_group(q.group),
        "rows": q.rows,
        "cols": q.cols,
        "entries": [
            [0 if v is None else f"g{v}" for v in row] for row in q.entries
        ],
    }


def load_matrix(obj: dict) -> RamifiedMatrix:
    action = load_action(_need(obj, "action", "matrix"))
    rows = _need(obj, "rows", "matrix")
    cols = _need(obj, "cols", "matrix")
    raw = _need(obj, "entries", "matrix")
    if len(raw) != rows or any(len(r) != cols for r in raw):
        raise SchemaError("matrix: entries are not rows x cols")
    entries = []
    for r in raw:
        row = []
        for cell in r:
            if not isinstance(cell, dict) or len(cell) != 1:
                raise SchemaError(f"matrix: bad cell {cell!r}")
            (kind, v), = cell.items()
            try:
                if kind == "perm":
                    row.append(perm_entry(action, Transformation(_as_images(v, "matrix"))))
                elif kind == "const":
                    row.append(const_entry(action, v))
                elif kind == "map":
                    row.append(map_entry(action, Transformation(_as_images(v, "matrix"))))
                else:
                    raise SchemaError(f"matrix: unknown cell kind {kind!r}")
            except ValueError as e:
                raise SchemaError(f"matrix: {e}") from None
        entries.append(row)
    try:
        return RamifiedMatrix(action, entries)
    except ValueError as e:
        raise SchemaError(f"matrix: {e}") from None


def dump_matrix(p: RamifiedMatrix) -> dict:
    entries = []
    for lam in range(p.rows):
        row = []
        for r in range(p.cols):
            e = p.entry(lam, r)
            if e.kind == PERM:
                row.append({"perm": list(e.fn.images)})
            elif e.kind == CONST:
                row.append({"const": e.point})
            else:
                row.append({"map": list(e.fn.images)})
        entries.append(row)
    return {
        "action": dump_action(p.action),
        "rows": p.rows,
        "cols": p.cols,
        "entries": entries,
    }


def load_representation(obj: dict) -> Representation:
    carrier = _need(obj, "carrier", "representation")
    elems = _need(obj, "elements", "representation")
    if not isinstance(elems, list) or not elems:
        raise SchemaError("representation: elements must be a non-empty list")
    labels = []
    maps = []
    for e in elems:
        labels.append(_need(e, "name", "representation"))
        maps.append(Transformation(_as_images(_need(e, "map", "representation"), "representation")))
    if len(set(labels)) != len(labels):
        raise SchemaError("representation: duplicate element names")
    products = {}
    for row in obj.get("products") or []:
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaError("representation: products rows must be [i, j, k]")
        i, j, k = row
        if k is not None:
            products[(i, j)] = k
    try:
        return Representation(labels, maps, products, carrier=carrier)
    except ValueError as e:
        raise SchemaError(f"representation: {e}") from None


def dump_representation(rep: Representation) -> dict:
    out = {
        "carrier": rep.carrier,
        "elements": [
            {"name": _name(lab), "map": list(m.images)}
            for lab, m in zip(rep.labels, rep.maps)
        ],
    }
    if rep.products:
        out["products"] = [[i, j, k] for (i, j), k in sorted(rep.products.items())]
    return out


def _name(label) -> str:
    if isinstance(label, str):
        return label
    if isinstance(label, tuple):
        return "(" + ",".join(_name(x) for x in label) + ")"
    return str(label)


def load_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}") from None


def semigroup_from_file(path: str) -> FiniteSemigroup:
    return load_semigroup(load_file(path))


def action_from_file(path: str) -> GroupAction:
    return load_action(load_file(path))


def sandwich_from_file(path: str) -> SandwichMatrix:
    return load_sandwich(load_file(path))


def matrix_from_file(path: str) -> RamifiedMatrix:
    return load_matrix(load_file(path))


def representation_from_file(path: str) -> Representation:
    return load_representation(load_file(path))
