"""JSON input documents describing posets and spaces.

Every document is an object with a ``kind`` field::

    {"kind": "poset", "elements": ["0", "h", "1"], "le": [["0", "h"], ["h", "1"]]}
    {"kind": "axioms", "elements": [...], "le": [...], "axioms": {"1": [["h"]]}}
    {"kind": "pointset", "points": ["x", "y"], "extent": {"a": ["x"], "b": ["x", "y"]}}
    {"kind": "table", "elements": [...], "saturation": [[["h"], ["0", "h"]], ...]}
    {"kind": "derived", "parent": {...} or "path.json", "derivation": "closed", "subset": ["h"]}
    {"kind": "builtin", "name": "double-negation"}

Order pairs ``[x, y]`` mean ``x <= y`` and are closed reflexively and
transitively before antisymmetry is checked.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Optional

from . import bits
from .cover import (FormalTopology, PointSetSpace, adjoin_top, booleanization, closed_subspace,
                    dm_cover, double_negation_space, generate_from_axioms, one_point_space,
                    point_set_cover, table_space)
from .errors import DocumentError
from .frame import beta_cover
from .order import Poset, check_cap, validate_poset

FIELDS = {
    "poset": ({"elements", "le"}, {"top"}),
    "axioms": ({"elements", "axioms"}, {"le", "top"}),
    "pointset": ({"points", "extent"}, {"elements"}),
    "table": ({"elements", "saturation"}, {"top"}),
    "derived": ({"parent", "derivation"}, {"subset"}),
    "builtin": ({"name"}, set()),
}
COMMON = {"kind", "description"}
BUILTINS = ("double-negation", "one-point")
DERIVATIONS = ("closed", "booleanization", "adjoined-top", "beta")
# parse-time checks are structural; the size cap is applied when a space is built
_PARSE_CAP = 64


@dataclass
class Document:
    kind: str
    payload: dict
    text: str = field(default="", repr=False)
    base_dir: Optional[str] = None

    def error(self, message: str, token: Any = None) -> DocumentError:
        line, col = _locate(self.text, token)
        return DocumentError(message, line, col)


def _locate(text: str, token: Any) -> tuple[Optional[int], Optional[int]]:
    if token is None or not text:
        return None, None
    needle = json.dumps(token, ensure_ascii=False) if isinstance(token, str) else str(token)
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def parse_document(text: str, base_dir: Optional[str] = None) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    return _from_object(data, text, base_dir)


def load_document(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), os.path.dirname(os.path.abspath(path)))


def _from_object(data: Any, text: str, base_dir: Optional[str]) -> Document:
    if not isinstance(data, dict):
        raise DocumentError("a document must be a JSON object", 1, 1)
    doc = Document(data.get("kind", ""), data, text, base_dir)
    if doc.kind not in FIELDS:
        raise doc.error(f"unknown kind {doc.kind!r}", doc.kind or "kind")
    required, optional = FIELDS[doc.kind]
    for key in data:
        if key not in required | optional | COMMON:
            raise doc.error(f"unknown field {key!r} for kind {doc.kind!r}", key)
    for key in sorted(required):
        if key not in data:
            raise doc.error(f"missing field {key!r} for kind {doc.kind!r}", "kind")
    _check(doc)
    return doc


def _names(doc: Document, value: Any, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise doc.error(f"{what} must be a list of strings", what)
    return value


def _declared(doc: Document, names: list[str], declared: dict[str, int]) -> int:
    mask = 0
    for name in names:
        if name not in declared:
            raise doc.error(f"undeclared element {name!r}", name)
        mask |= 1 << declared[name]
    return mask


def _elements(doc: Document, key: str = "elements") -> list[str]:
    elems = _names(doc, doc.payload[key], key)
    seen = set()
    for e in elems:
        if e in seen:
            raise doc.error(f"element {e!r} declared twice", e)
        seen.add(e)
    return elems


def _check(doc: Document) -> None:
    """Semantic validation; building the space later cannot fail on names."""
    p = doc.payload
    if doc.kind in ("poset", "axioms"):
        _poset(doc, _PARSE_CAP)
    elif doc.kind == "pointset":
        points = _elements(doc, "points")
        if not isinstance(p["extent"], dict):
            raise doc.error("extent must be an object", "extent")
        where = {x: i for i, x in enumerate(points)}
        for b, ext in p["extent"].items():
            _declared(doc, _names(doc, ext, "extent"), where)
        if "elements" in p:
            elems = _elements(doc)
            if sorted(elems) != sorted(p["extent"]):
                missing = sorted(set(elems) ^ set(p["extent"]))
                raise doc.error(f"elements and extent keys disagree on {missing[0]!r}", missing[0])
    elif doc.kind == "table":
        _table_rows(doc, _PARSE_CAP)
    elif doc.kind == "derived":
        if p["derivation"] not in DERIVATIONS:
            raise doc.error(f"unknown derivation {p['derivation']!r}", p["derivation"])
        if (p["derivation"] == "closed") != ("subset" in p):
            raise doc.error("field 'subset' is required exactly for derivation 'closed'", "derivation")
        parent = _parent(doc)
        if "subset" in p:
            labels = _labels_of(parent)
            _declared(doc, _names(doc, p["subset"], "subset"), {x: i for i, x in enumerate(labels)})
    elif doc.kind == "builtin":
        if p["name"] not in BUILTINS:
            raise doc.error(f"unknown builtin {p['name']!r}", p["name"])


def _poset(doc: Document, max_base: Optional[int] = None) -> Poset:
    p = doc.payload
    elems = _elements(doc)
    check_cap(len(elems), max_base)
    where = {x: i for i, x in enumerate(elems)}
    pairs = []
    for pair in p.get("le", []):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise doc.error("order pairs must be two-element lists of names", "le")
        _declared(doc, pair, where)
        pairs.append(tuple(pair))
    poset = Poset.from_pairs(elems, pairs, max_base=max_base)
    verdict = validate_poset(poset)
    if not verdict:
        raise doc.error(f"order is not a partial order ({verdict.law}): {verdict.message}",
                        verdict.witness[0])
    if "top" in p:
        _declared(doc, [p["top"]], where)
    if doc.kind == "axioms":
        if not isinstance(p["axioms"], dict):
            raise doc.error("axioms must be an object", "axioms")
        for x, covers in p["axioms"].items():
            _declared(doc, [x], where)
            if not isinstance(covers, list):
                raise doc.error(f"axioms for {x!r} must be a list of subsets", x)
            for c in covers:
                _declared(doc, _names(doc, c, "axioms"), where)
    return poset


def _table_rows(doc: Document, max_base: Optional[int] = None) -> dict[int, int]:
    elems = _elements(doc)
    check_cap(len(elems), max_base)
    where = {x: i for i, x in enumerate(elems)}
    rows = doc.payload["saturation"]
    if not isinstance(rows, list):
        raise doc.error("saturation must be a list of [subset, saturation] rows", "saturation")
    table = {}
    for row in rows:
        if not (isinstance(row, list) and len(row) == 2):
            raise doc.error("saturation rows are [subset, saturation] pairs", "saturation")
        u = _declared(doc, _names(doc, row[0], "saturation"), where)
        v = _declared(doc, _names(doc, row[1], "saturation"), where)
        if u in table and table[u] != v:
            raise doc.error(f"conflicting saturation rows for {row[0]}", "saturation")
        table[u] = v
    if len(table) != 1 << len(elems):
        first = next(u for u in bits.all_subsets(len(elems)) if u not in table)
        names = [elems[i] for i in bits.members(first)]
        raise doc.error(f"saturation table has no row for {names}", "saturation")
    if "top" in doc.payload:
        _declared(doc, [doc.payload["top"]], where)
    return table


def _parent(doc: Document) -> Document:
    parent = doc.payload["parent"]
    if isinstance(parent, str):
        path = parent if doc.base_dir is None else os.path.join(doc.base_dir, parent)
        if not os.path.exists(path):
            raise doc.error(f"parent document {parent!r} not found", parent)
        return load_document(path)
    if isinstance(parent, dict):
        return _from_object(parent, doc.text, doc.base_dir)
    raise doc.error("parent must be an object or a file path", "parent")


def _labels_of(doc: Document) -> list[str]:
    p = doc.payload
    if doc.kind in ("poset", "axioms", "table"):
        return list(p["elements"])
    if doc.kind == "pointset":
        return list(p.get("elements", p["extent"]))
    if doc.kind == "builtin":
        return ["⊤"]
    return list(build_space(doc).labels)


# ------------------------------------------------------------------ building


def build_poset(doc: Document, max_base: Optional[int] = None) -> Optional[Poset]:
    if doc.kind in ("poset", "axioms"):
        return _poset(doc, max_base)
    return None


def build_space(doc: Document, complete: bool = False,
                max_base: Optional[int] = None) -> FormalTopology:
    """Realise a document as a space.

    A ``poset`` document yields its Dedekind-MacNeille cover when
    ``complete`` is set and the cover generated by the order alone otherwise.
    """
    p = doc.payload
    if doc.kind == "poset":
        poset = _poset(doc, max_base)
        if complete:
            s = dm_cover(poset, max_base=max_base)
        else:
            s = generate_from_axioms(poset, [()] * len(poset), max_base=max_base)
        return _with_top(s, p)
    if doc.kind == "axioms":
        poset = _poset(doc, max_base)
        where = {x: i for i, x in enumerate(poset.labels)}
        axioms = [[] for _ in poset.labels]
        for x, covers in p["axioms"].items():
            axioms[where[x]] = [bits.from_indices(where[c] for c in cover) for cover in covers]
        return _with_top(generate_from_axioms(poset, axioms, max_base=max_base), p)
    if doc.kind == "pointset":
        extents = p["extent"]
        order = p.get("elements", list(extents))
        space = PointSetSpace.from_names(p["points"], {b: extents[b] for b in order})
        return point_set_cover(space, max_base=max_base)
    if doc.kind == "table":
        table = _table_rows(doc, max_base)
        top = p["elements"].index(p["top"]) if "top" in p else None
        return table_space(p["elements"], table, top=top, max_base=max_base)
    if doc.kind == "builtin":
        return double_negation_space() if p["name"] == "double-negation" else one_point_space()
    if doc.kind == "derived":
        parent = build_space(_parent(doc), complete=complete, max_base=max_base)
        how = p["derivation"]
        if how == "closed":
            return closed_subspace(parent, parent.subset(p["subset"]))
        if how == "booleanization":
            return booleanization(parent)
        if how == "adjoined-top":
            return adjoin_top(parent)
        return beta_cover(parent)
    raise DocumentError(f"unknown kind {doc.kind!r}")


def _with_top(s: FormalTopology, payload: dict) -> FormalTopology:
    if "top" in payload:
        top = s.index(payload["top"])
        if s.singletons[top] != s.base:
            raise DocumentError(f"declared top {payload['top']!r} does not cover the base")
        s._explicit_top = top
    return s
