"""JSON documents for categories and theories.

Category document::

    {"name": ..., "objects": [id, ...],
     "morphisms": [{"id", "src", "dst"}, ...],
     "identities": {object: morphism},
     "composition": [{"g", "f", "gf"}, ...]}

Theory document::

    {"category": <category document> | "relative/path.json",
     "torsion": [...], "torsionfree": [...],
     "ideal": [...],                     # optional explicit ideal
     "flags": {"replete_closure": bool, "multi_pointed": bool}}

Serialization is canonical: objects and morphisms in id order,
composition sorted by (g, f) id order, keys sorted, UTF-8.
"""
from __future__ import annotations

import json
import os
from typing import Any

from .fincat import CategoryError, FinCategory, validate
from .ideals import Ideal, check_ideal
from .pretorsion import MultiPointedTheory, NotReplete, PretorsionTheory


class DocumentError(CategoryError):
    """A document problem with a location (``line:col`` or a JSON path)."""

    kind = "MalformedDocument"

    def __init__(self, message: str, location: str, offending: str | None = None):
        self.location = location
        self.offending = offending
        super().__init__(f"{self.kind} at {location}: {message}")


class MalformedDocument(DocumentError):
    kind = "MalformedDocument"


class UnresolvedId(DocumentError):
    kind = "UnresolvedId"


class AxiomViolation(DocumentError):
    kind = "AxiomViolation"


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(exc.msg, f"{source}:{exc.lineno}:{exc.colno}") from None


def _expect(cond, message, path):
    if not cond:
        raise MalformedDocument(message, path)


def _string_list(value, path):
    _expect(isinstance(value, list), "expected a list of ids", path)
    for i, v in enumerate(value):
        _expect(isinstance(v, str), "expected a string id", f"{path}[{i}]")
    return value


# -- categories ---------------------------------------------------------------------


def category_from_obj(doc: Any, path: str = "$", check_axioms: bool = True) -> FinCategory:
    _expect(isinstance(doc, dict), "category document must be an object", path)
    for key in ("name", "objects", "morphisms", "identities", "composition"):
        _expect(key in doc, f"missing key {key!r}", path)
    _expect(isinstance(doc["name"], str), "name must be a string", f"{path}.name")
    objects = _string_list(doc["objects"], f"{path}.objects")
    seen = set()
    for i, x in enumerate(objects):
        if x in seen:
            raise MalformedDocument(f"duplicate object id {x!r}", f"{path}.objects[{i}]", x)
        seen.add(x)
    morphisms = []
    mids = set()
    _expect(isinstance(doc["morphisms"], list), "morphisms must be a list", f"{path}.morphisms")
    for i, m in enumerate(doc["morphisms"]):
        mp = f"{path}.morphisms[{i}]"
        _expect(isinstance(m, dict) and set(m) >= {"id", "src", "dst"},
                "morphism needs id, src, dst", mp)
        for key in ("id", "src", "dst"):
            _expect(isinstance(m[key], str), f"{key} must be a string", f"{mp}.{key}")
        if m["id"] in mids:
            raise MalformedDocument(f"duplicate morphism id {m['id']!r}", f"{mp}.id", m["id"])
        mids.add(m["id"])
        for key in ("src", "dst"):
            if m[key] not in seen:
                raise UnresolvedId(f"unknown object {m[key]!r}", f"{mp}.{key}", m[key])
        morphisms.append((m["id"], m["src"], m["dst"]))
    idents = doc["identities"]
    _expect(isinstance(idents, dict), "identities must be an object", f"{path}.identities")
    for x, i in idents.items():
        if x not in seen:
            raise UnresolvedId(f"identity for unknown object {x!r}", f"{path}.identities", x)
        _expect(isinstance(i, str), "identity must be a morphism id", f"{path}.identities.{x}")
        if i not in mids:
            raise UnresolvedId(f"unknown morphism {i!r}", f"{path}.identities.{x}", i)
    composition = {}
    _expect(isinstance(doc["composition"], list), "composition must be a list", f"{path}.composition")
    for i, entry in enumerate(doc["composition"]):
        cp = f"{path}.composition[{i}]"
        _expect(isinstance(entry, dict) and set(entry) >= {"g", "f", "gf"},
                "composition entry needs g, f, gf", cp)
        for key in ("g", "f", "gf"):
            if not isinstance(entry[key], str):
                raise MalformedDocument(f"{key} must be a string", f"{cp}.{key}")
            if entry[key] not in mids:
                raise UnresolvedId(f"unknown morphism {entry[key]!r}", f"{cp}.{key}", entry[key])
        key = (entry["g"], entry["f"])
        if key in composition:
            raise MalformedDocument(f"composite {key[0]}∘{key[1]} given twice", cp, key[0])
        composition[key] = entry["gf"]
    cat = FinCategory(doc["name"], objects, morphisms, idents, composition)
    if check_axioms:
        rep = validate(cat)
        if not rep.ok:
            w = rep.witnesses[0]
            names = w.get("morphisms") or [w.get("object")]
            raise AxiomViolation(f"{w['axiom']}: {w['reason']} ({', '.join(names)})",
                                 f"{path}.composition" if w["axiom"] != "identity" else f"{path}.identities",
                                 names[0])
    return cat


def parse_category(text: str, source: str = "<string>", check_axioms: bool = True) -> FinCategory:
    return category_from_obj(_load_json(text, source), "$", check_axioms)


def category_to_obj(cat: FinCategory) -> dict:
    mi = cat.mor_index
    comp = sorted(cat.composition.items(), key=lambda kv: (mi[kv[0][0]], mi[kv[0][1]]))
    return {
        "name": cat.name,
        "objects": list(cat.objects),
        "morphisms": [{"id": m, "src": s, "dst": d} for m, s, d in cat.morphisms],
        "identities": {x: cat.identities[x] for x in cat.objects if x in cat.identities},
        "composition": [{"g": g, "f": f, "gf": gf} for (g, f), gf in comp],
    }


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def serialize_category(cat: FinCategory) -> str:
    return _dumps(category_to_obj(cat))


# -- theories ---------------------------------------------------------------------------


def theory_from_obj(doc: Any, base_dir: str | None = None, replete_closure: bool | None = None,
                    multi_pointed: bool | None = None):
    """Build a PretorsionTheory, or a MultiPointedTheory when an explicit ideal
    is given or the multi-pointed flag is set."""
    _expect(isinstance(doc, dict), "theory document must be an object", "$")
    for key in ("category", "torsion", "torsionfree"):
        _expect(key in doc, f"missing key {key!r}", "$")
    cat_doc = doc["category"]
    if isinstance(cat_doc, str):
        ref = os.path.join(base_dir or ".", cat_doc)
        try:
            with open(ref, encoding="utf-8") as fh:
                cat = parse_category(fh.read(), source=ref)
        except OSError as exc:
            raise MalformedDocument(f"cannot read category file: {exc.strerror}", "$.category", cat_doc) from None
    else:
        cat = category_from_obj(cat_doc, "$.category")
    flags = doc.get("flags", {})
    _expect(isinstance(flags, dict), "flags must be an object", "$.flags")
    closure = bool(flags.get("replete_closure", False)) if replete_closure is None else replete_closure
    multi = bool(flags.get("multi_pointed", False)) if multi_pointed is None else multi_pointed
    classes = {}
    for key in ("torsion", "torsionfree"):
        ids = _string_list(doc[key], f"$.{key}")
        for i, x in enumerate(ids):
            if x not in cat.obj_index:
                raise UnresolvedId(f"unknown object {x!r}", f"$.{key}[{i}]", x)
        classes[key] = ids
    try:
        pt = PretorsionTheory.create(cat, classes["torsion"], classes["torsionfree"], replete_closure=closure)
    except NotReplete as exc:
        raise MalformedDocument(str(exc), "$.torsion") from None
    if "ideal" not in doc and not multi:
        return pt
    if "ideal" in doc:
        members = _string_list(doc["ideal"], "$.ideal")
        for i, f in enumerate(members):
            if f not in cat.mor_index:
                raise UnresolvedId(f"unknown morphism {f!r}", f"$.ideal[{i}]", f)
        ideal = Ideal(cat, frozenset(members))
        rep = check_ideal(ideal)
        if not rep.ok:
            w = rep.witnesses[0]
            g, f = w["morphisms"]
            raise MalformedDocument(f"ideal not closed: {g}∘{f} = {w['composite']} is not listed",
                                    "$.ideal", w["composite"])
    else:
        ideal = pt.null
    return MultiPointedTheory(cat, pt.torsion, pt.torsionfree, ideal)


def parse_theory(text: str, source: str = "<string>", base_dir: str | None = None, **kw):
    return theory_from_obj(_load_json(text, source), base_dir, **kw)


def theory_to_obj(pt) -> dict:
    doc = {
        "category": category_to_obj(pt.cat),
        "torsion": list(pt.torsion),
        "torsionfree": list(pt.torsionfree),
    }
    if isinstance(pt, MultiPointedTheory):
        doc["ideal"] = pt.ideal.sorted_members()
        doc["flags"] = {"multi_pointed": True}
    return doc


def serialize_theory(pt) -> str:
    return _dumps(theory_to_obj(pt))


# -- files ------------------------------------------------------------------------------


def load_category(path: str, check_axioms: bool = True) -> FinCategory:
    """Load a category document, or the category embedded in a theory document."""
    with open(path, encoding="utf-8") as fh:
        doc = _load_json(fh.read(), path)
    if isinstance(doc, dict) and "torsion" in doc and "category" in doc:
        inner = doc["category"]
        if isinstance(inner, str):
            return load_category(os.path.join(os.path.dirname(path), inner), check_axioms)
        return category_from_obj(inner, "$.category", check_axioms)
    return category_from_obj(doc, "$", check_axioms)


def load_theory(path: str, **kw):
    with open(path, encoding="utf-8") as fh:
        return parse_theory(fh.read(), source=path, base_dir=os.path.dirname(path), **kw)


def is_theory_document(text: str) -> bool:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        return False
    return isinstance(doc, dict) and "torsion" in doc
