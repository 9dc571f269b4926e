"""Finite categories given by explicit composition tables, functors between
them, and the elementary predicates (mono, epi, iso, initial, terminal,
equivalence, repleteness) that every theory check is built on.

Objects and morphisms are plain string ids.  "Id order" is the order in
which they are listed; every search reports the least witness in that
order so results are reproducible.
"""
from __future__ import annotations

import itertools
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .kernels import CompositionTable
from .report import Report

DEFAULT_SIZE_LIMIT = 20000
SIZE_LIMIT_ENV = "PRETOR_SIZE_LIMIT"


class CategoryError(ValueError):
    pass


class UnknownId(CategoryError):
    pass


class SizeLimitExceeded(CategoryError):
    pass


class IllFormedFunctor(CategoryError):
    pass


def size_limit(override: int | None = None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get(SIZE_LIMIT_ENV)
    return int(env) if env else DEFAULT_SIZE_LIMIT


def check_size(count: int, what: str, limit: int | None = None) -> None:
    lim = size_limit(limit)
    if count > lim:
        raise SizeLimitExceeded(f"{what}: {count} morphisms exceeds size limit {lim}")


def tuple_id(parts: Sequence[str]) -> str:
    """Id of a tuple object or morphism in a product category."""
    return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class FinCategory:
    """An explicit finite category.

    ``morphisms`` lists ``(id, src, dst)`` triples; ``composition`` maps
    ``(g, f)`` to ``g∘f``.  Construction only checks that every id resolves;
    the category axioms are checked by :func:`validate`.
    """

    name: str
    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, str, str], ...]
    identities: Mapping[str, str]
    composition: Mapping[tuple[str, str], str] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(tuple(m) for m in self.morphisms))
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "composition", dict(self.composition))
        if len(set(self.objects)) != len(self.objects):
            dup = _first_duplicate(self.objects)
            raise CategoryError(f"duplicate object id {dup!r}")
        ids = [m[0] for m in self.morphisms]
        if len(set(ids)) != len(ids):
            raise CategoryError(f"duplicate morphism id {_first_duplicate(ids)!r}")
        obj = set(self.objects)
        for mid, s, d in self.morphisms:
            for end in (s, d):
                if end not in obj:
                    raise UnknownId(f"morphism {mid!r} refers to unknown object {end!r}")
        mors = set(ids)
        for x, i in self.identities.items():
            if x not in obj:
                raise UnknownId(f"identity declared for unknown object {x!r}")
            if i not in mors:
                raise UnknownId(f"identity of {x!r} is unknown morphism {i!r}")
        for (g, f), gf in self.composition.items():
            for m in (g, f, gf):
                if m not in mors:
                    raise UnknownId(f"composition entry ({g!r}, {f!r}) refers to unknown morphism {m!r}")

    __hash__ = object.__hash__

    # -- indexing -----------------------------------------------------------

    @cached_property
    def obj_index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.objects)}

    @cached_property
    def mor_index(self) -> dict[str, int]:
        return {m[0]: i for i, m in enumerate(self.morphisms)}

    @cached_property
    def mor_ids(self) -> list[str]:
        return [m[0] for m in self.morphisms]

    @cached_property
    def src_idx(self) -> list[int]:
        oi = self.obj_index
        return [oi[m[1]] for m in self.morphisms]

    @cached_property
    def dst_idx(self) -> list[int]:
        oi = self.obj_index
        return [oi[m[2]] for m in self.morphisms]

    @cached_property
    def ident_idx(self) -> list[int]:
        mi = self.mor_index
        return [mi[self.identities[x]] if x in self.identities else -1 for x in self.objects]

    @cached_property
    def table(self) -> CompositionTable:
        check_size(len(self.morphisms), f"category {self.name!r}")
        mi = self.mor_index
        entries = [(mi[g], mi[f], mi[gf]) for (g, f), gf in self.composition.items()]
        return CompositionTable(len(self.objects), self.src_idx, self.dst_idx, self.ident_idx, entries)

    @cached_property
    def homs(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = defaultdict(list)
        for m, (s, d) in enumerate(zip(self.src_idx, self.dst_idx)):
            out[s, d].append(m)
        return dict(out)

    def oi(self, x: str) -> int:
        try:
            return self.obj_index[x]
        except KeyError:
            raise UnknownId(f"unknown object {x!r} in {self.name!r}") from None

    def mi(self, f: str) -> int:
        try:
            return self.mor_index[f]
        except KeyError:
            raise UnknownId(f"unknown morphism {f!r} in {self.name!r}") from None

    # -- id-level access ------------------------------------------------------

    def src(self, f: str) -> str:
        return self.objects[self.src_idx[self.mi(f)]]

    def dst(self, f: str) -> str:
        return self.objects[self.dst_idx[self.mi(f)]]

    def identity(self, x: str) -> str:
        self.oi(x)
        return self.identities[x]

    def compose(self, g: str, f: str) -> str:
        """``g∘f``; raises CategoryError if the pair is not composable."""
        c = self.table.compose(self.mi(g), self.mi(f))
        if c < 0:
            raise CategoryError(f"{g!r} and {f!r} are not composable in {self.name!r}")
        return self.mor_ids[c]

    def hom(self, x: str, y: str) -> list[str]:
        ids = self.mor_ids
        return [ids[m] for m in self.homs.get((self.oi(x), self.oi(y)), [])]

    def hom_idx(self, x: int, y: int) -> list[int]:
        return self.homs.get((x, y), [])

    def composable_pairs(self) -> Iterable[tuple[int, int]]:
        """Index pairs ``(f, g)`` with ``dst(f) == src(g)``, in (f, g) order."""
        t = self.table
        for f in range(len(self.morphisms)):
            for g in t.outgoing(self.dst_idx[f]):
                yield f, g

    # -- cached predicates ----------------------------------------------------

    @cached_property
    def mono_flags(self) -> list[bool]:
        return list(self.table.mono_flags())

    @cached_property
    def epi_flags(self) -> list[bool]:
        return list(self.table.epi_flags())

    @cached_property
    def iso_flags(self) -> list[bool]:
        t = self.table
        return [t.iso_inverse(f) >= 0 for f in range(len(self.morphisms))]

    @cached_property
    def iso_partition(self) -> list[list[int]]:
        """Isomorphism classes of objects as sorted index lists, ordered by least member."""
        ds = DisjointSet(range(len(self.objects)))
        for f, is_iso in enumerate(self.iso_flags):
            if is_iso:
                ds.merge(self.src_idx[f], self.dst_idx[f])
        classes = [sorted(c) for c in ds.subsets()]
        return sorted(classes, key=lambda c: c[0])

    @cached_property
    def iso_class_of(self) -> list[int]:
        out = [0] * len(self.objects)
        for k, cls in enumerate(self.iso_partition):
            for x in cls:
                out[x] = k
        return out


def _first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return None


def make_category(name, objects, morphisms, identities, composition) -> FinCategory:
    """Build a category and raise CategoryError unless it satisfies the axioms."""
    cat = FinCategory(name, objects, morphisms, identities, composition)
    rep = validate(cat)
    if not rep.ok:
        raise CategoryError(f"{name!r} violates the category axioms: {rep.witnesses[0]}")
    return cat


# -- validation -----------------------------------------------------------------


def validate(cat: FinCategory) -> Report:
    """Check identities, totality, typing of composites, identity laws and
    associativity.  Every violation is listed; associativity reports the
    least failing triple only."""
    ids = cat.mor_ids
    violations = []
    ident_ok = True
    for x in cat.objects:
        if x not in cat.identities:
            violations.append({"axiom": "identity", "object": x, "reason": "missing identity"})
            ident_ok = False
            continue
        i = cat.identities[x]
        if cat.src(i) != x or cat.dst(i) != x:
            violations.append({"axiom": "identity", "object": x, "morphisms": [i],
                               "reason": "identity is not an endomorphism of its object"})
            ident_ok = False
    typed = True
    for (g, f), gf in sorted(cat.composition.items(), key=lambda kv: (cat.mi(kv[0][0]), cat.mi(kv[0][1]))):
        if cat.dst(f) != cat.src(g):
            violations.append({"axiom": "totality", "morphisms": [g, f],
                               "reason": "composite defined on a non-composable pair"})
            typed = False
        elif cat.src(gf) != cat.src(f) or cat.dst(gf) != cat.dst(g):
            violations.append({"axiom": "typing", "morphisms": [g, f, gf],
                               "reason": "composite has wrong source or target"})
            typed = False
    t = cat.table
    missing = t.missing()
    for g, f in missing:
        violations.append({"axiom": "totality", "morphisms": [ids[g], ids[f]],
                           "reason": "composable pair without a composite"})
    if ident_ok:
        for f in range(len(ids)):
            s, d = cat.src_idx[f], cat.dst_idx[f]
            left = t.compose(cat.ident_idx[d], f)
            right = t.compose(f, cat.ident_idx[s])
            if left >= 0 and left != f:
                violations.append({"axiom": "identity law", "morphisms": [ids[f]],
                                   "reason": "id_dst ∘ f != f"})
            if right >= 0 and right != f:
                violations.append({"axiom": "identity law", "morphisms": [ids[f]],
                                   "reason": "f ∘ id_src != f"})
    if typed:
        triple = t.assoc_violation()
        if triple is not None:
            f, g, h = triple
            violations.append({"axiom": "associativity", "morphisms": [ids[h], ids[g], ids[f]],
                               "reason": "(h∘g)∘f != h∘(g∘f)"})
    return Report("validate", not violations, checked=len(ids), witnesses=violations,
                  details={"objects": len(cat.objects), "morphisms": len(ids)})


# -- elementary predicates ------------------------------------------------------


def is_mono(cat: FinCategory, f: str) -> bool:
    return cat.mono_flags[cat.mi(f)]


def is_epi(cat: FinCategory, f: str) -> bool:
    return cat.epi_flags[cat.mi(f)]


def mono_witness(cat: FinCategory, f: str) -> tuple[str, str] | None:
    """Least distinct pair ``(u, v)`` with ``f∘u == f∘v``."""
    w = cat.table.mono_witness(cat.mi(f))
    return None if w is None else (cat.mor_ids[w[0]], cat.mor_ids[w[1]])


def epi_witness(cat: FinCategory, f: str) -> tuple[str, str] | None:
    w = cat.table.epi_witness(cat.mi(f))
    return None if w is None else (cat.mor_ids[w[0]], cat.mor_ids[w[1]])


def is_iso(cat: FinCategory, f: str) -> bool:
    return cat.iso_flags[cat.mi(f)]


def inverse(cat: FinCategory, f: str) -> str | None:
    g = cat.table.iso_inverse(cat.mi(f))
    return None if g < 0 else cat.mor_ids[g]


def _hom_counts(cat: FinCategory) -> dict[tuple[int, int], int]:
    return {k: len(v) for k, v in cat.homs.items()}


def terminal_objects(cat: FinCategory) -> list[str]:
    counts = _hom_counts(cat)
    n = len(cat.objects)
    return [cat.objects[t] for t in range(n) if all(counts.get((x, t), 0) == 1 for x in range(n))]


def initial_objects(cat: FinCategory) -> list[str]:
    counts = _hom_counts(cat)
    n = len(cat.objects)
    return [cat.objects[i] for i in range(n) if all(counts.get((i, x), 0) == 1 for x in range(n))]


def unique_morphism(cat: FinCategory, x: str, y: str) -> str:
    hom = cat.hom(x, y)
    if len(hom) != 1:
        raise CategoryError(f"hom({x!r}, {y!r}) has {len(hom)} elements, expected 1")
    return hom[0]


# -- constructions ----------------------------------------------------------------


def _op_name(name: str) -> str:
    return name[:-3] if name.endswith("^op") else name + "^op"


def opposite(cat: FinCategory) -> FinCategory:
    """Same ids, sources and targets swapped, composition transposed."""
    return FinCategory(
        _op_name(cat.name),
        cat.objects,
        tuple((m, d, s) for m, s, d in cat.morphisms),
        cat.identities,
        {(f, g): gf for (g, f), gf in cat.composition.items()},
    )


def product(cats: Sequence[FinCategory], limit: int | None = None) -> tuple[FinCategory, list["Functor"]]:
    """Finite product with lexicographically ordered tuple ids, plus projections."""
    if not cats:
        raise CategoryError("product of an empty family is not supported")
    count = 1
    for c in cats:
        count *= len(c.morphisms)
    check_size(count, "product", limit)
    objects = [tuple_id(xs) for xs in itertools.product(*(c.objects for c in cats))]
    morphisms = []
    for parts in itertools.product(*(c.morphisms for c in cats)):
        morphisms.append((tuple_id([p[0] for p in parts]),
                          tuple_id([p[1] for p in parts]),
                          tuple_id([p[2] for p in parts])))
    identities = {tuple_id(xs): tuple_id([c.identities[x] for c, x in zip(cats, xs)])
                  for xs in itertools.product(*(c.objects for c in cats))}
    composition = {}
    for parts in itertools.product(*(list(c.composition.items()) for c in cats)):
        g = tuple_id([p[0][0] for p in parts])
        f = tuple_id([p[0][1] for p in parts])
        composition[g, f] = tuple_id([p[1] for p in parts])
    prod = FinCategory(" x ".join(c.name for c in cats), objects, morphisms, identities, composition)
    projections = []
    for i, c in enumerate(cats):
        omap = {tuple_id(xs): xs[i] for xs in itertools.product(*(d.objects for d in cats))}
        mmap = {tuple_id([p[0] for p in parts]): parts[i][0]
                for parts in itertools.product(*(d.morphisms for d in cats))}
        projections.append(Functor(prod, c, omap, mmap, name=f"pi_{i}"))
    return prod, projections


@dataclass(frozen=True)
class FullSubcategory:
    ambient: FinCategory
    object_set: frozenset[str]

    def category(self, name: str | None = None) -> FinCategory:
        return full_subcategory(self.ambient, self.object_set, name)


def full_subcategory(cat: FinCategory, objs: Iterable[str], name: str | None = None) -> FinCategory:
    keep = set(objs)
    for x in keep:
        cat.oi(x)
    morphisms = [m for m in cat.morphisms if m[1] in keep and m[2] in keep]
    mids = {m[0] for m in morphisms}
    comp = {(g, f): gf for (g, f), gf in cat.composition.items() if g in mids and f in mids}
    return FinCategory(
        name or f"{cat.name}|{{{','.join(x for x in cat.objects if x in keep)}}}",
        [x for x in cat.objects if x in keep],
        morphisms,
        {x: i for x, i in cat.identities.items() if x in keep},
        comp,
    )


def is_replete(cat: FinCategory, objs: Iterable[str]) -> bool:
    members = {cat.oi(x) for x in objs}
    return all(set(c) <= members or not (set(c) & members) for c in cat.iso_partition)


def replete_closure(cat: FinCategory, objs: Iterable[str]) -> list[str]:
    members = {cat.oi(x) for x in objs}
    cls = cat.iso_class_of
    hit = {cls[x] for x in members}
    return [x for i, x in enumerate(cat.objects) if cls[i] in hit]


# -- functors -------------------------------------------------------------------------


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    object_map: Mapping[str, str]
    morphism_map: Mapping[str, str]
    name: str = "F"

    __hash__ = object.__hash__

    def on_object(self, x: str) -> str:
        return self.object_map[x]

    def __call__(self, f: str) -> str:
        return self.morphism_map[f]


def check_functor(F: Functor) -> Report:
    """Check that ``F`` is total and preserves endpoints, identities and composites."""
    S, T = F.source, F.target
    problems = []
    for x in S.objects:
        y = F.object_map.get(x)
        if y is None or y not in T.obj_index:
            problems.append({"law": "object map", "object": x})
    for f, s, d in S.morphisms:
        g = F.morphism_map.get(f)
        if g is None or g not in T.mor_index:
            problems.append({"law": "morphism map", "morphisms": [f]})
            continue
        if T.src(g) != F.object_map.get(s) or T.dst(g) != F.object_map.get(d):
            problems.append({"law": "endpoints", "morphisms": [f]})
    if not problems:
        for x in S.objects:
            if F.morphism_map[S.identities[x]] != T.identities[F.object_map[x]]:
                problems.append({"law": "identity", "object": x})
        for (g, f), gf in S.composition.items():
            if T.compose(F.morphism_map[g], F.morphism_map[f]) != F.morphism_map[gf]:
                problems.append({"law": "composition", "morphisms": [g, f]})
                break
    return Report("functor", not problems, checked=len(S.morphisms), witnesses=problems[:1],
                  details={"functor": F.name})


def require_functor(F: Functor) -> Functor:
    rep = check_functor(F)
    if not rep.ok:
        raise IllFormedFunctor(f"{F.name} is not a functor: {rep.witnesses[0]}")
    return F


def identity_functor(cat: FinCategory) -> Functor:
    return Functor(cat, cat, {x: x for x in cat.objects}, {m: m for m in cat.mor_ids}, name="id")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G∘F``."""
    if F.target is not G.source and F.target != G.source:
        raise IllFormedFunctor(f"cannot compose {G.name} after {F.name}")
    return Functor(
        F.source, G.target,
        {x: G.object_map[y] for x, y in F.object_map.items()},
        {f: G.morphism_map[g] for f, g in F.morphism_map.items()},
        name=f"{G.name}∘{F.name}",
    )


def _hom_images(F: Functor):
    S, T = F.source, F.target
    for x in S.objects:
        for y in S.objects:
            images = [F.morphism_map[f] for f in S.hom(x, y)]
            yield x, y, images, T.hom(F.object_map[x], F.object_map[y])


def full_witness(F: Functor):
    for x, y, images, target in _hom_images(F):
        missed = set(target) - set(images)
        if missed:
            return {"objects": [x, y], "missed": [g for g in target if g in missed][:1]}
    return None


def faithful_witness(F: Functor):
    for x, y, images, _ in _hom_images(F):
        seen = {}
        for f, g in zip(F.source.hom(x, y), images):
            if g in seen:
                return {"objects": [x, y], "morphisms": [seen[g], f]}
            seen[g] = f
    return None


def ess_surjective_witness(F: Functor):
    T = F.target
    hit = {T.iso_class_of[T.oi(y)] for y in F.object_map.values()}
    for i, y in enumerate(T.objects):
        if T.iso_class_of[i] not in hit:
            return {"object": y}
    return None


def is_full(F: Functor) -> bool:
    require_functor(F)
    return full_witness(F) is None


def is_faithful(F: Functor) -> bool:
    require_functor(F)
    return faithful_witness(F) is None


def is_essentially_surjective(F: Functor) -> bool:
    require_functor(F)
    return ess_surjective_witness(F) is None


def equivalence_report(F: Functor) -> Report:
    """Decide whether ``F`` is an equivalence, naming the first failing axis."""
    require_functor(F)
    axes = [("full", full_witness), ("faithful", faithful_witness),
            ("essentially surjective", ess_surjective_witness)]
    failing, witnesses = [], []
    for axis, fn in axes:
        w = fn(F)
        if w is not None:
            failing.append(axis)
            witnesses.append({"axis": axis, **w})
    return Report("equivalence", not failing, checked=len(F.source.morphisms),
                  witnesses=witnesses, details={"failing_axes": failing, "functor": F.name})


def is_equivalence(F: Functor) -> bool:
    return equivalence_report(F).ok
