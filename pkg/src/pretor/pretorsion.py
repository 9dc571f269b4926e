"""Pretorsion theories on finite categories.

A theory is a pair of replete object classes (torsion, torsion-free).  The
null morphisms are those factoring through an object of both classes; the
multi-pointed variant takes an arbitrary ideal instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .exactness import SesCandidate, find_ses, is_ses_def, kernel_witness, cokernel_witness
from .fincat import (
    CategoryError,
    FinCategory,
    Functor,
    check_functor,
    equivalence_report,
    full_subcategory,
    is_replete,
    opposite,
    product,
    replete_closure,
    require_functor,
    tuple_id,
)
from .ideals import Ideal, check_ideal, closed_ideal_witness, ideal_generated_by_objects, null_objects, IdealError
from .report import Report


class TheoryError(CategoryError):
    pass


class NotReplete(TheoryError):
    pass


class NotATheory(TheoryError):
    pass


class AmbiguousFactorization(TheoryError):
    pass


class PreconditionNotChecked(TheoryError):
    pass


class PreconditionUnmet(TheoryError):
    pass


def _ordered(cat: FinCategory, objs: Iterable[str]) -> tuple[str, ...]:
    keep = set(objs)
    for x in keep:
        cat.oi(x)
    return tuple(x for x in cat.objects if x in keep)


def _require_replete(cat, objs, label):
    if not is_replete(cat, objs):
        closure = replete_closure(cat, objs)
        extra = [x for x in closure if x not in set(objs)]
        raise NotReplete(f"{label} class is not replete: {extra[0]!r} is isomorphic to a member")


@dataclass(frozen=True)
class PretorsionTheory:
    """Candidate pretorsion theory ``(torsion, torsionfree)`` on ``cat``.

    Both classes must be replete; pass ``replete_closure=True`` to
    :meth:`create` to close them instead.
    """

    cat: FinCategory
    torsion: tuple[str, ...]
    torsionfree: tuple[str, ...]

    __hash__ = object.__hash__

    def __post_init__(self):
        object.__setattr__(self, "torsion", _ordered(self.cat, self.torsion))
        object.__setattr__(self, "torsionfree", _ordered(self.cat, self.torsionfree))
        _require_replete(self.cat, self.torsion, "torsion")
        _require_replete(self.cat, self.torsionfree, "torsion-free")

    @classmethod
    def create(cls, cat, torsion, torsionfree, replete_closure: bool = False):
        if replete_closure:
            torsion = _closure(cat, torsion)
            torsionfree = _closure(cat, torsionfree)
        return cls(cat, tuple(torsion), tuple(torsionfree))

    @property
    def z(self) -> tuple[str, ...]:
        tf = set(self.torsionfree)
        return tuple(x for x in self.torsion if x in tf)

    @cached_property
    def null(self) -> Ideal:
        return ideal_generated_by_objects(self.cat, self.z)


def _closure(cat, objs):
    return replete_closure(cat, objs)


@dataclass(frozen=True)
class MultiPointedTheory:
    """Torsion/torsion-free classes paired with an independently supplied ideal."""

    cat: FinCategory
    torsion: tuple[str, ...]
    torsionfree: tuple[str, ...]
    ideal: Ideal

    __hash__ = object.__hash__

    def __post_init__(self):
        object.__setattr__(self, "torsion", _ordered(self.cat, self.torsion))
        object.__setattr__(self, "torsionfree", _ordered(self.cat, self.torsionfree))
        if self.ideal.ambient is not self.cat and self.ideal.ambient != self.cat:
            raise TheoryError("ideal belongs to a different category")
        rep = check_ideal(self.ideal)
        if not rep.ok:
            w = rep.witnesses[0]
            raise IdealError(f"not an ideal: {w['morphisms'][0]}∘{w['morphisms'][1]} = {w['composite']} is missing")
        _require_replete(self.cat, self.torsion, "torsion")
        _require_replete(self.cat, self.torsionfree, "torsion-free")

    @classmethod
    def from_theory(cls, pt: PretorsionTheory) -> "MultiPointedTheory":
        return cls(pt.cat, pt.torsion, pt.torsionfree, pt.null)

    @property
    def z(self) -> tuple[str, ...]:
        tf = set(self.torsionfree)
        return tuple(x for x in self.torsion if x in tf)

    @property
    def null(self) -> Ideal:
        return self.ideal


@dataclass
class TheoryReport:
    verdict: bool
    t1_witness: str | None
    t2_failures: list[str]
    per_object_ses: dict[str, SesCandidate] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "t1_witness": self.t1_witness,
            "t2_failures": list(self.t2_failures),
            "per_object_ses": {x: [s.m, s.e] for x, s in self.per_object_ses.items()},
        }


# -- T1 / T2 -------------------------------------------------------------------------


def check_T1(pt) -> Report:
    """Every morphism from a torsion object to a torsion-free object is null."""
    cat, mask = pt.cat, pt.null.mask
    tors, free = set(pt.torsion), set(pt.torsionfree)
    checked = 0
    for i, (f, s, d) in enumerate(cat.morphisms):
        if s in tors and d in free:
            checked += 1
            if not mask[i]:
                return Report("T1", False, checked=checked, witnesses=[f])
    return Report("T1", True, checked=checked)


def _t2_search(pt) -> tuple[dict[str, SesCandidate], list[str]]:
    chosen, failures = {}, []
    for x in pt.cat.objects:
        found = find_ses(pt.cat, pt.null, x, pt.torsion, pt.torsionfree, first_only=True)
        if found:
            chosen[x] = found[0]
        else:
            failures.append(x)
    return chosen, failures


def check_T2(pt) -> Report:
    """Every object sits in a short exact sequence with torsion left end and
    torsion-free right end.  Records the least such sequence per object."""
    chosen, failures = _t2_search(pt)
    return Report("T2", not failures, checked=len(pt.cat.objects), witnesses=failures,
                  details={"per_object_ses": {x: [s.m, s.e] for x, s in chosen.items()}})


def is_pretorsion_theory(pt) -> TheoryReport:
    t1 = check_T1(pt)
    chosen, failures = _t2_search(pt)
    return TheoryReport(
        verdict=t1.ok and not failures,
        t1_witness=t1.witnesses[0] if t1.witnesses else None,
        t2_failures=failures,
        per_object_ses=chosen,
    )


def dual_theory(pt: PretorsionTheory) -> PretorsionTheory:
    """The same classes, swapped, in the opposite category."""
    return PretorsionTheory(opposite(pt.cat), pt.torsionfree, pt.torsion)


# -- torsion and torsion-free functors --------------------------------------------------


def _canonical_ses(pt) -> dict[str, SesCandidate]:
    rep = is_pretorsion_theory(pt)
    if not rep:
        raise NotATheory(f"not a pretorsion theory (T1 witness {rep.t1_witness}, "
                         f"T2 failures {rep.t2_failures})")
    return rep.per_object_ses


def torsion_subcategory(pt) -> FinCategory:
    return full_subcategory(pt.cat, pt.torsion, name=f"{pt.cat.name}|T")


def torsionfree_subcategory(pt) -> FinCategory:
    return full_subcategory(pt.cat, pt.torsionfree, name=f"{pt.cat.name}|F")


def torsion_functor(pt, ses: dict[str, SesCandidate] | None = None) -> Functor:
    """``t``: sends X to the left end of its canonical sequence ``t(X) -> X -> f(X)``."""
    ses = ses or _canonical_ses(pt)
    cat = pt.cat
    omap = {x: cat.src(s.m) for x, s in ses.items()}
    mmap = {}
    for g, x, y in cat.morphisms:
        mx, my = ses[x].m, ses[y].m
        target = cat.compose(g, mx)
        hits = [h for h in cat.hom(omap[x], omap[y]) if cat.compose(my, h) == target]
        if len(hits) != 1:
            raise AmbiguousFactorization(
                f"t({g}): {len(hits)} factorizations of {g}∘{mx} through {my}")
        mmap[g] = hits[0]
    F = Functor(cat, torsion_subcategory(pt), omap, mmap, name="t")
    return require_functor(F)


def torsionfree_functor(pt, ses: dict[str, SesCandidate] | None = None) -> Functor:
    """``f``: sends X to the right end of its canonical sequence."""
    ses = ses or _canonical_ses(pt)
    cat = pt.cat
    omap = {x: cat.dst(s.e) for x, s in ses.items()}
    mmap = {}
    for g, x, y in cat.morphisms:
        ex, ey = ses[x].e, ses[y].e
        target = cat.compose(ey, g)
        hits = [k for k in cat.hom(omap[x], omap[y]) if cat.compose(k, ex) == target]
        if len(hits) != 1:
            raise AmbiguousFactorization(
                f"f({g}): {len(hits)} factorizations of {ey}∘{g} through {ex}")
        mmap[g] = hits[0]
    F = Functor(cat, torsionfree_subcategory(pt), omap, mmap, name="f")
    return require_functor(F)


def comparison_functor(pt) -> Functor:
    """``K``: X ↦ (t(X), f(X)) into the product of the two full subcategories."""
    ses = _canonical_ses(pt)
    t = torsion_functor(pt, ses)
    f = torsionfree_functor(pt, ses)
    target, _ = product([t.target, f.target])
    omap = {x: tuple_id([t.object_map[x], f.object_map[x]]) for x in pt.cat.objects}
    mmap = {g: tuple_id([t.morphism_map[g], f.morphism_map[g]]) for g in pt.cat.mor_ids}
    return Functor(pt.cat, target, omap, mmap, name="K")


def thinness_report(pt) -> Report:
    K = comparison_functor(pt)
    law = check_functor(K)
    if not law.ok:
        raise AmbiguousFactorization(f"comparison functor breaks a functor law: {law.witnesses[0]}")
    rep = equivalence_report(K)
    rep.check = "thin"
    rep.details["object_map"] = {x: K.object_map[x] for x in pt.cat.objects}
    return rep


def is_thin(pt) -> tuple[bool, Report]:
    rep = thinness_report(pt)
    return rep.ok, rep


# -- multi-pointed checks ---------------------------------------------------------------


def check_T0(mpt) -> Report:
    """The ideal is closed: each member factors through a null object."""
    w = closed_ideal_witness(mpt.null)
    return Report("T0", w is None, checked=len(mpt.null.members), witnesses=[] if w is None else [w])


def check_T3(mpt) -> Report:
    """Every identity morphism has a kernel and a cokernel relative to the ideal."""
    cat, ideal = mpt.cat, mpt.null
    failing = []
    for x in cat.objects:
        ix = cat.identities[x]
        lacks = []
        if not any(kernel_witness(cat, ideal, k, ix) is None
                   for y in cat.objects for k in cat.hom(y, x)):
            lacks.append("kernel")
        if not any(cokernel_witness(cat, ideal, c, ix) is None
                   for y in cat.objects for c in cat.hom(x, y)):
            lacks.append("cokernel")
        if lacks:
            failing.append({"object": x, "lacks": lacks})
    return Report("T3", not failing, checked=len(cat.objects), witnesses=failing[:1],
                  details={"failing_objects": [f["object"] for f in failing]})


@dataclass
class MultiPointedReport:
    t0: Report
    t1: Report
    t2: Report
    t3: Report

    @property
    def ok(self) -> bool:
        return all(r.ok for r in (self.t0, self.t1, self.t2, self.t3))


def check_multi_pointed(mpt) -> MultiPointedReport:
    return MultiPointedReport(check_T0(mpt), check_T1(mpt), check_T2(mpt), check_T3(mpt))


def null_objects_are_Z(mpt, checks: MultiPointedReport | None = None) -> Report:
    """Compare the objects with null identity against the torsion ∩ torsion-free class.

    ``checks`` must be the result of :func:`check_multi_pointed` for ``mpt``
    and must show T0-T3 all passing.
    """
    if checks is None:
        raise PreconditionNotChecked("run check_multi_pointed first and pass its report")
    if not checks.ok:
        failed = [n for n, r in (("T0", checks.t0), ("T1", checks.t1), ("T2", checks.t2), ("T3", checks.t3))
                  if not r.ok]
        raise PreconditionUnmet(f"precondition unmet: {', '.join(failed)} failed")
    cat = mpt.cat
    nulls = set(null_objects(mpt.null))
    z = set(mpt.z)
    diff = [x for x in cat.objects if (x in nulls) != (x in z)]
    return Report("null objects = T∩F", not diff, checked=len(cat.objects), witnesses=diff[:1],
                  details={"null_objects": [x for x in cat.objects if x in nulls], "z": list(mpt.z)})


# -- morphisms of theories -----------------------------------------------------------------


def theory_morphism_report(M: Functor, pt, pt2) -> Report:
    require_functor(M)
    if M.source != pt.cat or M.target != pt2.cat:
        raise CategoryError("functor endpoints do not match the theories")
    t2, f2 = set(pt2.torsion), set(pt2.torsionfree)
    for x in pt.torsion:
        if M.object_map[x] not in t2:
            return Report("theory morphism", False, witnesses=[{"torsion object": x}])
    for x in pt.torsionfree:
        if M.object_map[x] not in f2:
            return Report("theory morphism", False, witnesses=[{"torsion-free object": x}])
    checked = 0
    for x in pt.cat.objects:
        for s in find_ses(pt.cat, pt.null, x, pt.torsion, pt.torsionfree):
            checked += 1
            image = SesCandidate(pt2.cat, pt2.null, M(s.m), M(s.e))
            if not is_ses_def(image):
                return Report("theory morphism", False, checked=checked,
                              witnesses=[{"ses": [s.m, s.e]}])
    return Report("theory morphism", True, checked=checked)


def is_theory_morphism(M: Functor, pt, pt2) -> bool:
    return theory_morphism_report(M, pt, pt2).ok
