"""Theory-level constructions: products of categories with a terminal and
an initial object, the one-sided theories built from terminals or
initials, products of theories, and (co)reflectivity tests."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fincat import (
    CategoryError,
    FinCategory,
    epi_witness,
    initial_objects,
    is_epi,
    is_mono,
    is_replete,
    mono_witness,
    opposite,
    product,
    replete_closure,
    terminal_objects,
    tuple_id,
)
from .pretorsion import NotReplete, PretorsionTheory, check_T3, is_pretorsion_theory, is_thin
from .report import Report


class MissingTerminal(CategoryError):
    pass


class MissingInitial(CategoryError):
    pass


def _terminals(C: FinCategory) -> list[str]:
    ts = terminal_objects(C)
    if not ts:
        raise MissingTerminal(f"{C.name!r} has no terminal object")
    return ts


def _initials(D: FinCategory) -> list[str]:
    xs = initial_objects(D)
    if not xs:
        raise MissingInitial(f"{D.name!r} has no initial object")
    return xs


# -- the product construction -------------------------------------------------------


def theorem_A_theory(C: FinCategory, D: FinCategory, limit: int | None = None) -> PretorsionTheory:
    """On ``C × D``: torsion objects ``(c, 0)`` and torsion-free objects ``(1, d)``
    with ``0`` ranging over initial objects of D and ``1`` over terminals of C."""
    terms, inits = _terminals(C), _initials(D)
    cat, _ = product([C, D], limit)
    torsion = [tuple_id([c, i]) for c in C.objects for i in inits]
    torsionfree = [tuple_id([t, d]) for t in terms for d in D.objects]
    return PretorsionTheory(cat, tuple(torsion), tuple(torsionfree))


def _into_terminal_non_epi(C: FinCategory):
    terms = set(_terminals(C))
    for f, s, d in C.morphisms:
        if d in terms and not is_epi(C, f):
            return f
    return None


def _out_of_initial_non_mono(D: FinCategory):
    inits = set(_initials(D))
    for f, s, d in D.morphisms:
        if s in inits and not is_mono(D, f):
            return f
    return None


def theorem_A_report(C: FinCategory, D: FinCategory) -> Report:
    """Every morphism into a terminal of C is epi and every morphism out of
    an initial of D is mono; witnesses name the first failure on each side."""
    witnesses = []
    bad_c = _into_terminal_non_epi(C)
    if bad_c is not None:
        witnesses.append({"side": "C", "morphism": bad_c, "property": "not epi",
                          "pair": list(epi_witness(C, bad_c))})
    bad_d = _out_of_initial_non_mono(D)
    if bad_d is not None:
        witnesses.append({"side": "D", "morphism": bad_d, "property": "not mono",
                          "pair": list(mono_witness(D, bad_d))})
    return Report("theorem A condition", not witnesses,
                  checked=len(C.morphisms) + len(D.morphisms), witnesses=witnesses)


def theorem_A_condition(C: FinCategory, D: FinCategory) -> bool:
    return theorem_A_report(C, D).ok


def zero_to_one_mono_equiv(C: FinCategory) -> Report:
    """Compare "each morphism initial -> terminal is mono" with "each
    morphism out of an initial object is mono"."""
    inits, terms = set(_initials(C)), set(_terminals(C))
    lhs = all(is_mono(C, f) for f, s, d in C.morphisms if s in inits and d in terms)
    rhs_bad = _out_of_initial_non_mono(C)
    rhs = rhs_bad is None
    witnesses = [] if lhs == rhs else [{"non_mono": rhs_bad}]
    return Report("0->1 mono equivalence", lhs == rhs, checked=len(C.morphisms),
                  witnesses=witnesses, details={"zero_to_one_mono": lhs, "all_from_zero_mono": rhs})


# -- one-sided theories ---------------------------------------------------------------


def lemma4_theory(C: FinCategory) -> PretorsionTheory:
    """Every object torsion; the terminal objects torsion-free."""
    return PretorsionTheory(C, C.objects, tuple(_terminals(C)))


def lemma4_dual_theory(D: FinCategory) -> PretorsionTheory:
    """The initial objects torsion; every object torsion-free."""
    return PretorsionTheory(D, tuple(_initials(D)), D.objects)


def lemma4_condition(C: FinCategory) -> bool:
    return _into_terminal_non_epi(C) is None


def lemma4_dual_condition(D: FinCategory) -> bool:
    return _out_of_initial_non_mono(D) is None


# -- products of theories ---------------------------------------------------------------


def product_theory(pts: Sequence[PretorsionTheory], limit: int | None = None) -> PretorsionTheory:
    """Componentwise product of theories (finite, non-empty family)."""
    if not pts:
        raise CategoryError("product of an empty family of theories")
    cat, _ = product([pt.cat for pt in pts], limit)
    torsion = [tuple_id(xs) for xs in itertools.product(*(pt.torsion for pt in pts))]
    torsionfree = [tuple_id(xs) for xs in itertools.product(*(pt.torsionfree for pt in pts))]
    return PretorsionTheory(cat, tuple(torsion), tuple(torsionfree))


def theorem_B_report(pts: Sequence[PretorsionTheory], thinness: bool = True,
                     limit: int | None = None) -> Report:
    """Check the product theory and each factor, reporting failing factor indices.

    With ``thinness`` set and every factor a theory, also compares thinness
    of the product with the conjunction of factor thinness.
    """
    prod = product_theory(pts, limit)
    prod_rep = is_pretorsion_theory(prod)
    factor_reps = [is_pretorsion_theory(pt) for pt in pts]
    failing = [i for i, r in enumerate(factor_reps) if not r]
    details = {
        "product_verdict": prod_rep.verdict,
        "factor_verdicts": [r.verdict for r in factor_reps],
        "failing_factors": failing,
        "product": prod_rep.to_dict(),
    }
    agree = prod_rep.verdict == (not failing)
    if thinness and prod_rep.verdict and not failing:
        thin_factors = [is_thin(pt)[0] for pt in pts]
        thin_prod = is_thin(prod)[0]
        details["factor_thin"] = thin_factors
        details["product_thin"] = thin_prod
        agree = agree and thin_prod == all(thin_factors)
    return Report("theorem B", agree, checked=len(pts),
                  witnesses=[{"failing_factor": i} for i in failing], details=details)


def product_T3_report(pts: Sequence[PretorsionTheory], limit: int | None = None) -> Report:
    """T3 on the product against T3 on each factor."""
    prod = product_theory(pts, limit)
    prod_t3 = check_T3(prod)
    factors = [check_T3(pt).ok for pt in pts]
    return Report("product T3", prod_t3.ok == all(factors), checked=len(pts),
                  witnesses=prod_t3.witnesses,
                  details={"product_T3": prod_t3.ok, "factor_T3": factors})


# -- reflectivity ------------------------------------------------------------------------


@dataclass(frozen=True)
class ReflectionData:
    """Reflection units ``X -> R(X)`` into ``subcategory`` (counits ``R(X) -> X``
    for coreflections)."""

    subcategory: tuple[str, ...]
    units: dict[str, str]

    __hash__ = object.__hash__


def _subclass(C, S, closure):
    S = list(S)
    if closure:
        S = replete_closure(C, S)
    elif not is_replete(C, S):
        raise NotReplete("subcategory is not replete")
    keep = set(S)
    return tuple(x for x in C.objects if x in keep)


def is_epireflective(C: FinCategory, S: Iterable[str], replete_closure: bool = False):
    """Every object has an epi unit into ``S`` through which each morphism into
    ``S`` factors uniquely.  Returns ``(verdict, ReflectionData or None)``
    with the least unit chosen for each object."""
    sub = _subclass(C, S, replete_closure)
    units = {}
    for x in C.objects:
        targets = [(b, C.hom(x, b)) for b in sub]
        unit = None
        for eta in (f for b in sub for f in C.hom(x, b)):
            if not is_epi(C, eta):
                continue
            r = C.dst(eta)
            ok = True
            for b, gs in targets:
                ks = C.hom(r, b)
                for g in gs:
                    if sum(1 for k in ks if C.compose(k, eta) == g) != 1:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                unit = eta
                break
        if unit is None:
            return False, None
        units[x] = unit
    return True, ReflectionData(sub, units)


def is_monocoreflective(D: FinCategory, S: Iterable[str], replete_closure: bool = False):
    """Dual of :func:`is_epireflective`, computed in the opposite category."""
    return is_epireflective(opposite(D), S, replete_closure)


def intermediate_theorem_check(C: FinCategory, SC: Iterable[str], D: FinCategory, SD: Iterable[str],
                               limit: int | None = None) -> Report:
    """Compare "(C × SD, SC × D) is a pretorsion theory" with
    "SC epireflective in C and SD monocoreflective in D"."""
    SC, SD = list(SC), list(SD)
    cat, _ = product([C, D], limit)
    pt = PretorsionTheory(
        cat,
        tuple(tuple_id([c, s]) for c in C.objects for s in SD),
        tuple(tuple_id([s, d]) for s in SC for d in D.objects),
    )
    lhs = is_pretorsion_theory(pt).verdict
    epi_ok, _ = is_epireflective(C, SC)
    mono_ok, _ = is_monocoreflective(D, SD)
    rhs = epi_ok and mono_ok
    return Report("intermediate theorem", lhs == rhs, checked=len(cat.morphisms),
                  details={"pretorsion": lhs, "epireflective": epi_ok, "monocoreflective": mono_ok})
