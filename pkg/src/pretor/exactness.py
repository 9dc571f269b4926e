"""Kernels, cokernels and short exact sequences relative to an ideal.

Two characterizations are kept deliberately separate:

* :func:`is_ses_def` -- ``m`` is a kernel of ``e`` and ``e`` a cokernel of
  ``m``, with unique factorization (searched by the composition-table core);
* :func:`is_ses_E` -- ``m`` mono, ``e`` epi, ``e∘m`` null, and mere existence
  of the factorizations (plain Python loops over composites).

Their agreement is checked by the test-suite rather than assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .fincat import CategoryError, FinCategory, is_epi, is_mono
from .ideals import Ideal


@dataclass(frozen=True)
class SesCandidate:
    cat: FinCategory
    ideal: Ideal
    m: str
    e: str

    __hash__ = object.__hash__

    def __post_init__(self):
        if self.cat.dst(self.m) != self.cat.src(self.e):
            raise CategoryError(f"{self.m!r} and {self.e!r} do not share a middle object")

    @property
    def ends(self) -> tuple[str, str, str]:
        return self.cat.src(self.m), self.cat.dst(self.m), self.cat.dst(self.e)


def _check_ideal_cat(cat: FinCategory, ideal: Ideal) -> None:
    if ideal.ambient is not cat and ideal.ambient != cat:
        raise CategoryError("ideal belongs to a different category")


def kernel_witness(cat: FinCategory, ideal: Ideal, k: str, f: str, unique: bool = True):
    """None if ``k`` is a kernel of ``f``; ``"composite"`` if ``f∘k`` is not
    null; otherwise the least morphism that fails to factor through ``k``."""
    _check_ideal_cat(cat, ideal)
    if cat.dst(k) != cat.src(f):
        raise CategoryError(f"{k!r} and {f!r} are not composable")
    r = cat.table.kernel_fail(ideal.mask, cat.mi(k), cat.mi(f), unique)
    if r == -1:
        return None
    return "composite" if r == -2 else cat.mor_ids[r]


def cokernel_witness(cat: FinCategory, ideal: Ideal, c: str, f: str, unique: bool = True):
    _check_ideal_cat(cat, ideal)
    if cat.dst(f) != cat.src(c):
        raise CategoryError(f"{c!r} and {f!r} are not composable")
    r = cat.table.cokernel_fail(ideal.mask, cat.mi(c), cat.mi(f), unique)
    if r == -1:
        return None
    return "composite" if r == -2 else cat.mor_ids[r]


def is_kernel(cat: FinCategory, ideal: Ideal, k: str, f: str) -> bool:
    """``f∘k`` null, and every ``u`` into ``src(f)`` with ``f∘u`` null factors
    uniquely as ``u = k∘u'``."""
    return kernel_witness(cat, ideal, k, f) is None


def is_cokernel(cat: FinCategory, ideal: Ideal, c: str, f: str) -> bool:
    return cokernel_witness(cat, ideal, c, f) is None


def is_ses_def(s: SesCandidate) -> bool:
    return is_kernel(s.cat, s.ideal, s.m, s.e) and is_cokernel(s.cat, s.ideal, s.e, s.m)


def ses_E_conditions(s: SesCandidate) -> dict[str, bool]:
    """Truth values of E1..E5, evaluated independently of the kernel search.

    Evaluation stops at the first failing condition; later ones are absent.
    """
    cat, ideal, m, e = s.cat, s.ideal, s.m, s.e
    null = ideal.members
    out = {}
    out["E3"] = cat.compose(e, m) in null
    if not out["E3"]:
        return out
    out["E1"] = is_mono(cat, m)
    if not out["E1"]:
        return out
    out["E2"] = is_epi(cat, e)
    if not out["E2"]:
        return out
    x = cat.src(e)
    images = {cat.compose(m, w) for y in cat.objects for w in cat.hom(y, cat.src(m))}
    out["E4"] = all(u in images for y in cat.objects for u in cat.hom(y, x)
                    if cat.compose(e, u) in null)
    if not out["E4"]:
        return out
    coimages = {cat.compose(w, e) for y in cat.objects for w in cat.hom(cat.dst(e), y)}
    out["E5"] = all(v in coimages for y in cat.objects for v in cat.hom(x, y)
                    if cat.compose(v, m) in null)
    return out


def is_ses_E(s: SesCandidate) -> bool:
    conds = ses_E_conditions(s)
    return len(conds) == 5 and all(conds.values())


def find_ses(cat: FinCategory, ideal: Ideal, x: str,
             source_class: Iterable[str] | None = None,
             target_class: Iterable[str] | None = None,
             first_only: bool = False) -> list[SesCandidate]:
    """All short exact sequences ``A -m-> x -e-> B`` with ``A`` in
    ``source_class`` and ``B`` in ``target_class`` (all objects when None),
    in (m, e) id order."""
    _check_ideal_cat(cat, ideal)
    xi = cat.oi(x)
    n = len(cat.objects)
    tmask = _object_mask(cat, source_class, n)
    fmask = _object_mask(cat, target_class, n)
    pairs = cat.table.ses_pairs(ideal.mask, xi, tmask, fmask, first_only)
    ids = cat.mor_ids
    return [SesCandidate(cat, ideal, ids[m], ids[e]) for m, e in pairs]


def _object_mask(cat, objs, n):
    if objs is None:
        return b"\x01" * n
    out = bytearray(n)
    for x in objs:
        out[cat.oi(x)] = 1
    return bytes(out)
