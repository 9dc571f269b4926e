"""Ideals of morphisms and the null-morphism predicate."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .fincat import CategoryError, FinCategory
from .report import Report


class IdealError(CategoryError):
    pass


@dataclass(frozen=True)
class Ideal:
    """An extensional set of morphisms of ``ambient``.

    Closure under composition is not assumed; use :func:`check_ideal` or
    :func:`ideal_from_members` for user-supplied member sets.
    """

    ambient: FinCategory
    members: frozenset[str]

    __hash__ = object.__hash__

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for f in self.members:
            self.ambient.mi(f)

    @cached_property
    def mask(self) -> bytes:
        mi = self.ambient.mor_index
        out = bytearray(len(self.ambient.morphisms))
        for f in self.members:
            out[mi[f]] = 1
        return bytes(out)

    def sorted_members(self) -> list[str]:
        return [f for f in self.ambient.mor_ids if f in self.members]

    def __contains__(self, f: str) -> bool:
        return f in self.members


def _from_mask(cat: FinCategory, mask: bytes) -> Ideal:
    ideal = Ideal(cat, frozenset(f for f, b in zip(cat.mor_ids, mask) if b))
    ideal.__dict__["mask"] = bytes(mask)
    return ideal


def ideal_generated_by_objects(cat: FinCategory, objs: Iterable[str]) -> Ideal:
    """Morphisms ``q∘p`` that factor through some object of ``objs``."""
    zmask = bytearray(len(cat.objects))
    for z in objs:
        zmask[cat.oi(z)] = 1
    return _from_mask(cat, cat.table.generated_ideal(bytes(zmask)))


def empty_ideal(cat: FinCategory) -> Ideal:
    return _from_mask(cat, bytes(len(cat.morphisms)))


def all_ideal(cat: FinCategory) -> Ideal:
    return _from_mask(cat, b"\x01" * len(cat.morphisms))


def is_null(ideal: Ideal, f: str) -> bool:
    return bool(ideal.mask[ideal.ambient.mi(f)])


def check_ideal(ideal: Ideal) -> Report:
    """Closure under composition on either side; reports the least offending pair."""
    cat = ideal.ambient
    bad = cat.table.closure_violation(ideal.mask)
    if bad is None:
        return Report("ideal closure", True, checked=len(ideal.members))
    g, f = (cat.mor_ids[i] for i in bad)
    gf = cat.compose(g, f)
    return Report("ideal closure", False, checked=len(ideal.members),
                  witnesses=[{"morphisms": [g, f], "composite": gf}])


def ideal_from_members(cat: FinCategory, members: Iterable[str]) -> Ideal:
    ideal = Ideal(cat, frozenset(members))
    rep = check_ideal(ideal)
    if not rep.ok:
        w = rep.witnesses[0]
        g, f = w["morphisms"]
        raise IdealError(f"not an ideal: {g}∘{f} = {w['composite']} is missing")
    return ideal


def closure_of_morphisms(cat: FinCategory, members: Iterable[str]) -> Ideal:
    """Smallest ideal containing ``members`` (validation helper only)."""
    t = cat.table
    mask = bytearray(len(cat.morphisms))
    for f in members:
        mask[cat.mi(f)] = 1
    frontier = [i for i, b in enumerate(mask) if b]
    while frontier:
        nxt = []
        for f in frontier:
            for g in t.outgoing(cat.dst_idx[f]):
                c = t.compose(g, f)
                if c >= 0 and not mask[c]:
                    mask[c] = 1
                    nxt.append(c)
            for h in t.incoming(cat.src_idx[f]):
                c = t.compose(f, h)
                if c >= 0 and not mask[c]:
                    mask[c] = 1
                    nxt.append(c)
        frontier = nxt
    return _from_mask(cat, bytes(mask))


def is_closed_ideal(ideal: Ideal) -> bool:
    return closed_ideal_witness(ideal) is None


def closed_ideal_witness(ideal: Ideal) -> str | None:
    """Least member not factoring through an object whose identity is a member."""
    regenerated = ideal_generated_by_objects(ideal.ambient, null_objects(ideal))
    for f in ideal.sorted_members():
        if not regenerated.mask[ideal.ambient.mi(f)]:
            return f
    return None


def null_objects(ideal: Ideal) -> list[str]:
    cat = ideal.ambient
    return [x for x in cat.objects if cat.identities[x] in ideal.members]
