"""Finite example categories and theories.

``gen_finset(n)`` is the skeletal category of the sets ``{0..k-1}`` for
``k = 0..n`` with all functions; ``gen_rel(n)`` the same objects with all
relations.  Signed sets and the three-sorted example are built from these
through the product constructions.
"""
from __future__ import annotations

import itertools

from .constructions import product_theory, theorem_A_theory
from .fincat import FinCategory, check_size, make_category, opposite
from .pretorsion import PretorsionTheory


def _fn_id(a, b, values):
    return f"{a}->{b}:" + ",".join(map(str, values))


def gen_finset(n: int) -> FinCategory:
    if n < 0:
        raise ValueError("n must be non-negative")
    check_size(sum(b ** a for a in range(n + 1) for b in range(n + 1)), f"FinSet_{n}")
    sizes = range(n + 1)
    homs = {(a, b): list(itertools.product(range(b), repeat=a)) for a in sizes for b in sizes}
    morphisms = [(_fn_id(a, b, v), str(a), str(b)) for a in sizes for b in sizes for v in homs[a, b]]
    identities = {str(a): _fn_id(a, a, range(a)) for a in sizes}
    composition = {}
    for a in sizes:
        for b in sizes:
            for f in homs[a, b]:
                for c in sizes:
                    for g in homs[b, c]:
                        composition[_fn_id(b, c, g), _fn_id(a, b, f)] = _fn_id(a, c, [g[i] for i in f])
    return make_category(f"FinSet_{n}", [str(a) for a in sizes], morphisms, identities, composition)


def gen_finset_op(n: int) -> FinCategory:
    return opposite(gen_finset(n))


def _rel_id(a, b, bits):
    return f"{a}~{b}:" + "".join(map(str, bits))


def gen_rel(n: int) -> FinCategory:
    """Sets ``{0..k-1}`` with relations; bits of a relation ``a -> b`` are row-major."""
    if n < 0:
        raise ValueError("n must be non-negative")
    check_size(sum(2 ** (a * b) for a in range(n + 1) for b in range(n + 1)), f"Rel_{n}")
    sizes = range(n + 1)
    homs = {(a, b): list(itertools.product((0, 1), repeat=a * b)) for a in sizes for b in sizes}
    morphisms = [(_rel_id(a, b, r), str(a), str(b)) for a in sizes for b in sizes for r in homs[a, b]]
    identities = {str(a): _rel_id(a, a, [int(i == j) for i in range(a) for j in range(a)]) for a in sizes}
    composition = {}
    for a in sizes:
        for b in sizes:
            for r in homs[a, b]:
                for c in sizes:
                    for s in homs[b, c]:
                        sr = [int(any(r[i * b + j] and s[j * c + k] for j in range(b)))
                              for i in range(a) for k in range(c)]
                        composition[_rel_id(b, c, s), _rel_id(a, b, r)] = _rel_id(a, c, sr)
    return make_category(f"Rel_{n}", [str(a) for a in sizes], morphisms, identities, composition)


def gen_signed_sets(n: int) -> PretorsionTheory:
    """Pairs (negative part, positive part) in FinSet_n^op × FinSet_n."""
    return theorem_A_theory(gen_finset_op(n), gen_finset(n))


def gen_example_B(n: int) -> PretorsionTheory:
    """(Rel_n, all, all) times the signed sets of size at most n."""
    rel = gen_rel(n)
    return product_theory([PretorsionTheory(rel, rel.objects, rel.objects), gen_signed_sets(n)])


def gen_nonepi_terminal() -> FinCategory:
    """Terminal object T with a non-epi morphism ``!X: X -> T``.

    ``p, q: T -> Y`` are distinct but ``p∘!X = q∘!X = h``; ``r = p∘!Y`` and
    ``s = q∘!Y`` form a left-zero pair in ``hom(Y, Y)``.
    """
    objects = ["X", "T", "Y"]
    morphisms = [
        ("id_X", "X", "X"), ("id_T", "T", "T"), ("id_Y", "Y", "Y"),
        ("!X", "X", "T"), ("!Y", "Y", "T"),
        ("p", "T", "Y"), ("q", "T", "Y"), ("h", "X", "Y"),
        ("r", "Y", "Y"), ("s", "Y", "Y"),
    ]
    identities = {"X": "id_X", "T": "id_T", "Y": "id_Y"}
    comp = {
        ("!Y", "p"): "id_T", ("!Y", "q"): "id_T", ("!Y", "h"): "!X",
        ("!Y", "r"): "!Y", ("!Y", "s"): "!Y",
        ("p", "!X"): "h", ("q", "!X"): "h", ("p", "!Y"): "r", ("q", "!Y"): "s",
        ("r", "p"): "p", ("r", "q"): "p", ("s", "p"): "q", ("s", "q"): "q",
        ("r", "h"): "h", ("s", "h"): "h",
        ("r", "r"): "r", ("r", "s"): "r", ("s", "r"): "s", ("s", "s"): "s",
    }
    for m, s, d in morphisms:
        comp[identities[d], m] = m
        comp[m, identities[s]] = m
    return make_category("NonEpiTerminal", objects, morphisms, identities, comp)


def gen_walking_arrow() -> FinCategory:
    comp = {("id_a", "id_a"): "id_a", ("id_b", "id_b"): "id_b",
            ("id_b", "a->b"): "a->b", ("a->b", "id_a"): "a->b"}
    return make_category("WalkingArrow", ["a", "b"],
                         [("id_a", "a", "a"), ("a->b", "a", "b"), ("id_b", "b", "b")],
                         {"a": "id_a", "b": "id_b"}, comp)


def gen_trivial() -> FinCategory:
    return make_category("Trivial", ["*"], [("id_*", "*", "*")], {"*": "id_*"},
                         {("id_*", "id_*"): "id_*"})


def gen_discrete(k: int) -> FinCategory:
    objs = [str(i) for i in range(k)]
    return make_category(f"Discrete_{k}", objs, [(f"id_{x}", x, x) for x in objs],
                         {x: f"id_{x}" for x in objs}, {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objs})


# family name -> (builder, takes n, builds a theory)
FAMILIES = {
    "finset": (gen_finset, True, False),
    "finset-op": (gen_finset_op, True, False),
    "rel": (gen_rel, True, False),
    "signed-sets": (gen_signed_sets, True, True),
    "example-b": (gen_example_B, True, True),
    "nonepi-terminal": (gen_nonepi_terminal, False, False),
    "walking-arrow": (gen_walking_arrow, False, False),
    "trivial": (gen_trivial, False, False),
    "discrete": (gen_discrete, True, False),
}


def generate(family: str, n: int | None = None):
    try:
        builder, takes_n, _ = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    if takes_n:
        if n is None:
            raise ValueError(f"family {family!r} needs --n")
        return builder(n)
    return builder()
