import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from corpus import categories, small_categories
from pretor.fincat import (
    CategoryError,
    FinCategory,
    Functor,
    IllFormedFunctor,
    SizeLimitExceeded,
    UnknownId,
    check_functor,
    compose_functors,
    equivalence_report,
    full_subcategory,
    identity_functor,
    initial_objects,
    inverse,
    is_epi,
    is_equivalence,
    is_essentially_surjective,
    is_faithful,
    is_full,
    is_iso,
    is_mono,
    is_replete,
    make_category,
    mono_witness,
    epi_witness,
    opposite,
    product,
    replete_closure,
    terminal_objects,
    unique_morphism,
    validate,
)
from pretor.generators import gen_discrete, gen_finset, gen_nonepi_terminal, gen_rel, gen_walking_arrow


def iso_pair():
    """Two isomorphic objects a, b with inverse morphisms u, v."""
    comp = {("v", "u"): "id_a", ("u", "v"): "id_b"}
    morphisms = [("id_a", "a", "a"), ("id_b", "b", "b"), ("u", "a", "b"), ("v", "b", "a")]
    ids = {"a": "id_a", "b": "id_b"}
    for m, s, d in morphisms:
        comp[ids[d], m] = m
        comp[m, ids[s]] = m
    return make_category("IsoPair", ["a", "b"], morphisms, ids, comp)


def _as_dict(cat):
    return dict(name=cat.name, objects=list(cat.objects), morphisms=list(cat.morphisms),
                identities=dict(cat.identities), composition=dict(cat.composition))


# -- sizes -------------------------------------------------------------------


@pytest.mark.parametrize("n", range(4))
def test_finset_hom_counts(n):
    cat = gen_finset(n)
    assert len(cat.morphisms) == sum(b ** a for a in range(n + 1) for b in range(n + 1))
    for a in range(n + 1):
        for b in range(n + 1):
            assert len(cat.hom(str(a), str(b))) == b ** a


@pytest.mark.parametrize("n", range(3))
def test_rel_hom_counts(n):
    cat = gen_rel(n)
    assert len(cat.morphisms) == sum(2 ** (a * b) for a in range(n + 1) for b in range(n + 1))


def test_pinned_sizes():
    assert [len(gen_finset(n).morphisms) for n in range(4)] == [1, 3, 11, 60]
    assert [len(gen_rel(n).morphisms) for n in range(3)] == [1, 5, 31]
    assert len(gen_nonepi_terminal().morphisms) == 10


# -- validation --------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(categories()))
def test_corpus_validates(name):
    rep = validate(categories()[name])
    assert rep.ok, rep.witnesses[:2]
    assert rep.checked == len(categories()[name].morphisms)


def test_missing_composite_is_totality_violation():
    d = _as_dict(gen_walking_arrow())
    del d["composition"]["id_b", "a->b"]
    rep = validate(FinCategory(**d))
    assert not rep.ok
    assert rep.witnesses[0] == {"axiom": "totality", "morphisms": ["id_b", "a->b"],
                                "reason": "composable pair without a composite"}


def test_wrong_typed_composite():
    d = _as_dict(gen_walking_arrow())
    d["composition"]["id_b", "a->b"] = "id_a"
    rep = validate(FinCategory(**d))
    # id_b∘(a->b) should also be a->b, so the identity law breaks too
    assert [w["axiom"] for w in rep.witnesses] == ["typing", "identity law"]


def test_composite_on_non_composable_pair():
    d = _as_dict(gen_walking_arrow())
    d["composition"]["a->b", "id_b"] = "a->b"
    rep = validate(FinCategory(**d))
    assert rep.witnesses[0]["axiom"] == "totality"


def test_identity_law_violation():
    d = _as_dict(gen_nonepi_terminal())
    d["composition"]["id_Y", "r"] = "s"
    rep = validate(FinCategory(**d))
    assert {"axiom": "identity law", "morphisms": ["r"], "reason": "id_dst ∘ f != f"} in rep.witnesses


def test_associativity_violation():
    d = _as_dict(gen_nonepi_terminal())
    # r∘r = s breaks (r∘r)∘p = q against r∘(r∘p) = p
    d["composition"]["r", "r"] = "s"
    rep = validate(FinCategory(**d))
    assert [w["axiom"] for w in rep.witnesses] == ["associativity"]


def test_missing_identity():
    d = _as_dict(gen_walking_arrow())
    del d["identities"]["b"]
    rep = validate(FinCategory(**d))
    assert rep.witnesses[0] == {"axiom": "identity", "object": "b", "reason": "missing identity"}


def test_make_category_rejects_invalid():
    d = _as_dict(gen_walking_arrow())
    del d["composition"]["id_b", "a->b"]
    with pytest.raises(CategoryError, match="violates the category axioms"):
        make_category(**d)


def test_unresolved_reference_rejected():
    with pytest.raises(CategoryError):
        FinCategory("bad", ["a"], [("f", "a", "zz")], {"a": "f"}, {})


def test_duplicate_ids_rejected():
    with pytest.raises(CategoryError):
        FinCategory("bad", ["a", "a"], [("f", "a", "a")], {"a": "f"}, {("f", "f"): "f"})


def test_unknown_id_lookup():
    cat = gen_walking_arrow()
    with pytest.raises(UnknownId):
        cat.mi("nope")
    with pytest.raises(UnknownId):
        cat.oi("nope")


def test_size_limit_env(monkeypatch):
    monkeypatch.setenv("PRETOR_SIZE_LIMIT", "50")
    with pytest.raises(SizeLimitExceeded):
        gen_finset(3)
    monkeypatch.delenv("PRETOR_SIZE_LIMIT")
    assert len(gen_finset(3).morphisms) == 60


def test_product_size_guard():
    with pytest.raises(SizeLimitExceeded):
        product([gen_finset(2), gen_finset(2)], limit=100)


# -- predicates --------------------------------------------------------------


def _fn_values(fid):
    head, values = fid.split(":")
    a, b = map(int, head.split("->"))
    return a, b, [int(v) for v in values.split(",")] if values else []


@pytest.mark.parametrize("n", range(2, 4))
def test_finset_mono_epi_are_injective_surjective(n):
    # epi = surjective needs a two-element test object, hence n >= 2
    cat = gen_finset(n)
    for f in cat.mor_ids:
        a, b, values = _fn_values(f)
        assert is_mono(cat, f) == (len(set(values)) == a)
        assert is_epi(cat, f) == (set(values) == set(range(b)))
        assert is_iso(cat, f) == (a == b and len(set(values)) == a)


def test_finset1_truncation_makes_empty_map_epi():
    cat = gen_finset(1)
    assert is_epi(cat, "0->1:") and is_mono(cat, "0->1:")
    assert not is_iso(cat, "0->1:")


@pytest.mark.parametrize("name", sorted(small_categories()))
def test_predicates_match_brute_force(name):
    cat = categories()[name]
    for f in cat.mor_ids:
        assert is_mono(cat, f) == oracles.is_mono(cat, f)
        assert is_epi(cat, f) == oracles.is_epi(cat, f)
        assert is_iso(cat, f) == oracles.is_iso(cat, f)


def test_mono_epi_witnesses():
    ne = gen_nonepi_terminal()
    assert not is_epi(ne, "!X")
    assert epi_witness(ne, "!X") == ("p", "q")
    assert mono_witness(ne, "!X") is None
    assert mono_witness(ne, "p") is None
    assert not is_mono(ne, "!Y")
    w = mono_witness(ne, "!Y")
    assert ne.compose("!Y", w[0]) == ne.compose("!Y", w[1]) and w[0] != w[1]


def test_inverse():
    cat = iso_pair()
    assert inverse(cat, "u") == "v"
    assert inverse(cat, "id_a") == "id_a"
    assert inverse(gen_walking_arrow(), "a->b") is None


def test_terminal_initial():
    for n in range(1, 4):
        cat = gen_finset(n)
        assert terminal_objects(cat) == ["1"]
        assert initial_objects(cat) == ["0"]
    rel = gen_rel(2)
    assert terminal_objects(rel) == initial_objects(rel) == ["0"]
    ne = gen_nonepi_terminal()
    assert terminal_objects(ne) == ["T"] and initial_objects(ne) == ["X"]
    assert unique_morphism(ne, "X", "T") == "!X"
    # both objects of an iso pair are terminal and initial
    assert terminal_objects(iso_pair()) == ["a", "b"]
    assert terminal_objects(gen_discrete(2)) == []


# -- constructions -----------------------------------------------------------


@pytest.mark.parametrize("name", sorted(categories()))
def test_opposite_involution(name):
    cat = categories()[name]
    op = opposite(cat)
    assert opposite(op) == cat
    assert validate(op).ok
    for f in cat.mor_ids:
        assert cat.src(f) == op.dst(f)


def test_opposite_swaps_mono_epi():
    cat = gen_finset(2)
    op = opposite(cat)
    for f in cat.mor_ids:
        assert is_mono(cat, f) == is_epi(op, f)


def test_product_structure():
    A, B = gen_walking_arrow(), gen_finset(1)
    P, (p0, p1) = product([A, B])
    assert validate(P).ok
    assert len(P.objects) == 4 and len(P.morphisms) == 9
    assert P.objects == ("(a,0)", "(a,1)", "(b,0)", "(b,1)")
    assert check_functor(p0).ok and check_functor(p1).ok
    assert p0("(a->b,0->1:)") == "a->b" and p1("(a->b,0->1:)") == "0->1:"


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(small_categories())), st.data())
def test_full_subcategory_validates(name, data):
    cat = categories()[name]
    keep = data.draw(st.sets(st.sampled_from(cat.objects), min_size=1))
    sub = full_subcategory(cat, keep)
    assert validate(sub).ok
    assert set(sub.objects) == keep
    for x in keep:
        for y in keep:
            assert sub.hom(x, y) == cat.hom(x, y)


def test_repleteness():
    cat = iso_pair()
    assert not is_replete(cat, ["a"])
    assert is_replete(cat, ["a", "b"])
    assert replete_closure(cat, ["a"]) == ["a", "b"]
    f2 = gen_finset(2)
    assert is_replete(f2, ["0", "1"])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(small_categories())), st.data())
def test_replete_closure_is_replete_and_minimal(name, data):
    cat = categories()[name]
    objs = data.draw(st.sets(st.sampled_from(cat.objects)))
    closed = replete_closure(cat, objs)
    assert set(objs) <= set(closed)
    assert is_replete(cat, closed)
    for y in closed:
        assert any(oracles.iso_related(cat, x, y) for x in objs)


# -- functors ----------------------------------------------------------------


def diagonal(cat):
    P, _ = product([cat, cat])
    return Functor(cat, P, {x: f"({x},{x})" for x in cat.objects},
                   {f: f"({f},{f})" for f in cat.mor_ids}, name="diag")


def test_diagonal_not_essentially_surjective():
    F = diagonal(gen_finset(1))
    assert check_functor(F).ok
    assert is_full(F) and is_faithful(F)
    assert not is_essentially_surjective(F)
    rep = equivalence_report(F)
    assert rep.details["failing_axes"] == ["essentially surjective"]
    assert rep.witnesses == [{"axis": "essentially surjective", "object": "(0,1)"}]


def test_identity_functor_is_equivalence():
    for cat in (gen_finset(2), gen_nonepi_terminal(), iso_pair()):
        assert is_equivalence(identity_functor(cat))


def test_inclusion_of_skeleton_is_equivalence():
    cat = iso_pair()
    sub = full_subcategory(cat, ["a"])
    F = Functor(sub, cat, {"a": "a"}, {"id_a": "id_a"}, name="incl")
    assert is_equivalence(F)


def test_broken_functor_detected():
    wa = gen_walking_arrow()
    F = Functor(wa, wa, {"a": "a", "b": "b"}, {"id_a": "id_a", "id_b": "id_b", "a->b": "id_a"})
    rep = check_functor(F)
    assert not rep.ok and rep.witnesses[0] == {"law": "endpoints", "morphisms": ["a->b"]}
    with pytest.raises(IllFormedFunctor):
        is_full(F)


def test_collapsing_isomorphic_objects_is_equivalence():
    cat = iso_pair()
    F = Functor(cat, cat, {"a": "a", "b": "a"}, {"id_a": "id_a", "id_b": "id_a", "u": "id_a", "v": "id_a"})
    assert check_functor(F).ok
    assert is_equivalence(F)


def test_functor_breaking_identities():
    cat = gen_finset(1)
    F = Functor(cat, cat, {"0": "0", "1": "1"}, {"0->0:": "0->0:", "0->1:": "0->1:", "1->1:0": "1->1:0"})
    assert check_functor(F).ok
    f2 = gen_finset(2)
    G = Functor(f2, f2, {x: x for x in f2.objects}, {m: m for m in f2.mor_ids})
    G.morphism_map["2->2:0,1"] = "2->2:1,0"
    rep = check_functor(G)
    assert rep.witnesses == [{"law": "identity", "object": "2"}]


def test_compose_functors():
    cat = gen_finset(1)
    F = diagonal(cat)
    P = F.target
    _, (p0, _p1) = product([cat, cat])
    p0 = Functor(P, cat, p0.object_map, p0.morphism_map, name="pi_0")
    G = compose_functors(p0, F)
    assert G.object_map == {x: x for x in cat.objects}
    assert is_equivalence(G)
