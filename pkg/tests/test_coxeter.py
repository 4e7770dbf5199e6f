import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxspec import (
    bipartition,
    classify_root,
    coxeter_t,
    dynkin,
    enumerate_real_roots,
    index_and_principal,
    make_path,
    make_star,
    partial_coxeter,
    reflect,
    simple_root,
    standard_character,
    standard_vectors,
    verify_transport,
)
from coxspec.coxeter import vector_from_json_obj, vector_from_map, vector_to_json_obj
from coxspec.errors import DomainError, ParityMismatchError, RegularVectorError


@pytest.fixture(scope="module")
def d4():
    g = make_star((1, 1, 1, 1))
    return g, bipartition(g, odd_root="c")  # center odd, leaves even


# --- reflections -------------------------------------------------------------


def test_reflect_path_example():
    g = make_path(2)
    assert reflect(g, (1, 0), "p2") == (1, 1)


def test_reflect_involution_examples(d4):
    g, _ = d4
    for x in ((1, 2, 3, 4, 5), (0, 0, 0, 0, 1), (-2, 1, 0, 3, -1)):
        for v in g.vertices:
            assert reflect(g, reflect(g, x, v), v) == x


def test_reflect_fixes_null_vector(d4):
    g, _ = d4
    delta = (1, 1, 1, 1, 2)
    assert reflect(g, delta, "c") == delta  # -2 + 4 = 2
    for leaf in ("b1.1", "b2.1", "b3.1", "b4.1"):
        assert reflect(g, delta, leaf) == delta


def test_reflect_unknown_vertex(d4):
    g, _ = d4
    with pytest.raises(DomainError):
        reflect(g, (0, 0, 0, 0, 1), "zz")


@settings(max_examples=40)
@given(st.lists(st.integers(min_value=-50, max_value=50), min_size=9, max_size=9))
def test_partial_transforms_are_involutions(entries):
    g = make_star((1, 2, 5))
    b = bipartition(g)
    x = tuple(entries)
    for parity in ("odd", "even"):
        once = partial_coxeter(g, b, x, parity)
        assert partial_coxeter(g, b, once, parity) == x


def test_partial_equals_reflection_product(d4):
    g, b = d4
    x = (3, -1, 4, 1, -5)
    by_parts = x
    for v in b.even:
        by_parts = reflect(g, by_parts, v)
    assert partial_coxeter(g, b, x, "even") == by_parts


def test_partial_center_odd_example(d4):
    g, b = d4
    # even vertices (the leaves) each pick up the center value
    assert partial_coxeter(g, b, (0, 0, 0, 0, 2), "even") == (2, 2, 2, 2, 2)
    assert partial_coxeter(g, b, (0, 0, 0, 0, 0), "even") == (0, 0, 0, 0, 0)


def test_partial_validates_bipartition(d4):
    g, b = d4
    with pytest.raises(DomainError):
        partial_coxeter(g, b, (0,) * 5, "sideways")
    other = bipartition(make_star((1, 1, 1)))
    with pytest.raises(DomainError):
        partial_coxeter(g, other, (0,) * 5, "odd")


# --- alternating words ---------------------------------------------------------


def test_coxeter_t_identity_and_composition(d4):
    g, b = d4
    x = (5, -3, 2, 0, 7)
    assert coxeter_t(g, b, x, 0) == x
    c2 = partial_coxeter(g, b, partial_coxeter(g, b, x, "odd"), "even")
    assert coxeter_t(g, b, x, 2) == c2
    cm2 = partial_coxeter(g, b, partial_coxeter(g, b, x, "even"), "odd")
    assert coxeter_t(g, b, x, -2) == cm2


def test_coxeter_words_invert(d4):
    g, b = d4
    x = (2, -1, 3, 5, -4)
    # odd-length words are involutions; even-length words invert by sign flip
    assert coxeter_t(g, b, coxeter_t(g, b, x, 3), 3) == x
    assert coxeter_t(g, b, coxeter_t(g, b, x, -5), -5) == x
    assert coxeter_t(g, b, coxeter_t(g, b, x, 4), -4) == x
    assert coxeter_t(g, b, coxeter_t(g, b, x, -6), 6) == x


def test_coxeter_fixes_null_vector(d4):
    g, b = d4
    delta = (1, 1, 1, 1, 2)
    for t in range(-6, 7):
        assert coxeter_t(g, b, delta, t) == delta


# --- standard vectors and transport ---------------------------------------------


def test_standard_vectors_masking(d4):
    g, b = d4
    sp = index_and_principal(g)
    sv = standard_vectors(g, b, sp)
    assert [round(v, 6) for v in sv.y_odd] == [0, 0, 0, 0, round(sp.principal[4], 6)]
    assert all(
        (a + c) == pytest.approx(p, abs=1e-15)
        for a, c, p in zip(sv.y_odd, sv.y_even, sp.principal)
    )
    # supports partition the vertex set
    assert all((a == 0) != (c == 0) for a, c in zip(sv.y_odd, sv.y_even))


def test_two_step_transport_exact_shape(d4):
    g, b = d4
    sp = index_and_principal(g)
    sv = standard_vectors(g, b, sp)
    # one even step sends y_odd to y_odd + sqrt(r) y_even, here (2,2,2,2,2)-like
    moved = partial_coxeter(g, b, sv.y_odd, "even")
    expected = np.asarray(sv.y_odd) + 2.0 * np.asarray(sv.y_even)
    assert np.max(np.abs(np.asarray(moved) - expected)) <= 1e-10


def test_transport_d4_small_defects(d4):
    g, b = d4
    rep = verify_transport(g, b, t_max=10)
    assert rep.r == pytest.approx(4.0, abs=1e-11)
    assert rep.base_residual <= 1e-10
    assert rep.max_defect <= 1e-10
    assert [row.t for row in rep.rows] == list(range(1, 11))
    assert not any(row.pole for row in rep.rows)


def test_transport_hyperbolic_star():
    g = make_star((1, 2, 6))
    rep = verify_transport(g, bipartition(g), t_max=10)
    assert rep.max_defect <= 1e-8


def test_transport_rejects_small_index():
    g = make_path(3)  # index sqrt(2), r = 2 < 4
    with pytest.raises(DomainError):
        verify_transport(g, bipartition(g))


# --- real roots -------------------------------------------------------------------


def test_a2_roots_exact_set():
    res = enumerate_real_roots(make_path(2))
    assert res.exhaustive
    assert set(res.roots) == {(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)}


@pytest.mark.parametrize(
    "name,count",
    [("A1", 2), ("A2", 6), ("A3", 12), ("A4", 20), ("D4", 24), ("E6", 72), ("E7", 126), ("E8", 240)],
)
def test_root_census(name, count):
    res = enumerate_real_roots(dynkin(name))
    assert res.exhaustive
    assert len(res.roots) == count
    # sign dichotomy: no mixed-sign roots
    for root in res.roots:
        assert not (min(root) < 0 < max(root)), root


def test_roots_budget_exhaustion():
    res = enumerate_real_roots(dynkin("E8"), budget=50)
    assert res.hit_budget and not res.exhaustive


def test_roots_norm_truncation_on_extended():
    res = enumerate_real_roots(make_star((1, 1, 1, 1)), norm_bound=6)
    assert res.hit_norm_bound and not res.exhaustive
    assert len(res.roots) > 24


# --- singular / regular classification ----------------------------------------------


def test_classify_simple_root(d4):
    g, b = d4
    cls = classify_root(g, b, simple_root(g, "b1.1"))
    assert (cls.verdict, cls.t, cls.vertex) == ("singular", 0, "b1.1")


def test_classify_null_vector_regular(d4):
    g, b = d4
    cls = classify_root(g, b, (1, 1, 1, 1, 2))
    assert (cls.verdict, cls.period) == ("regular", 1)


def test_classify_a2_diagonal():
    g = make_path(2)
    b = bipartition(g)
    cls = classify_root(g, b, (1, 1))
    assert cls.verdict == "singular"
    # replay soundness
    assert coxeter_t(g, b, simple_root(g, cls.vertex), cls.t) == (1, 1)


def test_classify_undetermined_on_hyperbolic():
    g = make_star((1, 1, 1, 1, 1))
    b = bipartition(g)
    cls = classify_root(g, b, (1, 1, 1, 1, 1, 3), t_max=30)
    assert cls.verdict == "undetermined"
    assert cls.t_max == 30


def test_classify_input_validation(d4):
    g, b = d4
    with pytest.raises(DomainError):
        classify_root(g, b, (0, 0, 0, 0, 0))
    with pytest.raises(DomainError):
        classify_root(g, b, (1, 0, 0, 0, -1))
    with pytest.raises(DomainError):
        classify_root(g, b, (1.5, 0, 0, 0, 0))


def test_singular_replay_through_transported_roots(d4):
    g, b = d4
    for vertex in g.vertices:
        for t in range(-4, 5):
            d = coxeter_t(g, b, simple_root(g, vertex), t)
            if min(d) < 0 or max(d) == 0:
                continue
            cls = classify_root(g, b, d)
            assert cls.verdict == "singular", (vertex, t)
            assert coxeter_t(g, b, simple_root(g, cls.vertex), cls.t) == d


# --- standard characters ---------------------------------------------------------


def test_character_at_leaf_support(d4):
    g, b = d4
    sp = index_and_principal(g)
    res = standard_character(g, b, simple_root(g, "b1.1"), spectral=sp)
    assert (res.t, res.vertex) == (0, "b1.1")
    # vanishes at every even vertex including the support, positive at center
    assert res.character == (0, 0, 0, 0, 1)


def test_character_at_center_support(d4):
    g, b = d4
    sp = index_and_principal(g)
    res = standard_character(g, b, simple_root(g, "c"), spectral=sp)
    assert (res.t, res.vertex) == (0, "c")
    assert res.character == (1, 1, 1, 1, 0)


def test_character_transported_stays_positive(d4):
    g, b = d4
    sp = index_and_principal(g)
    d = coxeter_t(g, b, simple_root(g, "b2.1"), 2)
    res = standard_character(g, b, d, spectral=sp)
    assert res.t == 2
    assert all(v >= 0 for v in res.character)
    assert max(res.character) == 1
    # the anchor vanishes at the witness vertex and is positive on neighbors
    anchor = dict(zip(g.vertices, res.base))
    assert anchor[res.vertex] == 0
    assert all(anchor[w] > 0 for w in g.neighbors(res.vertex))


def test_character_rejects_regular_vector(d4):
    g, b = d4
    with pytest.raises(RegularVectorError) as exc:
        standard_character(g, b, (1, 1, 1, 1, 2))
    assert exc.value.classification.verdict == "regular"


def test_character_rejects_small_index():
    g = make_star((1, 1))
    b = bipartition(g)
    with pytest.raises(DomainError):
        standard_character(g, b, simple_root(g, "c"))


# --- vector serialization ----------------------------------------------------------


def test_vector_json_round_trip(d4):
    g, _ = d4
    x = (1, F(1, 3), 2.5, 0, F(4, 2))
    obj = vector_to_json_obj(g, x)
    assert obj["b1.1"] == 1
    assert obj["b2.1"] == "1/3"
    assert obj["b3.1"] == 2.5
    assert obj["c"] == 2  # integral Fraction flattens to int
    back = vector_from_json_obj(g, obj)
    assert back == (1, F(1, 3), 2.5, 0, 2)


def test_vector_from_map_validates(d4):
    g, _ = d4
    assert vector_from_map(g, {"c": 2}) == (0, 0, 0, 0, 2)
    with pytest.raises(DomainError):
        vector_from_map(g, {"nope": 1})
