from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import quantum_integer_float, walks
from tlj import diagrams as dg
from tlj.scalars import Cyclotomic, Level, approx_complex
from tlj.tl_linear import (
    TLMorphism,
    basis_gram,
    block_crossing,
    braid_morphism,
    gram_rank,
    jones_wenzl,
    quotient_equal,
    radical_contains,
    radical_is_trivial,
    routing_word,
    tl_arith,
    tl_trace,
    trace_pairing,
)
from tlj.linalg import exact_rank


def E(level, n, i):
    return TLMorphism.generator(level, n, i)


def ident(level, n):
    return TLMorphism.identity(level, n)


def diagram(level, text):
    return TLMorphism.from_diagram(level, dg.parse_diagram(text))


@st.composite
def combinations(draw, level: Level, m: int, n: int):
    basis = dg.enumerate_diagrams(m, n)
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    return TLMorphism(level, m, n, dict(zip(basis, coeffs)))


# -- arithmetic ------------------------------------------------------------------------


def test_figure_composition_gives_delta_times_cap(level):
    a = diagram(level, "2,4:[1-6,2-3,4-5]")
    b = diagram(level, "4,0:[1-4,2-3]")
    assert tl_arith("compose", a, b) == TLMorphism.from_diagram(level, dg.cap(), level.delta)


def test_e_squared(level):
    e = E(level, 2, 1)
    assert e @ e == e.scale(level.delta)


def test_star_is_antilinear(level):
    e = E(level, 2, 1)
    assert tl_arith("star", e.scale(level.z)) == e.scale(level.z.conj())


def test_tensor_and_add_dispatch(level):
    assert tl_arith("tensor", ident(level, 2), ident(level, 3)) == ident(level, 5)
    e = E(level, 2, 1)
    assert tl_arith("add", e, e) == tl_arith("scale", e, 2)
    with pytest.raises(ValueError):
        tl_arith("frobnicate", e, e)


def test_shape_and_level_mismatch():
    a, b = ident(Level(1), 2), ident(Level(2), 2)
    with pytest.raises(ValueError):
        a @ b
    with pytest.raises(ValueError):
        ident(Level(1), 2) @ ident(Level(1), 3)
    with pytest.raises(ValueError):
        ident(Level(1), 2) + ident(Level(1), 4)


def test_json_rendering_is_sorted():
    level = Level(2)
    f = jones_wenzl(3, level)
    rendered = f.to_json()
    assert [r["diagram"] for r in rendered] == sorted(r["diagram"] for r in rendered)
    assert {r["diagram"] for r in rendered} == {d.encode() for d in f.terms}


# -- trace -----------------------------------------------------------------------------


def test_trace_examples(level):
    d = level.delta
    assert tl_trace(ident(level, 3)) == d * d * d
    assert tl_trace(E(level, 2, 1)) == d
    assert tl_trace(jones_wenzl(2, level)) == d * d - 1


def test_trace_requires_square():
    with pytest.raises(ValueError):
        tl_trace(TLMorphism.from_diagram(Level(1), dg.cup()))


@pytest.mark.parametrize("lvl", [Level(2), Level.delta_two()], ids=lambda l: l.name)
@pytest.mark.parametrize("n", range(1, 5))
def test_trace_is_cyclic_exhaustively(lvl, n):
    basis = [TLMorphism.from_diagram(lvl, d) for d in dg.enumerate_diagrams(n, n)]
    for a, b in product(basis, repeat=2):
        assert (a @ b).trace() == (b @ a).trace()


@pytest.mark.parametrize("lvl", [Level(1), Level(3)], ids=lambda l: l.name)
def test_trace_pairing_matches_product(lvl):
    basis = [TLMorphism.from_diagram(lvl, d) for d in dg.enumerate_diagrams(2, 4)]
    for a, b in product(basis, repeat=2):
        assert trace_pairing(a, b) == (a.star() @ b).trace()


# -- braids ----------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 6))
def test_reidemeister_two(level, n):
    for i in range(1, n):
        for s in (1, -1):
            assert braid_morphism(n, [(i, s), (i, -s)], level) == ident(level, n)


@pytest.mark.parametrize("n", range(3, 6))
def test_yang_baxter(level, n):
    for i in range(1, n - 1):
        for s in (1, -1):
            lhs = braid_morphism(n, [(i, s), (i + 1, s), (i, s)], level)
            rhs = braid_morphism(n, [(i + 1, s), (i, s), (i + 1, s)], level)
            assert lhs == rhs


def test_single_crossing_is_the_kauffman_element(level):
    sigma = braid_morphism(2, [(1, 1)], level)
    expected = ident(level, 2).scale(level.z.conj()) + E(level, 2, 1).scale(level.z)
    assert sigma == expected
    assert braid_morphism(2, [(1, -1)], level) == sigma.star()


def test_pull_over_identities(level):
    cap = TLMorphism.from_diagram(level, dg.cap())
    one = ident(level, 1)
    assert braid_morphism(3, [(1, 1), (2, 1)], level) @ cap.tensor(one) == one.tensor(cap)
    assert braid_morphism(3, [(2, 1), (1, 1)], level) @ one.tensor(cap) == cap.tensor(one)


def test_crossing_range_checked(level):
    with pytest.raises(ValueError):
        braid_morphism(2, [(2, 1)], level)


def test_block_crossing_two_over_one(level):
    sigma = block_crossing(level, 2, 1)
    assert sigma.shape == (3, 3)
    assert len(routing_word([1, 2, 0], [1, 1, 0])) == 2
    assert len(sigma.terms) <= 4
    assert sigma.star() @ sigma == ident(level, 3)


@pytest.mark.parametrize("a, b", [(1, 1), (1, 2), (2, 2), (3, 1)])
def test_block_crossings_are_unitary(a, b):
    level = Level(3)
    s = block_crossing(level, a, b)
    assert s.star() @ s == ident(level, a + b) == s @ s.star()


def test_routing_refuses_same_layer_crossings():
    with pytest.raises(ValueError):
        routing_word([1, 0], [0, 0])


# -- Jones-Wenzl -----------------------------------------------------------------------


def test_jw_base_cases(level):
    assert jones_wenzl(0, level) == ident(level, 0)
    assert jones_wenzl(1, level) == ident(level, 1)
    expected = ident(level, 2) - E(level, 2, 1).scale(level.delta.inverse())
    assert jones_wenzl(2, level) == expected


def _jw_range(level):
    top = 6 if level.k is None else min(level.k + 1, 6)
    return range(0, top + 1)


def test_jw_projection_laws(level):
    for n in _jw_range(level):
        f = jones_wenzl(n, level)
        assert f @ f == f
        assert f.star() == f
        for i in range(1, n):
            assert (E(level, n, i) @ f).is_zero() and (f @ E(level, n, i)).is_zero()


def test_jw_trace_is_quantum_integer(level):
    for n in _jw_range(level):
        tr = jones_wenzl(n, level).trace()
        assert tr == level.qint(n + 1)
        re, im = approx_complex(tr)
        assert abs(re - quantum_integer_float(level.k, n + 1)) < 1e-10 and abs(im) < 1e-12


@pytest.mark.parametrize("k", [1, 2, 3])
def test_top_jw_lies_in_radical(k):
    level = Level(k)
    assert radical_contains(jones_wenzl(k + 1, level))
    assert not radical_contains(jones_wenzl(k, level))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_jw_beyond_range_raises(k):
    with pytest.raises(ValueError):
        jones_wenzl(k + 2, Level(k))


# -- radical and ranks -----------------------------------------------------------------


def test_radical_examples():
    k1 = Level(1)
    assert radical_contains(TLMorphism.zero(k1, 2, 2))
    assert not radical_contains(ident(k1, 1))
    assert radical_contains(ident(k1, 2) - E(k1, 2, 1))
    assert not radical_contains(ident(Level(2), 2) - E(Level(2), 2, 1))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_radical_shortcut_agrees_with_full_test(k):
    level = Level(k)
    for m, n in [(1, 1), (2, 2), (1, 3), (3, 3), (2, 4), (4, 4)]:
        trivial = radical_is_trivial(level, m, n)
        basis = dg.enumerate_diagrams(m, n)
        assert (exact_rank(basis_gram(level, m, n)) == len(basis)) == trivial


@pytest.mark.parametrize("k", [1, 2])
def test_radical_shortcut_on_random_elements(k):
    level = Level(k)

    @given(combinations(level, 3, 3))
    def check(x):
        assert radical_contains(x) == radical_contains(x, use_shortcut=False)

    check()


def test_gram_rank_examples():
    for k, rank in [(1, 1), (2, 2), (3, 2)]:
        level = Level(k)
        basis = [TLMorphism.from_diagram(level, d) for d in dg.enumerate_diagrams(2, 2)]
        assert gram_rank(basis) == rank
    assert gram_rank([]) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_gram_rank_counts_squared_walks(level, n):
    # dim TLJ_n = sum over simples of (number of 0 -> s walks of length n)^2
    expected = sum(walks(level.k, n, s) ** 2 for s in range(n + 1))
    assert exact_rank(basis_gram(level, n, n)) == expected


def test_gram_rank_shape_mismatch():
    level = Level(2)
    with pytest.raises(ValueError):
        gram_rank([ident(level, 2), ident(level, 1)])


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("n", [2, 3])
def test_quotient_equality_is_a_congruence(k, n):
    level = Level(k)
    basis = [TLMorphism.from_diagram(level, d) for d in dg.enumerate_diagrams(n, n)]
    radical = {
        (1, 2): lambda: [ident(level, 2) - E(level, 2, 1)],
        (1, 3): lambda: [jones_wenzl(2, level).tensor(ident(level, 1)), E(level, 3, 1) - E(level, 3, 1) @ E(level, 3, 2)],
        (2, 2): lambda: [TLMorphism.zero(level, 2, 2)],
        (2, 3): lambda: [jones_wenzl(3, level)],
    }[k, n]()
    for r in radical:
        assert radical_contains(r)
        for a in basis:
            x, y = a, a + r
            assert quotient_equal(x, y) and quotient_equal(y, x)
            for b in basis:
                assert quotient_equal(x @ b, y @ b)
                assert quotient_equal(b @ x, b @ y)
            assert quotient_equal(x.star(), y.star())
            one = ident(level, 1)
            assert quotient_equal(x.tensor(one), y.tensor(one))


@given(st.data())
def test_star_is_an_antihomomorphism(data):
    level = Level(2)
    x = data.draw(combinations(level, 2, 4))
    y = data.draw(combinations(level, 4, 2))
    assert (x @ y).star() == y.star() @ x.star()
    assert x.star().star() == x


@given(st.data())
def test_composition_is_bilinear_and_associative(data):
    level = Level(1)
    x = data.draw(combinations(level, 2, 2))
    y = data.draw(combinations(level, 2, 2))
    w = data.draw(combinations(level, 2, 2))
    assert (x @ y) @ w == x @ (y @ w)
    assert x @ (y + w) == x @ y + x @ w


@given(st.data())
def test_trace_of_positive_elements_is_nonnegative(data):
    level = Level(3)
    x = data.draw(combinations(level, 2, 3))
    t = trace_pairing(x, x)
    re, im = approx_complex(t)
    assert abs(im) < 1e-9 and re > -1e-9
    assert (re < 1e-9) == radical_contains(x)


def test_coefficient_of_missing_diagram_is_zero():
    level = Level(2)
    assert jones_wenzl(2, level).coefficient(dg.identity(2)) == 1
    assert ident(level, 2).coefficient(dg.generator(2, 1)) == Cyclotomic.zero(level.order)
