import itertools

import pytest
from hypothesis import given, settings, strategies as st

from xsigma import compact as C, orderchain as O, repthy as R
from xsigma.rootsys import build_root_system

B = build_root_system


def test_eta_and_zeta():
    rs = B("F4")
    assert O.eta_weight(rs, range(4)) == (0, 0, 0, 1)
    assert O.eta_weight(rs, {0, 1}) == (1, 1, -2, 0)
    g2 = B("G2")
    assert O.eta_weight(g2, {0, 1}) == (1, 0)
    assert O.zeta_weight(g2, {0, 1}) == (-1, 1)


def test_zeta_is_sum_of_simple_roots():
    for t in ["B3", "C3", "F4", "G2"]:
        rs = B(t)
        z = O.zeta_weight(rs, range(rs.rank))
        assert rs.to_root_basis(z) == (1,) * rs.rank


def test_root_difference():
    rs = B("B2")
    assert O.root_difference(rs, (2, 0), (0, 0)) == (2, 2)
    with pytest.raises(O.OrderError):
        O.root_difference(rs, (1, 0), (0, 1))


def test_short_adjacent_root():
    assert O.short_adjacent_root(B("F4"), range(4)) == 2
    assert O.short_adjacent_root(B("C3"), range(3)) == 1
    assert O.short_adjacent_root(B("G2"), range(2)) == 0
    assert O.short_adjacent_root(B("A3"), range(3)) is None


def test_connected_subsets_count():
    # a path on n vertices has n(n+1)/2 connected subsets
    assert len(O.connected_subsets(B("A4"))) == 10
    assert len(O.connected_subsets(B("D4"))) == 11


def test_stembridge_step():
    rs = B("A2")
    step = O.stembridge_step(rs, (1, 1), (0, 0), {0, 1})
    assert step.result == (1, 1)
    with pytest.raises(O.OrderError):
        O.stembridge_step(rs, (1, 1), (0, 0), {0, 2})


def test_g2_cover_is_not_an_eta_step():
    rs = B("G2")
    assert O.dominant_ideal(rs, (0, 1)) == [(0, 1), (1, 0), (0, 0)]
    assert (-1, 1) in O.cover_differences(rs)


@pytest.mark.parametrize("t", ["A3", "B3", "C3", "D4", "G2", "F4"])
def test_ideal_matches_bruteforce(t):
    rs = B(t)
    for lam in itertools.product(range(2), repeat=rs.rank):
        ideal = O.dominant_ideal(rs, lam)
        assert set(ideal) == set(O.dominant_ideal_bruteforce(rs, lam))
        assert ideal[0] == lam
        # each element precedes everything below it
        for i, nu in enumerate(ideal):
            assert not any(rs.dominance_leq(nu, x) and x != nu for x in ideal[i + 1:])


def test_construct_k_preconditions():
    rs = B("B3")
    with pytest.raises(O.OrderError):
        O.construct_K(rs, (1, 0, 0), (1, 0, 0))
    with pytest.raises(O.OrderError):
        O.construct_K(B("A2xA1"), (1, 1, 0), (0, 0, 0))


def test_component_split():
    rs = B("A3")
    parts = O.component_split(rs, (2, 0, 2), (0, 2, 0))
    assert parts == [((1, 0, 0), frozenset({0})), ((0, 0, 1), frozenset({2}))]
    parts = O.component_split(rs, (1, 0, 1), (0, 0, 0))
    assert [K for _, K in parts] == [frozenset({0, 1, 2})]


@pytest.mark.parametrize("t", ["B3", "C3", "G2", "B2", "A3"])
def test_induction_step_sweep(t):
    rs = B(t)
    for lam in itertools.product(range(3), repeat=rs.rank):
        lbs = C.little_brothers(rs, lam)
        for mu in O.dominant_ideal(rs, lam):
            if mu == lam or not all(O.root_difference(rs, lam, mu)):
                continue
            step = O.induction_step(rs, lam, mu)
            assert rs.dominance_leq(mu, step.mu_next) and step.mu_next != mu
            assert rs.dominance_leq(step.mu_next, lam) and min(step.mu_next) >= 0
            assert step.lam_next == lam or step.lam_next in lbs
            nu = tuple(a + b for a, b in zip(mu, lam))
            assert R.tensor_contains(rs, step.mu_next, step.lam_next, nu)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "G2", "D4"]), st.data())
def test_ideal_is_down_closed(t, data):
    rs = B(t)
    lam = tuple(data.draw(st.lists(st.integers(0, 2), min_size=rs.rank, max_size=rs.rank)))
    ideal = O.dominant_ideal(rs, lam)
    mu = data.draw(st.sampled_from(ideal))
    assert set(O.dominant_ideal(rs, mu)) <= set(ideal)
    assert all(rs.dominance_leq(nu, lam) for nu in ideal)
