import itertools

import pytest
from hypothesis import given, settings, strategies as st

from xsigma import repthy as R
from xsigma.rootsys import build_root_system

B = build_root_system


@pytest.mark.parametrize("t, lam, d", [
    ("A1", (3,), 4), ("A2", (1, 1), 8), ("A3", (0, 1, 0), 6), ("B2", (1, 0), 5), ("B2", (0, 1), 4),
    ("B3", (0, 0, 1), 8), ("C3", (0, 0, 1), 14), ("G2", (1, 0), 7), ("G2", (0, 1), 14),
    ("D4", (0, 1, 0, 0), 28), ("F4", (0, 0, 0, 1), 26), ("F4", (1, 0, 0, 0), 52),
    ("E6", (1, 0, 0, 0, 0, 0), 27), ("E7", (0, 0, 0, 0, 0, 0, 1), 56), ("E8", (0,) * 7 + (1,), 248), ("E8", (1,) + (0,) * 7, 3875),
])
def test_weyl_dimension(t, lam, d):
    assert R.dim(B(t), lam) == d


@pytest.mark.parametrize("t, lam", [("A2", (2, 1)), ("B3", (1, 0, 1)), ("C3", (0, 1, 1)),
                                    ("G2", (1, 1)), ("F4", (0, 0, 1, 0)), ("D4", (1, 0, 1, 1))])
def test_freudenthal_table_sums_to_dimension(t, lam):
    rs = B(t)
    table = R.weight_table(rs, lam)
    assert table.dimension() == R.dim(rs, lam)
    # multiplicities are Weyl invariant
    for w, m in list(table.entries.items())[:50]:
        assert table.entries[rs.dominant_representative(w)] == m


def test_known_multiplicities():
    assert R.weight_multiplicity(B("A2"), (1, 1), (0, 0)) == 2
    assert R.weight_multiplicity(B("G2"), (0, 1), (0, 0)) == 2
    assert R.weight_multiplicity(B("F4"), (1, 0, 0, 0), (0, 0, 0, 0)) == 4
    assert R.weight_multiplicity(B("B2"), (1, 0), (0, 1)) == 0


def test_known_decompositions():
    # 3 x 3bar = 8 + 1 in A2; 7 x 7 = 1 + 7 + 14 + 27 in G2
    assert R.tensor_decompose(B("A2"), (1, 0), (0, 1)) == {(1, 1): 1, (0, 0): 1}
    assert R.tensor_decompose(B("G2"), (1, 0), (1, 0)) == {(2, 0): 1, (0, 1): 1, (1, 0): 1, (0, 0): 1}
    # 5 x 5 = 1 + 10 + 14 in B2
    assert R.tensor_decompose(B("B2"), (1, 0), (1, 0)) == {(2, 0): 1, (0, 2): 1, (0, 0): 1}


def test_tensor_lemma_instances():
    # the explicit inclusions used for the eta steps, one per type
    assert R.tensor_contains(B("B3"), (1, 0, 0), (0, 0, 1), (0, 0, 1))
    assert R.tensor_contains(B("B4"), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0))
    assert R.tensor_contains(B("B3"), (1, 0, 0), (0, 0, 0), (1, 0, 0))
    assert R.tensor_contains(B("C4"), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 1, 0))
    assert R.tensor_contains(B("C4"), (0, 1, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1))
    assert R.tensor_contains(B("F4"), (0, 0, 0, 1), (0, 0, 1, 0), (0, 0, 1, 0))
    assert R.tensor_contains(B("F4"), (0, 0, 0, 1), (0, 0, 0, 1), (0, 0, 0, 1))
    assert R.tensor_contains(B("F4"), (0, 0, 0, 1), (0, 0, 0, 1), (1, 0, 0, 0))
    assert R.tensor_contains(B("F4"), (0, 0, 0, 1), (1, 0, 0, 1), (0, 1, 0, 0))
    assert R.tensor_contains(B("G2"), (1, 0), (1, 0), (1, 0))
    assert R.tensor_contains(B("G2"), (1, 0), (1, 0), (0, 1))


@pytest.mark.parametrize("t", ["A2", "B2", "C3", "G2", "B3", "D4"])
def test_three_routes_agree(t):
    rs = B(t)
    ws = list(itertools.product(range(2), repeat=rs.rank))
    for lam, mu in itertools.product(ws, ws):
        dec = R.tensor_decompose(rs, lam, mu)
        assert R.dimension_identity(rs, lam, mu, dec)
        if R.dim(rs, lam) * R.dim(rs, mu) <= 2000:
            assert dec == R.tensor_decompose_by_characters(rs, lam, mu)
        for nu in list(dec)[:4]:
            assert R._orbit_coefficient(rs, lam, mu, nu) == dec[nu]
            assert R._klimyk_coefficient(rs, lam, mu, nu) == dec[nu]


def test_non_constituent_has_zero_coefficient():
    rs = B("B2")
    assert R.tensor_multiplicity(rs, (1, 0), (1, 0), (1, 0)) == 0
    assert R._orbit_coefficient(rs, (1, 0), (1, 0), (1, 0)) == 0


def test_guard_refuses_large_products():
    rs = B("E8")
    with pytest.raises(R.GuardExceeded):
        R.tensor_decompose(rs, (0,) * 7 + (2,), (0,) * 7 + (2,))
    R.weight_table(B("A2"), (2, 2))
    with R.dim_cap(max_dim=10):
        # a cached table must not slip past a tighter cap
        with pytest.raises(R.GuardExceeded):
            R.weight_table(B("A2"), (2, 2))
    assert R.GUARD.max_dim == 10**6


def test_audit_collects_decompositions():
    with R.audit_decompositions() as log:
        R.tensor_decompose(B("A2"), (1, 0), (1, 0))
    assert len(log) == 1
    R.tensor_decompose(B("A2"), (1, 0), (0, 1))
    assert len(log) == 1


def test_iterated_constituents():
    rs = B("A1")
    assert R.iterated_constituents(rs, [(1,), (1,), (1,)]) == {(3,), (1,)}
    assert R.iterated_contains(rs, [(1,)] * 3, (1,))
    assert not R.iterated_contains(rs, [(1,)] * 3, (0,))


def test_levi_subsystem():
    rs = B("F4")
    view = R.levi_subsystem(rs, {1, 2})
    assert view.system.cartan == ((2, -1), (-2, 2))
    assert view.restrict((1, 2, 3, 4)) == (2, 3)
    assert view.extend((2, 3), 4) == (0, 2, 3, 0)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["A2", "A3", "B2", "B3", "C3", "G2"]), st.data())
def test_decomposition_properties(t, data):
    rs = B(t)
    coords = st.lists(st.integers(0, 2 if rs.rank <= 2 else 1), min_size=rs.rank, max_size=rs.rank)
    lam, mu = tuple(data.draw(coords)), tuple(data.draw(coords))
    dec = R.tensor_decompose(rs, lam, mu)
    assert R.dimension_identity(rs, lam, mu, dec)
    assert dec == R.tensor_decompose(rs, mu, lam)
    top = tuple(a + b for a, b in zip(lam, mu))
    assert dec[top] == 1
    assert all(rs.dominance_leq(nu, top) for nu in dec)
    # V(lam) x V(0) = V(lam)
    assert R.tensor_decompose(rs, lam, (0,) * rs.rank) == {lam: 1}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "G2"]), st.data())
def test_dual_multiplicity(t, data):
    # V(nu) in V(lam) x V(mu) iff V(lam*) in V(mu) x V(nu*)
    rs = B(t)
    coords = st.lists(st.integers(0, 1), min_size=rs.rank, max_size=rs.rank)
    lam, mu = tuple(data.draw(coords)), tuple(data.draw(coords))
    dec = R.tensor_decompose(rs, lam, mu)
    nu = data.draw(st.sampled_from(sorted(dec)))
    assert R.tensor_multiplicity(rs, mu, rs.dual_weight(nu), rs.dual_weight(lam)) == dec[nu]
