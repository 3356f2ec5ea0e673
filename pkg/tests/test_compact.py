import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from xsigma import compact as C, orderchain as O, repthy as R
from xsigma.rootsys import build_root_system

B = build_root_system


def keys(rays):
    return {(r.kind, r.index) for r in rays}


@pytest.mark.parametrize("t, lam, lb", [
    ("B3", (1, 0, 0), (0, 0, 0)), ("B3", (3, 0, 0), (2, 0, 0)), ("G2", (0, 2), (1, 1)),
    ("F4", (1, 0, 0, 0), (0, 0, 0, 1)), ("F4", (0, 1, 0, 0), (1, 0, 0, 1)), ("C3", (0, 0, 1), (1, 0, 0)),
])
def test_little_brothers(t, lam, lb):
    rs = B(t)
    assert not C.satisfies_star(rs, lam)
    assert C.little_brothers(rs, lam) == {lb}


def test_star_holds_when_short_root_in_support():
    assert C.satisfies_star(B("B3"), (1, 0, 1))
    assert C.satisfies_star(B("C3"), (0, 1, 1))
    assert C.satisfies_star(B("A3"), (0, 1, 0))
    assert C.little_brothers(B("G2"), (1, 1)) == set()


def test_little_brother_on_product():
    rs = B("B2xG2")
    # one little brother per offending component
    assert C.little_brothers(rs, (1, 0, 0, 1)) == {(0, 0, 0, 1), (1, 0, 1, 0)}


def test_sigma_validation():
    rs = B("A2")
    with pytest.raises(C.SigmaError):
        C.make_sigma(rs, [(1, 0), (0, 1)])
    with pytest.raises(C.SigmaError):
        C.make_sigma(rs, [])
    with pytest.raises(C.SigmaError):
        C.make_sigma(rs, [(1, -1)])
    # off-coset weights are allowed but reported
    sigma = C.make_sigma(rs, [(1, 1), (0, 0), (1, 0)])
    assert sigma.max == (1, 1)
    assert C.sigma_notes(rs, sigma) == ["[1, 0] is not in the coset of [1, 1] modulo the root lattice"]


def test_normality_decide_with_sigma():
    rs = B("G2")
    assert not C.normality_decide(rs, C.make_sigma(rs, [(0, 2)]))
    assert C.normality_decide(rs, C.make_sigma(rs, [(0, 2), (1, 1)]))


def test_normality_oracle_g2():
    rs = B("G2")
    sigma = C.make_sigma(rs, [(0, 1), (1, 0)])
    hits = C.normality_oracle(rs, sigma, 2)
    assert hits[(0, 1)].n == 1
    assert hits[(1, 0)].n == 1
    assert hits[(0, 0)].n == 2 and hits[(0, 0)].factors == ((0, 1), (0, 1))


def test_normality_oracle_fails_without_little_brother():
    rs = B("B2")
    sigma = C.make_sigma(rs, [(1, 0)])
    assert C.normality_oracle(rs, sigma, 4, [(0, 0)])[(0, 0)] is None


@pytest.mark.parametrize("t, lam", [("B3", (1, 1, 0)), ("C3", (1, 0, 1)), ("G2", (0, 2)), ("F4", (0, 0, 0, 1))])
def test_certificates(t, lam):
    rs = B(t)
    sigma = C.make_sigma(rs, {lam} | C.little_brothers(rs, lam))
    for mu in O.dominant_ideal(rs, lam):
        cert = C.normality_certificate(rs, sigma, mu)
        assert cert.n == len(cert.factors)
        assert C.verify_certificate(rs, sigma, cert)


def test_certificate_needs_little_brothers():
    rs = B("B3")
    with pytest.raises(C.SigmaError):
        C.normality_certificate(rs, C.make_sigma(rs, [(1, 0, 0)]), (0, 0, 0))


def test_d4_structure_and_rays():
    rs = B("D4")
    lam = (1, 0, 0, 0)
    s = C.structure_subsets(rs, lam)
    assert s.J == frozenset({2, 3})
    flags = C.is_q_factorial(rs, lam)
    assert not flags.value and flags.i and flags.ii and not flags.iii
    assert len(C.extremal_rays(rs, lam)) == 5


def test_a3_rays():
    rs = B("A3")
    rays = C.extremal_rays(rs, (0, 1, 0))
    assert keys(rays) == {("coroot", 0), ("coroot", 2), ("neg_coweight", 0), ("neg_coweight", 2)}
    assert keys(C.extremal_rays_generic(C.colored_cone(rs, (0, 1, 0)))) == keys(rays)


def test_wonderful_rays_are_all_negative_coweights():
    rs = B("E6")
    rays = C.extremal_rays(rs, (1,) * 6)
    assert keys(rays) == {("neg_coweight", a) for a in range(6)}


@pytest.mark.parametrize("t, lam, ii, iii", [
    ("A2", (1, 1), True, True), ("A2", (1, 0), True, True), ("B3", (0, 0, 1), True, True),
    ("B2", (0, 1), True, True), ("B2", (1, 0), True, False),
])
def test_timashev_examples(t, lam, ii, iii):
    flags = C.timashev_check(B(t), lam)
    assert (flags.ii, flags.iii) == (ii, iii)


def test_smoothness_examples():
    assert C.is_smooth(B("A2"), (1, 1)).value
    assert not C.is_smooth(B("B3"), (1, 0, 0)).value
    assert not C.is_smooth(B("A3"), (0, 1, 0)).value


def test_decide_report_json():
    rs = B("G2")
    report = C.decide(rs, C.make_sigma(rs, [(0, 2), (1, 1)]), certify=True)
    d = report.to_dict()
    assert d["normal"] and not d["star"] and d["little_brothers"] == [[1, 1]]
    assert len(d["certificates"]) == len(O.dominant_ideal(rs, (0, 2)))
    assert list(d) == ["type", "lambda", "sigma", "star", "little_brothers", "normal", "q_factorial",
                       "smooth", "extremal_rays", "timashev", "notes", "certificates"]


def test_reducible_systems_decide_blockwise():
    rs = B("A2xG2")
    lam = (1, 1, 0, 1)
    assert C.satisfies_star(rs, lam) is False
    assert C.is_q_factorial(rs, lam).value == C.is_q_factorial(B("G2"), (0, 1)).value
    assert C.is_smooth(rs, lam).value == (C.is_smooth(B("A2"), (1, 1)).value and C.is_smooth(B("G2"), (0, 1)).value)


def test_same_compactification():
    rs = B("B3")
    assert C.same_compactification(rs, (1, 0, 2), (3, 0, 1))
    assert not C.same_compactification(rs, (1, 0, 2), (1, 1, 2))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "D4", "G2", "F4", "B4", "C4"]), st.data())
def test_decisions_depend_on_support_only(t, data):
    rs = B(t)
    lam = tuple(data.draw(st.lists(st.integers(0, 3), min_size=rs.rank, max_size=rs.rank)))
    if not any(lam):
        return
    ind = tuple(1 if c else 0 for c in lam)
    assert C.satisfies_star(rs, lam) == C.satisfies_star(rs, ind)
    assert C.is_q_factorial(rs, lam) == C.is_q_factorial(rs, ind)
    assert C.is_smooth(rs, lam).value == C.is_smooth(rs, ind).value
    assert keys(C.extremal_rays(rs, lam)) == keys(C.extremal_rays(rs, ind))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["B2", "B3", "C3", "G2", "F4"]), st.data())
def test_little_brother_is_dominant_and_below(t, data):
    rs = B(t)
    lam = tuple(data.draw(st.lists(st.integers(0, 3), min_size=rs.rank, max_size=rs.rank)))
    for lb in C.little_brothers(rs, lam):
        assert min(lb) >= 0 and rs.dominance_leq(lb, lam) and lb != lam


def test_wide_certificate_invariant():
    # rank <= 3, coordinates summing to at most 3; needs a larger product cap
    with R.dim_cap(max_product=10**12):
        for t in ["B2", "B3", "C3", "G2", "A3"]:
            rs = B(t)
            for lam in itertools.product(range(4), repeat=rs.rank):
                if not any(lam) or sum(lam) > 3:
                    continue
                sigma = C.make_sigma(rs, {lam} | C.little_brothers(rs, lam))
                for mu in O.dominant_ideal(rs, lam):
                    assert C.verify_certificate(rs, sigma, C.normality_certificate(rs, sigma, mu))
