"""Dominance order machinery: cover steps by highest short roots, the choice of
the subset K, the inductive step towards lambda, and order ideals.

Every function works relative to a connected subset ``K0`` of the diagram (the
simple roots of a standard Levi subgroup), in ambient coordinates.  With
``K0=None`` the whole diagram is used, which must then be irreducible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .rootsys import RootSystem, RootSystemError, Subset, Weight


class OrderError(ValueError):
    """A precondition of an order operation is violated."""


@dataclass(frozen=True)
class CoverStep:
    base: Weight
    K: Subset
    result: Weight


@dataclass(frozen=True)
class InductionStep:
    lam: Weight
    mu: Weight
    mu_next: Weight
    lam_next: Weight
    branch: int
    K: Subset
    rule: str


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _weight_of_roots(rs: RootSystem, beta) -> Weight:
    return tuple(int(x) for x in rs.to_weight_coords(beta))


def eta_weight(rs: RootSystem, K: Iterable[int]) -> Weight:
    return _weight_of_roots(rs, rs.highest_short_root(K))


def zeta_weight(rs: RootSystem, K: Iterable[int]) -> Weight:
    K = frozenset(K)
    return _weight_of_roots(rs, [1 if i in K else 0 for i in range(rs.rank)])


def root_difference(rs: RootSystem, lam, mu) -> tuple[int, ...]:
    """Root coordinates of lam - mu; raises unless mu <= lam."""
    diff = rs.to_root_basis(_sub(lam, mu))
    if any(x < 0 or x.denominator != 1 for x in diff):
        raise OrderError(f"{tuple(mu)} is not below {tuple(lam)} in the dominance order")
    return tuple(int(x) for x in diff)


def _ambient(rs: RootSystem, K0) -> Subset:
    if K0 is None:
        if len(rs.blocks) != 1:
            raise OrderError("reducible root system: pass the connected subset explicitly")
        return frozenset(range(rs.rank))
    K0 = frozenset(K0)
    if not K0 or not rs.is_connected(K0):
        raise OrderError("the ambient subset must be nonempty and connected")
    return K0


def short_adjacent_root(rs: RootSystem, K0: Iterable[int]) -> int | None:
    """alpha_S of a connected subset: the short root adjacent to a long one (None if simply laced)."""
    K0 = frozenset(K0)
    short = rs.short_flags
    for i in sorted(K0):
        if short[i] and any(not short[j] for j in rs.neighbors[i] if j in K0):
            return i
    return None


@lru_cache(maxsize=None)
def connected_subsets(rs: RootSystem) -> tuple[Subset, ...]:
    """All nonempty connected subsets of the diagram, grown from single vertices."""
    found = set()
    layer = {frozenset([i]) for i in range(rs.rank)}
    while layer:
        found |= layer
        layer = {S | {j} for S in layer for j in rs.border(S)} - found
    return tuple(sorted(found, key=lambda S: (len(S), sorted(S))))


def stembridge_step(rs: RootSystem, lam, mu, K) -> CoverStep | None:
    """The step mu -> mu + eta_K when both hypotheses of the cover lemma hold."""
    lam, mu, K = tuple(lam), tuple(mu), frozenset(K)
    if lam == mu:
        raise OrderError("need lam > mu")
    diff = root_difference(rs, lam, mu)
    I = frozenset(i for i, c in enumerate(diff) if c)
    if not K or not K <= I or not rs.is_connected(K):
        raise OrderError("K must be a nonempty connected subset of Supp(lam - mu)")
    restricted = [c if i in K else 0 for i, c in enumerate(diff)]
    pair = _weight_of_roots(rs, restricted)
    if any(pair[a] < 0 for a in K if mu[a]):
        return None
    result = _add(mu, eta_weight(rs, K))
    if any(result[a] < 0 for a in I - K):
        return None
    return CoverStep(mu, K, result)


def _k1(rs, lam, mu, K0):
    gap = _sub(lam, mu)
    return frozenset(a for a in K0 if gap[a] >= 0)


def _qualifying_short(rs, lam, mu, K0):
    gap = _sub(lam, mu)
    short = rs.short_flags
    return [a for a in sorted(K0) if short[a] and lam[a] and gap[a] >= 0]


def _first_branch_applies(rs, lam, mu, K0) -> bool:
    s = short_adjacent_root(rs, K0)
    return s is None or mu[s] == 0 or bool(_qualifying_short(rs, lam, mu, K0))


def _check_full_difference(rs, lam, mu, K0):
    lam, mu = tuple(lam), tuple(mu)
    if any(lam[a] < 0 or mu[a] < 0 for a in K0):
        raise OrderError("weights must be dominant on the ambient subset")
    if lam == mu:
        raise OrderError("need lam > mu")
    diff = root_difference(rs, lam, mu)
    if frozenset(i for i, c in enumerate(diff) if c) != K0:
        raise OrderError("Supp(lam - mu) must be the whole ambient subset")
    return lam, mu


def construct_K(rs: RootSystem, lam, mu, K0=None) -> Subset:
    """Connected K with mu + eta_K dominant, mu + eta_K <= lam and K meeting Supp(lam)."""
    K0 = _ambient(rs, K0)
    lam, mu = _check_full_difference(rs, lam, mu, K0)
    K1 = _k1(rs, lam, mu, K0)
    pieces = rs.components_of(K1)
    if rs.is_simply_laced(K0):
        case = "a"
    else:
        shorts = _qualifying_short(rs, lam, mu, K0)
        if shorts:
            return next(P for P in pieces if shorts[0] in P)
        if mu[short_adjacent_root(rs, K0)]:
            raise OrderError("no qualifying short root and alpha_S lies in Supp(mu)")
        case = "c"
    hits = [P for P in pieces if any(lam[a] for a in P)]
    if not hits:
        raise OrderError(f"case {case}: no component of K1 meets Supp(lam)")
    return hits[0]


def induction_step(rs: RootSystem, lam, mu, K0=None) -> InductionStep:
    """One step mu -> mu' with V(mu + lam) inside V(mu') (x) V(lam').

    lam' is lam or a little brother of lam; mu < mu' <= lam.
    """
    from .compact import little_brother_K, satisfies_star_K

    K0 = _ambient(rs, K0)
    lam, mu = _check_full_difference(rs, lam, mu, K0)
    if _first_branch_applies(rs, lam, mu, K0):
        K = construct_K(rs, lam, mu, K0)
        mu_next = _add(mu, eta_weight(rs, K))
        if satisfies_star_K(rs, lam, K):
            return InductionStep(lam, mu, mu_next, lam, 1, K, "eta(1)")
        return InductionStep(lam, mu, mu_next, little_brother_K(rs, lam, K), 1, K, "eta(2)")
    mu_next = _add(mu, zeta_weight(rs, K0))
    letter, _ = rs.subset_type(K0)
    if letter == "B":
        if satisfies_star_K(rs, lam, K0):
            return InductionStep(lam, mu, mu_next, lam, 2, K0, "eta(1)")
        return InductionStep(lam, mu, mu_next, little_brother_K(rs, lam, K0), 2, K0, "eta(2)")
    if letter in ("C", "F"):
        return InductionStep(lam, mu, mu_next, lam, 2, K0, "zeta(1)")
    if letter == "G":
        short = next(a for a in K0 if rs.short_flags[a])
        if lam[short]:
            return InductionStep(lam, mu, mu_next, lam, 2, K0, "zeta(3)")
        return InductionStep(lam, mu, mu_next, little_brother_K(rs, lam, K0), 2, K0, "zeta(2)")
    raise RootSystemError(f"unexpected type {letter}")  # pragma: no cover


def component_split(rs: RootSystem, lam, mu) -> list[tuple[tuple[int, ...], Subset]]:
    """lam - mu as a sum of root vectors with pairwise non-adjacent connected supports."""
    diff = root_difference(rs, lam, mu)
    out = []
    for P in rs.components_of(i for i, c in enumerate(diff) if c):
        out.append((tuple(c if i in P else 0 for i, c in enumerate(diff)), P))
    return out


def _depth_key(rs, lam):
    lam_root = rs.to_root_basis(lam)

    def key(mu):
        return (sum(a - b for a, b in zip(lam_root, rs.to_root_basis(mu))), mu)
    return key


@lru_cache(maxsize=None)
def cover_differences(rs: RootSystem) -> tuple[Weight, ...]:
    """Weights lam - mu that can occur for a cover mu < lam of dominant weights.

    These are eta_K for connected K, plus alpha_1 + alpha_2 on a G2 piece
    (e.g. omega_1 < omega_2 in G2, which is not an eta_K step).
    """
    out = {eta_weight(rs, K) for K in connected_subsets(rs)}
    for K in connected_subsets(rs):
        if len(K) == 2 and rs.subset_type(K)[0] == "G":
            out.add(zeta_weight(rs, K))
    return tuple(sorted(out))


@lru_cache(maxsize=1024)
def _dominant_ideal(rs: RootSystem, lam: Weight) -> tuple[Weight, ...]:
    etas = cover_differences(rs)
    seen = {lam}
    stack = [lam]
    while stack:
        nu = stack.pop()
        for e in etas:
            down = _sub(nu, e)
            if all(c >= 0 for c in down) and down not in seen:
                seen.add(down)
                stack.append(down)
    return tuple(sorted(seen, key=_depth_key(rs, lam)))


def dominant_ideal(rs: RootSystem, lam) -> list[Weight]:
    """Dominant weights below lam, by downward cover steps (see cover_differences).

    Ordered by depth below lam, so every weight precedes those under it.
    """
    lam = tuple(lam)
    if any(c < 0 for c in lam):
        raise OrderError("lam must be dominant")
    return list(_dominant_ideal(rs, lam))


def dominant_ideal_bruteforce(rs: RootSystem, lam) -> list[Weight]:
    """Oracle: scan lam - n for all n in the box 0 <= n_i <= (root coordinate i of lam).

    A dominant weight has nonnegative root coordinates, so the box is complete.
    """
    lam = tuple(lam)
    top = [int(np.floor(x)) for x in rs.to_root_basis(lam)]
    if any(t < 0 for t in top):
        return []
    A = np.array(rs.cartan, dtype=np.int64)
    grids = np.meshgrid(*[np.arange(t + 1) for t in top], indexing="ij")
    n = np.stack([g.ravel() for g in grids], axis=1)
    mu = np.array(lam, dtype=np.int64) - n @ A.T
    keep = mu[(mu >= 0).all(axis=1)]
    found = {tuple(int(x) for x in row) for row in keep}
    return sorted(found, key=_depth_key(rs, lam))
