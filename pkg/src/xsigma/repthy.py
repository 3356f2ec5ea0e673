"""Finite-dimensional representations: multiplicities, dimensions, tensor products.

Everything here is an exact oracle.  Weight multiplicities come from
Freudenthal's recursion run over dominant weights only (the rest of a weight
table is filled in by Weyl orbits); tensor products are decomposed with the
Brauer-Klimyk rule.  Two independent routes are kept for cross-checking: a
brute-force character computation and a single-coefficient Racah-Speiser sum
over the Weyl orbit of ``nu + rho``.
"""
from __future__ import annotations

import contextlib
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .rootsys import RootSystem, Weight


class GuardExceeded(RuntimeError):
    """A computation would exceed the configured size limits."""


@dataclass
class Guard:
    max_dim: int = 10**6
    max_product: int = 10**8
    max_orbit: int = 10**6


GUARD = Guard()

# opt-in log of decompositions, filled only inside audit_decompositions()
_AUDIT: list | None = None


@contextlib.contextmanager
def audit_decompositions():
    """Collect (lam, mu, decomposition) for every tensor_decompose call in the block."""
    global _AUDIT
    saved, _AUDIT = _AUDIT, []
    try:
        yield _AUDIT
    finally:
        _AUDIT = saved


@contextlib.contextmanager
def dim_cap(max_dim: int | None = None, max_product: int | None = None):
    """Temporarily override the size guard (not thread-safe; callers own the config)."""
    saved = (GUARD.max_dim, GUARD.max_product)
    if max_dim is not None:
        GUARD.max_dim = max_dim
    if max_product is not None:
        GUARD.max_product = max_product
    try:
        yield GUARD
    finally:
        GUARD.max_dim, GUARD.max_product = saved


@dataclass(frozen=True)
class WeightTable:
    highest: Weight
    entries: dict = field(hash=False, compare=False)

    def __len__(self):
        return len(self.entries)

    def dominant(self) -> dict:
        return {w: m for w, m in self.entries.items() if all(c >= 0 for c in w)}

    def dimension(self) -> int:
        return sum(self.entries.values())


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _check_dominant(rs: RootSystem, *weights):
    for w in weights:
        if len(w) != rs.rank or any(c < 0 for c in w):
            raise ValueError(f"expected a dominant weight of rank {rs.rank}, got {tuple(w)}")


def rho(rs: RootSystem) -> Weight:
    return (1,) * rs.rank


@lru_cache(maxsize=None)
def _roots_as_weights(rs: RootSystem):
    """(root coords, weight coords, (beta, alpha_j)-weights) for each positive root."""
    d = rs.symmetrizer
    out = []
    for beta in rs.positive_roots():
        out.append((beta, rs.to_weight_coords(beta), tuple(b * dj for b, dj in zip(beta, d))))
    return tuple(out)


def dim(rs: RootSystem, lam: Sequence[int]) -> int:
    """Weyl dimension formula."""
    _check_dominant(rs, lam)
    num, den = 1, 1
    for _beta, _w, bd in _roots_as_weights(rs):
        num *= sum(c * (l + 1) for c, l in zip(bd, lam))
        den *= sum(bd)
    q, r = divmod(num, den)
    assert r == 0
    return q


@lru_cache(maxsize=None)
def _gram(rs: RootSystem):
    """Integer Gram matrix of the fundamental weights scaled by a common denominator."""
    inv, d = rs.cartan_inverse, rs.symmetrizer
    G = [[inv[i][j] * d[i] for j in range(rs.rank)] for i in range(rs.rank)]
    scale = lcm(*(x.denominator for row in G for x in row)) if rs.rank else 1
    return tuple(tuple(int(x * scale) for x in row) for row in G), scale


def _norm_scaled(rs: RootSystem, v) -> int:
    G, _ = _gram(rs)
    return sum(v[i] * G[i][j] * v[j] for i in range(rs.rank) if v[i] for j in range(rs.rank) if v[j])


def dominant_conjugate(rs: RootSystem, v: Sequence[int]) -> tuple[Weight, int]:
    """Dot-action dominant representative of ``v`` and the sign of the Weyl element used.

    Reflects ``v + rho`` into the dominant chamber; sign 0 means ``v + rho``
    lies on a wall and the term vanishes in the Klimyk rule.
    """
    x = [c + 1 for c in v]
    sign = 1
    A = rs.cartan
    n = rs.rank
    while True:
        for i in range(n):
            c = x[i]
            if c < 0:
                for k in range(n):
                    x[k] -= c * A[k][i]
                sign = -sign
                break
            if c == 0:
                return tuple(c - 1 for c in x), 0
        else:
            return tuple(c - 1 for c in x), sign


@lru_cache(maxsize=None)
def _root_coords_int(rs: RootSystem):
    """(M, D) with root coordinates of a weight v equal to (M v) / D."""
    inv = rs.cartan_inverse
    D = lcm(*(x.denominator for row in inv for x in row)) if rs.rank else 1
    return tuple(tuple(int(x * D) for x in row) for row in inv), D


def _depth(rs: RootSystem, v) -> int:
    """Height of a root-lattice vector given in weight coordinates."""
    M, D = _root_coords_int(rs)
    h = sum(sum(a * x for a, x in zip(row, v)) for row in M)
    assert h % D == 0
    return h // D


@lru_cache(maxsize=None)
def _dominant_set(rs: RootSystem, lam: Weight) -> tuple[Weight, ...]:
    """Dominant weights below ``lam``, by subtracting positive roots inside the chamber."""
    roots = [w for _b, w, _bd in _roots_as_weights(rs)]
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for w in roots:
            nu = _sub(mu, w)
            if all(c >= 0 for c in nu) and nu not in seen:
                seen.add(nu)
                stack.append(nu)
    # sort by depth below lam
    depth = {mu: _depth(rs, _sub(lam, mu)) for mu in seen}
    return tuple(sorted(seen, key=lambda m: (depth[m], m), reverse=False))


@lru_cache(maxsize=256)
def dominant_multiplicities(rs: RootSystem, lam: Weight) -> dict:
    """Multiplicities of the dominant weights of V(lam) via Freudenthal's formula."""
    lam = tuple(lam)
    _check_dominant(rs, lam)
    r = rho(rs)
    roots = _roots_as_weights(rs)
    M, D = _root_coords_int(rs)
    top = _norm_scaled(rs, _add(lam, r))
    _, scale = _gram(rs)
    mult = {lam: 1}
    for mu in _dominant_set(rs, lam)[1:]:
        diff = _sub(lam, mu)
        gap = [sum(a * x for a, x in zip(row, diff)) // D for row in M]
        acc = 0
        for beta, bw, bd in roots:
            kmax = min(g // b for g, b in zip(gap, beta) if b)
            nu = mu
            for _k in range(kmax):
                nu = _add(nu, bw)
                m = mult.get(rs.dominant_representative(nu), 0)
                if m:
                    acc += m * sum(c * x for c, x in zip(bd, nu))
        denom = top - _norm_scaled(rs, _add(mu, r))
        m, rem = divmod(2 * acc * scale, denom)
        assert rem == 0, (lam, mu)
        if m:
            mult[mu] = m
    return mult


def weight_multiplicity(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> int:
    """Multiplicity of the weight ``mu`` in V(lam)."""
    return dominant_multiplicities(rs, tuple(lam)).get(rs.dominant_representative(mu), 0)


def weyl_orbit(rs: RootSystem, v: Sequence[int]) -> set[Weight]:
    v = tuple(v)
    orbit = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for i in range(rs.rank):
            if x[i]:
                y = rs.reflect(x, i)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
    return orbit


def weight_table(rs: RootSystem, lam: Sequence[int]) -> WeightTable:
    """All weights of V(lam) with multiplicities."""
    lam = tuple(lam)
    size = dim(rs, lam)
    if size > GUARD.max_dim:
        raise GuardExceeded(f"dim V{lam} = {size} exceeds the cap {GUARD.max_dim}")
    return _weight_table(rs, lam, size)


@lru_cache(maxsize=128)
def _weight_table(rs: RootSystem, lam: Weight, size: int) -> WeightTable:
    entries = {}
    for mu, m in dominant_multiplicities(rs, lam).items():
        for w in weyl_orbit(rs, mu):
            entries[w] = m
    table = WeightTable(lam, entries)
    assert table.dimension() == size
    return table


def _guard_pair(rs, lam, mu):
    a, b = dim(rs, lam), dim(rs, mu)
    if min(a, b) > GUARD.max_dim:
        raise GuardExceeded(f"both factors exceed the cap {GUARD.max_dim}")
    if a * b > GUARD.max_product:
        raise GuardExceeded(f"dim product {a * b} exceeds the cap {GUARD.max_product}")
    return a, b


@lru_cache(maxsize=4096)
def _klimyk(rs: RootSystem, lam: Weight, mu: Weight) -> tuple:
    a, b = dim(rs, lam), dim(rs, mu)
    big, small = (lam, mu) if b <= a else (mu, lam)
    out = Counter()
    for xi, m in weight_table(rs, small).entries.items():
        nu, sign = dominant_conjugate(rs, _add(big, xi))
        if sign:
            out[nu] += sign * m
    assert all(v >= 0 for v in out.values())
    return tuple(sorted((k, v) for k, v in out.items() if v))


def tensor_decompose(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> dict:
    """Decomposition of V(lam) (x) V(mu) as {highest weight: multiplicity}."""
    lam, mu = tuple(lam), tuple(mu)
    _check_dominant(rs, lam, mu)
    _guard_pair(rs, lam, mu)
    out = dict(_klimyk(rs, lam, mu))
    if _AUDIT is not None:
        _AUDIT.append((rs, lam, mu, out))
    return out


def dimension_identity(rs: RootSystem, lam, mu, decomposition: dict) -> bool:
    """sum of mult * dim over constituents equals dim(lam) * dim(mu)."""
    return sum(m * dim(rs, nu) for nu, m in decomposition.items()) == dim(rs, lam) * dim(rs, mu)


def tensor_decompose_by_characters(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> dict:
    """Independent route: multiply characters, then peel off irreducible characters."""
    lam, mu = tuple(lam), tuple(mu)
    _check_dominant(rs, lam, mu)
    _guard_pair(rs, lam, mu)
    char = Counter()
    ta, tb = weight_table(rs, lam).entries, weight_table(rs, mu).entries
    for x, m in ta.items():
        for y, n in tb.items():
            char[_add(x, y)] += m * n
    out = {}
    while char:
        # any dominant weight maximal in the remaining character is a highest weight
        top = max((w for w in char if all(c >= 0 for c in w)),
                  key=lambda w: (sum(rs.to_root_basis(w)), w))
        k = char[top]
        out[top] = k
        for w, m in weight_table(rs, top).entries.items():
            char[w] -= k * m
            if char[w] == 0:
                del char[w]
        assert all(v > 0 for v in char.values())
    return out


@lru_cache(maxsize=None)
def _signed_orbit(rs: RootSystem, v: Weight) -> tuple:
    """Orbit of a regular weight with the sign of the unique Weyl element reaching each point."""
    seen = {v: 1}
    stack = [v]
    while stack:
        x = stack.pop()
        for i in range(rs.rank):
            y = rs.reflect(x, i)
            if y not in seen:
                seen[y] = -seen[x]
                stack.append(y)
                if len(seen) > GUARD.max_orbit:
                    raise GuardExceeded("Weyl orbit exceeds the cap")
    return tuple(seen.items())


def tensor_multiplicity(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                        nu: Sequence[int]) -> int:
    """Multiplicity of V(nu) in V(lam) (x) V(mu).

    Two exact single-coefficient sums are available; the cheaper one is used.
    The Klimyk sum runs over the weights of the smaller factor, the
    Racah-Speiser sum runs over the Weyl orbit of nu + rho and needs only dominant
    multiplicities, so it also works for modules far above the dimension cap.
    """
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    _check_dominant(rs, lam, mu, nu)
    if not rs.dominance_leq(nu, _add(lam, mu)):
        return 0
    a, b = dim(rs, lam), dim(rs, mu)
    if min(a, b) <= min(GUARD.max_dim, rs.weyl_order):
        return _klimyk_coefficient(rs, lam, mu, nu)
    return _orbit_coefficient(rs, lam, mu, nu)


def _klimyk_coefficient(rs, lam, mu, nu) -> int:
    big, small = (lam, mu) if dim(rs, mu) <= dim(rs, lam) else (mu, lam)
    total = 0
    for xi, m in weight_table(rs, small).entries.items():
        w, sign = dominant_conjugate(rs, _add(big, xi))
        if sign and w == nu:
            total += sign * m
    assert total >= 0
    return total


def dominant_representatives(rs: RootSystem, X: np.ndarray) -> np.ndarray:
    """Row-wise dominant Weyl conjugates of an integer array of weights."""
    X = np.array(X, dtype=np.int64)
    A = np.array(rs.cartan, dtype=np.int64)
    while True:
        moved = False
        for i in range(rs.rank):
            neg = X[:, i] < 0
            if neg.any():
                X[neg] -= np.outer(X[neg, i], A[:, i])
                moved = True
        if not moved:
            return X


@lru_cache(maxsize=None)
def weyl_group_matrices(rs: RootSystem):
    """All Weyl group elements as integer matrices on weight coordinates, with signs."""
    if rs.weyl_order > GUARD.max_orbit:
        raise GuardExceeded(f"|W| = {rs.weyl_order} exceeds the cap {GUARD.max_orbit}")
    n = rs.rank
    A = np.array(rs.cartan, dtype=np.int64)
    gens = []
    for i in range(n):
        S = np.eye(n, dtype=np.int64)
        S[:, i] -= A[:, i]  # s_i(x) = x - x_i * (column i)
        gens.append(S)
    rho_vec = np.ones(n, dtype=np.int64)
    seen = {tuple(rho_vec): 0}
    mats, signs = [np.eye(n, dtype=np.int64)], [1]
    for k in itertools.count():
        if k >= len(mats):
            break
        for S in gens:
            M = S @ mats[k]
            key = tuple(M @ rho_vec)
            if key not in seen:
                seen[key] = len(mats)
                mats.append(M)
                signs.append(-signs[k])
    return np.stack(mats), np.array(signs, dtype=np.int64)


def _signed_orbit_array(rs: RootSystem, v: Weight):
    if rs.weyl_order <= GUARD.max_orbit:
        mats, signs = weyl_group_matrices(rs)
        return mats @ np.array(v, dtype=np.int64), signs
    pts = _signed_orbit(rs, v)
    return (np.array([p for p, _ in pts], dtype=np.int64),
            np.array([s for _, s in pts], dtype=np.int64))


def _orbit_coefficient(rs, lam, mu, nu) -> int:
    if len(_dominant_set(rs, lam)) < len(_dominant_set(rs, mu)):
        lam, mu = mu, lam
    mults = dominant_multiplicities(rs, mu)
    pts, signs = _signed_orbit_array(rs, tuple(c + 1 for c in nu))
    dom = dominant_representatives(rs, pts - np.array([c + 1 for c in lam], dtype=np.int64))
    total = 0
    for row, sign in zip(dom.tolist(), signs.tolist()):
        m = mults.get(tuple(row))
        if m:
            total += sign * m
    assert total >= 0
    return total


def tensor_contains(rs: RootSystem, lam: Sequence[int], mu: Sequence[int],
                    nu: Sequence[int]) -> bool:
    """Whether V(nu) is a constituent of V(lam) (x) V(mu)."""
    return tensor_multiplicity(rs, lam, mu, nu) > 0


def iterated_constituents(rs: RootSystem, factors: Sequence[Sequence[int]],
                          target: Sequence[int] | None = None) -> set[Weight]:
    """Highest weights occurring in the left-folded tensor product of ``factors``.

    With a ``target``, constituents that can no longer reach it are pruned after
    every fold: ``target <= constituent + (sum of the remaining factors)`` is
    necessary for the target to survive.
    """
    factors = [tuple(f) for f in factors]
    _check_dominant(rs, *factors)
    if not factors:
        return {(0,) * rs.rank}
    suffix = [(0,) * rs.rank] * (len(factors) + 1)
    for k in range(len(factors) - 1, -1, -1):
        suffix[k] = _add(suffix[k + 1], factors[k])
    current = {factors[0]}
    for k in range(1, len(factors)):
        nxt = set()
        for c in current:
            nxt.update(tensor_decompose(rs, c, factors[k]))
        if target is not None:
            nxt = {c for c in nxt if rs.dominance_leq(target, _add(c, suffix[k + 1]))}
        current = nxt
    return current


def iterated_contains(rs: RootSystem, factors: Sequence[Sequence[int]], nu: Sequence[int]) -> bool:
    nu = tuple(nu)
    return nu in iterated_constituents(rs, factors, nu)


@dataclass(frozen=True)
class LeviSubsystem:
    system: RootSystem
    embedding: tuple[int, ...]

    def restrict(self, lam: Sequence[int]) -> Weight:
        return tuple(lam[i] for i in self.embedding)

    def extend(self, lam: Sequence[int], rank: int) -> Weight:
        out = [0] * rank
        for c, i in zip(lam, self.embedding):
            out[i] = c
        return tuple(out)


def levi_subsystem(rs: RootSystem, subset: Iterable[int]) -> LeviSubsystem:
    """Root subsystem on ``subset`` with the coordinate embedding into ``rs``."""
    emb = tuple(sorted(subset))
    cartan = [[rs.cartan[i][j] for j in emb] for i in emb]
    sub = RootSystem.from_cartan(cartan)
    return LeviSubsystem(sub, emb)
