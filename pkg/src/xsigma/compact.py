"""Decisions about the compactifications X_Sigma of an adjoint group.

Normality is read off little brothers, Q-factoriality and smoothness off the
colored cone of the normalisation.  Each decision has a second, independent
route (tensor-product oracle, exact LP on the cone, the dual-basis criterion)
so the two can be compared.

Weights are tuples in the fundamental-weight basis; coweight-lattice vectors are
tuples in the fundamental-coweight basis, where the simple coroot of alpha_i is
row i of the Cartan matrix and -omega_i^vee is minus the i-th unit vector.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import linprog as scipy_linprog
from sympy import Matrix
from sympy.solvers.simplex import InfeasibleLPError
from sympy.solvers.simplex import linprog as sympy_linprog

from . import repthy
from .rootsys import RootSystem, Subset, Weight


class SigmaError(ValueError):
    """Sigma is empty, not dominant, or has no unique maximal element."""


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _scale(a, k):
    return tuple(k * x for x in a)


# condition (star) and little brothers

def _alpha_s(rs: RootSystem, K: Subset) -> int | None:
    short = rs.short_flags
    for i in sorted(K):
        if short[i] and any(not short[j] for j in rs.neighbors[i] if j in K):
            return i
    return None


def _violates(rs: RootSystem, lam, K: Subset) -> bool:
    s = _alpha_s(rs, K)
    if s is None:
        return False
    return any(lam[a] and not rs.short_flags[a] for a in K) and not lam[s]


def satisfies_star_K(rs: RootSystem, lam, K: Iterable[int]) -> bool:
    """Condition (star) for the Levi subgroup on K: checked on each component of K."""
    return not any(_violates(rs, lam, P) for P in rs.components_of(K))


def satisfies_star(rs: RootSystem, lam) -> bool:
    return satisfies_star_K(rs, lam, range(rs.rank))


def _path_from_long_end(rs: RootSystem, K: Subset) -> list[int]:
    ends = [i for i in K if len(rs.neighbors[i] & K) <= 1]
    start = next(i for i in sorted(ends) if not rs.short_flags[i])
    path, prev = [start], None
    while True:
        nxt = [j for j in rs.neighbors[path[-1]] & K if j != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def little_brother_K(rs: RootSystem, lam, K: Iterable[int]) -> Weight:
    """Little brother of lam with respect to a connected non-simply-laced K violating (star)."""
    K = frozenset(K)
    lam = tuple(lam)
    if not _violates(rs, lam, K):
        raise ValueError("lam satisfies (star) on K; it has no little brother there")
    path = _path_from_long_end(rs, K)
    short = rs.short_flags
    q = next(k for k, a in enumerate(path) if short[a])
    p = max(k for k, a in enumerate(path) if not short[a] and lam[a])
    out = list(lam)
    for a in path[p:q + 1]:
        col = rs.simple_root(a)
        for i in range(rs.rank):
            out[i] -= col[i]
    return tuple(out)


def little_brothers_K(rs: RootSystem, lam, K: Iterable[int]) -> set[Weight]:
    return {little_brother_K(rs, lam, P) for P in rs.components_of(K) if _violates(rs, lam, P)}


def little_brothers(rs: RootSystem, lam) -> set[Weight]:
    return little_brothers_K(rs, lam, range(rs.rank))


# Sigma

@dataclass(frozen=True)
class SigmaSet:
    weights: frozenset
    max: Weight

    def sorted(self) -> list[Weight]:
        return sorted(self.weights)


def _rationally_below(rs: RootSystem, mu, lam) -> bool:
    return all(c >= 0 for c in rs.to_root_basis(_sub(lam, mu)))


def is_simple_sigma(rs: RootSystem, weights: Iterable[Sequence[int]]) -> Weight | None:
    """The maximal element of a set of dominant weights, if it is unique.

    Comparison is in the rational dominance order, so weights outside the coset
    of the maximum are allowed (sigma_notes reports them).
    """
    ws = {tuple(w) for w in weights}
    if not ws:
        raise SigmaError("Sigma must be nonempty")
    for w in ws:
        if len(w) != rs.rank or any(c < 0 for c in w):
            raise SigmaError(f"{w} is not a dominant weight of rank {rs.rank}")
    for m in sorted(ws):
        if all(_rationally_below(rs, w, m) for w in ws):
            return m
    return None


def make_sigma(rs: RootSystem, weights: Iterable[Sequence[int]]) -> SigmaSet:
    ws = frozenset(tuple(w) for w in weights)
    lam = is_simple_sigma(rs, ws)
    if lam is None:
        raise SigmaError("Sigma has no unique maximal element")
    return SigmaSet(ws, lam)


def sigma_notes(rs: RootSystem, sigma: SigmaSet) -> list[str]:
    """Informational remarks: weights outside the coset of max(Sigma) modulo the root lattice."""
    notes = []
    for w in sigma.sorted():
        if not rs.in_root_lattice(_sub(sigma.max, w)):
            notes.append(f"{list(w)} is not in the coset of {list(sigma.max)} modulo the root lattice")
    return notes


def normality_decide(rs: RootSystem, sigma: SigmaSet) -> bool:
    return little_brothers(rs, sigma.max) <= sigma.weights


@dataclass(frozen=True)
class OracleHit:
    mu: Weight
    n: int
    factors: tuple


def normality_oracle(rs: RootSystem, sigma: SigmaSet, n_max: int,
                     mus: Iterable[Sequence[int]] | None = None) -> dict:
    """Search n <= n_max and factors in Sigma with V(mu + (n-1) lam) in the tensor product.

    Returns {mu: OracleHit or None}; multisets are tried in the order (n, sorted factors).
    """
    from .orderchain import dominant_ideal

    lam = sigma.max
    todo = [tuple(m) for m in mus] if mus is not None else dominant_ideal(rs, lam)
    pool = sigma.sorted()
    out = {}
    for mu in todo:
        out[mu] = None
        for n in range(1, n_max + 1):
            target = _add(mu, _scale(lam, n - 1))
            for combo in itertools.combinations_with_replacement(pool, n):
                total = reduce(_add, combo)
                if not rs.dominance_leq(target, total):
                    continue
                if repthy.iterated_contains(rs, combo, target):
                    out[mu] = OracleHit(mu, n, combo)
                    break
            if out[mu] is not None:
                break
    return out


@dataclass(frozen=True)
class Certificate:
    mu: Weight
    lam: Weight
    n: int
    factors: tuple
    target: Weight
    steps: tuple

    def to_dict(self) -> dict:
        return {
            "mu": list(self.mu),
            "n": self.n,
            "factors": [list(f) for f in self.factors],
            "steps": [{"mu": list(s.mu), "mu_next": list(s.mu_next), "lambda_next": list(s.lam_next),
                       "K": sorted(i + 1 for i in s.K), "rule": s.rule} for s in self.steps],
        }


def normality_certificate(rs: RootSystem, sigma: SigmaSet | Sequence[int], mu) -> Certificate:
    """Explicit factors lam_1..lam_n in Sigma with V(mu + (n-1) lam) in their tensor product.

    Built by walking mu up to lam: split lam - mu into connected blocks, run the
    inductive step inside the Levi of the first block, repeat.
    """
    from .orderchain import component_split, induction_step

    if not isinstance(sigma, SigmaSet):
        lam = tuple(sigma)
        sigma = SigmaSet(frozenset({lam} | little_brothers(rs, lam)), lam)
    lam, mu = sigma.max, tuple(mu)
    if not little_brothers(rs, lam) <= sigma.weights:
        raise SigmaError("Sigma misses a little brother of its maximal element")
    if any(c < 0 for c in mu) or not rs.dominance_leq(mu, lam):
        raise SigmaError(f"{mu} is not a dominant weight below {lam}")
    cur, steps = mu, []
    while cur != lam:
        blocks = component_split(rs, lam, cur)
        beta1, K = blocks[0]
        top = _add(cur, tuple(int(x) for x in rs.to_weight_coords(beta1)))
        step = induction_step(rs, top, cur, K)
        lam_next = _add(step.lam_next, _sub(lam, top))
        steps.append(type(step)(lam, cur, step.mu_next, lam_next, step.branch, step.K, step.rule))
        cur = step.mu_next
    factors = (lam,) + tuple(s.lam_next for s in reversed(steps))
    n = len(factors)
    return Certificate(mu, lam, n, factors, _add(mu, _scale(lam, n - 1)), tuple(steps))


def verify_certificate(rs: RootSystem, sigma: SigmaSet, cert: Certificate) -> bool:
    if not set(cert.factors) <= sigma.weights:
        return False
    if cert.target != _add(cert.mu, _scale(sigma.max, cert.n - 1)):
        return False
    return repthy.iterated_contains(rs, cert.factors, cert.target)


# colored cone and extremal rays

@dataclass(frozen=True)
class Ray:
    kind: str  # "coroot" or "neg_coweight"
    index: int
    vector: tuple

    def to_dict(self) -> dict:
        return {"kind": self.kind, "index": self.index + 1}


@dataclass(frozen=True)
class CoweightCone:
    coroot_gens: tuple
    coweight_gens: tuple
    colors: Subset

    @property
    def generators(self) -> tuple:
        return self.coroot_gens + self.coweight_gens


def coroot(rs: RootSystem, a: int) -> Ray:
    return Ray("coroot", a, tuple(rs.cartan[a]))


def neg_coweight(rs: RootSystem, a: int) -> Ray:
    return Ray("neg_coweight", a, tuple(-1 if i == a else 0 for i in range(rs.rank)))


def _nonzero(lam):
    if not any(lam):
        raise ValueError("lambda must be nonzero")


def colored_cone(rs: RootSystem, lam) -> CoweightCone:
    _nonzero(lam)
    colors = frozenset(range(rs.rank)) - rs.support(lam)
    return CoweightCone(tuple(coroot(rs, a) for a in sorted(colors)),
                        tuple(neg_coweight(rs, a) for a in range(rs.rank)), colors)


def _irreducible(rs: RootSystem):
    if len(rs.blocks) != 1:
        raise ValueError("this operation needs an irreducible root system; decompose first")


@dataclass(frozen=True)
class Structure:
    I_e: Subset
    I_de: Subset
    I_de_star: Subset
    gamma_de: int | None
    J: Subset


def branch_node(rs: RootSystem) -> int | None:
    """gamma_de: the node with three neighbours (types D and E only)."""
    hits = [i for i in range(rs.rank) if len(rs.neighbors[i]) == 3]
    return hits[0] if hits else None


def _tree_path(rs: RootSystem, within: Subset, a: int, b: int) -> Subset:
    prev = {a: None}
    queue = [a]
    for x in queue:
        for y in sorted(rs.neighbors[x] & within):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    path, x = set(), b
    while x is not None:
        path.add(x)
        x = prev[x]
    return frozenset(path)


def structure_subsets(rs: RootSystem, lam) -> Structure:
    _irreducible(rs)
    _nonzero(lam)
    full = frozenset(range(rs.rank))
    supp = rs.support(lam)
    ext = rs.extremes
    pieces = rs.components_of(full - supp)
    gamma = branch_node(rs)
    I_de = frozenset()
    if gamma is not None:
        for P in pieces:
            if gamma in P and len(P & ext) == 1:
                I_de = P
    I_de_star = frozenset()
    if I_de:
        (tip,) = I_de & ext
        I_de_star = _tree_path(rs, I_de, gamma, tip)
    I_e = frozenset().union(*[P for P in pieces if P != I_de and P & ext])
    J = (full - (rs.closure(I_e) | I_de_star)) | (ext - supp)
    return Structure(I_e, I_de, I_de_star, gamma, J)


def _block_views(rs: RootSystem, lam):
    """(Levi view, restricted weight) per irreducible component."""
    for B in rs.blocks:
        view = repthy.levi_subsystem(rs, B)
        yield view, view.restrict(lam)


def _lift_ray(rs: RootSystem, view, ray: Ray) -> Ray:
    a = view.embedding[ray.index]
    return coroot(rs, a) if ray.kind == "coroot" else neg_coweight(rs, a)


def extremal_rays(rs: RootSystem, lam) -> list[Ray]:
    """Rays of the colored cone from the closed formula: coroots off the support and -omega^vee on J."""
    _nonzero(lam)
    if len(rs.blocks) > 1:
        # factors where lam vanishes are points and contribute no rays
        out = []
        for view, sub in _block_views(rs, lam):
            if any(sub):
                out += [_lift_ray(rs, view, r) for r in extremal_rays(view.system, sub)]
        return _sort_rays(out)
    J = structure_subsets(rs, lam).J
    supp = rs.support(lam)
    return _sort_rays([coroot(rs, a) for a in range(rs.rank) if a not in supp]
                      + [neg_coweight(rs, a) for a in sorted(J)])


def _sort_rays(rays):
    return sorted(rays, key=lambda r: (r.kind != "coroot", r.index))


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = reduce(gcd, (abs(int(x)) for x in v), 0)
    return tuple(int(x) // g for x in v) if g else tuple(v)


def _rationalize(xs, cap=10**4):
    return [Fraction(float(x)).limit_denominator(cap) for x in xs]


def _in_cone_exact(target, gens) -> bool:
    M = Matrix([list(g) for g in gens]).T
    n = len(gens)
    try:
        sympy_linprog(Matrix([0] * n), A=Matrix([[-1] * n]), b=Matrix([0]),
                      A_eq=M, b_eq=Matrix(list(target)))
    except InfeasibleLPError:
        return False
    return True


def _in_cone(target, gens) -> bool:
    """Whether target = sum x_k gens_k with x >= 0, decided by an exact certificate.

    HiGHS proposes either a combination x or a separating functional y
    (y.gens >= 0, y.target < 0); the proposal is rounded to rationals and checked
    exactly.  If the check fails the exact simplex in sympy decides.
    """
    if not gens:
        return not any(target)
    G = np.array(gens, dtype=float)
    t = np.array(target, dtype=float)
    res = scipy_linprog(np.zeros(len(gens)), A_eq=G.T, b_eq=t, bounds=(0, None), method="highs")
    if res.status == 0:
        x = _rationalize(res.x)
        if all(v >= 0 for v in x) and all(
                sum(x[k] * g[i] for k, g in enumerate(gens)) == target[i] for i in range(len(target))):
            return True
    elif res.status == 2:
        dual = scipy_linprog(t, A_ub=-G, b_ub=np.zeros(len(gens)), bounds=(-1, 1), method="highs")
        if dual.status == 0:
            y = _rationalize(dual.x)
            if sum(a * b for a, b in zip(y, target)) < 0 and all(
                    sum(a * b for a, b in zip(y, g)) >= 0 for g in gens):
                return False
    return _in_cone_exact(target, gens)


def extremal_rays_generic(cone: CoweightCone | Sequence[Ray] | Sequence[Sequence[int]]) -> list:
    """Generators spanning extremal rays: g is kept iff g is not in the cone of the others.

    Generators on a common ray are merged first (the earliest one is kept).
    """
    gens = list(cone.generators) if isinstance(cone, CoweightCone) else list(cone)
    vec = (lambda g: g.vector) if gens and isinstance(gens[0], Ray) else (lambda g: tuple(g))
    unique, seen = [], set()
    for g in gens:
        p = primitive(vec(g))
        if p not in seen:
            seen.add(p)
            unique.append(g)
    return [g for k, g in enumerate(unique)
            if not _in_cone(vec(g), [vec(h) for j, h in enumerate(unique) if j != k])]


@lru_cache(maxsize=None)
def _generic_rays_cached(rs: RootSystem, supp: Subset) -> tuple:
    lam = tuple(1 if i in supp else 0 for i in range(rs.rank))
    return tuple(_sort_rays(extremal_rays_generic(colored_cone(rs, lam))))


def generic_rays(rs: RootSystem, lam) -> list[Ray]:
    """extremal_rays_generic on the colored cone, memoised on the support."""
    _nonzero(lam)
    return list(_generic_rays_cached(rs, rs.support(lam)))


# Q-factoriality and smoothness

@dataclass(frozen=True)
class QFlags:
    value: bool
    i: bool
    ii: bool
    iii: bool | None

    def to_dict(self) -> dict:
        return {"value": self.value, "i": self.i, "ii": self.ii, "iii": self.iii}


def _q_flags_irreducible(rs: RootSystem, lam) -> QFlags:
    supp = rs.support(lam)
    i = rs.is_connected(supp)
    ii = len(supp) != 1 or supp <= rs.extremes
    iii = None
    letter = rs.subset_type(range(rs.rank))[0]
    if letter in ("D", "E"):
        g = branch_node(rs)
        iii = g in supp and len(rs.neighbors[g] & supp) >= 2
    return QFlags(i and ii and iii is not False, i, ii, iii)


def _conjoin(flags: list) -> QFlags:
    iiis = [f.iii for f in flags if f.iii is not None]
    return QFlags(all(f.value for f in flags), all(f.i for f in flags), all(f.ii for f in flags),
                  all(iiis) if iiis else None)


def is_q_factorial(rs: RootSystem, lam) -> QFlags:
    """Combinatorial Q-factoriality conditions, per component (a point factor passes)."""
    _nonzero(lam)
    flags = [_q_flags_irreducible(v.system, sub) for v, sub in _block_views(rs, lam) if any(sub)]
    return flags[0] if len(flags) == 1 else _conjoin(flags)


def _complement_type_a(rs: RootSystem, lam) -> bool:
    supp = rs.support(lam)
    return all(rs.subset_type(P)[0] == "A" for P in rs.components_of(frozenset(range(rs.rank)) - supp))


@dataclass(frozen=True)
class SmoothReport:
    value: bool
    normal: bool
    q_factorial: bool
    complement_type_a: bool


def is_smooth(rs: RootSystem, sigma: SigmaSet | Sequence[int]) -> SmoothReport:
    """Smooth iff X_lam is normal, Q-factorial and Delta minus Supp(lam) has only type-A pieces."""
    lam = sigma.max if isinstance(sigma, SigmaSet) else tuple(sigma)
    _nonzero(lam)
    normal = satisfies_star(rs, lam)
    q = is_q_factorial(rs, lam).value
    a = all(_complement_type_a(v.system, sub) for v, sub in _block_views(rs, lam) if any(sub))
    return SmoothReport(normal and q and a, normal, q, a)


@dataclass(frozen=True)
class TimashevFlags:
    i: bool
    ii: bool
    iii: bool | None

    @property
    def value(self) -> bool:
        return self.i and self.ii and bool(self.iii)

    def to_dict(self) -> dict:
        return {"i": self.i, "ii": self.ii, "iii": self.iii}


def _timashev_irreducible(rs: RootSystem, lam) -> TimashevFlags:
    full = frozenset(range(rs.rank))
    supp = rs.support(lam)
    pieces = rs.components_of(full - supp)
    cond_i = all(rs.subset_type(P)[0] == "A" for P in pieces) and len(pieces) <= len(supp)

    rays = generic_rays(rs, lam)
    prims = [primitive(r.vector) for r in rays]
    cond_ii = len(prims) == rs.rank and abs(Matrix(prims).det()) == 1
    if not cond_ii:
        return TimashevFlags(cond_i, False, None)

    # dual basis in root coordinates: <pi_k, p_m> = delta, pairing root coords with coweight coords
    P = Matrix(prims)
    Pi = P.T.inv()
    pis = [tuple(Fraction(int(x.p), int(x.q)) for x in Pi.row(k)) for k in range(rs.rank)]
    slot = {(r.kind, r.index): k for k, r in enumerate(rays)}
    A = rs.cartan

    def pairing(pi, a):
        return sum(A[a][b] * pi[b] for b in range(rs.rank))

    for K in pieces:
        ends = sorted(a for a in K if len(rs.neighbors[a] & K) <= 1)
        if any(len(rs.neighbors[a] & K) > 2 for a in K):
            return TimashevFlags(cond_i, True, False)
        inner = [a for a in ends if a not in rs.extremes]
        start = inner[0] if inner else ends[0]
        order, prev = [start], None
        while len(order) < len(K):
            nxt = next(b for b in rs.neighbors[order[-1]] & K if b != prev)
            prev = order[-1]
            order.append(nxt)
        last = order[-1]
        if last not in rs.extremes or ("neg_coweight", last) not in slot:
            return TimashevFlags(cond_i, True, False)
        group = [pis[slot[("coroot", a)]] for a in order] + [pis[slot[("neg_coweight", last)]]]
        l = len(order)
        for j, pi in enumerate(group):
            for h, a in enumerate(order):
                if pairing(pi, a) != (1 if j == h else 0):
                    return TimashevFlags(cond_i, True, False)
        AK = Matrix([[A[a][b] for b in order] for a in order]).inv()
        for j in range(l):
            want = [Fraction(0)] * rs.rank
            for h, a in enumerate(order):
                x = AK[h, j]
                want[a] = Fraction(int(x.p), int(x.q))
            got = [group[j][b] - Fraction(j + 1, l + 1) * group[l][b] for b in range(rs.rank)]
            if got != want:
                return TimashevFlags(cond_i, True, False)
    return TimashevFlags(cond_i, True, True)


def timashev_check(rs: RootSystem, lam) -> TimashevFlags:
    """Timashev's three smoothness conditions on the colored cone, per component."""
    _nonzero(lam)
    flags = [_timashev_irreducible(v.system, sub) for v, sub in _block_views(rs, lam) if any(sub)]
    if len(flags) == 1:
        return flags[0]
    iiis = [f.iii for f in flags]
    return TimashevFlags(all(f.i for f in flags), all(f.ii for f in flags),
                         None if None in iiis else all(iiis))


def same_compactification(rs: RootSystem, lam, mu) -> bool:
    return rs.support(lam) == rs.support(mu)


# report

@dataclass
class DecisionReport:
    type: str
    lam: Weight
    sigma: list
    star: bool
    little_brothers: list
    normal: bool
    q_factorial: QFlags
    smooth: bool
    extremal_rays: list
    timashev: TimashevFlags
    notes: list = field(default_factory=list)
    certificates: list | None = None

    def to_dict(self) -> dict:
        out = {
            "type": self.type,
            "lambda": list(self.lam),
            "sigma": [list(w) for w in self.sigma],
            "star": self.star,
            "little_brothers": [list(w) for w in self.little_brothers],
            "normal": self.normal,
            "q_factorial": self.q_factorial.to_dict(),
            "smooth": self.smooth,
            "extremal_rays": [r.to_dict() for r in self.extremal_rays],
            "timashev": self.timashev.to_dict(),
            "notes": list(self.notes),
        }
        if self.certificates is not None:
            out["certificates"] = [c.to_dict() for c in self.certificates]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def decide(rs: RootSystem, sigma: SigmaSet, certify: bool = False) -> DecisionReport:
    from .orderchain import dominant_ideal

    lam = sigma.max
    _nonzero(lam)
    normal = normality_decide(rs, sigma)
    certs = None
    if certify and normal:
        certs = [normality_certificate(rs, sigma, mu) for mu in dominant_ideal(rs, lam)]
    elif certify:
        certs = []
    return DecisionReport(
        type=rs.type_string,
        lam=lam,
        sigma=sigma.sorted(),
        star=satisfies_star(rs, lam),
        little_brothers=sorted(little_brothers(rs, lam)),
        normal=normal,
        q_factorial=is_q_factorial(rs, lam),
        smooth=is_smooth(rs, lam).value,
        extremal_rays=extremal_rays(rs, lam),
        timashev=timashev_check(rs, lam),
        notes=sigma_notes(rs, sigma),
        certificates=certs,
    )
