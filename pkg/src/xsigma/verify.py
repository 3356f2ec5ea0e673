"""Oracle cross-check suites shared by ``xsigma verify`` and the acceptance tests.

Each check returns a :class:`Check` holding the number of cases examined and
every failure found, so callers can print one line per check.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import compact, orderchain, repthy
from .rootsys import build_root_system

RAY_TYPES = ([f"A{n}" for n in range(1, 7)] + [f"B{n}" for n in range(2, 7)]
             + [f"C{n}" for n in range(3, 7)] + [f"D{n}" for n in range(4, 7)] + ["E6", "F4", "G2"])
COVER_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"]
CERT_TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]
LEMMA_TYPES = ["B2", "B3", "C3", "G2", "F4"]
NECESSITY_CASES = [("B2", (1, 0)), ("B3", (1, 0, 0)), ("B3", (2, 0, 0)),
                   ("C3", (0, 0, 1)), ("G2", (0, 1)), ("F4", (1, 0, 0, 0))]


@dataclass
class Check:
    criterion: str
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    seconds: float = 0.0
    time_limit: float | None = None

    @property
    def passed(self) -> bool:
        in_time = self.time_limit is None or self.seconds < self.time_limit
        return not self.failures and in_time

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.time_limit:.0f}s)" if self.time_limit else ""
        text = (f"{status} [{self.criterion}] {self.name}: cases={self.cases} "
                f"failures={len(self.failures)} skipped={len(self.skipped)} "
                f"time={self.seconds:.1f}s{limit}")
        if self.failures:
            text += f"\n    first failure: {self.failures[0]}"
        if self.skipped:
            text += f"\n    first skipped: {self.skipped[0]}"
        return text


class _timed:
    def __init__(self, check: Check):
        self.check = check

    def __enter__(self):
        self.start = time.perf_counter()
        return self.check

    def __exit__(self, *exc):
        self.check.seconds = time.perf_counter() - self.start
        return False


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _supports(rs):
    for mask in range(1, 2 ** rs.rank):
        yield tuple((mask >> i) & 1 for i in range(rs.rank))


def _types_up_to(types, max_rank):
    return [t for t in types if max_rank is None or build_root_system(t).rank <= max_rank]


def _ray_keys(rays):
    return {(r.kind, r.index) for r in rays}


# rays suite

def check_q_factorial_dual(max_rank: int | None = None) -> Check:
    with _timed(Check("1", "Q-factorial conditions vs simplicial cone", time_limit=120)) as c:
        for t in _types_up_to(RAY_TYPES, max_rank):
            rs = build_root_system(t)
            for lam in _supports(rs):
                c.cases += 1
                flags = compact.is_q_factorial(rs, lam)
                n_rays = len(compact.generic_rays(rs, lam))
                if flags.value != (n_rays == rs.rank):
                    c.failures.append((t, lam, flags, n_rays))
    return c


def check_ray_formula(max_rank: int | None = None) -> Check:
    with _timed(Check("2", "extremal ray formula vs LP oracle")) as c:
        for t in _types_up_to(RAY_TYPES, max_rank):
            rs = build_root_system(t)
            for lam in _supports(rs):
                c.cases += 1
                formula = compact.extremal_rays(rs, lam)
                if _ray_keys(formula) != _ray_keys(compact.generic_rays(rs, lam)):
                    c.failures.append((t, lam, "ray sets differ"))
                    continue
                if compact.is_q_factorial(rs, lam).value:
                    supp = rs.support(lam)
                    want = rs.interior(supp) | (rs.extremes - supp)
                    got = {r.index for r in formula if r.kind == "neg_coweight"}
                    if got != want:
                        c.failures.append((t, lam, "coweight part", sorted(got), sorted(want)))
    return c


def check_smooth_timashev(max_rank: int | None = None) -> Check:
    with _timed(Check("3", "smoothness criterion vs Timashev conditions")) as c:
        for t in _types_up_to(RAY_TYPES, max_rank):
            rs = build_root_system(t)
            for lam in _supports(rs):
                c.cases += 1
                smooth = compact.is_smooth(rs, lam).value
                flags = compact.timashev_check(rs, lam)
                if smooth != flags.value:
                    c.failures.append((t, lam, smooth, flags))
            full = (1,) * rs.rank
            flags = compact.timashev_check(rs, full)
            if not (flags.i and flags.ii and flags.iii):
                c.failures.append((t, "wonderful case", flags))
    return c


# normality suite

def check_necessity(n_max: int = 3) -> Check:
    with _timed(Check("4", f"no chain for the little brother (n <= {n_max})", time_limit=300)) as c:
        for t, lam in NECESSITY_CASES:
            rs = build_root_system(t)
            sigma = compact.make_sigma(rs, {lam})
            (lb,) = compact.little_brothers(rs, lam)
            c.cases += 1
            try:
                hit = compact.normality_oracle(rs, sigma, n_max, [lb])[lb]
            except repthy.GuardExceeded as exc:
                c.skipped.append((t, lam, str(exc)))
                continue
            if hit is not None or compact.normality_decide(rs, sigma):
                c.failures.append((t, lam, hit))
    return c


def _cert_weights(rs):
    for lam in itertools.product((0, 1), repeat=rs.rank):
        if any(lam):
            yield lam


def check_sufficiency() -> Check:
    with _timed(Check("5", "normality certificates pass the oracle")) as c:
        for t in CERT_TYPES:
            rs = build_root_system(t)
            for lam in _cert_weights(rs):
                sigma = compact.make_sigma(rs, {lam} | compact.little_brothers(rs, lam))
                for mu in orderchain.dominant_ideal(rs, lam):
                    c.cases += 1
                    try:
                        cert = compact.normality_certificate(rs, sigma, mu)
                        ok = compact.verify_certificate(rs, sigma, cert)
                    except repthy.GuardExceeded as exc:
                        # only the B/C/G weights with coordinate sum above 2 may hit the cap
                        if t[0] in "BCG" and sum(lam) > 2:
                            c.skipped.append((t, lam, mu, str(exc)))
                        else:
                            c.failures.append((t, lam, mu, str(exc)))
                        continue
                    if not ok:
                        c.failures.append((t, lam, mu, cert.factors))
    return c


# lemma suite

def _contains(c: Check, label, rs, lam, mu, nu, expect=True):
    """Containment of V(nu) in V(lam) (x) V(mu) by full decomposition, or one coefficient above the cap."""
    c.cases += 1
    try:
        try:
            got = nu in repthy.tensor_decompose(rs, lam, mu)
        except repthy.GuardExceeded:
            got = repthy.tensor_contains(rs, lam, mu, nu)
    except repthy.GuardExceeded as exc:
        c.skipped.append((label, str(exc)))
        return
    if got != expect:
        c.failures.append((label, rs.type_string, lam, mu, nu))


def _fundamental(rs, i):
    return tuple(1 if j == i else 0 for j in range(rs.rank))


def check_lemmas() -> Check:
    with _timed(Check("6", "tensor lemmas (eta, zeta, non-containment)")) as c:
        for t in LEMMA_TYPES:
            rs = build_root_system(t)
            eta = orderchain.eta_weight(rs, range(rs.rank))
            for i in range(rs.rank):
                w = _fundamental(rs, i)
                if compact.satisfies_star(rs, w):
                    _contains(c, "eta(1)", rs, eta, w, w)
                else:
                    (lb,) = compact.little_brothers(rs, w)
                    _contains(c, "eta(2)", rs, eta, lb, w)
        for t in ("C3", "F4"):
            rs = build_root_system(t)
            s = orderchain.short_adjacent_root(rs, range(rs.rank))
            ws = _fundamental(rs, s)
            top = _add(orderchain.zeta_weight(rs, range(rs.rank)), ws)
            for i in range(rs.rank):
                if not rs.short_flags[i]:
                    w = _fundamental(rs, i)
                    _contains(c, "zeta(1)", rs, top, w, _add(w, ws))
        rs = build_root_system("G2")
        w1, w2 = (1, 0), (0, 1)
        for lam in itertools.product(range(3), repeat=2):
            if not any(lam):
                continue
            if not compact.satisfies_star(rs, lam):
                (lb,) = compact.little_brothers(rs, lam)
                _contains(c, "zeta(2)", rs, w2, lb, _add(lam, w1))
            if lam[0]:
                _contains(c, "zeta(3)", rs, w2, lam, _add(lam, w1))
        for t, n_max in (("B2", 4), ("B3", 4)):
            rs = build_root_system(t)
            w = _fundamental(rs, 0)
            for n in range(1, n_max + 1):
                c.cases += 1
                target = tuple((n - 1) * x for x in w)
                if repthy.iterated_contains(rs, [w] * n, target):
                    c.failures.append(("non-containment", t, n))
        g2 = build_root_system("G2")
        for n in range(1, 4):
            c.cases += 1
            if repthy.iterated_contains(g2, [w2] * n, (1, n - 1)):
                c.failures.append(("non-containment", "G2", n))
    return c


# covers suite

def check_order_machinery(max_rank: int | None = 4) -> Check:
    with _timed(Check("7", "cover closure, construct_K and induction_step")) as c:
        for t in _types_up_to(COVER_TYPES, max_rank):
            rs = build_root_system(t)
            for lam in itertools.product(range(3), repeat=rs.rank):
                c.cases += 1
                ideal = orderchain.dominant_ideal(rs, lam)
                if set(ideal) != set(orderchain.dominant_ideal_bruteforce(rs, lam)):
                    c.failures.append(("ideal", t, lam))
                lbs = compact.little_brothers(rs, lam)
                for mu in ideal:
                    if mu == lam or not all(orderchain.root_difference(rs, lam, mu)):
                        continue
                    _check_steps(c, rs, lam, mu, lbs)
    return c


def _check_steps(c, rs, lam, mu, lbs):
    t = rs.type_string
    c.cases += 1
    first = orderchain._first_branch_applies(rs, lam, mu, frozenset(range(rs.rank)))
    try:
        K = orderchain.construct_K(rs, lam, mu)
    except orderchain.OrderError:
        if first:
            c.failures.append(("construct_K refused a valid input", t, lam, mu))
    else:
        nxt = _add(mu, orderchain.eta_weight(rs, K))
        if not (all(x >= 0 for x in nxt) and rs.dominance_leq(nxt, lam) and any(lam[a] for a in K)):
            c.failures.append(("construct_K post", t, lam, mu, sorted(K)))
    step = orderchain.induction_step(rs, lam, mu)
    up = step.mu_next
    if up == mu or not rs.dominance_leq(mu, up) or not rs.dominance_leq(up, lam) or min(up) < 0:
        c.failures.append(("mu < mu' <= lam", t, lam, mu, step))
    if step.lam_next != lam and step.lam_next not in lbs:
        c.failures.append(("lam' not in LB(lam) + {lam}", t, lam, mu, step))
    try:
        if not repthy.tensor_contains(rs, up, step.lam_next, _add(mu, lam)):
            c.failures.append(("oracle containment", t, lam, mu, step))
    except repthy.GuardExceeded as exc:
        c.skipped.append((t, lam, mu, str(exc)))


# representation suite

def check_dimension_identity(log) -> Check:
    with _timed(Check("8a", "dimension identity on every decomposition")) as c:
        seen = set()
        for rs, lam, mu, dec in log:
            if (rs, lam, mu) in seen:
                continue
            seen.add((rs, lam, mu))
            c.cases += 1
            if not repthy.dimension_identity(rs, lam, mu, dec):
                c.failures.append((rs.type_string, lam, mu))
    return c


def check_klimyk_vs_characters(log=(), cap: int = 2000) -> Check:
    with _timed(Check("8b", f"Klimyk vs character products (dim product <= {cap})")) as c:
        todo = {(rs, lam, mu) for rs, lam, mu, _ in log}
        for t in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]:
            rs = build_root_system(t)
            ws = [w for w in itertools.product(range(3 if rs.rank <= 2 else 2), repeat=rs.rank)]
            todo |= {(rs, a, b) for a in ws for b in ws}
        for rs, lam, mu in sorted(todo, key=lambda x: (x[0].type_string, x[1], x[2])):
            if repthy.dim(rs, lam) * repthy.dim(rs, mu) > cap:
                continue
            c.cases += 1
            if repthy.tensor_decompose(rs, lam, mu) != repthy.tensor_decompose_by_characters(rs, lam, mu):
                c.failures.append((rs.type_string, lam, mu))
    return c


LEVI_TYPES = ["A4", "A5", "B4", "B5", "C4", "C5", "D5", "B3", "C3", "G2", "A3"]


def check_levi_reduction(n: int = 200, seed: int = 7) -> Check:
    """Containment agrees with the Levi subsystem whenever lam + mu - nu is supported there."""
    rng = random.Random(seed)
    with _timed(Check("8c", "Levi reduction on random instances")) as c:
        while c.cases < n:
            rs = build_root_system(rng.choice(LEVI_TYPES))
            size = rng.randint(1, min(3, rs.rank))
            sub = frozenset(rng.sample(range(rs.rank), size))
            lam = tuple(rng.randint(0, 2) if i in sub else rng.randint(0, 1) for i in range(rs.rank))
            mu = tuple(rng.randint(0, 1) for _ in range(rs.rank))
            drop = [rng.randint(0, 4) if i in sub else 0 for i in range(rs.rank)]
            nu = tuple(int(x) for x in _sub_roots(rs, _add(lam, mu), drop))
            if min(nu) < 0:
                continue
            view = repthy.levi_subsystem(rs, sub)
            c.cases += 1
            try:
                big = repthy.tensor_contains(rs, lam, mu, nu)
                small = repthy.tensor_contains(view.system, view.restrict(lam), view.restrict(mu),
                                               view.restrict(nu))
            except repthy.GuardExceeded as exc:
                c.skipped.append((rs.type_string, lam, mu, nu, str(exc)))
                continue
            if big != small:
                c.failures.append((rs.type_string, sorted(sub), lam, mu, nu, big, small))
    return c


def _sub_roots(rs, weight, root_coeffs):
    drop = rs.to_weight_coords(root_coeffs)
    return tuple(w - d for w, d in zip(weight, drop))


def check_translation(n: int = 200, seed: int = 11) -> Check:
    """V(nu) in V(lam)(x)V(mu) implies V(nu + w) in V(lam + w)(x)V(mu) for fundamental w."""
    rng = random.Random(seed)
    with _timed(Check("8d", "translation on random instances")) as c:
        while c.cases < n:
            rs = build_root_system(rng.choice(LEVI_TYPES))
            lam = tuple(rng.randint(0, 1) for _ in range(rs.rank))
            mu = tuple(rng.randint(0, 1) for _ in range(rs.rank))
            try:
                dec = repthy.tensor_decompose(rs, lam, mu)
            except repthy.GuardExceeded:
                continue
            nu = rng.choice(sorted(dec))
            w = _fundamental(rs, rng.randrange(rs.rank))
            c.cases += 1
            try:
                ok = repthy.tensor_contains(rs, _add(lam, w), mu, _add(nu, w))
            except repthy.GuardExceeded as exc:
                c.skipped.append((rs.type_string, lam, mu, nu, w, str(exc)))
                continue
            if not ok:
                c.failures.append((rs.type_string, lam, mu, nu, w))
    return c


# suites

def suite_rays(max_rank=None):
    return [check_q_factorial_dual(max_rank), check_ray_formula(max_rank), check_smooth_timashev(max_rank)]


def suite_normality(max_rank=None):
    return [check_necessity(), check_sufficiency()]


def suite_lemmas(max_rank=None):
    return [check_lemmas()]


def suite_covers(max_rank=None):
    return [check_order_machinery(4 if max_rank is None else min(max_rank, 4))]


def suite_representation(log=None):
    if log is None:
        with repthy.audit_decompositions() as log:
            suite_normality()
            suite_lemmas()
            suite_covers()
    return [check_dimension_identity(log), check_klimyk_vs_characters(log),
            check_levi_reduction(), check_translation()]


def suite_all(max_rank=None):
    out = suite_rays(max_rank)
    with repthy.audit_decompositions() as log:
        out += suite_normality(max_rank) + suite_lemmas(max_rank) + suite_covers(max_rank)
    return out + suite_representation(log)


SUITES = {
    "rays": suite_rays,
    "normality": suite_normality,
    "lemmas": suite_lemmas,
    "covers": suite_covers,
    "repr": lambda max_rank=None: suite_representation(),
    "all": suite_all,
}
