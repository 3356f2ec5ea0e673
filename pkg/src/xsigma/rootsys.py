"""Cartan data, Dynkin-diagram subset calculus and the dominance order.

Weights are tuples of ints in the fundamental-weight basis (coordinate ``i``
is the pairing with the ``i``-th simple coroot).  Elements of the rational
root lattice are tuples of :class:`fractions.Fraction` in the simple-root
basis.  Subsets of simple roots are frozensets of 0-based indices.

The Cartan matrix follows ``cartan[i][j] = <alpha_j, alpha_i^vee>``, so the
weight coordinates of a root-lattice vector ``n`` are ``cartan @ n`` and the
simple coroot ``alpha_i^vee`` has coweight coordinates ``cartan[i]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import math
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy

Weight = tuple[int, ...]
RootVec = tuple[Fraction, ...]
Subset = frozenset[int]


class RootSystemError(ValueError):
    """Malformed type string or invalid Cartan datum."""


# Bourbaki edges for the exceptional types, 1-based as in the tables.
_E_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def cartan_block(letter: str, n: int) -> list[list[int]]:
    """Cartan matrix of an irreducible type in Bourbaki numbering."""
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j] = aij
        A[j][i] = aji

    if letter in "ABCF":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B":
            # alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
            A[n - 1][n - 2] = -2
        elif letter == "C":
            A[n - 2][n - 1] = -2
        elif letter == "F":
            A[2][1] = -2
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        for a, b in _E_EDGES:
            if a <= n and b <= n:
                link(a - 1, b - 1)
    elif letter == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    else:
        raise RootSystemError(f"unknown type letter {letter!r}")
    return A


def _check_rank(letter: str, n: int, token: str) -> None:
    if letter == "C" and n == 2:
        raise RootSystemError(f"{token}: C2 is not accepted, use B2")
    if letter == "D" and n == 3:
        raise RootSystemError(f"{token}: D3 is not accepted, use A3")
    if letter in _MIN_RANK:
        if n < _MIN_RANK[letter]:
            raise RootSystemError(
                f"{token}: rank out of range for type {letter} (need n >= {_MIN_RANK[letter]})")
    elif n not in _FIXED_RANKS[letter]:
        raise RootSystemError(f"{token}: rank out of range for type {letter}")


_TOKEN = re.compile(r"^([A-Ga-g])(\d+)$")


def parse_type(spec: str) -> list[tuple[str, int]]:
    tokens = [t.strip() for t in spec.strip().split("x")] if spec.strip() else []
    if not tokens or any(not t for t in tokens):
        raise RootSystemError(f"cannot parse root system type {spec!r}")
    out = []
    for token in tokens:
        m = _TOKEN.match(token)
        if not m:
            raise RootSystemError(f"cannot parse component {token!r} in {spec!r}")
        letter, n = m.group(1).upper(), int(m.group(2))
        _check_rank(letter, n, token)
        out.append((letter, n))
    return out


def _symmetrizer(cartan: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * cartan[i][j] / cartan[j][i]
                    stack.append(j)
    scale = lcm(*(x.denominator for x in d))
    ints = [int(x * scale) for x in d]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


def _connected_pieces(vertices: Iterable[int], neighbors) -> list[frozenset[int]]:
    left = set(vertices)
    pieces = []
    while left:
        seed = min(left)
        piece = {seed}
        stack = [seed]
        while stack:
            v = stack.pop()
            for w in neighbors[v]:
                if w in left and w not in piece:
                    piece.add(w)
                    stack.append(w)
        left -= piece
        pieces.append(frozenset(piece))
    return sorted(pieces, key=min)


@dataclass(frozen=True)
class RootSystem:
    """Cartan datum of a possibly reducible reduced root system."""

    cartan: tuple[tuple[int, ...], ...]
    components: tuple[tuple[str, int], ...]
    name: str = ""

    def __post_init__(self):
        A = self.cartan
        n = len(A)
        for i in range(n):
            if len(A[i]) != n or A[i][i] != 2:
                raise RootSystemError("Cartan matrix must be square with diagonal 2")
            for j in range(n):
                if i != j:
                    if A[i][j] not in (0, -1, -2, -3):
                        raise RootSystemError(f"bad off-diagonal entry at ({i},{j})")
                    if (A[i][j] == 0) != (A[j][i] == 0):
                        raise RootSystemError(f"asymmetric zero pattern at ({i},{j})")
        d = _symmetrizer(A)
        B = sympy.Matrix(n, n, lambda i, j: d[i] * A[i][j])
        if B != B.T or (n and not B.is_positive_definite):
            raise RootSystemError("Cartan matrix is not of finite type")

    def __repr__(self):
        return f"RootSystem({self.name or self.type_string!r})"

    @classmethod
    def from_cartan(cls, cartan: Sequence[Sequence[int]], name: str = "") -> "RootSystem":
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        n = len(cartan)
        nbrs = [frozenset(j for j in range(n) if j != i and cartan[i][j]) for i in range(n)]
        comps = tuple(classify_block(cartan, sorted(p)) for p in _connected_pieces(range(n), nbrs))
        return cls(cartan, comps, name)

    # basic data

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def type_string(self) -> str:
        return "x".join(f"{l}{n}" for l, n in self.components) or "trivial"

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        return _symmetrizer(self.cartan)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        A = self.cartan
        return tuple(frozenset(j for j in range(self.rank) if j != i and A[i][j])
                     for i in range(self.rank))

    @cached_property
    def adjacency(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i in range(self.rank) for j in self.neighbors[i] if i < j)

    @cached_property
    def blocks(self) -> tuple[frozenset[int], ...]:
        """Index sets of the irreducible components, sorted by least index."""
        return tuple(_connected_pieces(range(self.rank), self.neighbors))

    @cached_property
    def short_flags(self) -> tuple[bool, ...]:
        d = self.symmetrizer
        flags = [False] * self.rank
        for block in self.blocks:
            top = max(d[i] for i in block)
            for i in block:
                flags[i] = d[i] < top
        return tuple(flags)

    @cached_property
    def extremes(self) -> frozenset[int]:
        return frozenset(i for i in range(self.rank) if len(self.neighbors[i]) <= 1)

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        inv = sympy.Matrix(self.cartan).inv()
        return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i))
                     for i in range(self.rank))

    def block_of(self, i: int) -> frozenset[int]:
        for block in self.blocks:
            if i in block:
                return block
        raise IndexError(i)

    def is_simply_laced(self, subset: Iterable[int] | None = None) -> bool:
        idx = range(self.rank) if subset is None else subset
        return not any(self.short_flags[i] for i in idx) and all(
            self.cartan[i][j] in (0, -1) for i in idx for j in idx if i != j)

    # simple roots as weights

    def simple_root(self, i: int) -> Weight:
        """alpha_i in weight coordinates (column i of the Cartan matrix)."""
        return tuple(row[i] for row in self.cartan)

    def reflect(self, v: Sequence[int], i: int) -> Weight:
        c = v[i]
        return tuple(x - c * row[i] for x, row in zip(v, self.cartan))

    # subsets

    def support(self, lam: Sequence[int]) -> Subset:
        return frozenset(i for i, c in enumerate(lam) if c != 0)

    def border(self, I: Iterable[int]) -> Subset:
        I = frozenset(I)
        return frozenset(j for i in I for j in self.neighbors[i] if j not in I)

    def closure(self, I: Iterable[int]) -> Subset:
        I = frozenset(I)
        return I | self.border(I)

    def interior(self, I: Iterable[int]) -> Subset:
        I = frozenset(I)
        return I - self.border(frozenset(range(self.rank)) - I)

    def components_of(self, I: Iterable[int]) -> list[Subset]:
        return _connected_pieces(I, self.neighbors)

    def is_connected(self, I: Iterable[int]) -> bool:
        return len(self.components_of(I)) == 1

    def subset_type(self, K: Iterable[int]) -> tuple[str, int]:
        """Cartan type of a connected subset."""
        K = sorted(K)
        if not K or not self.is_connected(K):
            raise RootSystemError("subset_type needs a nonempty connected subset")
        return classify_block(self.cartan, K)

    # lattices

    def to_root_basis(self, lam: Sequence[int | Fraction]) -> RootVec:
        inv = self.cartan_inverse
        return tuple(sum((inv[i][j] * lam[j] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    def to_weight_coords(self, beta: Sequence[int | Fraction]) -> tuple:
        out = []
        for row in self.cartan:
            s = sum(a * b for a, b in zip(row, beta))
            out.append(int(s) if isinstance(s, int) or s.denominator == 1 else s)
        return tuple(out)

    def support_over_delta(self, beta: Sequence) -> Subset:
        return frozenset(i for i, c in enumerate(beta) if c != 0)

    def in_root_lattice(self, lam: Sequence[int]) -> bool:
        return all(x.denominator == 1 for x in self.to_root_basis(lam))

    def dominance_leq(self, mu: Sequence[int], lam: Sequence[int]) -> bool:
        """``mu <= lam``: the difference is a nonnegative integer root combination."""
        diff = self.to_root_basis([a - b for a, b in zip(lam, mu)])
        return all(x.denominator == 1 and x >= 0 for x in diff)

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return all(c >= 0 for c in lam)

    @cached_property
    def weyl_order(self) -> int:
        order = 1
        for letter, n in self.components:
            order *= _WEYL_ORDER[letter](n)
        return order

    @cached_property
    def _sparse_columns(self) -> tuple:
        return tuple(tuple((k, self.cartan[k][i]) for k in range(self.rank) if self.cartan[k][i])
                     for i in range(self.rank))

    def dominant_representative(self, v: Sequence[int]) -> Weight:
        """Dominant element of the Weyl orbit of ``v``."""
        x = list(v)
        cols = self._sparse_columns
        i = 0
        n = len(x)
        while i < n:
            c = x[i]
            if c < 0:
                for k, a in cols[i]:
                    x[k] -= c * a
                i = 0
            else:
                i += 1
        return tuple(x)

    def dual_weight(self, lam: Sequence[int]) -> Weight:
        """``lam*``, the highest weight of the dual module."""
        if not self.is_dominant(lam):
            raise ValueError(f"dual_weight needs a dominant weight, got {tuple(lam)}")
        return self.dominant_representative(tuple(-c for c in lam))

    # roots

    def positive_roots(self, K: Iterable[int] | None = None) -> tuple[tuple[int, ...], ...]:
        """Positive roots of the subsystem on ``K`` (default: all), ambient root coordinates."""
        K = tuple(sorted(range(self.rank) if K is None else K))
        return _positive_roots(self.cartan, K)

    def root_norm(self, beta: Sequence) -> Fraction | int:
        """(beta, beta) in the normalisation (alpha_i, alpha_j) = d_i * cartan[i][j]."""
        d, A = self.symmetrizer, self.cartan
        return sum(beta[i] * beta[j] * d[i] * A[i][j]
                   for i in range(self.rank) if beta[i] for j in range(self.rank) if beta[j])

    def highest_short_root(self, K: Iterable[int] | None = None) -> tuple[int, ...]:
        """Highest short root of the connected subsystem on ``K`` (highest root if simply laced)."""
        K = frozenset(range(self.rank) if K is None else K)
        if not K or not self.is_connected(K):
            raise RootSystemError("highest_short_root needs a nonempty connected subset")
        return _highest_short_root(self, tuple(sorted(K)))

    # parsing helpers

    def parse_weight(self, text: str) -> Weight:
        try:
            vals = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise RootSystemError(f"cannot parse weight {text!r}") from None
        if len(vals) != self.rank:
            raise RootSystemError(f"weight {text!r} has {len(vals)} coordinates, rank is {self.rank}")
        if any(v < 0 for v in vals):
            raise RootSystemError(f"weight {text!r} is not dominant")
        return vals

    def parse_subset(self, text: str) -> Subset:
        out = set()
        for tok in filter(None, (t.strip() for t in text.split(","))):
            m = re.fullmatch(r"a(\d+)", tok)
            if not m or not 1 <= int(m.group(1)) <= self.rank:
                raise RootSystemError(f"bad simple root token {tok!r}")
            out.add(int(m.group(1)) - 1)
        return frozenset(out)

    @staticmethod
    def format_subset(I: Iterable[int]) -> str:
        return ",".join(f"a{i + 1}" for i in sorted(I))


_WEYL_ORDER = {
    "A": lambda n: math.factorial(n + 1),
    "B": lambda n: 2**n * math.factorial(n),
    "C": lambda n: 2**n * math.factorial(n),
    "D": lambda n: 2**(n - 1) * math.factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


@lru_cache(maxsize=None)
def _positive_roots(cartan, K):
    n = len(cartan)

    def unit(k):
        return tuple(1 if i == k else 0 for i in range(n))

    roots = {unit(k) for k in K}
    layer = sorted(roots)
    while layer:
        nxt = set()
        for beta in layer:
            for k in K:
                # alpha_k-string through beta: p downward steps, q = p - <beta, alpha_k^vee>
                p = 0
                down = list(beta)
                while True:
                    down[k] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                pairing = sum(cartan[k][j] * beta[j] for j in range(n))
                if p - pairing > 0:
                    up = list(beta)
                    up[k] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        layer = sorted(nxt)
    return tuple(sorted(roots, key=lambda b: (sum(b), b)))


@lru_cache(maxsize=None)
def _highest_short_root(rs: RootSystem, K: tuple[int, ...]) -> tuple[int, ...]:
    roots = rs.positive_roots(K)
    shortest = min(rs.root_norm(b) for b in roots)
    return max((b for b in roots if rs.root_norm(b) == shortest), key=sum)


def classify_block(cartan, K: Sequence[int]) -> tuple[str, int]:
    """Cartan type of the connected block of ``cartan`` on index list ``K``."""
    K = list(K)
    n = len(K)
    nbrs = {i: [j for j in K if j != i and cartan[i][j]] for i in K}
    products = [cartan[i][j] * cartan[j][i] for i in K for j in nbrs[i] if i < j]
    if n == 1:
        return ("A", 1)
    if 3 in products:
        return ("G", 2)
    branch = [i for i in K if len(nbrs[i]) == 3]
    if 2 in products:
        if n == 4 and not branch:
            ends = [i for i in K if len(nbrs[i]) == 1]
            # F4 has its double edge in the middle of the chain
            if all(cartan[i][nbrs[i][0]] * cartan[nbrs[i][0]][i] == 1 for i in ends):
                return ("F", 4)
        d = _symmetrizer([[cartan[i][j] for j in K] for i in K])
        n_short = sum(1 for x in d if x < max(d))
        if n == 2 or n_short == 1:
            return ("B", n)
        return ("C", n)
    if not branch:
        return ("A", n)
    b = branch[0]
    arms = []
    for start in nbrs[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [j for j in nbrs[cur] if j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", n)
    return ("E", n)


@lru_cache(maxsize=None)
def build_root_system(spec: str) -> RootSystem:
    """Root system from a type string such as ``"B3"`` or ``"A2xG2"``."""
    parts = parse_type(spec)
    n = sum(r for _, r in parts)
    A = [[0] * n for _ in range(n)]
    offset = 0
    for letter, r in parts:
        block = cartan_block(letter, r)
        for i in range(r):
            for j in range(r):
                A[offset + i][offset + j] = block[i][j]
        offset += r
    rs = RootSystem(tuple(map(tuple, A)), tuple(parts), "x".join(f"{l}{r}" for l, r in parts))
    return rs
