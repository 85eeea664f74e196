"""Prime-power finite fields and incidence graphs of the Desarguesian plane PG(2, q)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graph import Graph, adjacency_matrix
from .linalg import multiset_close, symmetric_spectrum


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    factors = []
    x, d = q, 2
    while d * d <= x:
        while x % d == 0:
            factors.append(d)
            x //= d
        d += 1
    if x > 1:
        factors.append(x)
    if len(set(factors)) != 1:
        shown = " * ".join(str(f) for f in factors)
        raise ValueError(f"q={q} is not a prime power ({q} = {shown})")
    return factors[0], len(factors)


# Polynomials over GF(p) are coefficient lists, constant term first, without
# trailing zeros ([] is the zero polynomial).


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return _trim(quot), a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    f = _trim(list(f))
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    if f[0] == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if not _poly_divmod(f, g, p)[1]:
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree e (constant term first)."""
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


@dataclass(frozen=True)
class FiniteField:
    """GF(p^e) with elements as coefficient tuples of length e, constant term first.

    Elements are also numbered 0..q-1 by reading the coefficients as base-p
    digits (least significant first); 0 and 1 keep their usual meaning.
    """

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.e

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.e - 1)

    def element(self, coeffs) -> tuple[int, ...]:
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.e:
            c = _poly_divmod(c, list(self.modulus), self.p)[1]
        return tuple(c) + (0,) * (self.e - len(c))

    def elements(self) -> list[tuple[int, ...]]:
        return [self.from_index(i) for i in range(self.q)]

    def index(self, a: tuple[int, ...]) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def from_index(self, i: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            i, r = divmod(i, self.p)
            out.append(r)
        return tuple(out)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        return self.element(_poly_mul(list(a), list(b), self.p))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in a finite field")
        # extended Euclid in GF(p)[x]: track s with s*a = r (mod modulus)
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, self.p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, self.p), self.p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, self.p)
        return self.element([x * c for x in s0])

    @cached_property
    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Addition and multiplication tables on element indices."""
        els = self.elements()
        add = np.array([[self.index(self.add(a, b)) for b in els] for a in els], dtype=np.int64)
        mul = np.array([[self.index(self.mul(a, b)) for b in els] for a in els], dtype=np.int64)
        return add, mul


def finite_field(q: int) -> FiniteField:
    p, e = factor_prime_power(q)
    return FiniteField(p, e, smallest_irreducible(p, e))


def projective_points(F: FiniteField) -> list[tuple[int, int, int]]:
    """Normalised triples (first nonzero coordinate 1) as element indices, lexicographic."""
    out = []
    for t in itertools.product(range(F.q), repeat=3):
        nonzero = [x for x in t if x]
        if nonzero and nonzero[0] == 1:
            out.append(t)
    return out


def pg2_incidence_graph(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q).

    Vertices 0..N-1 are points and N..2N-1 are lines (N = q^2 + q + 1), both
    in lexicographic order of their normalised coordinates; point x lies on
    line y iff x1*y1 + x2*y2 + x3*y3 = 0.
    """
    F = finite_field(q)
    add, mul = F.tables
    pts = np.array(projective_points(F), dtype=np.int64)
    N = len(pts)
    # dot[i, j] = index of <pts[i], pts[j]> in GF(q)
    dot = mul[pts[:, None, 0], pts[None, :, 0]]
    dot = add[dot, mul[pts[:, None, 1], pts[None, :, 1]]]
    dot = add[dot, mul[pts[:, None, 2], pts[None, :, 2]]]
    pairs = [(int(i), int(N + j)) for i, j in zip(*np.nonzero(dot == 0))]
    return Graph(2 * N, tuple(pairs))


def pp_spectrum(q: int) -> np.ndarray:
    """Expected descending spectrum of the PG(2, q) incidence graph."""
    N = q * q + q + 1
    r = math.sqrt(q)
    return np.array([q + 1.0] + [r] * (N - 1) + [-r] * (N - 1) + [-(q + 1.0)])


def verify_pp_spectrum(q: int, tol: float) -> bool:
    G = pg2_incidence_graph(q)
    return multiset_close(symmetric_spectrum(adjacency_matrix(G)), pp_spectrum(q), tol)
