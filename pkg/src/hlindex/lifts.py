"""Cyclic voltage assignments, their t-lifts, and the factorization of the lift
spectrum into t Hermitian factor matrices (one per character of Z_t).

A voltage k on an oriented edge stands for the k-th power of the cyclic shift
i -> i + 1 (mod t). Voltages are kept as the integers they were given, so
that the two orientations of an edge carry exact negatives of each other; the
value mod t is what defines the lift.
"""

from __future__ import annotations

import cmath
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph, OrientedEdge, adjacency_matrix, bipartition
from .hl import CheckFailure, median_report
from .linalg import complex_determinant, hermitian_spectrum, max_discrepancy, symmetric_spectrum

log = logging.getLogger(__name__)


def max_workers() -> int:
    env = os.environ.get("HLSPEC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class CyclicVoltageGraph:
    base: Graph
    t: int
    voltages: tuple[int, ...]  # per edge id, on the stored orientation

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError(f"modulus t must be >= 1, got {self.t}")
        if len(self.voltages) != self.base.m:
            raise ValueError(f"expected {self.base.m} voltages, got {len(self.voltages)}")

    def raw_voltage(self, oe: OrientedEdge) -> int:
        u, v = self.base.edges[oe.edge]
        if (oe.tail, oe.head) == (u, v):
            return self.voltages[oe.edge]
        if (oe.tail, oe.head) == (v, u):
            return -self.voltages[oe.edge]
        raise ValueError(f"{oe} does not match edge {oe.edge} = {(u, v)}")

    def voltage(self, oe: OrientedEdge) -> int:
        return self.raw_voltage(oe) % self.t


def make_cyclic_voltage(G: Graph, F: Iterable[OrientedEdge], t: int) -> CyclicVoltageGraph:
    """Voltage 1 on each oriented edge of F, -1 on its reversal, 0 elsewhere."""
    volts = [0] * G.m
    seen: dict[int, OrientedEdge] = {}
    for oe in F:
        oe = OrientedEdge(*oe)
        u, v = G.edges[oe.edge]
        if {oe.tail, oe.head} != {u, v}:
            raise ValueError(f"{oe} does not match edge {oe.edge} = {(u, v)}")
        if oe.edge in seen and seen[oe.edge] != oe:
            raise ValueError(f"both orientations of edge {oe.edge} are in F")
        seen[oe.edge] = oe
        volts[oe.edge] = 1 if (oe.tail, oe.head) == (u, v) else -1
    return CyclicVoltageGraph(G, t, tuple(volts))


def cyclic_voltage_graph(G: Graph, voltages: Iterable[int], t: int) -> CyclicVoltageGraph:
    """Wrap voltages read from a graph file, reducing them into 0..t-1."""
    voltages = list(voltages)
    big = [k for k in voltages if k >= t]
    if big:
        log.warning("%d voltage(s) >= t=%d reduced mod t (largest %d)", len(big), t, max(big))
    return CyclicVoltageGraph(G, t, tuple(k % t for k in voltages))


def build_lift(cvg: CyclicVoltageGraph) -> Graph:
    """Explicit t-lift; vertex (u, i) is numbered u*t + i."""
    t = cvg.t
    pairs = []
    for (u, v), k in zip(cvg.base.edges, cvg.voltages):
        for i in range(t):
            pairs.append((u * t + i, v * t + (i + k) % t))
    return Graph(cvg.base.n * t, tuple(pairs))


def _alpha_matrix(cvg: CyclicVoltageGraph, alpha_pow) -> np.ndarray:
    n = cvg.base.n
    A = np.zeros((n, n), dtype=complex)
    for (u, v), k in zip(cvg.base.edges, cvg.voltages):
        z = alpha_pow(k)
        A[u, v] += z
        A[v, u] += z.conjugate()
    return A


def factor_matrix(cvg: CyclicVoltageGraph, j: int) -> np.ndarray:
    """Hermitian factor for character j: entry (u, v) sums alpha^voltage(u->v)
    over parallel edges, alpha = exp(2*pi*i*j/t)."""
    t = cvg.t
    if not 0 <= j < t:
        raise ValueError(f"character index j={j} outside 0..{t - 1}")

    def alpha_pow(k: int) -> complex:
        r = (j * k) % t
        if r == 0:
            return 1 + 0j
        if 2 * r == t:
            return -1 + 0j
        return cmath.exp(2j * math.pi * r / t)

    return _alpha_matrix(cvg, alpha_pow)


def factor_spectra(cvg: CyclicVoltageGraph) -> list[np.ndarray]:
    """Spectrum of every factor matrix, j = 0..t-1.

    Factors j and t - j are complex conjugates and share a spectrum, so only
    j <= t/2 is solved.
    """
    t = cvg.t
    half = list(range(t // 2 + 1))

    def solve(j: int) -> np.ndarray:
        try:
            return hermitian_spectrum(factor_matrix(cvg, j))
        except Exception as exc:
            raise type(exc)(f"factor j={j}: {exc}") from exc

    workers = min(max_workers(), len(half))
    if workers > 1 and cvg.base.n >= 32:
        with ThreadPoolExecutor(workers) as pool:
            solved = list(pool.map(solve, half))
    else:
        solved = [solve(j) for j in half]
    return [solved[min(j, t - j)] for j in range(t)]


def lift_spectrum_factored(cvg: CyclicVoltageGraph) -> np.ndarray:
    return np.sort(np.concatenate(factor_spectra(cvg)))[::-1]


def lift_spectrum_direct(cvg: CyclicVoltageGraph) -> np.ndarray:
    return symmetric_spectrum(adjacency_matrix(build_lift(cvg)))


def factorization_discrepancy(cvg: CyclicVoltageGraph) -> float:
    return max_discrepancy(lift_spectrum_direct(cvg), lift_spectrum_factored(cvg))


def verify_factorization(cvg: CyclicVoltageGraph, tol: float) -> bool:
    return factorization_discrepancy(cvg) <= tol


def phi_eval(cvg: CyclicVoltageGraph, lam: float, theta: float) -> float:
    """det(lam*I - A_alpha) with alpha = exp(i*theta); depends on theta only
    through nu = 2*cos(theta)."""
    A = _alpha_matrix(cvg, lambda k: cmath.exp(1j * theta * k))
    val = complex_determinant(lam * np.eye(cvg.base.n) - A)
    if abs(val.imag) > 1e-8 * (1.0 + abs(val.real)):
        raise CheckFailure(f"characteristic value has imaginary part {val.imag:.3g}; factor is not Hermitian")
    return val.real


def common_head(cvg: CyclicVoltageGraph) -> int | None:
    """Head vertex shared by all voltage-1 oriented edges, when the assignment
    is of the single-vertex form (every voltage 0 or +-1, all +1 orientations
    pointing into one vertex). Raises ValueError otherwise."""
    heads = set()
    for i, (u, v) in enumerate(cvg.base.edges):
        k = cvg.voltages[i]
        if k == 0:
            continue
        if k == 1:
            heads.add(v)
        elif k == -1:
            heads.add(u)
        else:
            raise ValueError(f"edge {i} has voltage {k}; expected 0 or +-1")
    if len(heads) > 1:
        raise ValueError(f"voltage-1 edges point into several vertices {sorted(heads)}")
    return heads.pop() if heads else None


@dataclass(frozen=True)
class PhiLinearForm:
    lam: float
    phi_plus2: float  # Phi(lam, 2)
    phi_minus2: float  # Phi(lam, -2)

    @property
    def p(self) -> float:
        return (self.phi_plus2 + self.phi_minus2) / 2.0

    @property
    def s(self) -> float:
        return (self.phi_minus2 - self.phi_plus2) / 4.0

    def at(self, nu: float) -> float:
        return self.p - nu * self.s

    @property
    def nu0(self) -> float | None:
        """Root in nu of Phi(lam, nu), if the form is not constant."""
        return self.p / self.s if self.s != 0 else None


def phi_linear_form(cvg: CyclicVoltageGraph, lam: float) -> PhiLinearForm:
    common_head(cvg)
    form = PhiLinearForm(lam, phi_eval(cvg, lam, 0.0), phi_eval(cvg, lam, math.pi))
    mid = phi_eval(cvg, lam, math.pi / 2)
    if abs(mid - form.p) > 1e-6 * (1.0 + abs(form.p)):
        raise CheckFailure(f"Phi is not linear in nu at lam={lam}: Phi(lam, 0)={mid!r}, p={form.p!r}")
    return form


def median_series(
    G: Graph, F: Iterable[OrientedEdge], t_max: int, cross_check_upto: int = 4, tol: float = 1e-6
) -> list[tuple[int, float]]:
    """R of the t-lift for t = 1..t_max, computed from the factor matrices.

    For t <= cross_check_upto the explicit lift is also solved and must agree.
    """
    if bipartition(G) is None:
        raise ValueError("precondition failed: base graph is not bipartite")
    F = list(F)
    out = []
    for t in range(1, t_max + 1):
        cvg = make_cyclic_voltage(G, F, t)
        R = median_report(lift_spectrum_factored(cvg), bipartite=True).R
        if t <= cross_check_upto:
            direct = median_report(lift_spectrum_direct(cvg), bipartite=True).R
            if abs(direct - R) > tol:
                raise CheckFailure(f"t={t}: factored R={R!r} but explicit lift R={direct!r}")
        out.append((t, R))
    return out
