"""Projective-plane lift experiments and randomized bound sweeps.

Each ``run_*`` function returns a JSON-ready dict and raises
:class:`~hlindex.hl.CheckFailure` when a mathematical claim fails to hold
numerically.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import bisect

from .graph import (
    Graph,
    adjacency_matrix,
    bipartition,
    degree_stats,
    from_edge_list,
    girth,
    is_connected,
)
from .hl import (
    BOUND_HOLDS,
    EXTREMAL,
    STRICT_MARGIN,
    VIOLATED,
    CheckFailure,
    check_deltamed,
    classify_mainres,
    hl_index,
    median_report,
)
from .linalg import symmetric_spectrum
from .lifts import build_lift, lift_spectrum_factored, make_cyclic_voltage, median_series
from .projective import pg2_incidence_graph, verify_pp_spectrum

# --- the cubic satisfied by the signed eigenvector of the double cover ------


def cubic_coefficients(q: float) -> tuple[float, float, float, float]:
    return 1.0, 1.0 - q, -3.0 * q, float(q * q - q)


def cubic(q: float, lam: float) -> float:
    return lam**3 + (1.0 - q) * lam**2 - 3.0 * q * lam + q * q - q


def cubic_median(q: int) -> tuple[tuple[float, ...], float]:
    """Coefficients and the root bracketed by (sqrt(q-1) - 1, sqrt(q) - 1)."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    lo, hi = math.sqrt(q - 1) - 1.0, math.sqrt(q) - 1.0
    f_lo, f_hi = cubic(q, lo), cubic(q, hi)
    if abs(f_lo - 2.0) > 1e-9:
        raise CheckFailure(f"cubic at sqrt(q-1)-1 is {f_lo!r}, expected 2")
    if abs(f_hi - (math.sqrt(q) - q)) > 1e-9:
        raise CheckFailure(f"cubic at sqrt(q)-1 is {f_hi!r}, expected sqrt(q)-q")
    root = bisect(lambda x: cubic(q, x), lo, hi, xtol=1e-12)
    return cubic_coefficients(q), root


# --- double cover of PG(2, q) with one voltage edge -------------------------


def first_line_edge(G: Graph, q: int) -> tuple[int, int]:
    """(point, line) of the first edge at the first line vertex."""
    v0 = q * q + q + 1
    return G.neighbours(v0)[0], v0


@dataclass
class InfinitReport:
    q: int
    coefficients: tuple[float, ...]
    bracket: tuple[float, float]
    root: float
    a: float
    b: float
    R: float
    lift_order: int
    below_median: float
    residual: float
    series: list[tuple[int, float]]
    even_spread: float
    odd_nonincreasing: bool
    odd_final_gap: float

    def as_dict(self) -> dict:
        return asdict(self)


def signed_eigenvector(G: Graph, v0: int, v1: int, a: float, b: float, t: int = 2) -> np.ndarray:
    """x = 1 on v0, v1; a on their other neighbours; b elsewhere. The double
    cover vector is (x, -x): layer 0 gets x, layer 1 gets -x."""
    x = np.full(G.n, b)
    for w in set(G.neighbours(v0)) | set(G.neighbours(v1)):
        x[w] = a
    x[v0] = x[v1] = 1.0
    y = np.zeros(G.n * t)
    y[0::t] = x
    y[1::t] = -x
    return y


def run_infinit(q: int, t_max: int) -> InfinitReport:
    if t_max < 2:
        raise ValueError(f"t_max must be >= 2, got {t_max}")
    G = pg2_incidence_graph(q)
    u, v0 = first_line_edge(G, q)
    F = [G.oriented(u, v0)]
    cvg = make_cyclic_voltage(G, F, 2)

    spec = lift_spectrum_factored(cvg)
    r = len(spec)
    R = median_report(spec, bipartite=True).R
    lo, hi = math.sqrt(q - 1) - 1.0, math.sqrt(q) - 1.0
    if not (lo + STRICT_MARGIN < R < hi - STRICT_MARGIN):
        raise CheckFailure(f"R(double cover)={R!r} not strictly inside ({lo!r}, {hi!r})")

    coeffs, root = cubic_median(q)
    if abs(R - root) > 1e-6:
        raise CheckFailure(f"R(double cover)={R!r} differs from the cubic root {root!r}")

    below = float(spec[r // 2 - 2])  # 1-based index r/2 - 1
    if abs(below - math.sqrt(q)) > 1e-6:
        raise CheckFailure(f"eigenvalue at index r/2-1 is {below!r}, expected sqrt(q)")

    a = (root + 1.0) / q
    b = (a * root - 1.0) / q
    if abs(b * root - (q * b + a)) > 1e-8:
        raise CheckFailure("eigenvector parameters do not satisfy b*lam = q*b + a")
    y = signed_eigenvector(G, v0, u, a, b)
    A = adjacency_matrix(build_lift(cvg))
    residual = float(np.max(np.abs(A @ y - root * y)))
    if residual > 1e-6 * float(np.max(np.abs(y))):
        raise CheckFailure(f"eigenvector residual {residual:.3g} too large")

    series = median_series(G, F, t_max)
    R2 = series[1][1]
    even = [x for t, x in series if t % 2 == 0]
    odd = [x for t, x in series if t % 2 == 1]
    spread = max(even) - min(even)
    if spread > 1e-6:
        raise CheckFailure(f"even lifts disagree: spread {spread:.3g}")
    nonincreasing = all(b_ <= a_ + 1e-8 for a_, b_ in zip(odd, odd[1:]))
    if not nonincreasing:
        raise CheckFailure(f"odd lifts are not non-increasing: {odd}")

    return InfinitReport(
        q=q,
        coefficients=coeffs,
        bracket=(lo, hi),
        root=root,
        a=a,
        b=b,
        R=R,
        lift_order=r,
        below_median=below,
        residual=residual,
        series=series,
        even_spread=spread,
        odd_nonincreasing=nonincreasing,
        odd_final_gap=odd[-1] - R2,
    )


# --- refined lower bound -----------------------------------------------------


@dataclass
class RefinedBoundReport:
    t: float
    h: float
    probe: float
    margin: float
    cubic_value: float
    sign: int

    def as_dict(self) -> dict:
        return asdict(self)


def refined_expression(t: float, h: float) -> float:
    ht = h * t
    poly = (
        (2 * h**2 - h**3) * t**5
        + (h**3 - 2 * h**2) * t**4
        + (4 * h**2 - h) * t**3
        + (3 * h - h**2) * t**2
        - 2 * h * t
        - 1
    )
    return poly / ht**3


def refined_margin(t: float, h: float) -> RefinedBoundReport:
    """Sign of the cubic (q = t^2) at t - 1 - 1/(h t), evaluated two ways."""
    if t <= 0 or h <= 0:
        raise ValueError("t and h must be positive")
    probe = t - 1.0 - 1.0 / (h * t)
    margin = refined_expression(t, h)
    direct = cubic(t * t, probe)
    if abs(margin - direct) > 1e-8 * max(1.0, abs(margin), abs(direct)):
        raise CheckFailure(f"closed form {margin!r} disagrees with the cubic {direct!r}")
    return RefinedBoundReport(t, h, probe, margin, direct, int(np.sign(margin)))


# --- randomized sweep over connected bipartite graphs -----------------------


def random_connected_bipartite(rng: np.random.Generator, n_max: int) -> Graph:
    """Balanced bipartite G(m, m, p) with m and p drawn per call, retried until connected."""
    m = int(rng.integers(1, n_max // 2 + 1))
    p = float(rng.uniform(0.15, 0.9))
    while True:
        mask = rng.random((m, m)) < p
        G = from_edge_list(2 * m, [(i, m + j) for i, j in zip(*np.nonzero(mask))])
        if is_connected(G):
            return G


def run_sweep(n_max: int, trials: int, seed: int) -> dict:
    if n_max < 4:
        raise ValueError(f"n_max must be >= 4, got {n_max}")
    rng = np.random.default_rng(seed)
    mainres = {BOUND_HOLDS: 0, EXTREMAL: 0, VIOLATED: 0, "skipped": 0}
    deltamed = {BOUND_HOLDS: 0, VIOLATED: 0}
    equality_cases = {"total": 0, "single-edge": 0, "other": 0}
    violations = []
    for trial in range(trials):
        G = random_connected_bipartite(rng, n_max)
        report = hl_index(G)
        if degree_stats(G)[0] >= 3:
            v = classify_mainres(G, report)
            mainres[v.outcome] += 1
            if v.outcome == VIOLATED:
                violations.append({"trial": trial, "check": "mainres", "n": G.n, "edges": G.edges})
        else:
            mainres["skipped"] += 1
        d = check_deltamed(G, report)
        deltamed[d.outcome] += 1
        if d.outcome == VIOLATED:
            violations.append({"trial": trial, "check": "deltamed", "n": G.n, "edges": G.edges})
        if abs(d.R - d.bound) <= STRICT_MARGIN:
            equality_cases["total"] += 1
            equality_cases["other" if d.strict_required else "single-edge"] += 1
    result = {
        "n_max": n_max,
        "trials": trials,
        "seed": seed,
        "mainres": mainres,
        "deltamed": deltamed,
        "deltamed_equality": equality_cases,
        "violations": violations,
    }
    if violations:
        raise CheckFailure(f"{len(violations)} bound violation(s): {violations[:3]}")
    return result


# --- reports used by the CLI -------------------------------------------------


def graph_report(G: Graph) -> dict:
    spec = symmetric_spectrum(adjacency_matrix(G))
    bip = bipartition(G)
    rep = median_report(spec, bipartite=bip is not None)
    out = {
        "n": G.n,
        "spectrum": [float(x) for x in spec],
        "median_indices": list(rep.indices),
        "median_values": list(rep.values),
        "R": rep.R,
    }
    dmax = degree_stats(G)[0]
    details = {}
    if bip is None:
        out["mainres"] = "skipped: not bipartite"
    elif not is_connected(G):
        out["mainres"] = "skipped: not connected"
    elif dmax < 3:
        out["mainres"] = "skipped: Δ < 3"
    else:
        v = classify_mainres(G, rep)
        out["mainres"] = v.outcome
        details["mainres"] = v.as_dict()
    if bip is None:
        out["deltamed"] = "skipped: not bipartite"
    else:
        v = check_deltamed(G, rep)
        out["deltamed"] = v.outcome
        details["deltamed"] = v.as_dict()
    out["verdicts"] = details
    return out


def pp_report(q: int) -> tuple[Graph, dict]:
    G = pg2_incidence_graph(q)
    dmax, dmin, _ = degree_stats(G)
    return G, {
        "q": q,
        "vertices": G.n,
        "edges": G.m,
        "regular": dmax == dmin,
        "degree": dmax,
        "girth": girth(G),
        "spectrum_ok": verify_pp_spectrum(q, 1e-6),
    }


def spectrum_summary(spec, bipartite: bool = False) -> dict:
    rep = median_report(spec, bipartite)
    return {
        "max": float(spec[0]),
        "min": float(spec[-1]),
        "median_indices": list(rep.indices),
        "median_values": list(rep.values),
        "R": rep.R,
    }
