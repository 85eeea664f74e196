"""Median eigenvalues (HL-index) and the sharp bipartite bounds on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import (
    Bipartition,
    Graph,
    adjacency_matrix,
    bipartition,
    connected_components,
    degree_stats,
    is_connected,
)
from .linalg import symmetric_spectrum

# an inequality counts as strict only when it clears this margin
STRICT_MARGIN = 1e-9
EXTREMAL_TOL = 1e-6

BOUND_HOLDS = "bound-holds"
EXTREMAL = "extremal-projective-plane"
VIOLATED = "violated"


class CheckFailure(RuntimeError):
    """A numerical check that should hold mathematically did not."""


@dataclass(frozen=True)
class MedianReport:
    n: int
    lower: int  # 1-based index into the descending spectrum
    upper: int
    lower_value: float
    upper_value: float
    R: float

    @property
    def indices(self) -> tuple[int, int]:
        return self.lower, self.upper

    @property
    def values(self) -> tuple[float, float]:
        return self.lower_value, self.upper_value


def median_indices(n: int) -> tuple[int, int]:
    return (n + 1) // 2, n // 2 + 1


def median_report(spectrum, bipartite: bool = False) -> MedianReport:
    """Median report for a descending spectrum.

    For a bipartite graph of odd order the middle eigenvalue is exactly zero
    (the spectrum is symmetric about 0), so it is reported as 0.0.
    """
    spec = np.asarray(spectrum, dtype=float)
    n = len(spec)
    if n < 1:
        raise ValueError("empty spectrum")
    lo, hi = median_indices(n)
    a, b = float(spec[lo - 1]), float(spec[hi - 1])
    if bipartite and n % 2 == 1:
        a = b = 0.0
    return MedianReport(n, lo, hi, a, b, max(abs(a), abs(b)))


def hl_index(G: Graph) -> MedianReport:
    spec = symmetric_spectrum(adjacency_matrix(G))
    return median_report(spec, bipartite=bipartition(G) is not None)


@dataclass(frozen=True)
class WalkDecomposition:
    U: tuple[int, ...]
    W: tuple[int, ...]
    B: np.ndarray
    BBt: np.ndarray
    shift: int
    E: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.E).copy()


def walk_decomposition(G: Graph, bip: Bipartition, shift: int) -> WalkDecomposition:
    """Biadjacency block B (rows U, columns W, ascending), BB^T and BB^T - shift*I."""
    if len(bip.U) != len(bip.W):
        raise ValueError(f"bipartition is unbalanced: |U|={len(bip.U)}, |W|={len(bip.W)}")
    row = {u: i for i, u in enumerate(bip.U)}
    col = {w: j for j, w in enumerate(bip.W)}
    B = np.zeros((len(bip.U), len(bip.W)), dtype=np.int64)
    for u, v in G.edges:
        if u in row and v in col:
            B[row[u], col[v]] += 1
        elif v in row and u in col:
            B[row[v], col[u]] += 1
        else:
            raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")
    BBt = B @ B.T
    E = BBt - shift * np.eye(len(bip.U), dtype=np.int64)
    return WalkDecomposition(bip.U, bip.W, B, BBt, shift, E)


def is_projective_plane_incidence(G: Graph) -> int | None:
    """Order q if G is the point-line incidence graph of a projective plane.

    Structural test: connected, bipartite with equal sides, k-regular with
    k >= 3, and BB^T = (k-1)I + J.
    """
    if not is_connected(G):
        return None
    bip = bipartition(G)
    if bip is None or len(bip.U) != len(bip.W):
        return None
    dmax, dmin, _ = degree_stats(G)
    if dmax != dmin or dmax < 3:
        return None
    k = dmax
    wd = walk_decomposition(G, bip, 0)
    m = len(bip.U)
    target = (k - 1) * np.eye(m, dtype=np.int64) + np.ones((m, m), dtype=np.int64)
    if not np.array_equal(wd.BBt, target):
        return None
    return k - 1


@dataclass(frozen=True)
class BoundVerdict:
    case: str  # "regular", "nonregular" or "min-degree"
    bound: float
    R: float
    outcome: str
    strict_required: bool = False
    witness: Graph | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "case": self.case,
            "bound": self.bound,
            "R": self.R,
            "outcome": self.outcome,
            "strict_required": self.strict_required,
        }


def classify_mainres(G: Graph, report: MedianReport | None = None) -> BoundVerdict:
    """Check R(G) <= sqrt(Delta - 2) for a connected bipartite graph with Delta >= 3.

    Projective-plane incidence graphs are the only exception; for them the
    verdict is extremal and R must equal sqrt(Delta - 1).
    """
    if not is_connected(G):
        raise ValueError("precondition failed: graph is not connected")
    if bipartition(G) is None:
        raise ValueError("precondition failed: graph is not bipartite")
    dmax, dmin, _ = degree_stats(G)
    if dmax < 3:
        raise ValueError(f"precondition failed: maximum degree {dmax} < 3")
    report = report or hl_index(G)
    case = "regular" if dmax == dmin else "nonregular"
    R = report.R
    if is_projective_plane_incidence(G) is not None:
        expected = math.sqrt(dmax - 1)
        if abs(R - expected) > EXTREMAL_TOL:
            raise CheckFailure(f"projective-plane incidence graph has R={R!r}, expected {expected!r}")
        return BoundVerdict(case, expected, R, EXTREMAL)
    bound = math.sqrt(dmax - 2)
    if R <= bound + STRICT_MARGIN:
        return BoundVerdict(case, bound, R, BOUND_HOLDS)
    return BoundVerdict(case, bound, R, VIOLATED, witness=G)


def deltamed_strict_required(G: Graph) -> bool:
    """Whether R(G) < sqrt(min degree) must hold strictly.

    True when the minimum degree is at least 2, or it is 1 and some component
    of minimum degree 1 is not a single edge.
    """
    _, dmin, deg = degree_stats(G)
    if dmin >= 2:
        return True
    if dmin == 1:
        for comp in connected_components(G):
            if min(deg[v] for v in comp) == 1 and not (len(comp) == 2 and deg[comp[0]] == 1):
                return True
    return False


def check_deltamed(G: Graph, report: MedianReport | None = None) -> BoundVerdict:
    """Check R(G) <= sqrt(min degree) for bipartite G, strictly where required."""
    if bipartition(G) is None:
        raise ValueError("precondition failed: graph is not bipartite")
    _, dmin, _ = degree_stats(G)
    report = report or hl_index(G)
    bound = math.sqrt(dmin)
    strict = deltamed_strict_required(G)
    limit = bound - STRICT_MARGIN if strict else bound + STRICT_MARGIN
    ok = report.R <= limit
    return BoundVerdict(
        "min-degree", bound, report.R, BOUND_HOLDS if ok else VIOLATED, strict, None if ok else G
    )
