"""Loop-free multigraphs on vertices 0..n-1 and the structural queries used by
the spectral checks (bipartition, degrees, components, girth).

Edges are stored as an ordered tuple of records ``(u, v)``. The position of a
record is its edge id; repeating a pair adds multiplicity. The stored
orientation of a record is the one used for voltages (see :mod:`hlindex.lifts`).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np


class OrientedEdge(NamedTuple):
    """Edge record ``edge`` traversed from ``tail`` to ``head``."""

    edge: int
    tail: int
    head: int

    def reversed(self) -> OrientedEdge:
        return OrientedEdge(self.edge, self.head, self.tail)


@dataclass(frozen=True)
class Bipartition:
    U: tuple[int, ...]
    W: tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {i} = ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"edge {i} = ({u}, {v}) is a loop")

    @property
    def m(self) -> int:
        """Total edge multiplicity."""
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        # per vertex: (neighbour, edge id) for every incident edge record
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append((v, i))
            inc[v].append((u, i))
        return tuple(tuple(x) for x in inc)

    def neighbours(self, v: int) -> list[int]:
        return sorted({w for w, _ in self.incidence[v]})

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for w, _ in self.incidence[u] if w == v)

    def oriented(self, u: int, v: int) -> OrientedEdge:
        """The lowest-id edge joining ``u`` and ``v``, oriented ``u -> v``."""
        for i, (a, b) in enumerate(self.edges):
            if (a, b) == (u, v) or (a, b) == (v, u):
                return OrientedEdge(i, u, v)
        raise KeyError(f"no edge between {u} and {v}")

    def oriented_edges(self) -> list[OrientedEdge]:
        """Both orientations of every edge record."""
        out = []
        for i, (u, v) in enumerate(self.edges):
            out.append(OrientedEdge(i, u, v))
            out.append(OrientedEdge(i, v, u))
        return out


def from_edge_list(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    return Graph(int(n), tuple((int(u), int(v)) for u, v in pairs))


def adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n))
    for u, v in G.edges:
        A[u, v] += 1.0
        A[v, u] += 1.0
    return A


def degree_stats(G: Graph) -> tuple[int, int, list[int]]:
    """Return ``(max degree, min degree, degree sequence)``; multiplicity counts."""
    deg = [len(x) for x in G.incidence]
    return max(deg), min(deg), deg


def connected_components(G: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by their smallest vertex."""
    seen = [False] * G.n
    comps = []
    for root in range(G.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, _ in G.incidence[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    return len(connected_components(G)) == 1


def bipartition(G: Graph) -> Bipartition | None:
    """Two-colouring by BFS layers, or None if G has an odd cycle.

    Each component is rooted at its lowest vertex, which goes to ``U``.
    """
    colour = [-1] * G.n
    for root in range(G.n):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, _ in G.incidence[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    U = tuple(v for v in range(G.n) if colour[v] == 0)
    W = tuple(v for v in range(G.n) if colour[v] == 1)
    return Bipartition(U, W)


def girth(G: Graph) -> int | None:
    """Length of a shortest cycle (2 for a doubled edge), None for forests.

    BFS from every vertex; a non-tree edge closing at depths d1, d2 bounds the
    girth by d1 + d2 + 1, and the minimum over all roots is exact.
    """
    best = None
    for root in range(G.n):
        dist = [-1] * G.n
        via = [-1] * G.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w, eid in G.incidence[u]:
                if eid == via[u]:
                    continue
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    via[w] = eid
                    queue.append(w)
                else:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


# --- text format -----------------------------------------------------------


class GraphFormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def parse_graph_text(text: str) -> tuple[Graph, list[int]]:
    """Parse the ``v``/``e`` line format.

    Returns the graph and, per edge record, the voltage on its stored
    orientation (0 when the optional third field is missing).
    """
    n = None
    pairs: list[tuple[int, int]] = []
    volts: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            nums = [int(x) for x in fields[1:]]
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer field in {line!r}") from None
        if fields[0] == "v":
            if n is not None:
                raise GraphFormatError(lineno, "duplicate 'v' line")
            if len(nums) != 1 or nums[0] < 1:
                raise GraphFormatError(lineno, "expected 'v <n>' with n >= 1")
            n = nums[0]
        elif fields[0] == "e":
            if n is None:
                raise GraphFormatError(lineno, "'e' line before 'v' line")
            if len(nums) not in (2, 3):
                raise GraphFormatError(lineno, "expected 'e <u> <v> [<k>]'")
            u, v = nums[0], nums[1]
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(lineno, f"vertex out of range 0..{n - 1}")
            if u == v:
                raise GraphFormatError(lineno, f"loop at vertex {u}")
            pairs.append((u, v))
            volts.append(nums[2] if len(nums) == 3 else 0)
        else:
            raise GraphFormatError(lineno, f"unknown record type {fields[0]!r}")
    if n is None:
        raise GraphFormatError(0, "missing 'v <n>' line")
    return Graph(n, tuple(pairs)), volts


def format_graph_text(G: Graph, voltages: list[int] | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"v {G.n}")
    for i, (u, v) in enumerate(G.edges):
        if voltages is not None and voltages[i]:
            lines.append(f"e {u} {v} {voltages[i]}")
        else:
            lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"
