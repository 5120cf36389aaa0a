"""Simply-laced Dynkin diagrams, their affine extensions, and box products."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from beltlab.errors import (
    AffineUnsupportedError,
    BadRankError,
    MissingMetadataError,
    NotBipartiteError,
)
from beltlab.quiver import BoxVertex, Quiver

FINITE = ("A", "D", "E")
AFFINE = ("A_affine", "D_affine", "E_affine")

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class DynkinSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FINITE + AFFINE:
            raise BadRankError(f"unknown family {self.family!r}")
        r = self.rank
        ok = {
            "A": r >= 1,
            "D": r >= 4,
            "E": r in (6, 7, 8),
            "A_affine": r >= 1,
            "D_affine": r >= 4,
            "E_affine": r in (6, 7, 8),
        }[self.family]
        if not ok:
            raise BadRankError(f"rank {r} not allowed for family {self.family}")

    @property
    def affine(self) -> bool:
        return self.family in AFFINE

    @property
    def name(self) -> str:
        base = self.family[0] + str(self.rank)
        return base + "^(1)" if self.affine else base

    @classmethod
    def parse(cls, text: str) -> "DynkinSpec":
        """Parse ``A3``, ``D4``, ``E6`` and affine forms ``A1^(1)`` or ``A1~``."""
        m = re.fullmatch(r"\s*([ADE])(\d+)\s*(\^\(1\)|~)?\s*", text)
        if not m:
            raise ValueError(f"cannot parse Dynkin type {text!r}")
        family = m.group(1) + ("_affine" if m.group(3) else "")
        return cls(family, int(m.group(2)))


@dataclass(frozen=True)
class BipartiteGraph:
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]  # (u, v, multiplicity), u < v
    coloring: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        for u, v, _ in self.edges:
            if self.coloring[u] == self.coloring[v]:
                raise NotBipartiteError(f"edge {u}-{v} joins equal colors")

    def edge_count(self) -> int:
        return sum(m for _, _, m in self.edges)


def _two_coloring(n: int, edges) -> tuple[int, ...]:
    adj = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * n
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    raise NotBipartiteError("odd cycle in underlying graph")
    return tuple(color)


def _path(k: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(k - 1)]


def build_diagram(spec: DynkinSpec) -> BipartiteGraph:
    """Underlying graph of a Dynkin diagram with vertex 0 in color class 0."""
    f, r = spec.family, spec.rank
    if f == "A":
        n, edges = r, _path(r)
    elif f == "D":
        n, edges = r, _path(r - 1) + [(r - 3, r - 1)]
    elif f == "E":
        n, edges = r, _path(r - 1) + [(2, r - 1)]
    elif f == "A_affine":
        if r % 2 == 0:
            raise NotBipartiteError(f"A{r}^(1) is a cycle of odd length {r + 1}")
        n = r + 1
        edges = [(0, 1, 2)] if r == 1 else _path(n) + [(0, n - 1)]
    elif f == "D_affine":
        n, edges = r + 1, _path(r - 1) + [(r - 3, r - 1), (1, r)]
    else:  # E_affine
        n = r + 1
        edges = _path(r - 1) + [(2, r - 1)]
        edges.append({6: (5, 6), 7: (0, 7), 8: (6, 8)}[r])
    norm = []
    for e in edges:
        u, v = sorted(e[:2])
        norm.append((u, v, e[2] if len(e) > 2 else 1))
    return BipartiteGraph(n, tuple(sorted(norm)), _two_coloring(n, norm), spec.name)


def coxeter_number(spec: DynkinSpec) -> int:
    if spec.affine:
        raise AffineUnsupportedError(f"{spec.name} has no Coxeter number")
    if spec.family == "A":
        return spec.rank + 1
    if spec.family == "D":
        return 2 * spec.rank - 2
    return {6: 12, 7: 18, 8: 30}[spec.rank]


def box_product(g: BipartiteGraph, g2: BipartiteGraph) -> Quiver:
    """Box product quiver of two bipartite graphs.

    Vertex ``(q, q2)`` gets index ``q + g.vertex_count * q2``. Arrows run
    Q0xQ0' -> Q1xQ0' -> Q1xQ1' -> Q0xQ1' -> Q0xQ0'.
    """
    n1 = g.vertex_count
    n = n1 * g2.vertex_count

    def idx(q, q2):
        return q + n1 * q2

    arrows = []
    for a, b, mult in g.edges:
        a0, a1 = (a, b) if g.coloring[a] == 0 else (b, a)
        for q2 in range(g2.vertex_count):
            if g2.coloring[q2] == 0:
                arrows.append((idx(a0, q2), idx(a1, q2), mult))
            else:
                arrows.append((idx(a1, q2), idx(a0, q2), mult))
    for c, d, mult in g2.edges:
        c0, c1 = (c, d) if g2.coloring[c] == 0 else (d, c)
        for q in range(n1):
            if g.coloring[q] == 1:
                arrows.append((idx(q, c0), idx(q, c1), mult))
            else:
                arrows.append((idx(q, c1), idx(q, c0), mult))

    factors = []
    labels = []
    for q2 in range(g2.vertex_count):
        for q in range(n1):
            factors.append(BoxVertex(q, q2, g.coloring[q], g2.coloring[q2]))
            labels.append(f"({q},{q2})")
    base = Quiver.from_arrows(n, arrows, labels=labels)
    return Quiver(base.B, base.frozen, base.labels, tuple(factors), (g.name, g2.name))


def product_of(left: DynkinSpec | str, right: DynkinSpec | str) -> Quiver:
    if isinstance(left, str):
        left = DynkinSpec.parse(left)
    if isinstance(right, str):
        right = DynkinSpec.parse(right)
    return box_product(build_diagram(left), build_diagram(right))


def parse_product(text: str) -> tuple[DynkinSpec, DynkinSpec]:
    """Parse ``A3xA1~``, ``A3*A1^(1)`` or ``A3□A1^(1)``."""
    parts = re.split(r"[x*□]", text)
    if len(parts) != 2:
        raise ValueError(f"cannot parse box product {text!r}")
    return DynkinSpec.parse(parts[0]), DynkinSpec.parse(parts[1])


def belt_coloring(q: Quiver) -> tuple[str | None, ...]:
    """Black on Q0xQ0' and Q1xQ1', white elsewhere; ``None`` for frozen vertices."""
    if q.factors is None:
        raise MissingMetadataError("quiver carries no box-product provenance")
    return tuple(
        None if z in q.frozen
        else (BLACK if f.left_class == f.right_class else WHITE)
        for z, f in enumerate(q.factors)
    )


def bipartite_coloring(q: Quiver) -> tuple[str | None, ...]:
    """A proper two-coloring of the mutable part, vertex 0 of each component black."""
    mutable = q.mutable
    pos = {z: i for i, z in enumerate(mutable)}
    edges = [
        (pos[u], pos[v], 1)
        for u in mutable
        for v in mutable
        if u < v and q.B[u][v] != 0
    ]
    colors = _two_coloring(len(mutable), edges)
    out: list[str | None] = [None] * q.n
    for z, c in zip(mutable, colors):
        out[z] = BLACK if c == 0 else WHITE
    return tuple(out)
