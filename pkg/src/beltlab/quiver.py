"""Quivers, seeds and mutation over exact rationals.

A quiver is stored as its skew-symmetric exchange matrix ``B`` where
``B[u][v]`` is the number of arrows ``u -> v`` minus the number ``v -> u``.
Directed 2-cycles never survive in this encoding, so the drawn quiver is
recovered as ``max(B, 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from beltlab.errors import BadVertexError, BeltLabError, FrozenVertexError, ZeroValueError

__all__ = [
    "Quiver",
    "Seed",
    "mutate_quiver",
    "mutate_seed",
    "mutate_many",
    "quiver_to_json",
    "quiver_from_json",
    "seed_to_json",
    "seed_from_json",
    "parse_rational",
]


@dataclass(frozen=True)
class BoxVertex:
    """Provenance of a box-product vertex: factor indices and their classes."""

    left: int
    right: int
    left_class: int
    right_class: int


@dataclass(frozen=True)
class Quiver:
    B: tuple[tuple[int, ...], ...]
    frozen: frozenset[int] = frozenset()
    labels: tuple[str, ...] | None = None
    # set by box_product only
    factors: tuple[BoxVertex, ...] | None = field(default=None, compare=False)
    box: tuple[str, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.B)
        for u, row in enumerate(self.B):
            if len(row) != n:
                raise ValueError("exchange matrix must be square")
            if row[u] != 0:
                raise ValueError(f"loop at vertex {u}")
            for v in range(u):
                if row[v] != -self.B[v][u]:
                    raise ValueError(f"exchange matrix not skew-symmetric at ({u}, {v})")
        if any(not 0 <= z < n for z in self.frozen):
            raise ValueError("frozen vertex out of range")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("one label per vertex required")
        if self.factors is not None and len(self.factors) != n:
            raise ValueError("one factor record per vertex required")

    @classmethod
    def from_arrows(
        cls,
        n: int,
        arrows: Iterable[tuple[int, int] | tuple[int, int, int]],
        frozen: Iterable[int] = (),
        labels: Sequence[str] | None = None,
    ) -> "Quiver":
        """Build a quiver from ``(u, v)`` or ``(u, v, mult)`` arrows; opposite arrows cancel."""
        B = [[0] * n for _ in range(n)]
        for arrow in arrows:
            u, v = arrow[0], arrow[1]
            mult = arrow[2] if len(arrow) > 2 else 1
            if not (0 <= u < n and 0 <= v < n):
                raise BadVertexError(f"arrow {arrow} out of range")
            if u == v:
                raise ValueError("loops are not allowed")
            B[u][v] += mult
            B[v][u] -= mult
        return cls(
            tuple(map(tuple, B)),
            frozenset(frozen),
            tuple(labels) if labels is not None else None,
        )

    @property
    def n(self) -> int:
        return len(self.B)

    @property
    def mutable(self) -> list[int]:
        return [z for z in range(self.n) if z not in self.frozen]

    def arrows(self) -> list[tuple[int, int, int]]:
        """Arrows as ``(u, v, multiplicity)`` with positive multiplicity."""
        return [
            (u, v, self.B[u][v])
            for u in range(self.n)
            for v in range(self.n)
            if self.B[u][v] > 0
        ]

    def arrow_count(self) -> int:
        return sum(m for _, _, m in self.arrows())

    def label(self, z: int) -> str:
        return self.labels[z] if self.labels is not None else str(z)

    def reversed(self) -> "Quiver":
        return replace(self, B=tuple(tuple(-x for x in row) for row in self.B))

    def in_neighbors(self, z: int) -> list[tuple[int, int]]:
        return [(y, self.B[y][z]) for y in range(self.n) if self.B[y][z] > 0]

    def out_neighbors(self, z: int) -> list[tuple[int, int]]:
        return [(y, self.B[z][y]) for y in range(self.n) if self.B[z][y] > 0]

    def _check_mutable(self, z: int) -> None:
        if not 0 <= z < self.n:
            raise BadVertexError(f"vertex {z} out of range for quiver on {self.n} vertices")
        if z in self.frozen:
            raise FrozenVertexError(f"vertex {self.label(z)} is frozen")


@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.values) != self.quiver.n:
            raise ValueError("one value per vertex required")
        if any(v == 0 for v in self.values):
            raise ValueError("seed values must be nonzero")

    @classmethod
    def of(cls, quiver: Quiver, values: Iterable) -> "Seed":
        return cls(quiver, tuple(Fraction(v) for v in values))

    @classmethod
    def ones(cls, quiver: Quiver) -> "Seed":
        return cls(quiver, (Fraction(1),) * quiver.n)

    def is_positive(self) -> bool:
        return all(v > 0 for v in self.values)


def mutate_quiver(q: Quiver, z: int) -> Quiver:
    q._check_mutable(z)
    B = q.B
    bz = B[z]
    rows = []
    for u, row in enumerate(B):
        if u == z:
            rows.append(tuple(-x for x in row))
            continue
        buz = row[z]
        if buz == 0:
            rows.append(tuple(-x if v == z else x for v, x in enumerate(row)))
            continue
        s = 1 if buz > 0 else -1
        rows.append(
            tuple(
                -x if v == z else x + s * max(buz * bz[v], 0)
                for v, x in enumerate(row)
            )
        )
    return replace(q, B=tuple(rows))


def exchange_value(q: Quiver, values: Sequence[Fraction], z: int) -> Fraction:
    """New value at ``z``: (product over incoming + product over outgoing) / old value."""
    if values[z] == 0:
        raise ZeroValueError(f"value at {q.label(z)} is zero", vertex=z)
    p_in = Fraction(1)
    p_out = Fraction(1)
    row = q.B[z]
    for y, b in enumerate(row):
        if b < 0:
            p_in *= values[y] ** -b
        elif b > 0:
            p_out *= values[y] ** b
    return (p_in + p_out) / values[z]


def mutate_seed(s: Seed, z: int) -> Seed:
    s.quiver._check_mutable(z)
    new_value = exchange_value(s.quiver, s.values, z)
    values = list(s.values)
    values[z] = new_value
    return Seed(mutate_quiver(s.quiver, z), tuple(values))


def mutate_many(s: Seed, word: Sequence[int]) -> Seed:
    for pos, z in enumerate(word):
        try:
            s = mutate_seed(s, z)
        except BeltLabError as exc:
            exc.position = pos
            exc.args = (f"word position {pos}: {exc}",)
            raise
    return s


# ---------------------------------------------------------------- JSON


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational strings must be p/q, got {text!r}")
    return Fraction(text)


def quiver_to_json(q: Quiver) -> dict:
    vertices = []
    for z in range(q.n):
        entry = {"id": z, "frozen": z in q.frozen}
        if q.labels is not None:
            entry["label"] = q.labels[z]
        if q.factors is not None:
            f = q.factors[z]
            entry["factor"] = [f.left, f.right, f.left_class, f.right_class]
        vertices.append(entry)
    out = {"vertices": vertices, "arrows": [list(a) for a in q.arrows()]}
    if q.box is not None:
        out["box"] = {"left": q.box[0], "right": q.box[1]}
    return out


def quiver_from_json(data: dict) -> Quiver:
    vertices = sorted(data["vertices"], key=lambda v: v["id"])
    n = len(vertices)
    if [v["id"] for v in vertices] != list(range(n)):
        raise ValueError("vertex ids must be 0..n-1")
    seen = set()
    for u, v, mult in data["arrows"]:
        if mult < 1:
            raise ValueError("arrow multiplicity must be >= 1")
        if (v, u) in seen:
            raise ValueError(f"pair ({u}, {v}) listed in both directions")
        seen.add((u, v))
    q = Quiver.from_arrows(
        n,
        [tuple(a) for a in data["arrows"]],
        frozen=[v["id"] for v in vertices if v.get("frozen", False)],
        labels=[v.get("label", str(v["id"])) for v in vertices] if any("label" in v for v in vertices) else None,
    )
    factors = None
    if all("factor" in v for v in vertices) and n:
        factors = tuple(BoxVertex(*v["factor"]) for v in vertices)
    box = None
    if "box" in data:
        box = (data["box"]["left"], data["box"]["right"])
    return replace(q, factors=factors, box=box)


def seed_to_json(s: Seed) -> dict:
    out = quiver_to_json(s.quiver)
    out["values"] = [str(v) for v in s.values]
    return out


def seed_from_json(data: dict) -> Seed:
    return Seed(quiver_from_json(data), tuple(parse_rational(v) for v in data["values"]))
