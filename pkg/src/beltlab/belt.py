"""Bipartite belt dynamics: mu_plus (black), mu_minus (white) and their composite."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from beltlab.dynkin import BLACK, WHITE, belt_coloring, bipartite_coloring
from beltlab.errors import ColorClashError, MissingMetadataError, ZeroValueError
from beltlab.quiver import Quiver, Seed, exchange_value, mutate_many, mutate_quiver

Coloring = Sequence[str | None]


def check_coloring(q: Quiver, coloring: Coloring) -> None:
    if len(coloring) != q.n:
        raise ValueError("one color per vertex required")
    for u in q.mutable:
        if coloring[u] not in (BLACK, WHITE):
            raise ValueError(f"mutable vertex {q.label(u)} has no color")
        for v in q.mutable:
            if u < v and q.B[u][v] != 0 and coloring[u] == coloring[v]:
                raise ColorClashError(
                    f"arrow between same-colored vertices {q.label(u)} and {q.label(v)}"
                )


def default_coloring(q: Quiver) -> tuple[str | None, ...]:
    try:
        return belt_coloring(q)
    except MissingMetadataError:
        return bipartite_coloring(q)


@dataclass(frozen=True)
class BeltState:
    seed: Seed
    coloring: tuple[str | None, ...]
    time: int = 0

    def __post_init__(self):
        check_coloring(self.seed.quiver, self.coloring)

    @classmethod
    def start(cls, seed: Seed, coloring: Coloring | None = None) -> "BeltState":
        if coloring is None:
            coloring = default_coloring(seed.quiver)
        return cls(seed, tuple(coloring), 0)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.seed.values

    @property
    def quiver(self) -> Quiver:
        return self.seed.quiver

    def vertices(self, color: str) -> list[int]:
        return [z for z in self.quiver.mutable if self.coloring[z] == color]


def _mutate_class(state: BeltState, color: str) -> BeltState:
    q = state.quiver
    values = list(state.values)
    for z in state.vertices(color):
        # same-colored vertices are never adjacent, so each exchange sees the
        # original quiver row and the other updates commute
        try:
            values[z] = exchange_value(q, values, z)
        except ZeroValueError as exc:
            raise ZeroValueError(str(exc), vertex=z, time=state.time) from None
        if values[z] == 0:
            raise ZeroValueError(
                f"value at {q.label(z)} became zero", vertex=z, time=state.time
            )
        q = mutate_quiver(q, z)
    return replace(state, seed=Seed(q, tuple(values)))


def mu_plus(state: BeltState) -> BeltState:
    return _mutate_class(state, BLACK)


def mu_minus(state: BeltState) -> BeltState:
    return _mutate_class(state, WHITE)


def step(state: BeltState) -> BeltState:
    """One unit of time: mu_plus, then mu_minus."""
    s = mu_minus(mu_plus(state))
    return replace(s, time=state.time + 1)


def inverse_step(state: BeltState) -> BeltState:
    s = mu_plus(mu_minus(state))
    return replace(s, time=state.time - 1)


@dataclass(frozen=True)
class Trace:
    """Per-vertex values at every integer time in ``[t_min, t_max]``."""

    t_min: int
    t_max: int
    series: dict[int, tuple[Fraction, ...]]

    def at(self, vertex: int, t: int) -> Fraction:
        return self.series[vertex][t - self.t_min]

    def times(self) -> range:
        return range(self.t_min, self.t_max + 1)

    def rows(self) -> list[tuple[int, int, Fraction]]:
        return [(t, z, self.at(z, t)) for t in self.times() for z in sorted(self.series)]


def evolve(
    state: BeltState,
    forward: int,
    backward: int = 0,
    watch: Iterable[int] | None = None,
) -> Trace:
    if forward < 0 or backward < 0:
        raise ValueError("forward and backward must be non-negative")
    watch = sorted(state.quiver.mutable if watch is None else set(watch))
    past = []
    s = state
    for _ in range(backward):
        s = inverse_step(s)
        past.append(s.values)
    future = []
    s = state
    for _ in range(forward):
        s = step(s)
        future.append(s.values)
    frames = past[::-1] + [state.values] + future
    series = {z: tuple(f[z] for f in frames) for z in watch}
    return Trace(state.time - backward, state.time + forward, series)


def detect_period(state: BeltState, bound: int) -> int | None:
    if bound < 1:
        raise ValueError("bound must be >= 1")
    s = state
    for p in range(1, bound + 1):
        s = step(s)
        if s.values == state.values and s.quiver == state.quiver:
            return p
    return None


def is_recurrent(q: Quiver, coloring: Coloring, mutable_only: bool = False) -> bool:
    """Does mutating all black then all white vertices give back ``q``?"""
    check_coloring(q, coloring)
    r = q
    for color in (BLACK, WHITE):
        for z in q.mutable:
            if coloring[z] == color:
                r = mutate_quiver(r, z)
    if not mutable_only:
        return r == q
    m = q.mutable
    return all(r.B[u][v] == q.B[u][v] for u in m for v in m)


def off_belt_trace(state: BeltState, word: Sequence[int], x: int, forward: int) -> Trace:
    """Values at ``x`` of ``mutate_many(word)`` applied to each belt state."""
    out = []
    s = state
    for t in range(forward + 1):
        out.append(mutate_many(s.seed, word).values[x])
        if t < forward:
            s = step(s)
    return Trace(state.time, state.time + forward, {x: tuple(out)})


def random_values(n: int, rng: random.Random, lo: int = 1, hi: int = 100) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(n))


def random_state(q: Quiver, seed: int, coloring: Coloring | None = None) -> BeltState:
    rng = random.Random(seed)
    return BeltState.start(Seed(q, random_values(q.n, rng)), coloring)
