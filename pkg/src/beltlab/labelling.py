"""Subadditive labellings of quivers, decided by exact linear programming.

A labelling assigns a positive rational to each vertex. With ``in(z)`` and
``out(z)`` the label sums over incoming and outgoing arrows (multiplicities
counted), the condition ``label(z) >= max(in, out) / 2`` splits into the two
linear constraints ``label(z) >= in / 2`` and ``label(z) >= out / 2``.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from beltlab import lp
from beltlab.errors import NotBipartiteError, TooLargeError
from beltlab.quiver import Quiver

PLAIN_VERTEX_CAP = 16

HALF = Fraction(1, 2)


class Classification(enum.Enum):
    STRICT = "Strict"
    PLAIN_ONLY = "PlainOnly"
    WEAK_ONLY = "WeakOnly"
    NONE = "None"


class VertexStatus(enum.Enum):
    SLACK = "slack"
    TIGHT_IN = "tight-in"
    TIGHT_OUT = "tight-out"


@dataclass(frozen=True)
class LabellingResult:
    classification: Classification
    certificate: tuple[Fraction, ...] | None = None
    tight_pattern: tuple[VertexStatus, ...] | None = None

    def to_json(self) -> dict:
        return {
            "classification": self.classification.value,
            "labels": [str(x) for x in self.certificate] if self.certificate else None,
            "tight_pattern": [s.value for s in self.tight_pattern] if self.tight_pattern else None,
        }


class LabellingProblem:
    """In/out coefficient rows for a quiver without frozen vertices."""

    def __init__(self, quiver: Quiver):
        if quiver.frozen:
            raise ValueError("labelling problems are defined for quivers without frozen vertices")
        if quiver.n < 1:
            raise ValueError("quiver must have at least one vertex")
        self.quiver = quiver
        n = quiver.n
        # in_rows[z][y] = multiplicity of y -> z
        self.in_rows = [[max(quiver.B[y][z], 0) for y in range(n)] for z in range(n)]
        self.out_rows = [[max(quiver.B[z][y], 0) for y in range(n)] for z in range(n)]

    @property
    def n(self) -> int:
        return self.quiver.n

    def sums(self, labels: Sequence[Fraction], z: int) -> tuple[Fraction, Fraction]:
        s_in = sum((m * labels[y] for y, m in enumerate(self.in_rows[z]) if m), Fraction(0))
        s_out = sum((m * labels[y] for y, m in enumerate(self.out_rows[z]) if m), Fraction(0))
        return s_in, s_out

    # -- direct verification, independent of the LP ---------------------------

    def is_weak(self, labels: Sequence[Fraction]) -> bool:
        if any(x <= 0 for x in labels):
            return False
        return all(2 * labels[z] >= max(self.sums(labels, z)) for z in range(self.n))

    def is_strict(self, labels: Sequence[Fraction]) -> bool:
        if any(x <= 0 for x in labels):
            return False
        return all(2 * labels[z] > max(self.sums(labels, z)) for z in range(self.n))

    def is_plain(self, labels: Sequence[Fraction]) -> bool:
        if not self.is_weak(labels):
            return False
        for z in range(self.n):
            s_in, s_out = self.sums(labels, z)
            if 2 * labels[z] == max(s_in, s_out) and s_in == s_out:
                return False
        return True

    def pattern_of(self, labels: Sequence[Fraction]) -> tuple[VertexStatus, ...]:
        out = []
        for z in range(self.n):
            s_in, s_out = self.sums(labels, z)
            if 2 * labels[z] > max(s_in, s_out):
                out.append(VertexStatus.SLACK)
            elif s_in > s_out:
                out.append(VertexStatus.TIGHT_IN)
            else:
                out.append(VertexStatus.TIGHT_OUT)
        return tuple(out)

    # -- LP assembly ----------------------------------------------------------

    def _lp(self, statuses: Sequence[VertexStatus | None], strict_all: bool = False) -> lp.LPResult:
        """Maximize s over labels and s.

        ``None`` status means only the weak inequalities are imposed at that
        vertex; ``strict_all`` forces the slack constraints everywhere.
        Variables are labels[0..n-1] followed by s (free).
        """
        n = self.n
        A_ub, b_ub, A_eq, b_eq = [], [], [], []

        def row(side, z, s_coef):
            # side/2 - label(z) + s_coef * s <= 0
            r = [HALF * m for m in side] + [Fraction(s_coef)]
            r[z] -= 1
            return r

        for z in range(n):
            st = VertexStatus.SLACK if strict_all else statuses[z]
            if st is None:
                A_ub += [row(self.in_rows[z], z, 0), row(self.out_rows[z], z, 0)]
                b_ub += [0, 0]
            elif st is VertexStatus.SLACK:
                A_ub += [row(self.in_rows[z], z, 1), row(self.out_rows[z], z, 1)]
                b_ub += [0, 0]
            else:
                hi, lo = (self.in_rows[z], self.out_rows[z])
                if st is VertexStatus.TIGHT_OUT:
                    hi, lo = lo, hi
                A_eq.append(row(hi, z, 0))
                b_eq.append(0)
                # hi - lo >= s
                A_ub.append([Fraction(b - a) for a, b in zip(hi, lo)] + [Fraction(1)])
                b_ub.append(0)
            # label(z) >= s
            r = [Fraction(0)] * (n + 1)
            r[z] = Fraction(-1)
            r[n] = Fraction(1)
            A_ub.append(r)
            b_ub.append(0)
        A_eq.append([Fraction(1)] * n + [Fraction(0)])
        b_eq.append(1)
        c = [0] * n + [1]
        return lp.maximize(c, A_ub, b_ub, A_eq, b_eq, free=[n])


def _solution(res: lp.LPResult, n: int) -> tuple[tuple[Fraction, ...], Fraction] | None:
    if res.status != lp.OPTIMAL:
        return None
    return res.x[:n], res.x[n]


def strict_margin(p: LabellingProblem) -> Fraction:
    """Optimal epsilon of the strict LP (positive iff a strict labelling exists)."""
    labels, eps = _solution(p._lp([None] * p.n, strict_all=True), p.n)
    return eps


def find_strict(p: LabellingProblem) -> tuple[Fraction, ...] | None:
    labels, eps = _solution(p._lp([None] * p.n, strict_all=True), p.n)
    return labels if eps > 0 else None


def find_weak(p: LabellingProblem) -> tuple[Fraction, ...] | None:
    sol = _solution(p._lp([None] * p.n), p.n)
    if sol is None:
        return None
    labels, delta = sol
    return labels if delta > 0 else None


def find_plain(p: LabellingProblem) -> tuple[tuple[Fraction, ...], tuple[VertexStatus, ...]] | None:
    """Search per-vertex status patterns with LP pruning.

    A partial pattern imposes its statuses on assigned vertices and only the
    weak inequalities elsewhere; every completion is more constrained, so a
    partial LP with optimum ``s <= 0`` prunes its whole subtree.
    """
    if p.n > PLAIN_VERTEX_CAP:
        raise TooLargeError(f"plain labelling search capped at {PLAIN_VERTEX_CAP} vertices")
    strict = find_strict(p)
    if strict is not None:
        return strict, p.pattern_of(strict)
    weak = find_weak(p)
    if weak is None:
        return None
    if p.is_plain(weak):
        return weak, p.pattern_of(weak)
    hint = p.pattern_of(weak)

    statuses: list[VertexStatus | None] = [None] * p.n

    def search(z: int):
        order = [hint[z]] + [st for st in VertexStatus if st is not hint[z]]
        for st in order:
            statuses[z] = st
            sol = _solution(p._lp(statuses), p.n)
            if sol is not None and sol[1] > 0:
                found = sol[0] if z + 1 == p.n else search(z + 1)
                if found is not None:
                    return found
        statuses[z] = None
        return None

    labels = search(0)
    if labels is None:
        return None
    return labels, p.pattern_of(labels)


def classify(p: LabellingProblem) -> LabellingResult:
    _warn_if_not_recurrent(p.quiver)
    strict = find_strict(p)
    if strict is not None:
        return LabellingResult(Classification.STRICT, strict, p.pattern_of(strict))
    plain = find_plain(p)
    if plain is not None:
        return LabellingResult(Classification.PLAIN_ONLY, plain[0], plain[1])
    weak = find_weak(p)
    if weak is not None:
        return LabellingResult(Classification.WEAK_ONLY, weak)
    return LabellingResult(Classification.NONE)


def _warn_if_not_recurrent(q: Quiver) -> None:
    from beltlab.belt import default_coloring, is_recurrent

    try:
        recurrent = is_recurrent(q, default_coloring(q))
    except NotBipartiteError:
        recurrent = False
    if not recurrent:
        warnings.warn("quiver is not recurrent; the labelling criteria may not apply", stacklevel=3)
