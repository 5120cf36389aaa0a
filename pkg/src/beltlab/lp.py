"""Exact rational linear programming: two-phase tableau simplex with Bland's rule."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int, obj: list[Fraction]) -> Fraction:
        row = self.rows[r]
        inv = 1 / row[c]
        row[:] = [x * inv for x in row]
        self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                f = other[c]
                other[:] = [x - f * y for x, y in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        f = obj[c]
        shift = Fraction(0)
        if f != 0:
            obj[:] = [x - f * y for x, y in zip(obj, row)]
            shift = f * self.rhs[r]
        self.basis[r] = c
        return shift

    def run(self, obj: list[Fraction], allowed: int) -> tuple[str, Fraction]:
        """Maximize; ``obj`` holds reduced costs, columns >= ``allowed`` never enter."""
        value = Fraction(0)
        while True:
            enter = next((j for j in range(allowed) if obj[j] > 0), None)
            if enter is None:
                return OPTIMAL, value
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED, value
            value += self.pivot(best[1], enter, obj)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are non-negative except those listed in ``free``.
    """
    n = len(c)
    free = sorted(set(free))
    ncol_x = n + len(free)

    def expand(row):
        row = [Fraction(v) for v in row]
        return row + [-row[j] for j in free]

    cons = [(expand(r), Fraction(b), "ub") for r, b in zip(A_ub, b_ub)]
    cons += [(expand(r), Fraction(b), "eq") for r, b in zip(A_eq, b_eq)]
    n_slack = sum(1 for _, _, k in cons if k == "ub")
    needs_art = [k == "eq" or b < 0 for _, b, k in cons]
    n_art = sum(needs_art)
    width = ncol_x + n_slack + n_art

    rows, rhs, basis = [], [], []
    s_col, a_col = ncol_x, ncol_x + n_slack
    for (coef, b, kind), art in zip(cons, needs_art):
        row = coef + [Fraction(0)] * (n_slack + n_art)
        if kind == "ub":
            row[s_col] = Fraction(1)
            slack_here = s_col
            s_col += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        if art:
            row[a_col] = Fraction(1)
            basis.append(a_col)
            a_col += 1
        else:
            basis.append(slack_here)
        rows.append(row)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis)
    art_start = ncol_x + n_slack

    if n_art:
        obj = [Fraction(0)] * width
        for j in range(art_start, width):
            obj[j] = Fraction(-1)
        value = Fraction(0)
        for i, bv in enumerate(basis):
            if bv >= art_start:
                obj = [x + y for x, y in zip(obj, rows[i])]
                value -= rhs[i]
        _, gain = tab.run(obj, width)
        if value + gain != 0:
            return LPResult(INFEASIBLE)
        # drive remaining (zero-level) artificials out of the basis
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= art_start:
                col = next((j for j in range(art_start) if tab.rows[i][j] != 0), None)
                if col is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, col, [Fraction(0)] * width)
            i += 1

    cost = expand(c) + [Fraction(0)] * (n_slack + n_art)
    obj = list(cost)
    value = Fraction(0)
    for i, bv in enumerate(tab.basis):
        if cost[bv] != 0:
            f = cost[bv]
            obj = [x - f * y for x, y in zip(obj, tab.rows[i])]
            value += f * tab.rhs[i]
    status, gain = tab.run(obj, art_start)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    sol = [Fraction(0)] * width
    for i, bv in enumerate(tab.basis):
        sol[bv] = tab.rhs[i]
    x = sol[:n]
    for k, j in enumerate(free):
        x[j] -= sol[n + k]
    return LPResult(OPTIMAL, tuple(x), value + gain)
