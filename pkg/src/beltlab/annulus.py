"""Determinant model of the A_m x A^(1)_{2n-1} belt on an annulus.

Vectors ``v_1..v_n`` and ``w_1..w_n`` in Q^(m+1), plus a matrix ``A`` of
determinant 1, are extended to all integer indices by ``v_{i+n} = A v_i``
(same for ``w``). A variable ``X[i, j; a, b]`` with ``a + b = m + 1`` is the
determinant of the columns ``v_i, ..., v_{i+a-1}, w_j, w_{j-1}, ..., w_{j-b+1}``.

The initial seed uses the diagonals ``v_i w_{i-1}`` (black) and ``v_i w_i``
(white), each carrying one variable per ``a = 1..m``. Mutable vertex
``(d, a)`` has index ``d * m + a - 1`` where diagonal ``d = 2(i-1)`` is
``v_i w_{i-1}`` and ``d = 2(i-1) + 1`` is ``v_i w_i``. Frozen vertices follow:
``X[i; m+1, 0]`` for ``i = 1..n``, then ``X[j; 0, m+1]`` for ``j = 1..n``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from beltlab.belt import BeltState, evolve, step
from beltlab.dynkin import BLACK, WHITE
from beltlab.errors import DegenerateDataError, GenericityFailure, InsufficientDataError
from beltlab.linalg import bareiss_det, identity, inverse, matmul, matvec
from beltlab.quiver import Quiver, Seed, mutate_quiver
from beltlab.recurrence import RationalSequence, minimal_order

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class VariableIndex:
    i: int
    j: int
    alpha: int
    beta: int

    def shifted(self, k: int) -> "VariableIndex":
        """Index after ``k`` belt steps: (i, j) -> (i - k, j + k)."""
        return VariableIndex(self.i - k, self.j + k, self.alpha, self.beta)

    def __str__(self):
        return f"X[{self.i},{self.j};{self.alpha},{self.beta}]"


@dataclass(frozen=True)
class AnnulusData:
    m: int
    n: int
    v: tuple[Vector, ...]
    w: tuple[Vector, ...]
    A: tuple[Vector, ...]
    _powers: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        size = self.m + 1
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be >= 1")
        if len(self.v) != self.n or len(self.w) != self.n:
            raise ValueError("need n vectors of each kind")
        if any(len(x) != size for x in self.v + self.w) or len(self.A) != size:
            raise ValueError(f"vectors and A must have dimension {size}")
        if bareiss_det(self.A) != 1:
            raise ValueError("A must have determinant 1")

    def power(self, k: int) -> list[list[Fraction]]:
        if k not in self._powers:
            if k == 0:
                self._powers[0] = identity(self.m + 1)
            elif k > 0:
                self._powers[k] = matmul(self.A, self.power(k - 1))
            else:
                if -1 not in self._powers:
                    self._powers[-1] = inverse(self.A)
                self._powers[k] = matmul(self._powers[-1], self.power(k + 1))
        return self._powers[k]


def extended_vector(d: AnnulusData, kind: str, i: int) -> Vector:
    base = {"v": d.v, "w": d.w}[kind]
    r = (i - 1) % d.n
    k = (i - 1 - r) // d.n
    vec = base[r]
    return vec if k == 0 else tuple(matvec(d.power(k), vec))


def columns(d: AnnulusData, idx: VariableIndex) -> list[Vector]:
    if idx.alpha + idx.beta != d.m + 1 or idx.alpha < 0 or idx.beta < 0:
        raise ValueError(f"bad index {idx}")
    return [extended_vector(d, "v", idx.i + t) for t in range(idx.alpha)] + [
        extended_vector(d, "w", idx.j - t) for t in range(idx.beta)
    ]


def plucker_variable(d: AnnulusData, idx: VariableIndex) -> Fraction:
    # det of the column matrix equals det of its transpose
    return bareiss_det(columns(d, idx))


def frozen_v(d: AnnulusData, i: int) -> VariableIndex:
    return VariableIndex(i, i, d.m + 1, 0)


def frozen_w(d: AnnulusData, j: int) -> VariableIndex:
    return VariableIndex(j, j, 0, d.m + 1)


def exchange_sides(d: AnnulusData, i: int, j: int, alpha: int, beta: int):
    """Both sides of X[i+1,j] X[i,j+1] = X[i,j;a+1,b-1] X[i+1,j+1;a-1,b+1] + X[i,j] X[i+1,j+1]."""
    X = lambda a, b, al, be: plucker_variable(d, VariableIndex(a, b, al, be))  # noqa: E731
    lhs = X(i + 1, j, alpha, beta) * X(i, j + 1, alpha, beta)
    rhs = (
        X(i, j, alpha + 1, beta - 1) * X(i + 1, j + 1, alpha - 1, beta + 1)
        + X(i, j, alpha, beta) * X(i + 1, j + 1, alpha, beta)
    )
    return lhs, rhs


def check_exchange(d: AnnulusData, i: int, j: int, alpha: int, beta: int) -> bool:
    if not 1 <= alpha <= d.m or alpha + beta != d.m + 1:
        raise ValueError("need 1 <= alpha <= m and alpha + beta = m + 1")
    lhs, rhs = exchange_sides(d, i, j, alpha, beta)
    return lhs == rhs


# ------------------------------------------------------------ initial seed


@dataclass(frozen=True)
class AnnulusSeed:
    seed: Seed
    coloring: tuple[str | None, ...]
    index: tuple[VariableIndex, ...]  # variable held by each vertex at time 0

    def state(self) -> BeltState:
        return BeltState(self.seed, self.coloring, 0)


def _diagonal(d: int) -> tuple[int, int]:
    i = d // 2 + 1
    return (i, i - 1) if d % 2 == 0 else (i, i)


def _layout(m: int, n: int):
    """Vertex numbering helpers for the initial seed."""
    cyc = 2 * n

    def mut(d: int, alpha: int) -> int:
        return (d % cyc) * m + alpha - 1

    def fv(i: int) -> int:
        return cyc * m + (i - 1) % n

    def fw(j: int) -> int:
        return cyc * m + n + (j - 1) % n

    return mut, fv, fw


def initial_quiver(m: int, n: int) -> tuple[Quiver, tuple[str | None, ...]]:
    """Quiver of the initial seed, arrows read off the Plucker exchange relations.

    Black vertices mutate first, so their exchange relations fix every
    mutable arrow and their own frozen arrows. The white-frozen arrows are
    fixed by the white exchange relations one half-step later: they are set
    on the mutated quiver and transported back through mu_plus.
    """
    mut, fv, fw = _layout(m, n)
    cyc = 2 * n
    total = cyc * m + 2 * n
    arrows = []
    for d in range(0, cyc, 2):
        i, _ = _diagonal(d)
        for a in range(1, m + 1):
            b = mut(d, a)
            # cycle side: same alpha on both neighbouring diagonals, incoming
            arrows += [(mut(d - 1, a), b), (mut(d + 1, a), b)]
            # A_m side, outgoing; alpha = m+1 and alpha = 0 are frozen
            arrows.append((b, mut(d - 1, a + 1) if a < m else fv(i - 1)))
            arrows.append((b, mut(d + 1, a - 1) if a > 1 else fw(i)))
    frozen = range(cyc * m, total)
    labels = [""] * total
    coloring: list[str | None] = [None] * total
    for d in range(cyc):
        i, j = _diagonal(d)
        for a in range(1, m + 1):
            labels[mut(d, a)] = str(VariableIndex(i, j, a, m + 1 - a))
            coloring[mut(d, a)] = BLACK if d % 2 == 0 else WHITE
    for i in range(1, n + 1):
        labels[fv(i)] = f"X[{i};{m + 1},0]"
        labels[fw(i)] = f"X[{i};0,{m + 1}]"
    q = Quiver.from_arrows(total, arrows, frozen=frozen, labels=labels)

    blacks = [z for z in range(total) if coloring[z] == BLACK]
    q1 = q
    for z in blacks:
        q1 = mutate_quiver(q1, z)
    B1 = [list(row) for row in q1.B]
    for d in range(1, cyc, 2):
        i, _ = _diagonal(d)
        for a in range(1, m + 1):
            w = mut(d, a)
            cycle_sign = B1[w][mut(d - 1, a)]
            for f in frozen:
                B1[w][f] = B1[f][w] = 0
            targets = ([fv(i - 1)] if a == m else []) + ([fw(i + 1)] if a == 1 else [])
            for f in targets:
                # A_m side points opposite to the cycle side
                B1[w][f] -= 1 if cycle_sign > 0 else -1
                B1[f][w] = -B1[w][f]
    q1 = Quiver(tuple(map(tuple, B1)), q.frozen, q.labels)
    q0 = q1
    for z in blacks:
        q0 = mutate_quiver(q0, z)
    return q0, tuple(coloring)


def initial_index(m: int, n: int) -> tuple[VariableIndex, ...]:
    mut, fv, fw = _layout(m, n)
    out: list[VariableIndex | None] = [None] * (2 * n * m + 2 * n)
    for d in range(2 * n):
        i, j = _diagonal(d)
        for a in range(1, m + 1):
            out[mut(d, a)] = VariableIndex(i, j, a, m + 1 - a)
    for i in range(1, n + 1):
        out[fv(i)] = VariableIndex(i, i, m + 1, 0)
        out[fw(i)] = VariableIndex(i, i, 0, m + 1)
    return tuple(out)


def box_relabelling(m: int, n: int) -> dict[int, int]:
    """Mutable vertex -> index in box_product(A_m, A^(1)_{2n-1})."""
    mut, _, _ = _layout(m, n)
    cyc = 2 * n
    return {
        mut(d, a): (a - 1) + m * ((d + a + 1) % cyc)
        for d in range(cyc)
        for a in range(1, m + 1)
    }


def build_initial_seed(d: AnnulusData) -> AnnulusSeed:
    q, coloring = initial_quiver(d.m, d.n)
    index = initial_index(d.m, d.n)
    values = tuple(plucker_variable(d, idx) for idx in index)
    zeros = [str(idx) for idx, val in zip(index, values) if val == 0]
    if zeros:
        raise DegenerateDataError(f"planted variables vanish: {', '.join(zeros)}")
    return AnnulusSeed(Seed(q, values), coloring, index)


# ------------------------------------------------------------ verification


def verify_belt(d: AnnulusData, k_max: int) -> dict:
    """Compare belt values after k steps with the determinants X[i-k, j+k]."""
    start = time.perf_counter()
    seed = build_initial_seed(d)
    state = seed.state()
    checks = []
    first_mismatch = None
    for k in range(k_max + 1):
        if k:
            state = step(state)
        mismatches = []
        for z, idx in enumerate(seed.index):
            if z in state.quiver.frozen:
                expected = seed.seed.values[z]
            else:
                expected = plucker_variable(d, idx.shifted(k))
            if state.values[z] != expected:
                mismatches.append(z)
        ok = not mismatches
        checks.append({"check": "belt", "k": k, "passed": ok, "mismatches": mismatches})
        if not ok and first_mismatch is None:
            first_mismatch = {"k": k, "vertex": mismatches[0], "index": str(seed.index[mismatches[0]])}
        if k == d.n:
            twist_ok = all(
                state.values[z] == plucker_variable(d, VariableIndex(idx.i, idx.j + 2 * d.n, idx.alpha, idx.beta))
                for z, idx in enumerate(seed.index)
                if z not in state.quiver.frozen
            )
            checks.append({"check": "dehn_twist", "k": k, "passed": twist_ok, "mismatches": []})
    return {
        "m": d.m,
        "n": d.n,
        "k_max": k_max,
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
        "first_mismatch": first_mismatch,
        "seconds": round(time.perf_counter() - start, 4),
    }


def order_bound(m: int, n: int, alpha: int) -> int:
    return n * comb(m + 1, min(alpha, m + 1 - alpha))


def order_bound_report(d: AnnulusData, k_max: int) -> dict:
    """Detected minimal recurrence order at every mutable vertex versus n * C(m+1, j)."""
    need = max(order_bound(d.m, d.n, a) for a in range(1, d.m + 1))
    if k_max < need:
        raise InsufficientDataError(f"k_max={k_max} is below the largest bound {need}")
    seed = build_initial_seed(d)
    steps = 2 * k_max + 3
    trace = evolve(seed.state(), steps)
    rows = []
    for z in sorted(trace.series):
        idx = seed.index[z]
        report = minimal_order(RationalSequence(trace.series[z]), k_max)
        bound = order_bound(d.m, d.n, idx.alpha)
        rows.append(
            {
                "vertex": z,
                "index": str(idx),
                "j": min(idx.alpha, idx.beta),
                "detected": report.order,
                "status": report.status.value,
                "bound": bound,
                "within_bound": report.found and report.order <= bound,
                "equal": report.found and report.order == bound,
            }
        )
    return {
        "m": d.m,
        "n": d.n,
        "k_max": k_max,
        "steps": steps,
        "vertices": rows,
        "all_within_bound": all(r["within_bound"] for r in rows),
        "all_equal": all(r["equal"] for r in rows),
    }


# ------------------------------------------------------------ random data


def _random_rational(rng: random.Random) -> Fraction:
    q = rng.randint(1, 3)
    return Fraction(rng.randint(q, 20 * q), q)


def _random_sl(size: int, rng: random.Random) -> list[list[Fraction]]:
    a = identity(size)
    for _ in range(2 * size):
        r, c = rng.sample(range(size), 2)
        shear = identity(size)
        shear[r][c] = Fraction(rng.choice((-2, -1, 1, 2)), rng.randint(1, 2))
        a = matmul(shear, a)
    return a


def _nonvanishing(data: AnnulusData, horizon: int) -> bool:
    """All belt variables X[i-k, j+k] for 0 <= k <= horizon are nonzero."""
    index = [idx for idx in initial_index(data.m, data.n) if 1 <= idx.alpha <= data.m]
    return all(
        plucker_variable(data, idx.shifted(k)) != 0
        for k in range(horizon + 1)
        for idx in index
    )


def random_data(m: int, n: int, seed: int, retries: int = 100, horizon: int = 40) -> AnnulusData:
    """Random generic data; every belt variable up to ``horizon`` steps is nonzero."""
    rng = random.Random(seed)
    size = m + 1
    for _ in range(retries):
        data = AnnulusData(
            m,
            n,
            tuple(tuple(_random_rational(rng) for _ in range(size)) for _ in range(n)),
            tuple(tuple(_random_rational(rng) for _ in range(size)) for _ in range(n)),
            tuple(tuple(row) for row in _random_sl(size, rng)),
        )
        try:
            build_initial_seed(data)
        except DegenerateDataError:
            continue
        if _nonvanishing(data, horizon):
            return data
    raise GenericityFailure(f"no generic data after {retries} attempts")
