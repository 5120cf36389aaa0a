"""Exact linear-recurrence detection and characteristic-polynomial algebra."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from beltlab.errors import DegenerateInputError, IndexOutOfWindowError
from beltlab.linalg import bareiss_det, solve_exact


@dataclass(frozen=True)
class RationalSequence:
    values: tuple[Fraction, ...]
    offset: int = 0

    def __post_init__(self):
        if not self.values:
            raise ValueError("sequence must be non-empty")

    @classmethod
    def of(cls, values: Iterable, offset: int = 0) -> "RationalSequence":
        return cls(tuple(Fraction(v) for v in values), offset)

    def __len__(self):
        return len(self.values)

    @property
    def last(self) -> int:
        return self.offset + len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        if not self.offset <= n <= self.last:
            raise IndexOutOfWindowError(f"index {n} outside [{self.offset}, {self.last}]")
        return self.values[n - self.offset]

    def scaled(self, c) -> "RationalSequence":
        c = Fraction(c)
        return RationalSequence(tuple(c * v for v in self.values), self.offset)


class Status(enum.Enum):
    FOUND = "Found"
    NONE_UP_TO = "NoneUpTo"
    INSUFFICIENT_DATA = "InsufficientData"


@dataclass(frozen=True)
class RecurrenceReport:
    status: Status
    order: int | None = None
    coefficients: tuple[Fraction, ...] = ()
    verified_window: tuple[int, int] | None = None
    k_max: int | None = None

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND

    def char_poly(self) -> "CharPoly":
        if not self.found:
            raise ValueError("no recurrence to convert")
        return CharPoly.from_recurrence(self.coefficients)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "order": self.order,
            "coefficients": [str(c) for c in self.coefficients],
            "verified_window": list(self.verified_window) if self.verified_window else None,
            "k_max": self.k_max,
        }


def toeplitz_det(seq: RationalSequence, ell: int, K: int) -> Fraction:
    """det of the K x K matrix with entries a[ell + i - j], 1 <= i, j <= K."""
    if K < 1:
        raise ValueError("K must be >= 1")
    lo, hi = ell - (K - 1), ell + (K - 1)
    if lo < seq.offset or hi > seq.last:
        raise IndexOutOfWindowError(
            f"M[{ell},{K}] needs indices {lo}..{hi}, window is {seq.offset}..{seq.last}"
        )
    return bareiss_det([[seq[ell + i - j] for j in range(1, K + 1)] for i in range(1, K + 1)])


def _equations(seq: RationalSequence, k: int, first: int, last: int):
    rows = [[seq[n - i] for i in range(1, k + 1)] for n in range(first, last + 1)]
    rhs = [seq[n] for n in range(first, last + 1)]
    return rows, rhs


def satisfies(seq: RationalSequence, coefficients: Sequence[Fraction]) -> bool:
    k = len(coefficients)
    return all(
        seq[n] == sum((c * seq[n - i] for i, c in enumerate(coefficients, 1)), Fraction(0))
        for n in range(seq.offset + k, seq.last + 1)
    )


def minimal_order(seq: RationalSequence, k_max: int) -> RecurrenceReport:
    """Smallest k <= k_max with a_n = c_1 a_{n-1} + ... + c_k a_{n-k} on the whole window.

    The verdict is evidence from a finite window, not a proof.
    """
    if len(seq) < 2 * k_max + 4:
        return RecurrenceReport(Status.INSUFFICIENT_DATA, k_max=k_max)
    if all(v == 0 for v in seq.values):
        return RecurrenceReport(Status.FOUND, 0, (), (seq.offset, seq.last), k_max)
    for k in range(1, k_max + 1):
        first = seq.offset + k
        rows, rhs = _equations(seq, k, first, first + k - 1)
        if bareiss_det(rows) != 0:
            coeffs = solve_exact(rows, rhs)
            if not satisfies(seq, coeffs):
                continue
        else:
            rows, rhs = _equations(seq, k, first, seq.last)
            coeffs = solve_exact(rows, rhs)
            if coeffs is None:
                continue
        return RecurrenceReport(Status.FOUND, k, tuple(coeffs), (first, seq.last), k_max)
    return RecurrenceReport(Status.NONE_UP_TO, k_max=k_max)


# ------------------------------------------------------------ polynomials


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_eval(a: Sequence[Fraction], t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class CharPoly:
    """Monic polynomial, coefficients in ascending degree order."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("characteristic polynomial must be monic")

    @classmethod
    def of(cls, coeffs: Iterable) -> "CharPoly":
        return cls(tuple(Fraction(c) for c in coeffs))

    @classmethod
    def from_recurrence(cls, c: Sequence[Fraction]) -> "CharPoly":
        """t^k - c_1 t^(k-1) - ... - c_k."""
        return cls(tuple(-Fraction(x) for x in reversed(c)) + (Fraction(1),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def recurrence(self) -> tuple[Fraction, ...]:
        return tuple(-x for x in reversed(self.coeffs[:-1]))

    def __call__(self, t) -> Fraction:
        return poly_eval(self.coeffs, t)

    def annihilates(self, seq: RationalSequence) -> bool:
        return satisfies(seq, self.recurrence())


def _resultant(p: Sequence[Fraction], g: Sequence[Fraction]) -> Fraction:
    """Sylvester resultant with formal degrees len(p)-1 and len(g)-1."""
    dp, dg = len(p) - 1, len(g) - 1
    size = dp + dg
    if size == 0:
        return Fraction(1)
    pd = list(reversed(p))
    gd = list(reversed(g))
    rows = []
    for i in range(dg):
        rows.append([Fraction(0)] * i + pd + [Fraction(0)] * (size - i - dp - 1))
    for i in range(dp):
        rows.append([Fraction(0)] * i + gd + [Fraction(0)] * (size - i - dg - 1))
    return bareiss_det(rows)


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (ascending) of the polynomial through the given points."""
    n = len(xs)
    rows = [[Fraction(x) ** k for k in range(n)] for x in xs]
    return solve_exact(rows, list(ys))


def poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a != [0]:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        quot[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a.pop()
        a = _trim(a) if a else [Fraction(0)]
    return _trim(quot), a


def _monic(a: list[Fraction]) -> list[Fraction]:
    return [c / a[-1] for c in a]


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _trim(list(a)), _trim(list(b))
    while b != [0]:
        a, b = b, poly_divmod(a, b)[1]
    return _monic(a)


def poly_lcm(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    return _monic(poly_divmod(poly_mul(a, b), poly_gcd(a, b))[0])


def poly_pow(a: Sequence[Fraction], e: int) -> list[Fraction]:
    out = [Fraction(1)]
    for _ in range(e):
        out = poly_mul(out, a)
    return out


def _derivative(a: Sequence[Fraction]) -> list[Fraction]:
    return _trim([i * c for i, c in enumerate(a)][1:] or [Fraction(0)])


def squarefree_decomposition(a: Sequence[Fraction]) -> dict[int, list[Fraction]]:
    """Yun's algorithm: monic ``a`` = prod_k f_k^k with f_k squarefree and coprime."""
    a = _monic(_trim(list(a)))
    out: dict[int, list[Fraction]] = {}
    if len(a) == 1:
        return out
    b = poly_gcd(a, _derivative(a))
    c = poly_divmod(a, b)[0]
    d = _trim([x - y for x, y in _zip_pad(poly_divmod(_derivative(a), b)[0], _derivative(c))])
    k = 1
    while len(c) > 1:
        f = poly_gcd(c, d)
        if len(f) > 1:
            out[k] = f
        c = poly_divmod(c, f)[0]
        d = _trim([x - y for x, y in _zip_pad(poly_divmod(d, f)[0], _derivative(c))])
        k += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [Fraction(0)] * (n - len(a)), list(b) + [Fraction(0)] * (n - len(b)))


def root_product_resultant(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    """Monic polynomial with roots x_i y_j over all root pairs, with multiplicity.

    Res_x(P(x), x^deg(Q) Q(t/x)) is sampled at deg(P)deg(Q)+1 points and
    interpolated.
    """
    p = _monic(_trim([Fraction(c) for c in p]))
    q = _monic(_trim([Fraction(c) for c in q]))
    dp, dq = len(p) - 1, len(q) - 1
    xs = list(range(dp * dq + 1))
    ys = []
    for t in xs:
        # x^dq Q(t/x) = sum_k q_k t^k x^(dq-k)
        g = [Fraction(0)] * (dq + 1)
        for k, qk in enumerate(q):
            g[dq - k] = qk * Fraction(t) ** k
        ys.append(_resultant(p, g))
    return _monic(_trim(_interpolate(xs, ys)))


def combine(p: CharPoly, q: CharPoly, mode: str) -> CharPoly:
    """Polynomial for the term-wise sum (``"sum"``) or product (``"product"``) of sequences.

    ``sum`` returns P*Q. ``product`` returns a polynomial whose roots are the
    pairwise root products; a product root built from roots of multiplicity
    k and l gets multiplicity k + l - 1, the least that annihilates every
    product sequence.
    """
    if p.degree < 1 or q.degree < 1:
        raise DegenerateInputError("both polynomials need degree >= 1")
    if mode == "sum":
        return CharPoly(tuple(poly_mul(p.coeffs, q.coeffs)))
    if mode != "product":
        raise ValueError(f"unknown mode {mode!r}")
    out = [Fraction(1)]
    for k, pk in squarefree_decomposition(p.coeffs).items():
        for l, ql in squarefree_decomposition(q.coeffs).items():
            r = root_product_resultant(pk, ql)
            r = poly_divmod(r, poly_gcd(r, _derivative(r)))[0]
            out = poly_lcm(out, poly_pow(r, k + l - 1))
    return CharPoly(tuple(_monic(out)))
