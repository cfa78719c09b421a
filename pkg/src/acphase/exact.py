"""Exact dense linear algebra over Gaussian rationals.

Every matrix identity in this package is proved, not approximated: entries
are complex numbers with exact rational real and imaginary parts, so a zero
commutator is literally zero.  Matrices are small (at most 16x16), dense,
row-major and immutable.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            if value.real != int(value.real) or value.imag != int(value.imag):
                raise TypeError("only integer-valued complex literals are exact")
            return GaussianRational(int(value.real), int(value.imag))
        return GaussianRational(value)

    # fields promised by the data contract
    @property
    def re_num(self) -> int:
        return self.re.numerator

    @property
    def re_den(self) -> int:
        return self.re.denominator

    @property
    def im_num(self) -> int:
        return self.im.numerator

    @property
    def im_den(self) -> int:
        return self.im.denominator

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.of(other))

    def __rsub__(self, other):
        return GaussianRational.of(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        d = other.re * other.re + other.im * other.im
        if not d:
            raise ZeroDivisionError("division by exact zero")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __eq__(self, other):
        try:
            other = GaussianRational.of(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"{self.re}"
        if not self.re:
            return f"{self.im}j"
        return f"({self.re}{'+' if self.im > 0 else ''}{self.im}j)"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
IUNIT = GaussianRational(0, 1)


class ExactMatrix:
    """Immutable dense matrix of GaussianRational entries, row-major."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(GaussianRational.of(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_e", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @staticmethod
    def from_rows(rows) -> "ExactMatrix":
        nr = len(rows)
        nc = len(rows[0])
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        return ExactMatrix(nr, nc, [e for r in rows for e in r])

    @staticmethod
    def zeros(rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return ExactMatrix(rows, cols, [ZERO] * (rows * cols))

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        return ExactMatrix(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    def entry(self, i: int, j: int) -> GaussianRational:
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._e[i * self.cols : (i + 1) * self.cols]

    def entries(self) -> tuple:
        return self._e

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other):
        self._same_shape(other)
        return ExactMatrix(self.rows, self.cols, [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other):
        self._same_shape(other)
        return ExactMatrix(self.rows, self.cols, [a - b for a, b in zip(self._e, other._e)])

    def __neg__(self):
        return ExactMatrix(self.rows, self.cols, [-a for a in self._e])

    def scale(self, c) -> "ExactMatrix":
        c = GaussianRational.of(c)
        return ExactMatrix(self.rows, self.cols, [c * a for a in self._e])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        out = [ZERO] * (n * m)
        for i in range(n):
            arow = self._e[i * k : (i + 1) * k]
            orow = out[i * m : (i + 1) * m]
            for t, a in enumerate(arow):
                if a.is_zero():
                    continue
                brow = other._e[t * m : (t + 1) * m]
                orow = [acc if b.is_zero() else acc + a * b for acc, b in zip(orow, brow)]
            out[i * m : (i + 1) * m] = orow
        return ExactMatrix(n, m, out)

    def apply(self, vec) -> tuple:
        """Matrix times exact column vector, returned as a tuple."""
        vec = tuple(GaussianRational.of(v) for v in vec)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            acc = ZERO
            for a, v in zip(self.row(i), vec):
                if not a.is_zero() and not v.is_zero():
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)])

    def dagger(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [self.entry(i, j).conjugate() for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self.entry(i, i)
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self._e)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._e == other._e

    def __hash__(self):
        return hash((self.rows, self.cols, self._e))

    def __repr__(self):
        body = "; ".join(" ".join(repr(e) for e in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: {body})"


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Exact matrix product, no rounding."""
    return a @ b


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """ab - ba, exact.  Arguments must be square and of equal dimension."""
    _require_square_pair(a, b)
    return a @ b - b @ a


def anticommutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """ab + ba, exact."""
    _require_square_pair(a, b)
    return a @ b + b @ a


def _require_square_pair(a, b):
    if a.rows != a.cols or b.rows != b.cols or a.rows != b.rows:
        raise ValueError("commutator needs square matrices of equal dimension")


def bch_conjugate(x: ExactMatrix, g: ExactMatrix, order: int) -> ExactMatrix:
    """Truncated conjugation series e^{-ix} g e^{ix} up to nested-commutator order.

    Term n is (-i)^n / n! times the n-fold nested commutator [x,[x,...[x,g]]],
    with the expansion parameter set to 1.  Exact in GaussianRational arithmetic.
    """
    _require_square_pair(x, g)
    if order < 0:
        raise ValueError("order must be >= 0")
    total = g
    nested = g
    coeff = ONE
    for n in range(1, order + 1):
        nested = commutator(x, nested)
        coeff = coeff * GaussianRational(Fraction(0), Fraction(-1, n))  # times (-i)/n
        if nested.is_zero():
            break
        total = total + nested.scale(coeff)
    return total


def to_numeric(m: ExactMatrix) -> np.ndarray:
    """Entrywise conversion to a complex128 array; rejects non-finite results."""
    out = np.empty((m.rows, m.cols), dtype=np.complex128)
    for i in range(m.rows):
        for j in range(m.cols):
            out[i, j] = complex(m.entry(i, j))
    if not np.all(np.isfinite(out.view(np.float64))):
        raise ValueError("conversion produced non-finite entries")
    return out


def check_numeric(a: np.ndarray) -> np.ndarray:
    """Validate a complex array as a NumericMatrix: finite entries only."""
    a = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValueError("NumericMatrix entries must be finite")
    return a


def char_poly(m: ExactMatrix) -> list:
    """Exact characteristic polynomial coefficients by Faddeev-LeVerrier.

    Returns [1, c1, ..., cn] with det(lambda I - M) = sum c_k lambda^{n-k}.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs = [ONE]
    mk = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk
        ck = mk.trace() * GaussianRational(Fraction(-1, k))
        coeffs.append(ck)
        if k < n:
            mk = mk + ExactMatrix.identity(n).scale(ck)
    return coeffs


def eigencolumn_residual(m: ExactMatrix, vec, eigenvalue) -> tuple:
    """m @ vec - eigenvalue * vec as an exact tuple (all-zero iff eigenvector)."""
    lam = GaussianRational.of(eigenvalue)
    mv = m.apply(vec)
    return tuple(a - lam * GaussianRational.of(v) for a, v in zip(mv, vec))
