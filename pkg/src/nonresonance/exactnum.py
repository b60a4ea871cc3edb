"""Exact arithmetic: rationals, rational and cyclotomic matrices, polynomials.

Nothing in this module touches floating point.  Rationals are
:class:`fractions.Fraction`; matrices are small dense immutable containers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

from .errors import FieldMismatchError, ShapeError, UndefinedRootSetError

Rational = Fraction

ANY_INTEGER = "any_integer"
NONNEG_INTEGER = "nonneg_integer"


def parse_rational(token: str) -> Fraction:
    """Parse ``p/q`` or ``p`` (optional leading minus, no inner whitespace)."""
    if not isinstance(token, str):
        raise ValueError(f"malformed rational {token!r}")
    text = token.strip()
    num, sep, den = text.partition("/")
    if not _is_int_literal(num) or (sep and not _is_int_literal(den, signed=False)):
        raise ValueError(f"malformed rational {token!r}")
    if sep and int(den) == 0:
        raise ValueError(f"zero denominator in {token!r}")
    return Fraction(int(num), int(den) if sep else 1)


def _is_int_literal(text: str, signed: bool = True) -> bool:
    if signed and text.startswith("-"):
        text = text[1:]
    return text.isdigit() and text.isascii()


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


# --------------------------------------------------------------------------
# matrices over Q


class QMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(as_rational(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise ShapeError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def zeros(cls, rows: int, cols: int) -> QMatrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, value) -> QMatrix:
        return cls([[value if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self._data for x in row)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i]

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self._data == other._data and self.cols == other.cols

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self._data)
        return f"QMatrix([{body}])"

    def _check_same_shape(self, other: QMatrix):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: QMatrix) -> QMatrix:
        self._check_same_shape(other)
        return QMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def __sub__(self, other: QMatrix) -> QMatrix:
        self._check_same_shape(other)
        return QMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols
        )

    def __neg__(self) -> QMatrix:
        return QMatrix([[-a for a in r] for r in self._data], cols=self.cols)

    def scale(self, c) -> QMatrix:
        c = as_rational(c)
        return QMatrix([[c * a for a in r] for r in self._data], cols=self.cols)

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        tcols = list(zip(*other._data)) if other.rows else [()] * other.cols
        return QMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in tcols] for r in self._data],
            cols=other.cols,
        )

    def transpose(self) -> QMatrix:
        return QMatrix(list(zip(*self._data)) if self.rows else [], cols=self.rows)

    def trace(self) -> Fraction:
        self._require_square()
        return sum((self._data[i][i] for i in range(self.rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _require_square(self):
        if not self.is_square():
            raise ShapeError(f"matrix of shape {self.shape} is not square")

    def is_triangular(self) -> bool:
        if not self.is_square():
            return False
        n = self.rows
        upper = all(self._data[i][j] == 0 for i in range(n) for j in range(i))
        lower = all(self._data[i][j] == 0 for i in range(n) for j in range(i + 1, n))
        return upper or lower

    def diagonal(self) -> tuple[Fraction, ...]:
        return tuple(self._data[i][i] for i in range(min(self.rows, self.cols)))

    def commutes_with(self, other: QMatrix) -> bool:
        return self @ other == other @ self


def block_matrix(blocks: Sequence[Sequence[QMatrix]]) -> QMatrix:
    rows = []
    for block_row in blocks:
        height = block_row[0].rows
        for i in range(height):
            rows.append([x for b in block_row for x in b.row(i)])
    return QMatrix(rows)


# --------------------------------------------------------------------------
# polynomials over Q


class QPolynomial:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> QPolynomial:
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = format_rational(abs(c)) + ("*" + mono if mono else "")
            terms.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __add__(self, other: QPolynomial) -> QPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> QPolynomial:
        return QPolynomial(-x for x in self.coeffs)

    def __sub__(self, other: QPolynomial) -> QPolynomial:
        return self + (-other)

    def __mul__(self, other) -> QPolynomial:
        if not isinstance(other, QPolynomial):
            c = as_rational(other)
            return QPolynomial(c * x for x in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __divmod__(self, other: QPolynomial) -> tuple[QPolynomial, QPolynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlen = len(other.coeffs)
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dlen + 1, 0)
        for shift in range(len(rem) - dlen, -1, -1):
            c = rem[shift + dlen - 1] / lead
            quot[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] -= c * b
        return QPolynomial(quot), QPolynomial(rem[: dlen - 1])

    def __mod__(self, other: QPolynomial) -> QPolynomial:
        return divmod(self, other)[1]

    def __floordiv__(self, other: QPolynomial) -> QPolynomial:
        return divmod(self, other)[0]

    def __call__(self, x):
        """Horner evaluation; works for Fractions and square QMatrix arguments."""
        if isinstance(x, QMatrix):
            n = x.rows
            acc = QMatrix.zeros(n, n)
            for c in reversed(self.coeffs):
                acc = acc @ x + QMatrix.scalar(n, c)
            return acc
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> QPolynomial:
        return self * (1 / self.leading())


def charpoly(M: QMatrix) -> QPolynomial:
    """det(tI - M) by the Faddeev-LeVerrier recurrence."""
    if not M.is_square():
        raise ShapeError(f"charpoly needs a square matrix, got {M.shape}")
    n = M.rows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = QMatrix.zeros(n, n)
    for k in range(1, n + 1):
        aux = M @ aux + QMatrix.scalar(n, coeffs[n - k + 1])
        coeffs[n - k] = -(M @ aux).trace() / k
    return QPolynomial(coeffs)


def cauchy_root_bound(p: QPolynomial) -> Fraction:
    """1 + max |a_i / a_n|, an upper bound on the modulus of every root."""
    if p.degree < 1:
        return Fraction(0)
    lead = abs(p.leading())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def integer_roots(p: QPolynomial, mode: str = ANY_INTEGER) -> list[int]:
    """Sorted distinct integer (or nonnegative integer) roots of ``p``."""
    if mode not in (ANY_INTEGER, NONNEG_INTEGER):
        raise ValueError(f"unknown root mode {mode!r}")
    if p.is_zero():
        raise UndefinedRootSetError("the zero polynomial has no well-defined root set")
    scale = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in p.coeffs), 1)
    ints = [int(c * scale) for c in p.coeffs]
    valuation = next(i for i, c in enumerate(ints) if c)
    ints = ints[valuation:]
    roots = {0} if valuation else set()
    if len(ints) > 1:
        lead = abs(ints[-1])
        bound = 1 + max(abs(c) for c in ints[:-1]) // lead
        trailing = abs(ints[0])
        for d in range(1, min(bound, math.isqrt(trailing)) + 1):
            if trailing % d:
                continue
            for cand in {d, trailing // d}:
                if cand > bound:
                    continue
                for r in (cand, -cand):
                    if _int_poly_eval(ints, r) == 0:
                        roots.add(r)
    if mode == NONNEG_INTEGER:
        roots = {r for r in roots if r >= 0}
    return sorted(roots)


def _int_poly_eval(ints: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(ints):
        acc = acc * x + c
    return acc


# --------------------------------------------------------------------------
# cyclotomic fields


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> QPolynomial:
    if d < 1:
        raise ValueError(f"cyclotomic conductor must be >= 1, got {d}")
    num = QPolynomial.monomial(d) - QPolynomial([1])
    for e in range(1, d):
        if d % e == 0:
            num, rem = divmod(num, cyclotomic_polynomial(e))
            assert rem.is_zero()
    return num


class CycloField:
    """Q[t] / Phi_d(t), the field generated by a primitive d-th root of unity."""

    __slots__ = ("d", "modulus")

    def __init__(self, d: int):
        self.d = d
        self.modulus = cyclotomic_polynomial(d)

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.d == self.d

    def __hash__(self):
        return hash(("CycloField", self.d))

    def __repr__(self):
        return f"CycloField({self.d})"

    def element(self, poly) -> CycloElem:
        if not isinstance(poly, QPolynomial):
            poly = QPolynomial(poly)
        rem = poly % self.modulus
        coeffs = rem.coeffs + (Fraction(0),) * (self.degree - len(rem.coeffs))
        return CycloElem(self, coeffs)

    def zero(self) -> CycloElem:
        return CycloElem(self, (Fraction(0),) * self.degree)

    def one(self) -> CycloElem:
        return self.element([1])

    def gen(self) -> CycloElem:
        return self.element([0, 1])

    def power_of_gen(self, e: int) -> CycloElem:
        return self.element(QPolynomial.monomial(e % self.d))

    def from_laurent(self, terms: dict[int, int]) -> CycloElem:
        """Evaluate sum c_e * zeta^e, exponents taken mod d."""
        reduced = [Fraction(0)] * self.d
        for e, c in terms.items():
            reduced[e % self.d] += c
        return self.element(reduced)


@lru_cache(maxsize=None)
def cyclotomic_field(d: int) -> CycloField:
    if d < 1:
        raise ValueError(f"cyclotomic conductor must be >= 1, got {d}")
    return CycloField(d)


class CycloElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: Sequence[Fraction]):
        if len(coeffs) != field.degree:
            raise ValueError("coefficient vector length must equal the field degree")
        self.field = field
        self.coeffs = tuple(coeffs)

    def _same(self, other: CycloElem):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def poly(self) -> QPolynomial:
        return QPolynomial(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return isinstance(other, CycloElem) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.d, self.coeffs))

    def __repr__(self):
        return f"CycloElem(d={self.field.d}, {self.poly()!r})"

    def __add__(self, other: CycloElem) -> CycloElem:
        self._same(other)
        return CycloElem(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CycloElem) -> CycloElem:
        self._same(other)
        return CycloElem(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CycloElem:
        return CycloElem(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other: CycloElem) -> CycloElem:
        self._same(other)
        return self.field.element(self.poly() * other.poly())

    def inverse(self) -> CycloElem:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # extended Euclid: s*a + u*Phi = g, with g a nonzero constant since Phi is irreducible
        r0, r1 = self.field.modulus, self.poly()
        s0, s1 = QPolynomial(), QPolynomial([1])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        assert r0.degree == 0
        return self.field.element(s0 * (1 / r0.coeffs[0]))

    def __truediv__(self, other: CycloElem) -> CycloElem:
        return self * other.inverse()


class CycloMatrix:
    """Dense matrix over a single cyclotomic field."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, data: Iterable[Iterable[CycloElem]], field: CycloField | None = None, cols=None):
        rows = tuple(tuple(row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise ShapeError("ragged matrix rows")
        fields = {x.field for row in rows for x in row}
        if field is not None:
            fields.add(field)
        if len(fields) > 1:
            raise FieldMismatchError(f"entries from several fields: {sorted(f.d for f in fields)}")
        if not fields:
            raise ValueError("an empty cyclotomic matrix needs an explicit field")
        self.field = fields.pop()
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    def __getitem__(self, index):
        i, j = index
        return self._data[i][j]

    def tolist(self):
        return [list(r) for r in self._data]

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._data for x in r)


# --------------------------------------------------------------------------
# rank and kernel


def rank_and_kernel(M) -> tuple[int, list[tuple]]:
    """Exact rank and a kernel basis (vectors v with M v = 0)."""
    if isinstance(M, QMatrix):
        return _rank_kernel_rational(M)
    if isinstance(M, CycloMatrix):
        return _rank_kernel_cyclo(M)
    raise TypeError(f"unsupported matrix type {type(M).__name__}")


def rank(M) -> int:
    if isinstance(M, QMatrix):
        return len(_bareiss_echelon(M)[1])
    return rank_and_kernel(M)[0]


def _integer_rows(M: QMatrix) -> list[list[int]]:
    out = []
    for row in M.tolist():
        scale = reduce(lambda a, b: a * b // math.gcd(a, b), (x.denominator for x in row), 1)
        out.append([int(x * scale) for x in row])
    return out


def _bareiss_echelon(M: QMatrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    A = _integer_rows(M)
    nrows, ncols = M.rows, M.cols
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            aic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _rank_kernel_rational(M: QMatrix):
    echelon, pivots = _bareiss_echelon(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    kernel = []
    for f in free:
        x = [Fraction(0)] * M.cols
        x[f] = Fraction(1)
        for row, pc in zip(reversed(echelon), reversed(pivots)):
            s = sum((row[j] * x[j] for j in range(pc + 1, M.cols)), Fraction(0))
            x[pc] = -s / row[pc]
        kernel.append(tuple(x))
    return len(pivots), kernel


def _rank_kernel_cyclo(M: CycloMatrix):
    F = M.field
    A = M.tolist()
    nrows, ncols = M.rows, M.cols
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if not A[i][c].is_zero()), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    kernel = []
    for fcol in free:
        x = [F.zero() for _ in range(ncols)]
        x[fcol] = F.one()
        for i, pc in enumerate(pivots):
            x[pc] = -A[i][fcol]
        kernel.append(tuple(x))
    return len(pivots), kernel
