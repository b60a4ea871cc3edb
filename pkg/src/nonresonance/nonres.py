"""Residues at edges and the nonresonance conditions built on them.

Integrality of eigenvalues is always decided through integer roots of the
characteristic polynomial of the residue; eigenvalues are never extracted.

Conditions:

``kohno``  no integer eigenvalue of P_X for any edge X;
``ah``     no integer eigenvalue of P_X for dense X contained in a chosen H
           (H itself included);
``stv``    no eigenvalue of P_X in Z_{>=0} for any dense X;
``thm33``  as ``stv``, plus pairwise commutativity of all residues.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, ShapeError, ShiftInvariantError
from .exactnum import (
    ANY_INTEGER,
    NONNEG_INTEGER,
    QMatrix,
    QPolynomial,
    charpoly,
    format_rational,
    integer_roots,
)
from .lattice import Flat, IntersectionLattice
from .oscomplex import EndoSystem, LocalSystem, WeightSystem

KOHNO = "kohno"
STV = "stv"
AH = "ah"
THM33 = "thm33"
CONDITIONS = (KOHNO, STV, THM33, AH)


@dataclass(frozen=True)
class Residue:
    flat: Flat
    value: Fraction | QMatrix

    def matrix(self) -> QMatrix:
        return self.value if isinstance(self.value, QMatrix) else QMatrix([[self.value]])

    def charpoly(self) -> QPolynomial:
        if isinstance(self.value, QMatrix):
            return charpoly(self.value)
        return QPolynomial([-self.value, 1])


def residue(S: LocalSystem, X: Flat, lattice: IntersectionLattice | None = None) -> Residue:
    if lattice is not None and X not in lattice:
        raise ShapeError(f"{list(X.indices)} is not a flat of this arrangement")
    if any(j > len(S) for j in X.indices):
        raise ShapeError(f"flat {list(X.indices)} refers to hyperplanes beyond the {len(S)} residues")
    if isinstance(S, WeightSystem):
        return Residue(X, sum((S.weights[j - 1] for j in X.indices), Fraction(0)))
    acc = QMatrix.zeros(S.rank, S.rank)
    for j in X.indices:
        acc = acc + S.matrices[j - 1]
    return Residue(X, acc)


@dataclass(frozen=True)
class MonodromyClass:
    """Conjugacy class of exp(2 pi i P_X), recorded through the exponents of P_X.

    ``exponents`` (eigenvalues mod 1) is filled when the eigenvalues are known
    exactly (rank one, or triangular residues); otherwise only the
    characteristic polynomial is kept.
    """

    flat: Flat
    charpoly: QPolynomial
    exponents: tuple[Fraction, ...] | None

    @property
    def admits_one(self) -> bool:
        return bool(integer_roots(self.charpoly, ANY_INTEGER))


def monodromy_class(S: LocalSystem, X: Flat) -> MonodromyClass:
    res = residue(S, X)
    M = res.matrix()
    exps = tuple(sorted(x - (x.numerator // x.denominator) for x in M.diagonal())) if M.is_triangular() else None
    return MonodromyClass(X, res.charpoly(), exps)


@dataclass(frozen=True)
class NonresReport:
    condition: str
    holds: bool
    violations: tuple[tuple[tuple[int, ...], int], ...]
    hyperplane: int | None = None
    # thm33 only: pairs (i, j) with P_i P_j != P_j P_i
    noncommuting: tuple[tuple[int, int], ...] = field(default=())

    def to_json(self) -> dict:
        out = {
            "condition": self.condition,
            "holds": self.holds,
            "hyperplane": self.hyperplane,
            "violations": [{"flat": list(f), "integer_root": r} for f, r in self.violations],
        }
        if self.condition == THM33:
            out["noncommuting"] = [list(p) for p in self.noncommuting]
        return out


def _quantified(kind: str, L: IntersectionLattice, H: int | None) -> list[Flat]:
    if kind == KOHNO:
        return L.edges()
    if kind == AH:
        return [X for X in L.dense_edges() if H in X.indices]
    return L.dense_edges()


def check_condition(S: LocalSystem, kind: str, L: IntersectionLattice, H: int | None = None) -> NonresReport:
    if kind not in CONDITIONS:
        raise ValueError(f"unknown condition {kind!r}; expected one of {', '.join(CONDITIONS)}")
    m = L.arrangement.m
    if len(S) != m:
        raise ShapeError(f"{len(S)} residues for {m} hyperplanes")
    if kind == AH:
        if H is None:
            raise PreconditionError("condition 'ah' needs a hyperplane")
        if not 1 <= H <= m:
            raise PreconditionError(f"hyperplane index {H} out of range 1..{m}")
    mode = ANY_INTEGER if kind in (KOHNO, AH) else NONNEG_INTEGER
    violations = []
    for X in _quantified(kind, L, H):
        for root in integer_roots(residue(S, X).charpoly(), mode):
            violations.append((X.indices, root))
    noncommuting = ()
    if kind == THM33 and isinstance(S, EndoSystem):
        mats = S.matrices
        noncommuting = tuple(
            (i + 1, j + 1) for i in range(m) for j in range(i + 1, m) if not mats[i].commutes_with(mats[j])
        )
    holds = not violations and not noncommuting
    return NonresReport(kind, holds, tuple(violations), H if kind == AH else None, noncommuting)


def _eigen_bound_int(p: QPolynomial) -> int:
    """Smallest positive integer strictly above the Cauchy root radius of p.

    The Cauchy radius is the positive root of |a_r| t^r - sum_{i<r} |a_i| t^i;
    every root of p has modulus at most that radius.
    """
    r = p.degree
    lead = abs(p.leading())
    lower = [abs(c) for c in p.coeffs[:-1]]

    def cauchy(t):
        return lead * t**r - sum(c * t**i for i, c in enumerate(lower))

    q = 1
    while cauchy(q) <= 0:
        q *= 2
    lo = q // 2
    # cauchy(lo) <= 0 (or lo == 0) and cauchy(q) > 0: bisect for the smallest such q
    while q - lo > 1:
        mid = (lo + q) // 2
        if cauchy(mid) > 0:
            q = mid
        else:
            lo = mid
    return max(q, 1)


def shift_parameter(S: LocalSystem, H: int, L: IntersectionLattice) -> int:
    """Positive integer exceeding every |eigenvalue| of P_Y over dense Y not inside H."""
    q = 1
    for Y in L.dense_edges():
        if H not in Y.indices:
            q = max(q, _eigen_bound_int(residue(S, Y).charpoly()))
    return q


def prop4_shift(S: LocalSystem, H: int, L: IntersectionLattice) -> LocalSystem:
    """Integer translate of an (A, H)-nonresonant system that satisfies ``stv``.

    P_H gains (m - 1) q I and every other P_j loses q I.
    """
    pre = check_condition(S, AH, L, H)
    if not pre.holds:
        bad = ", ".join(f"X{list(f)} root {r}" for f, r in pre.violations[:5])
        raise PreconditionError(f"system is not (A, H{H})-nonresonant: {bad}")
    m = L.arrangement.m
    q = shift_parameter(S, H, L)
    shifts = [(m - 1) * q if j == H else -q for j in range(1, m + 1)]
    out = S.translate(shifts)
    post = check_condition(out, STV, L)
    if not post.holds:
        raise ShiftInvariantError(f"shifted system violates stv at {post.violations}")
    return out


def translate_exists(S: LocalSystem, L: IntersectionLattice) -> int | None:
    """Smallest H for which some integer translate is (A, H)-nonresonant, else None.

    Integer translates move every eigenvalue of P_X by an integer, so the
    test is translate invariant and it suffices to check S itself.
    """
    for H in range(1, L.arrangement.m + 1):
        if check_condition(S, AH, L, H).holds:
            return H
    return None


def describe_weights(S: LocalSystem) -> list:
    if isinstance(S, WeightSystem):
        return [format_rational(w) for w in S.weights]
    return [[[format_rational(x) for x in M.row(i)] for i in range(M.rows)] for M in S.matrices]
