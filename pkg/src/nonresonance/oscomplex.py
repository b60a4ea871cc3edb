"""Orlik-Solomon algebra, NBC bases and the Aomoto complex (B, omega ^ -).

The projective Brieskorn algebra is realized as the Orlik-Solomon algebra
of a decone; the deconed hyperplane's weight is implied by the zero-sum
constraint and never enters the differential.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .arrangement import AFFINE, PROJECTIVE, Arrangement, decone
from .errors import FlatnessError, PreconditionError, ShapeError
from .exactnum import QMatrix, as_rational, block_matrix, rank
from .lattice import IntersectionLattice, build_lattice

COHOMOLOGY_LABEL = "combinatorial Aomoto cohomology"


@dataclass(frozen=True)
class WeightSystem:
    """Rank-one weights, one rational per hyperplane."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights):
        object.__setattr__(self, "weights", tuple(as_rational(w) for w in weights))

    rank = 1

    @property
    def m(self) -> int:
        return len(self.weights)

    @property
    def matrices(self) -> tuple[QMatrix, ...]:
        return tuple(QMatrix([[w]]) for w in self.weights)

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def translate(self, shifts: Sequence[int]) -> WeightSystem:
        return WeightSystem(w + k for w, k in zip(self.weights, shifts))

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class EndoSystem:
    """Rank-r residues: one r x r rational matrix per hyperplane."""

    matrices: tuple[QMatrix, ...]

    def __init__(self, matrices):
        mats = tuple(M if isinstance(M, QMatrix) else QMatrix(M) for M in matrices)
        if not mats:
            raise ShapeError("an endomorphism system needs at least one matrix")
        r = mats[0].rows
        if r < 1 or any(M.shape != (r, r) for M in mats):
            raise ShapeError("all endomorphisms must be square of one common size")
        object.__setattr__(self, "matrices", mats)

    @property
    def rank(self) -> int:
        return self.matrices[0].rows

    @property
    def m(self) -> int:
        return len(self.matrices)

    def total(self) -> QMatrix:
        acc = QMatrix.zeros(self.rank, self.rank)
        for M in self.matrices:
            acc = acc + M
        return acc

    def translate(self, shifts: Sequence[int]) -> EndoSystem:
        return EndoSystem(M + QMatrix.scalar(self.rank, k) for M, k in zip(self.matrices, shifts))

    def __len__(self):
        return len(self.matrices)


LocalSystem = Union[WeightSystem, EndoSystem]


def sums_to_zero(S: LocalSystem) -> bool:
    total = S.total()
    return total == 0 if isinstance(S, WeightSystem) else total.is_zero()


# --------------------------------------------------------------------------
# circuits and NBC


def _affine_model(A: Arrangement) -> Arrangement:
    if A.kind == PROJECTIVE:
        raise PreconditionError("decone a projective arrangement before building its OS algebra")
    return A


def dependent_circuits(L: IntersectionLattice) -> list[tuple[int, ...]]:
    """Minimal dependent sets whose hyperplanes have a common point."""
    out = []
    for X in L.flats:
        r = X.codim
        if r == 0 or X.multiplicity <= r:
            continue
        for S in combinations(X.indices, r + 1):
            if L.closure(S) is not X:
                continue
            if all(L.closure(T).codim == r for T in combinations(S, r)):
                out.append(S)
    return sorted(out, key=lambda s: (len(s), s))


def empty_circuits(L: IntersectionLattice) -> list[tuple[int, ...]]:
    """Minimal sets of hyperplanes with empty intersection (affine only)."""
    m = L.arrangement.m
    out = []
    current = {(): L.ambient}
    while current:
        nxt = {}
        for T in current:
            start = T[-1] + 1 if T else 1
            for j in range(start, m + 1):
                S = T + (j,)
                if any(S[:i] + S[i + 1:] not in current for i in range(len(S))):
                    continue
                X = L.meet(current[T], j)
                if X is None:
                    out.append(S)
                else:
                    nxt[S] = X
        current = nxt
    return sorted(out, key=lambda s: (len(s), s))


def circuits(A: Arrangement, lattice: IntersectionLattice | None = None) -> list[tuple[int, ...]]:
    """Minimal dependent sets; for affine input also minimal empty-intersection sets."""
    if A.kind == PROJECTIVE:
        A = A.as_central()
        lattice = None
    L = lattice or build_lattice(A)
    out = dependent_circuits(L)
    if A.kind == AFFINE:
        out += empty_circuits(L)
    return sorted(out, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class NBCBasis:
    ordering: tuple[int, ...]
    monomials: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(mons) for mons in self.monomials)


class _OSAlgebra:
    """OS algebra of an affine or central arrangement in a fixed ordering.

    Internally hyperplanes are renamed by their position in the ordering
    (0-based), so sorted tuples are ordering-sorted monomials.
    """

    def __init__(self, A: Arrangement, ordering: Sequence[int] | None = None, lattice=None):
        self.A = _affine_model(A)
        self.L = lattice or build_lattice(self.A)
        m = A.m
        self.ordering = tuple(ordering) if ordering is not None else tuple(range(1, m + 1))
        if sorted(self.ordering) != list(range(1, m + 1)):
            raise ValueError("ordering must be a permutation of the hyperplane indices")
        self.pos = {j: p for p, j in enumerate(self.ordering)}
        self.broken = []
        for C in dependent_circuits(self.L):
            P = sorted(self.pos[j] for j in C)
            self.broken.append((frozenset(P[1:]), tuple(P)))
        self.monomials = self._nbc()
        self.index = [{T: i for i, T in enumerate(mons)} for mons in self.monomials]
        self._nf_cache: dict[tuple[int, ...], dict] = {}

    def _flat(self, T):
        return self.L.closure(self.ordering[p] for p in T)

    def _nbc(self):
        top = self.A.n_coords
        levels = [[()]]
        frontier = [((), self.L.ambient)]
        for q in range(1, top + 1):
            nxt = []
            for T, X in frontier:
                start = T[-1] + 1 if T else 0
                for p in range(start, self.A.m):
                    Y = self.L.meet(X, self.ordering[p])
                    if Y is None or Y.codim != q:
                        continue
                    S = T + (p,)
                    Sset = set(S)
                    if any(bc <= Sset for bc, _ in self.broken):
                        continue
                    nxt.append((S, Y))
            if not nxt:
                break
            levels.append([S for S, _ in nxt])
            frontier = nxt
        return levels

    def normal_form(self, T: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        """Express e_T (T sorted positions) in the NBC basis."""
        if T in self._nf_cache:
            return self._nf_cache[T]
        X = self._flat(T)
        if X is None or X.codim < len(T):
            result = {}
        else:
            Tset = set(T)
            hit = next(((bc, C) for bc, C in self.broken if bc <= Tset), None)
            if hit is None:
                result = {T: 1}
            else:
                bc, C = hit
                B = tuple(sorted(bc))
                R = tuple(p for p in T if p not in bc)
                eps = _merge_sign(B, R)
                result: dict[tuple[int, ...], int] = {}
                for k in range(1, len(C)):
                    M = C[:k] + C[k + 1:]
                    U = tuple(sorted(M + R))
                    coeff = eps * (-1) ** (k + 1) * _merge_sign(M, R)
                    for key, val in self.normal_form(U).items():
                        result[key] = result.get(key, 0) + coeff * val
                result = {k: v for k, v in result.items() if v}
        self._nf_cache[T] = result
        return result

    def left_multiply(self, p: int, S: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        """e_p ^ e_S in the NBC basis."""
        if p in S:
            return {}
        sign = -1 if sum(1 for s in S if s < p) % 2 else 1
        U = tuple(sorted(S + (p,)))
        return {k: sign * v for k, v in self.normal_form(U).items()}

    def structure(self, q: int) -> list[dict[tuple[int, int], int]]:
        """Per hyperplane position, sparse matrix (target, source) of e_p ^ - : B^q -> B^(q+1)."""
        out = []
        for p in range(self.A.m):
            entries = {}
            for s, S in enumerate(self.monomials[q]):
                for T, c in self.left_multiply(p, S).items():
                    entries[(self.index[q + 1][T], s)] = c
            out.append(entries)
        return out

    def basis(self) -> NBCBasis:
        return NBCBasis(
            self.ordering,
            tuple(tuple(tuple(self.ordering[p] for p in T) for T in mons) for mons in self.monomials),
        )


def _merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of the permutation sorting the concatenation a + b (a, b sorted, disjoint)."""
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


def nbc_basis(A: Arrangement, ordering: Sequence[int] | None = None) -> NBCBasis:
    return _OSAlgebra(A, ordering).basis()


# --------------------------------------------------------------------------
# flatness


@dataclass(frozen=True)
class FlatnessReport:
    holds: bool
    violations: tuple[tuple[int, tuple[int, ...]], ...]


def check_flat(S: LocalSystem, L: IntersectionLattice) -> FlatnessReport:
    """Check [P_j, P_X] = 0 for every codim-2 edge X and every hyperplane j through X."""
    if len(S) != L.arrangement.m:
        raise ShapeError(f"{len(S)} residues for {L.arrangement.m} hyperplanes")
    if isinstance(S, WeightSystem):
        return FlatnessReport(True, ())
    violations = []
    for X in L.of_codim(2):
        PX = QMatrix.zeros(S.rank, S.rank)
        for j in X.indices:
            PX = PX + S.matrices[j - 1]
        for j in X.indices:
            if not S.matrices[j - 1].commutes_with(PX):
                violations.append((j, X.indices))
    return FlatnessReport(not violations, tuple(violations))


# --------------------------------------------------------------------------
# Aomoto complex


@dataclass(frozen=True)
class AomotoComplex:
    basis: NBCBasis
    coefficient_rank: int
    # differentials[q] has shape (r * dim B^(q+1), r * dim B^q)
    differentials: tuple[QMatrix, ...]
    decone_choice: int | None
    model: Arrangement

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.coefficient_rank * d for d in self.basis.dims)


def _model_and_residues(A: Arrangement, S: LocalSystem, decone_choice: int | None):
    if len(S) != A.m:
        raise ShapeError(f"{len(S)} residues for {A.m} hyperplanes")
    if A.kind != PROJECTIVE:
        return A, list(S.matrices), None
    if not sums_to_zero(S):
        raise PreconditionError("residues of a projective arrangement must sum to zero")
    h = A.m if decone_choice is None else decone_choice
    D = decone(A, h)
    return D, [S.matrices[D.original_index(j) - 1] for j in range(1, D.m + 1)], h


def aomoto_complex(
    A: Arrangement,
    S: LocalSystem,
    decone_choice: int | None = None,
    ordering: Sequence[int] | None = None,
    lattice: IntersectionLattice | None = None,
) -> AomotoComplex:
    if isinstance(S, EndoSystem) and S.rank > 1:
        report = check_flat(S, lattice if lattice is not None and lattice.arrangement is A else build_lattice(A))
        if not report.holds:
            bad = ", ".join(f"P{j} vs X{list(X)}" for j, X in report.violations[:5])
            raise FlatnessError(f"connection is not flat: {bad}")
    model, mats, h = _model_and_residues(A, S, decone_choice)
    os_alg = _OSAlgebra(model, ordering)
    r = S.rank
    dims = [len(mons) for mons in os_alg.monomials]
    differentials = []
    for q in range(len(dims) - 1):
        struct = os_alg.structure(q)
        if r == 1:
            rows = [[Fraction(0)] * dims[q] for _ in range(dims[q + 1])]
            for p, entries in enumerate(struct):
                w = mats[os_alg.ordering[p] - 1][0, 0]
                if w:
                    for (t, s), c in entries.items():
                        rows[t][s] += c * w
            differentials.append(QMatrix(rows, cols=dims[q]))
        else:
            zero = QMatrix.zeros(r, r)
            blocks = [[zero] * dims[q] for _ in range(dims[q + 1])]
            for p, entries in enumerate(struct):
                P = mats[os_alg.ordering[p] - 1]
                for (t, s), c in entries.items():
                    blocks[t][s] = blocks[t][s] + P.scale(c)
            differentials.append(block_matrix(blocks) if dims[q + 1] and dims[q] else QMatrix.zeros(r * dims[q + 1], r * dims[q]))
    for d0, d1 in zip(differentials, differentials[1:]):
        if not (d1 @ d0).is_zero():
            raise FlatnessError("omega ^ omega != 0: the differential does not square to zero")
    return AomotoComplex(os_alg.basis(), r, tuple(differentials), h, model)


def aomoto_cohomology(C: AomotoComplex) -> list[int]:
    """Dimensions h^q = dim ker d^q - rank d^(q-1), padded to the top degree of the model."""
    dims = C.dims
    ranks = [rank(d) for d in C.differentials]
    out = []
    for q, dim in enumerate(dims):
        out.append(dim - (ranks[q] if q < len(ranks) else 0) - (ranks[q - 1] if q >= 1 else 0))
    top = C.model.n_coords
    return out + [0] * (top + 1 - len(out))
