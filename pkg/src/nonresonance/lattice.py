"""Intersection posets, Moebius values, localization and dense edges."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .arrangement import AFFINE, CENTRAL, PROJECTIVE, Arrangement, decone
from .errors import ArrangementError, ResourceLimitError
from .exactnum import QMatrix, rank

MAX_HYPERPLANES = 30
MAX_DIM = 4
MAX_IRREDUCIBLE_SIZE = 25


class _Span:
    """Reduced row echelon basis supporting exact membership tests."""

    def __init__(self, rows: Sequence[Sequence[Fraction]] = ()):
        self.basis: list[tuple[int, list[Fraction]]] = []
        for r in rows:
            self.add(r)

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        v = list(v)
        for piv, row in self.basis:
            c = v[piv]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence[Fraction]) -> bool:
        r = self.reduce(v)
        piv = next((i for i, c in enumerate(r) if c), None)
        if piv is None:
            return False
        lead = r[piv]
        r = [c / lead for c in r]
        reduced = []
        for p, row in self.basis:
            c = row[piv]
            if c:
                row = [a - c * b for a, b in zip(row, r)]
            reduced.append((p, row))
        reduced.append((piv, r))
        self.basis = reduced
        return True

    def copy(self) -> _Span:
        s = _Span()
        s.basis = list(self.basis)
        return s

    def __len__(self):
        return len(self.basis)


@dataclass(frozen=True)
class Flat:
    """An edge of the arrangement, named by the closed set of hyperplanes containing it."""

    indices: tuple[int, ...]
    codim: int
    equations: QMatrix = field(compare=False, repr=False)
    mobius: int = 0
    dense: bool = False

    @property
    def multiplicity(self) -> int:
        return len(self.indices)

    def __contains__(self, j: int) -> bool:
        return j in self.indices

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "codim": self.codim,
            "multiplicity": self.multiplicity,
            "mobius": self.mobius,
            "dense": self.dense,
        }


class IntersectionLattice:
    """The poset of edges ordered by reverse inclusion, ambient space first."""

    def __init__(self, arrangement: Arrangement, flats: Sequence[Flat], meets: dict, covers: dict):
        self.arrangement = arrangement
        self.flats = tuple(flats)
        self._by_indices = {f.indices: f for f in self.flats}
        self._meets = meets
        # index of flat -> indices of flats covering it
        self.order = covers

    def __iter__(self):
        return iter(self.flats)

    def __len__(self):
        return len(self.flats)

    @property
    def ambient(self) -> Flat:
        return self.flats[0]

    def find(self, indices: Iterable[int]) -> Flat:
        key = tuple(sorted(indices))
        try:
            return self._by_indices[key]
        except KeyError:
            raise ArrangementError(f"{list(key)} is not a flat of this arrangement") from None

    def __contains__(self, flat) -> bool:
        key = flat.indices if isinstance(flat, Flat) else tuple(sorted(flat))
        return key in self._by_indices

    def hyperplane(self, j: int) -> Flat:
        return self._by_indices[(j,)]

    def of_codim(self, q: int) -> list[Flat]:
        return [f for f in self.flats if f.codim == q]

    @property
    def max_codim(self) -> int:
        return max(f.codim for f in self.flats)

    def meet(self, X: Flat, j: int) -> Flat | None:
        """The flat X intersected with hyperplane j, or None when empty."""
        if j in X.indices:
            return X
        key = self._meets.get((X.indices, j))
        return None if key is None else self._by_indices[key]

    def closure(self, indices: Iterable[int]) -> Flat | None:
        """Smallest flat contained in every listed hyperplane; None if they do not meet."""
        X = self.ambient
        for j in indices:
            X = self.meet(X, j)
            if X is None:
                return None
        return X

    def dense_edges(self) -> list[Flat]:
        return [f for f in self.flats if f.dense]

    def edges(self) -> list[Flat]:
        return [f for f in self.flats if f.codim >= 1]

    def to_json(self) -> dict:
        return {"flats": [f.to_json() for f in self.flats]}


def _vectors(A: Arrangement) -> list[tuple[Fraction, ...]]:
    return [A.vector(j) for j in range(1, A.m + 1)]


def build_lattice(A: Arrangement, max_hyperplanes: int = MAX_HYPERPLANES, max_dim: int = MAX_DIM) -> IntersectionLattice:
    if A.m > max_hyperplanes:
        raise ResourceLimitError(f"{A.m} hyperplanes exceeds the guard of {max_hyperplanes}")
    if A.dim > max_dim:
        raise ResourceLimitError(f"dimension {A.dim} exceeds the guard of {max_dim}")
    vecs = _vectors(A)
    m = A.m
    spans: dict[tuple[int, ...], _Span] = {(): _Span()}
    codims: dict[tuple[int, ...], int] = {(): 0}
    meets: dict[tuple[tuple[int, ...], int], tuple[int, ...] | None] = {}
    level = [()]
    while level:
        nxt = []
        for X in level:
            span = spans[X]
            for j in range(1, m + 1):
                if j in X:
                    continue
                extended = span.copy()
                extended.add(vecs[j - 1])
                if not _nonempty(A, extended):
                    meets[(X, j)] = None
                    continue
                closed = tuple(i for i in range(1, m + 1) if i in X or i == j or not any(extended.reduce(vecs[i - 1])))
                meets[(X, j)] = closed
                if closed not in spans:
                    spans[closed] = extended
                    codims[closed] = len(extended)
                    nxt.append(closed)
        level = nxt
    keys = sorted(spans, key=lambda k: (codims[k], k))
    mobius: dict[tuple[int, ...], int] = {}
    for key in keys:
        if not key:
            mobius[key] = 1
            continue
        s = set(key)
        mobius[key] = -sum(mobius[y] for y in mobius if set(y) < s)
    flats = []
    for key in keys:
        eqs = QMatrix([row for _, row in spans[key].basis], cols=A.dim + 1)
        flats.append(Flat(key, codims[key], eqs, mobius[key], False))
    covers = {
        i: [k for k, Y in enumerate(flats) if Y.codim == X.codim + 1 and set(X.indices) < set(Y.indices)]
        for i, X in enumerate(flats)
    }
    L = IntersectionLattice(A, flats, meets, covers)
    dense = [bool(f.codim >= 1 and is_irreducible(localize(A, f, lattice=L))) for f in flats]
    flats = [Flat(f.indices, f.codim, f.equations, f.mobius, d) for f, d in zip(flats, dense)]
    return IntersectionLattice(A, flats, meets, covers)


def _nonempty(A: Arrangement, span: _Span) -> bool:
    if A.kind == PROJECTIVE:
        return len(span) <= A.dim
    if A.kind == CENTRAL:
        return True
    # affine: inconsistent iff some echelon row has its pivot on the constant column
    return all(piv < A.dim for piv, _ in span.basis)


def betti_numbers(L: IntersectionLattice, decone_index: int | None = None) -> list[int]:
    """Whitney numbers sum |mu| by codimension; projective input is deconed first."""
    A = L.arrangement
    if A.kind == PROJECTIVE:
        h = A.m if decone_index is None else decone_index
        L = build_lattice(decone(A, h))
    out = [0] * (L.max_codim + 1)
    for f in L.flats:
        out[f.codim] += abs(f.mobius)
    return out


def localize(A: Arrangement, X: Flat, lattice: IntersectionLattice | None = None) -> Arrangement:
    """Central arrangement of the hyperplanes through X, essentialized to rank codim X."""
    if lattice is not None and X not in lattice:
        raise ArrangementError(f"{list(X.indices)} is not a flat of this arrangement")
    if X.codim == 0:
        raise ArrangementError("cannot localize at the ambient space")
    vecs = [A.linear(j) for j in X.indices]
    basis: list[tuple[Fraction, ...]] = []
    span = _Span()
    for v in vecs:
        if span.add(v):
            basis.append(v)
    # coordinates of each vector in the chosen basis
    B = QMatrix(basis).transpose()
    forms = [_solve(B, v) for v in vecs]
    return Arrangement(CENTRAL, len(basis) - 1, tuple(forms), source_indices=tuple(A.original_index(j) for j in X.indices))


def _solve(B: QMatrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Unique x with B x = v for B of full column rank."""
    rows = [list(B.row(i)) + [v[i]] for i in range(B.rows)]
    ncols = B.cols
    r = 0
    for c in range(ncols):
        p = next(i for i in range(r, len(rows)) if rows[i][c])
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [a / lead for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return tuple(rows[i][-1] for i in range(ncols))


# --------------------------------------------------------------------------
# irreducibility


def is_irreducible(C: Arrangement, method: str = "auto") -> bool:
    """True iff the matroid of the central arrangement ``C`` is connected.

    ``bipartition`` searches every split with memoized ranks; ``circuits``
    merges fundamental circuits of a greedy basis.  ``auto`` uses the first
    for small inputs.
    """
    if C.kind == AFFINE:
        raise ArrangementError("irreducibility is defined here for central arrangements")
    if C.m > MAX_IRREDUCIBLE_SIZE:
        raise ResourceLimitError(f"{C.m} hyperplanes exceeds the irreducibility guard of {MAX_IRREDUCIBLE_SIZE}")
    vecs = [C.linear(j) for j in range(1, C.m + 1)]
    if method == "auto":
        method = "bipartition" if C.m <= 10 else "circuits"
    if method == "bipartition":
        return _irreducible_bipartition(vecs)
    if method == "circuits":
        return _irreducible_circuits(vecs)
    raise ValueError(f"unknown method {method!r}")


def _irreducible_bipartition(vecs) -> bool:
    m = len(vecs)
    if m == 1:
        return True
    memo: dict[frozenset, int] = {}

    def rk(S: frozenset) -> int:
        if S not in memo:
            memo[S] = rank(QMatrix([vecs[i] for i in sorted(S)])) if S else 0
        return memo[S]

    everything = frozenset(range(m))
    total = rk(everything)
    rest = list(range(1, m))
    # element 0 always sits in the first part, halving the search
    for size in range(0, m - 1):
        for extra in combinations(rest, size):
            S = frozenset((0,) + extra)
            if rk(S) + rk(everything - S) == total:
                return False
    return True


def _irreducible_circuits(vecs) -> bool:
    m = len(vecs)
    span = _Span()
    basis = [i for i in range(m) if span.add(vecs[i])]
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if len(basis) < m:
        B = QMatrix([vecs[i] for i in basis]).transpose()
        for e in range(m):
            if e in basis:
                continue
            coords = _solve(B, vecs[e])
            for b, c in zip(basis, coords):
                if c:
                    parent[find(b)] = find(e)
    return len({find(i) for i in range(m)}) == 1


def dense_edges(A: Arrangement, lattice: IntersectionLattice | None = None) -> list[Flat]:
    L = lattice or build_lattice(A)
    return L.dense_edges()
