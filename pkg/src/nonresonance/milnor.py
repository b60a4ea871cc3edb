"""Upper bounds for the monodromy eigenspaces of b_1 of a line arrangement's Milnor fiber.

For a line H of a projective line arrangement with m lines and 0 < k < m,

    b_1(F)_k <= sum over points x on H with m_x > 2 and m | k m_x of (m_x - 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import PROJECTIVE, Arrangement
from .errors import ArrangementError, PreconditionError
from .lattice import Flat, IntersectionLattice, build_lattice


def _require_plane(A: Arrangement):
    if A.kind != PROJECTIVE or A.dim != 2:
        raise ArrangementError("Milnor fiber bounds need a projective line arrangement in P^2")


def qualifying_points(L: IntersectionLattice, H: int, k: int) -> list[Flat]:
    m = L.arrangement.m
    return [x for x in L.of_codim(2) if H in x.indices and x.multiplicity > 2 and (k * x.multiplicity) % m == 0]


def thm51_bound(A: Arrangement, H: int, k: int, lattice: IntersectionLattice | None = None) -> int:
    _require_plane(A)
    if not 0 < k < A.m:
        raise PreconditionError(f"k must satisfy 0 < k < {A.m}, got {k}")
    if not 1 <= H <= A.m:
        raise PreconditionError(f"hyperplane index {H} out of range 1..{A.m}")
    L = lattice or build_lattice(A)
    return sum(x.multiplicity - 2 for x in qualifying_points(L, H, k))


@dataclass(frozen=True)
class MilnorBoundReport:
    m: int
    # (H, k) -> (qualifying points as (indices, m_x), bound)
    per_line: dict
    # k -> (smallest H attaining the minimum, minimum bound)
    best: dict

    def best_bounds(self) -> list[int]:
        return [self.best[k][1] for k in range(1, self.m)]

    def to_json(self) -> dict:
        rows = []
        for k in range(1, self.m):
            rows.append({
                "k": k,
                "per_line": {str(H): self.per_line[(H, k)][1] for H in range(1, self.m + 1)},
                "best": self.best[k][1],
                "best_line": self.best[k][0],
            })
        return {"m": self.m, "bounds": rows}


def spectrum_bounds(A: Arrangement, lattice: IntersectionLattice | None = None) -> MilnorBoundReport:
    _require_plane(A)
    L = lattice or build_lattice(A)
    m = A.m
    per_line, best = {}, {}
    for k in range(1, m):
        for H in range(1, m + 1):
            pts = qualifying_points(L, H, k)
            per_line[(H, k)] = (tuple((x.indices, x.multiplicity) for x in pts), sum(x.multiplicity - 2 for x in pts))
        H_best = min(range(1, m + 1), key=lambda H: (per_line[(H, k)][1], H))
        best[k] = (H_best, per_line[(H_best, k)][1])
    return MilnorBoundReport(m, per_line, best)
