"""Exact b_1(F)_k for real line arrangements, independent of the lattice bounds.

Pipeline: decone, shear until the sweep is generic, record the wiring
diagram, read off a braid-monodromy presentation of the fundamental group of
the complement, and evaluate Fox derivatives of the relators at the
character sending every meridian to a primitive d-th root of unity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import count

from .arrangement import Arrangement, decone
from .errors import ArrangementError, GenericityError, PreconditionError
from .exactnum import CycloMatrix, cyclotomic_field, rank_and_kernel
from .lattice import build_lattice
from .milnor import _require_plane

Word = tuple  # nonzero ints; -g is the inverse of generator g


@dataclass(frozen=True)
class Event:
    x: Fraction
    wires: tuple[int, ...]
    order_before: tuple[int, ...]
    position: int

    @property
    def multiplicity(self) -> int:
        return len(self.wires)


@dataclass(frozen=True)
class WiringDiagram:
    # (slope, intercept) per affine line after the shear x -> x + shear * y
    lines: tuple[tuple[Fraction, Fraction], ...]
    initial_order: tuple[int, ...]
    events: tuple[Event, ...]
    parallel_pairs: int
    decone_choice: int
    shear: Fraction

    @property
    def s(self) -> int:
        return len(self.lines)


def _shear_candidates():
    yield Fraction(0)
    for size in count(1):
        for num in range(1, size + 1):
            if math.gcd(num, size) == 1:
                for t in (Fraction(size, num), Fraction(-size, num), Fraction(num, size), Fraction(-num, size)):
                    yield t


def wiring_diagram(
    A: Arrangement,
    decone_choice: int | None = None,
    shear: Fraction | None = None,
    max_tries: int = 200,
) -> WiringDiagram:
    _require_plane(A)
    h = A.m if decone_choice is None else decone_choice
    D = decone(A, h)
    L = build_lattice(D)
    points = []
    for X in L.of_codim(2):
        (a1, b1, c1), (a2, b2, c2) = X.equations.row(0), X.equations.row(1)
        det = a1 * b2 - a2 * b1
        points.append((X.indices, (b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det))
    if shear is not None:
        candidates = [Fraction(shear)]
    else:
        gen = _shear_candidates()
        candidates = [next(gen) for _ in range(max_tries)]
    for t in candidates:
        if any(a * t + b == 0 for a, b, _ in D.forms):
            continue
        xs = [x - t * y for _, x, y in points]
        if len(set(xs)) != len(xs):
            continue
        return _sweep(D, t, points, xs, h)
    if shear is not None:
        raise GenericityError(f"shear {shear} leaves a vertical line or two events on one vertical")
    raise GenericityError(f"no valid shear among the first {max_tries} candidates")


def _sweep(D: Arrangement, t: Fraction, points, xs, h: int) -> WiringDiagram:
    lines = []
    for a, b, c in D.forms:
        denom = a * t + b
        lines.append((-a / denom, -c / denom))

    def height(j, x):
        slope, icpt = lines[j - 1]
        return slope * x + icpt

    left = min(xs) - 1 if xs else Fraction(0)
    order = sorted(range(1, D.m + 1), key=lambda j: -height(j, left))
    initial = tuple(order)
    events = []
    for (wires, _, _), x in sorted(zip(points, xs), key=lambda item: item[1]):
        pos = sorted(order.index(j) for j in wires)
        if pos != list(range(pos[0], pos[0] + len(pos))):
            raise ArrangementError("lines through an event are not adjacent in the sweep")
        i = pos[0]
        block = order[i:i + len(wires)]
        events.append(Event(x, tuple(sorted(wires)), tuple(block), i))
        order[i:i + len(wires)] = block[::-1]
    right = max(xs) + 1 if xs else Fraction(0)
    assert order == sorted(range(1, D.m + 1), key=lambda j: -height(j, right))
    parallel = sum(
        1 for i in range(D.m) for j in range(i + 1, D.m) if lines[i][0] == lines[j][0]
    )
    return WiringDiagram(tuple(lines), initial, tuple(events), parallel, h, t)


# --------------------------------------------------------------------------
# presentation


def reduce_word(word) -> Word:
    out = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def invert(word) -> Word:
    return tuple(-g for g in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    # event index of each relator
    event_of: tuple[int, ...]

    def exponent_sums(self, relator: Word) -> list[int]:
        sums = [0] * len(self.generators)
        for g in relator:
            sums[abs(g) - 1] += 1 if g > 0 else -1
        return sums

    def to_text(self) -> str:
        def spell(w):
            return " ".join(f"x{g}" if g > 0 else f"x{-g}^-1" for g in w) or "1"

        lines = ["generators: " + " ".join(self.generators), "relators:"]
        lines += [spell(r) for r in self.relators]
        return "\n".join(lines) + "\n"


def randell_presentation(W: WiringDiagram) -> GroupPresentation:
    """Zariski-van Kampen presentation read off the wiring diagram.

    ``current[p]`` is the loop, as a word in the base generators, around the
    wire at position p of the fiber just left of the next event.  Each event
    contributes the cyclic relations of its local loops, then its wires are
    passed through a positive half twist acting by the Artin rule.
    """
    current = [(j,) for j in W.initial_order]
    relators, event_of = [], []
    for e_idx, ev in enumerate(W.events):
        i, r = ev.position, ev.multiplicity
        local = current[i:i + r]
        product = reduce_word(sum(local, ()))
        for shift in range(1, r):
            rotated = reduce_word(sum(local[shift:] + local[:shift], ()))
            relators.append(reduce_word(product + invert(rotated)))
            event_of.append(e_idx)
        for a in range(r - 1):
            for p in range(i, i + r - 1 - a):
                u, v = current[p], current[p + 1]
                current[p] = reduce_word(u + v + invert(u))
                current[p + 1] = u
    gens = tuple(f"x{j}" for j in range(1, W.s + 1))
    return GroupPresentation(gens, tuple(relators), tuple(event_of))


def alexander_matrix(P: GroupPresentation) -> list[list[dict[int, int]]]:
    """Fox Jacobian with every generator sent to t, as Laurent polynomials {exponent: coeff}."""
    rows = []
    for R in P.relators:
        row = [dict() for _ in P.generators]
        e = 0
        for g in R:
            j = abs(g) - 1
            if g > 0:
                row[j][e] = row[j].get(e, 0) + 1
                e += 1
            else:
                e -= 1
                row[j][e] = row[j].get(e, 0) - 1
        rows.append([{k: v for k, v in entry.items() if v} for entry in row])
    return rows


def character_conductor(m: int, k: int) -> int:
    """Order of tau^k for tau a primitive m-th root of unity."""
    return m // math.gcd(m, k) if k % m else 1


def fox_jacobian(P: GroupPresentation, d: int) -> CycloMatrix:
    F = cyclotomic_field(d)
    entries = [[F.from_laurent(entry) for entry in row] for row in alexander_matrix(P)]
    return CycloMatrix(entries, field=F, cols=len(P.generators))


@lru_cache(maxsize=64)
def _presentation(A: Arrangement, decone_choice, shear) -> GroupPresentation:
    return randell_presentation(wiring_diagram(A, decone_choice, shear))


def twisted_b1(A: Arrangement, k: int, decone_choice: int | None = None, shear=None) -> int:
    """dim H^1 of the complement with all meridians acting by tau^k."""
    _require_plane(A)
    m = A.m
    if not 0 <= k < m:
        raise PreconditionError(f"k must satisfy 0 <= k < {m}, got {k}")
    P = _presentation(A, decone_choice, None if shear is None else Fraction(shear))
    d = character_conductor(m, k)
    s = len(P.generators)
    rank_d0 = 0 if d == 1 else 1
    rank_d1 = rank_and_kernel(fox_jacobian(P, d))[0] if P.relators else 0
    return s - rank_d1 - rank_d0


def milnor_spectrum_exact(A: Arrangement, decone_choice: int | None = None, shear=None) -> list[int]:
    m = A.m
    spectrum = [twisted_b1(A, k, decone_choice, shear) for k in range(m)]
    assert spectrum[0] == m - 1
    assert all(spectrum[k] == spectrum[m - k] for k in range(1, m))
    return spectrum
