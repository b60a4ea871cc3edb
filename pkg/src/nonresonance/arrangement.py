"""Hyperplane arrangements with exact rational coefficients.

Every form is stored as a coefficient vector of length ``n + 1``:

* ``projective`` arrangements in P^n and ``central`` arrangements in
  C^(n+1): homogeneous coefficients for x_0 .. x_n;
* ``affine`` arrangements in C^n: n linear coefficients followed by the
  constant term.

Hyperplanes are indexed from 1 in input order.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ArrangementError, GenericityError
from .exactnum import format_rational, parse_rational

PROJECTIVE = "projective"
AFFINE = "affine"
CENTRAL = "central"
KINDS = (PROJECTIVE, AFFINE, CENTRAL)


def _normalized(vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
    lead = next(c for c in vec if c != 0)
    return tuple(c / lead for c in vec)


@dataclass(frozen=True)
class Arrangement:
    kind: str
    dim: int
    forms: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] | None = None
    # 1-based indices into the arrangement this one was derived from
    source_indices: tuple[int, ...] | None = field(default=None, compare=False)
    decone_of: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ArrangementError(f"unknown arrangement kind {self.kind!r}")
        if self.dim < 0 or (self.kind == AFFINE and self.dim < 1):
            raise ArrangementError(f"bad ambient dimension {self.dim}")
        forms = tuple(tuple(Fraction(c) for c in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if not forms:
            raise ArrangementError("an arrangement needs at least one hyperplane")
        seen: dict[tuple, int] = {}
        for j, f in enumerate(forms, start=1):
            if len(f) != self.dim + 1:
                raise ArrangementError(f"form {j} has {len(f)} coefficients, expected {self.dim + 1}")
            if not any(f):
                raise ArrangementError(f"zero form {j}")
            if self.kind == AFFINE and not any(f[:-1]):
                raise ArrangementError(f"form {j} has zero homogeneous part")
            key = _normalized(f)
            if key in seen:
                raise ArrangementError(f"proportional forms {seen[key]},{j}")
            seen[key] = j
        if self.labels is not None and len(self.labels) != len(forms):
            raise ArrangementError("label count does not match form count")

    @property
    def m(self) -> int:
        return len(self.forms)

    @property
    def n_coords(self) -> int:
        """Number of linear coordinates (n for affine, n + 1 otherwise)."""
        return self.dim if self.kind == AFFINE else self.dim + 1

    def linear(self, j: int) -> tuple[Fraction, ...]:
        f = self.forms[j - 1]
        return f[:-1] if self.kind == AFFINE else f

    def vector(self, j: int) -> tuple[Fraction, ...]:
        """Full coefficient vector (augmented by the constant for affine forms)."""
        return self.forms[j - 1]

    def original_index(self, j: int) -> int:
        return self.source_indices[j - 1] if self.source_indices else j

    def label(self, j: int) -> str:
        return self.labels[j - 1] if self.labels else f"H{j}"

    def as_central(self) -> Arrangement:
        if self.kind == AFFINE:
            raise ArrangementError("an affine arrangement has no central reading; use cone()")
        return Arrangement(CENTRAL, self.dim, self.forms, self.labels)


def parse_arrangement(text: str) -> Arrangement:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise ArrangementError("empty arrangement file")
    lineno, header = rows[0]
    if len(header) != 3 or header[0] not in KINDS:
        raise ArrangementError("header must be '<kind> <n> <m>'", lineno)
    try:
        n, m = int(header[1]), int(header[2])
    except ValueError:
        raise ArrangementError("header dimension and count must be integers", lineno) from None
    if n < 0 or m < 1:
        raise ArrangementError("header needs n >= 0 and m >= 1", lineno)
    body = rows[1:]
    if len(body) != m:
        raise ArrangementError(f"expected {m} forms, found {len(body)}", lineno)
    forms = []
    seen: dict[tuple, int] = {}
    for j, (lineno, tokens) in enumerate(body, start=1):
        if len(tokens) != n + 1:
            raise ArrangementError(f"ragged row: {len(tokens)} coefficients, expected {n + 1}", lineno)
        try:
            f = tuple(parse_rational(tok) for tok in tokens)
        except ValueError as exc:
            raise ArrangementError(str(exc), lineno) from None
        if not any(f):
            raise ArrangementError("zero form", lineno)
        if header[0] == AFFINE and not any(f[:-1]):
            raise ArrangementError("zero homogeneous part", lineno)
        key = _normalized(f)
        if key in seen:
            raise ArrangementError(f"proportional forms {seen[key]},{j}", lineno)
        seen[key] = j
        forms.append(f)
    return Arrangement(header[0], n, tuple(forms))


def format_arrangement(A: Arrangement) -> str:
    lines = [f"{A.kind} {A.dim} {A.m}"]
    lines += [" ".join(format_rational(c) for c in f) for f in A.forms]
    return "\n".join(lines) + "\n"


def load_arrangement(path) -> Arrangement:
    with open(path, encoding="ascii") as fh:
        return parse_arrangement(fh.read())


def decone(A: Arrangement, h: int) -> Arrangement:
    """Send hyperplane ``h`` to infinity and return the affine remainder.

    New coordinates are y_0 = f_h and the old x_i for i != p, where p is
    the first nonzero coefficient of f_h; the affine chart is y_0 = 1.
    """
    if A.kind != PROJECTIVE:
        raise ArrangementError("decone needs a projective arrangement")
    if not 1 <= h <= A.m:
        raise ArrangementError(f"hyperplane index {h} out of range 1..{A.m}")
    if A.dim < 1:
        raise ArrangementError("cannot decone an arrangement in P^0")
    fh = A.forms[h - 1]
    p = next(i for i, c in enumerate(fh) if c != 0)
    ap = fh[p]
    forms, sources, labels = [], [], []
    for j, f in enumerate(A.forms, start=1):
        if j == h:
            continue
        ratio = f[p] / ap
        linear = [f[i] - ratio * fh[i] for i in range(A.dim + 1) if i != p]
        forms.append(tuple(linear) + (ratio,))
        sources.append(A.original_index(j))
        labels.append(A.label(j))
    return Arrangement(
        AFFINE, A.dim, tuple(forms), tuple(labels) if A.labels else None,
        source_indices=tuple(sources), decone_of=A.original_index(h),
    )


def cone(A: Arrangement) -> Arrangement:
    """Homogenize an affine arrangement; the hyperplane at infinity comes last."""
    if A.kind != AFFINE:
        raise ArrangementError("cone needs an affine arrangement")
    forms = list(A.forms) + [(Fraction(0),) * A.dim + (Fraction(1),)]
    return Arrangement(PROJECTIVE, A.dim, tuple(forms))


# --------------------------------------------------------------------------
# builtin corpus

_BUILTIN_FORMS = {
    # Q = x(x - z)y(y - z)z
    "cdo-ex1": [(1, 0, 0), (1, 0, -1), (0, 1, 0), (0, 1, -1), (0, 0, 1)],
    # Q = x(x - z)y(y - 2z)(x - y)z
    "cdo-ex2": [(1, 0, 0), (1, 0, -1), (0, 1, 0), (0, 1, -2), (1, -1, 0), (0, 0, 1)],
    "braid-a3": [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1)],
}

BUILTIN_NAMES = ("cdo-ex1", "cdo-ex2", "braid-a3", "generic(m)", "boolean(n)")

_PARAM_RE = re.compile(r"^(generic|boolean)(?:\((\d+)\)|[-:](\d+))$")


def builtin_arrangement(name: str) -> Arrangement:
    """Return a corpus arrangement: cdo-ex1, cdo-ex2, braid-a3, generic(m), boolean(n).

    ``generic(m)`` is m lines of P^2 in general position; ``boolean(n)`` is
    the n coordinate hyperplanes of C^n, as a central arrangement.
    """
    key = name.strip().lower()
    if key in _BUILTIN_FORMS:
        return Arrangement(PROJECTIVE, 2, tuple(tuple(map(Fraction, f)) for f in _BUILTIN_FORMS[key]))
    match = _PARAM_RE.match(key)
    if not match:
        raise ArrangementError(f"unknown builtin arrangement {name!r}")
    family, size = match.group(1), int(match.group(2) or match.group(3))
    if family == "generic":
        if size < 1:
            raise ArrangementError("generic(m) needs m >= 1")
        # rows of a Vandermonde matrix: any three are independent
        return Arrangement(PROJECTIVE, 2, tuple((Fraction(1), Fraction(i), Fraction(i * i)) for i in range(1, size + 1)))
    if size < 1:
        raise ArrangementError("boolean(n) needs n >= 1")
    eye = [tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size)]
    return Arrangement(CENTRAL, size - 1, tuple(eye))


def is_builtin_name(name: str) -> bool:
    key = name.strip().lower()
    return key in _BUILTIN_FORMS or bool(_PARAM_RE.match(key))


# --------------------------------------------------------------------------
# generic slicing


def generic_slice(A: Arrangement, c: int, seed: int = 0, height: int = 9, retries: int = 50) -> Arrangement:
    """Restrict ``A`` to a pseudo-random rational c-dimensional subspace.

    The draw is accepted only if the slice's intersection poset equals the
    codim <= c truncation of the original poset.
    """
    from .lattice import build_lattice

    if not 1 <= c <= A.dim:
        raise ArrangementError(f"slice dimension {c} outside 1..{A.dim}")
    target = {(f.indices, f.codim) for f in build_lattice(A).flats if 1 <= f.codim <= c}
    rng = random.Random(seed)
    for _ in range(retries):
        if A.kind == AFFINE:
            point = [Fraction(rng.randint(-height, height)) for _ in range(A.dim)]
            basis = [[Fraction(rng.randint(-height, height)) for _ in range(c)] for _ in range(A.dim)]
            forms = []
            for f in A.forms:
                lin, const = f[:-1], f[-1]
                new = [sum(lin[i] * basis[i][k] for i in range(A.dim)) for k in range(c)]
                forms.append(tuple(new) + (const + sum(a * x for a, x in zip(lin, point)),))
        else:
            basis = [[Fraction(rng.randint(-height, height)) for _ in range(c + 1)] for _ in range(A.dim + 1)]
            forms = [
                tuple(sum(f[i] * basis[i][k] for i in range(A.dim + 1)) for k in range(c + 1)) for f in A.forms
            ]
        try:
            S = Arrangement(A.kind, c, tuple(forms), A.labels, source_indices=A.source_indices)
        except ArrangementError:
            continue
        got = {(f.indices, f.codim) for f in build_lattice(S).flats if f.codim >= 1}
        if got == target:
            return S
    raise GenericityError(f"no generic {c}-slice found after {retries} draws (seed {seed})")
