"""Input checks shared by the estimator layer."""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .arrangement import Arrangement, builtin_arrangement, is_builtin_name, load_arrangement
from .errors import ShapeError
from .exactnum import as_rational, parse_rational


def check_arrangement(arrangement) -> Arrangement:
    """Accept an Arrangement, a builtin name or a path to an .arr file."""
    if isinstance(arrangement, Arrangement):
        return arrangement
    if isinstance(arrangement, str):
        if is_builtin_name(arrangement):
            return builtin_arrangement(arrangement)
        if os.path.exists(arrangement):
            return load_arrangement(arrangement)
    raise ValueError(f"cannot interpret {arrangement!r} as an arrangement")


def _entry(x) -> Fraction:
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, np.integer):
        return Fraction(int(x))
    # floats are refused here: resonance is an integrality question
    return as_rational(x)


def check_weights(W, m: int | None = None) -> np.ndarray:
    """Coerce rows of weights to a 2-d object array of Fractions.

    A single flat sequence is treated as one row.  Floating point entries
    raise TypeError.
    """
    arr = np.asarray(W, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise ShapeError(f"expected a 2-d array of weights, got shape {arr.shape}")
    if arr.dtype.kind == "f":
        raise TypeError("weights must be exact: pass ints, Fractions or 'p/q' strings")
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = _entry(x)
    if m is not None and out.shape[1] != m:
        raise ShapeError(f"{out.shape[1]} weights per row for {m} hyperplanes")
    return out
