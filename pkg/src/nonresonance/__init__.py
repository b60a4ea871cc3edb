"""Exact nonresonance tests, Aomoto cohomology and Milnor fiber bounds for hyperplane arrangements."""

from .arrangement import (
    Arrangement,
    builtin_arrangement,
    cone,
    decone,
    format_arrangement,
    generic_slice,
    load_arrangement,
    parse_arrangement,
)
from .lattice import Flat, IntersectionLattice, betti_numbers, build_lattice, dense_edges, is_irreducible, localize
from .milnor import MilnorBoundReport, spectrum_bounds, thm51_bound
from .nonres import (
    NonresReport,
    check_condition,
    monodromy_class,
    prop4_shift,
    residue,
    translate_exists,
)
from .oscomplex import (
    EndoSystem,
    WeightSystem,
    aomoto_cohomology,
    aomoto_complex,
    check_flat,
    circuits,
    nbc_basis,
)
from .pi1oracle import milnor_spectrum_exact, randell_presentation, twisted_b1, wiring_diagram

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "builtin_arrangement", "cone", "decone", "format_arrangement", "generic_slice",
    "load_arrangement", "parse_arrangement",
    "Flat", "IntersectionLattice", "betti_numbers", "build_lattice", "dense_edges", "is_irreducible", "localize",
    "MilnorBoundReport", "spectrum_bounds", "thm51_bound",
    "NonresReport", "check_condition", "monodromy_class", "prop4_shift", "residue", "translate_exists",
    "EndoSystem", "WeightSystem", "aomoto_cohomology", "aomoto_complex", "check_flat", "circuits", "nbc_basis",
    "milnor_spectrum_exact", "randell_presentation", "twisted_b1", "wiring_diagram",
]
