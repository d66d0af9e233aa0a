"""Finite lattices, their congruences, and exhaustive censuses of congruence counts."""
from .canonical import canonical_code, is_isomorphic, isomorphic
from .congruence import (
    Congruence, all_congruences, congruence_atoms, congruence_join, congruence_lattice,
    congruence_meet, make_congruence, principal_congruence, quotient,
)
from .construct import chain, direct_product, horizontal_sum, named, ordinal_sum
from .dsl import build, evaluate, parse_expr, render
from .errors import (
    BadIndexing, EmptyInterval, LatticeError, NotALattice, NotAPoset, NotCompatible,
    ParseError, SizeBound, SummandTooSmall, TrivialLattice, UnknownName,
)
from .lattice import Lattice, atoms_of, dual, filters, ideals, interval, validate_lattice

__version__ = "0.1.0"
