"""Exact-arithmetic toolkit for regrouping subgroups of the reals.

Transport a group law along a homeomorphism, put single-fixed-point
involutions into inversion normal form, and test whether a map of a
lattice or dense subgroup can be conjugate to a shift.
"""
from .dynamics import (
    MAdicValuation,
    ParityBlocks,
    ResidueBlocks,
    example_map,
    monotone_to_shift,
    orbit_decomposition,
    shift_obstruction,
)
from .errors import RegroupError
from .groups import (
    Cyclic,
    FullRationals,
    GroupElement,
    MAdic,
    Window,
    contains,
    enumerate_window,
    native_add,
    native_neg,
    neutral,
)
from .involution import build_h, build_h_tilde, normalize, positive_part, unique_fixed_point
from .maps import (
    PLMap,
    Piece,
    TableMap,
    Tail,
    compose,
    evaluate,
    fixed_points,
    identity,
    invert,
    is_involution,
    monotonicity,
    negation,
    translation,
)
from .rationals import Rational, parse_rational
from .transport import (
    TransportedGroup,
    check_conjugacy,
    equivalence_suite,
    round_trip,
    verify_axioms,
    verify_isomorphism,
)

__version__ = "0.1.0"
