"""Exact computations with split symplectic Hodge rings."""

from .constructors import (
    elliptic_block,
    elliptic_weight1_ring,
    kunneth,
    point_ring,
    punctured_line_block,
    standard_form,
    tensor_element,
    torus_ring,
)
from .document import load, save
from .errors import *  # noqa: F401,F403
from .exactla import Matrix, Subspace, image, intersect, kernel, quotient_dim, rank, rref, subspace_sum
from .filt import Filtration, filtrations_equal, g_sigma, hodge_filtration, reconstruct_check, weight_filtration
from .lefschetz import (
    ChlWitness,
    CheckReport,
    NilpotencyTable,
    SymplecticVerdict,
    chl_iff_pure_weight2_check,
    curious_hl,
    geometric_vanishing_check,
    is_hodge_tate,
    is_symplectic,
    lower_bounds_check,
    mixedis_check,
    nagai_pattern_check,
    nilpotency_indices,
    pure_weight,
    weight_invariance_check,
    weight_vanishing_check_w1,
)
from .ring import DeligneSplitting, Element, HodgeRing, ValidationReport, hodge_numbers, multiply, power, validate, weight_numbers

__version__ = "0.1.0"
