"""Exact arithmetic for quaternion orders over Z and their ternary forms."""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    DegenerateFormError,
    DegenerateLatticeError,
    HypothesisViolationError,
    InputError,
    InternalConsistencyError,
    NotAnOrderError,
    QuatError,
)
from .forms import (
    TernaryForm,
    form_content,
    half_discriminant,
    local_normal_form,
    ramified_nonbasic_normal_form,
    transform,
)
from .lattices import CanonicalLatticeBasis, canonicalize
from .numtheory import content, factor_trial, is_prime, sqrt_mod, valuation
from .orders import (
    GoodBasisOrder,
    QuatElement,
    QuatLattice,
    clifford_order,
    codifferent,
    conj,
    elem_disc,
    gram_and_discrd,
    is_integral_lattice,
    is_order,
    lattice_product,
    lattice_scale,
    lattice_sum,
    left_order,
    multiply,
    normalize_good_basis,
    nrd,
    order_form,
    right_order,
    trd,
    unit_lattice,
)

__all__ = [name for name in dir() if not name.startswith("_")]
