"""Root posets, ideal-type hyperplane arrangements and fibration certificates."""
from .arrangement import (
    Arrangement,
    FlatBudgetExceeded,
    build_lattice,
    characteristic_polynomial,
    from_ideal,
    is_modular,
    is_supersolvable,
)
from .certify import certify, check_condition, classify_Dn, count_certified
from .ideals import Ideal, enumerate_ideals, exponents, ideal_generated_by
from .kernels import BACKEND
from .roots import RootSystem, RootSystemError, build_root_system, maximal_parabolic, parse_root_label

__version__ = "0.1.0"
