"""Bounded gaps between almost primes and their arithmetic functions.

Linear-form tuples, relation diagrams, adjoining transformations, an exact
sieve functional with a certified optimizer, and desk-scale enumeration.
"""

from .adjoin import AdjoinSpec, AdjoinTransform, apply_tuple, construct
from .arith import Omega, d, exponent_pattern, factorize, h, is_prime, omega, sequence
from .diagrams import RelationDiagram, canonical_diagram, check, shift_conclusion
from .forms import FormTuple, LinearForm, diam, dist, is_admissible, max_diameter, singular_series
from .loglinear import LogLinearValue, certify_sign
from .optimize import maximize, minimal_k
from .poly import Poly
from .sieve import J0, J1, J2, J3, J_total, SieveConfig, evaluate

__version__ = "0.1.0"

__all__ = [
    "AdjoinSpec", "AdjoinTransform", "apply_tuple", "construct",
    "Omega", "d", "exponent_pattern", "factorize", "h", "is_prime", "omega", "sequence",
    "RelationDiagram", "canonical_diagram", "check", "shift_conclusion",
    "FormTuple", "LinearForm", "diam", "dist", "is_admissible", "max_diameter", "singular_series",
    "LogLinearValue", "certify_sign", "maximize", "minimal_k", "Poly",
    "J0", "J1", "J2", "J3", "J_total", "SieveConfig", "evaluate",
]
