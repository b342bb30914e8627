"""Exact computations in absolutely free multioperator algebras."""

from .errors import DomainError, InvariantViolation, OmegaError, ParseError, ValidationError
from .magma import LEX, RLEX, Monomial, OrderingSpec, nu, parse_term, print_term, x
from .polyring import GroebnerBasis, Polynomial, groebner, parse_polynomial, quotient_hilbert
from .series import Series, solve_free_series
from .signature import OmegaSignature, gen_fn, parse_signature

__version__ = "0.1.0"

__all__ = [
    "DomainError", "InvariantViolation", "OmegaError", "ParseError", "ValidationError",
    "LEX", "RLEX", "Monomial", "OrderingSpec", "nu", "parse_term", "print_term", "x",
    "GroebnerBasis", "Polynomial", "groebner", "parse_polynomial", "quotient_hilbert",
    "Series", "solve_free_series", "OmegaSignature", "gen_fn", "parse_signature",
]
