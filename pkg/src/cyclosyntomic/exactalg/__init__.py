"""Exact arithmetic: rationals, polynomials, cyclotomic data, number rings, component rings."""

from fractions import Fraction

from .arith import divisors, euler_phi, prime_factors, valuation
from .component import ANY_PRIME, ComponentElement, RPoly, component_invert, exact_divide
from .cyclotomic import (
    cyclotomic_coeffs,
    cyclotomic_poly,
    cyclotomic_resultant_primes,
    in_p_qminus1_power,
    q_integer,
    q_integer_at_power,
)
from .numberring import (
    FrobeniusLift,
    NumberRing,
    RElement,
    cyclotomic_integers,
    frobenius_lift,
    gaussian_integers,
    integers,
    lift_for_level,
)
from .poly import ZERO_DEGREE, Poly, poly_invmod, resultant

Rational = Fraction

__all__ = [
    "ANY_PRIME",
    "ComponentElement",
    "Fraction",
    "FrobeniusLift",
    "NumberRing",
    "Poly",
    "RElement",
    "RPoly",
    "Rational",
    "ZERO_DEGREE",
    "component_invert",
    "cyclotomic_coeffs",
    "cyclotomic_integers",
    "cyclotomic_poly",
    "cyclotomic_resultant_primes",
    "divisors",
    "euler_phi",
    "exact_divide",
    "frobenius_lift",
    "gaussian_integers",
    "in_p_qminus1_power",
    "integers",
    "lift_for_level",
    "prime_factors",
    "q_integer",
    "q_integer_at_power",
    "poly_invmod",
    "resultant",
    "valuation",
]
