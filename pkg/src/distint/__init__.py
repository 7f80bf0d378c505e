"""Exact distance spectra and distance integrality of complete multipartite graphs."""

from .familygen import FamilyParams, NotIntegralBase, family_params, instantiate
from .integrality import (
    InterlacingViolation,
    IntegralityReport,
    NonIntegerMultiplicity,
    NonPositiveMultiplicity,
    SolutionRow,
    VerificationReport,
    is_distance_integral,
    multiplicities_from_roots,
    verify_row,
)
from .model import PartitionSpec, SpecError, group, parse_spec, primitive_reduce, scale
from .spectral import DSpectrum, Interval, PoleError, d_polynomial_factored, eval_f, reduced_poly, spectrum

__version__ = "0.1.0"

__all__ = [
    "DSpectrum",
    "FamilyParams",
    "InterlacingViolation",
    "IntegralityReport",
    "Interval",
    "NonIntegerMultiplicity",
    "NonPositiveMultiplicity",
    "NotIntegralBase",
    "PartitionSpec",
    "PoleError",
    "SolutionRow",
    "SpecError",
    "VerificationReport",
    "d_polynomial_factored",
    "eval_f",
    "family_params",
    "group",
    "instantiate",
    "is_distance_integral",
    "multiplicities_from_roots",
    "parse_spec",
    "primitive_reduce",
    "reduced_poly",
    "scale",
    "spectrum",
    "verify_row",
]
