"""Exact arithmetic substrate: polynomials, truncated series, symmetric functions."""
from .partitions import Partition, partitions, partitions_upto
from .polynomial import Generator, GradedPolynomial, cp_generator
from .series import (TruncSeries, identity_series, series_compose, series_revert,
                     substitute)
from .symfun import elementary_in_monomial, monomial_in_elementary, symfun_convert

__all__ = [
    "Generator", "GradedPolynomial", "Partition", "TruncSeries", "cp_generator",
    "elementary_in_monomial", "identity_series", "monomial_in_elementary",
    "partitions", "partitions_upto", "series_compose", "series_revert",
    "substitute", "symfun_convert",
]
