"""Exact combinatorics of Hadamard products, substitution matrices and their generators.

Exact values are returned as :class:`fractions.Fraction`; inputs accept
``Fraction``, ``int`` or ``"p/q"`` strings. Matrices are lists of full rows.
"""

from ._core import (
    DomainError,
    ResourceError,
    bell_number,
    bound,
    canonical_class,
    catalog_series,
    critical_epsilon,
    decompose_operator,
    diagrams,
    enum_partitions,
    exhaustive_probability,
    fractional_power,
    generator_probe,
    hadamard,
    hadamard_coefficient,
    intersection_matrix,
    is_substitution_with_prefunction,
    matrix_exp,
    matrix_log,
    mult_fast,
    operator_matrix,
    oracle_equivalence,
    oracle_idempotent,
    pair_from_matrix,
    partial_bell_matrix,
    partition_type,
    riordan_matrix,
    run_experiment,
    series_compose,
    series_exp,
    series_log,
    series_mul,
    stab_order,
    tri_mul,
    vector_field,
    wilson95,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
