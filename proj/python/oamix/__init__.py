"""Blocked order-of-addition mixture and component-amount designs."""

from ._core import (
    Design,
    OamixError,
    catalog,
    catalog_names,
    check_blocks,
    enumerate_orderings,
    evaluate,
    expand,
    fds,
    fit,
    model_matrix,
    power,
    pwo_from_permutation,
    pwo_to_permutation,
    t_test_power,
    validate,
)

__all__ = [
    "Design",
    "OamixError",
    "catalog",
    "catalog_names",
    "check_blocks",
    "enumerate_orderings",
    "evaluate",
    "expand",
    "fds",
    "fit",
    "model_matrix",
    "power",
    "pwo_from_permutation",
    "pwo_to_permutation",
    "t_test_power",
    "validate",
]
