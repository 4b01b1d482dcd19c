"""Subgroup lattices, maximal-chain lengths and the delta statistic for small finite groups."""
from .perm import (CapExceeded, Permutation, PermError, PermGroup, compose, element_order,
                   generate, inverse, parse_cycles, to_cycle_string)

__all__ = [
    "CapExceeded", "Permutation", "PermError", "PermGroup", "compose", "element_order",
    "generate", "inverse", "parse_cycles", "to_cycle_string",
]
