"""Randić index versus matching number: invariants, constructions, bound checks and exhaustive search."""
