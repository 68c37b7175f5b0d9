"""Combinatorial tilings: construction, balls, isomorphisms and JSON."""
