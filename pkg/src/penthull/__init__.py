"""Combinatorics and piecewise-affine geometry of the pentagonal substitution tiling."""
