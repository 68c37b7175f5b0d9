"""The substitution as a piecewise-affine map on surface points."""
