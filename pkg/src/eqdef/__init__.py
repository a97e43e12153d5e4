"""Tangent spaces of equivariant deformations of curves in characteristic p."""
