"""Exact computations in the level-two tower of a height-2 formal module.

The package reconstructs, from first principles and in exact arithmetic,
the residue curves, blow-up components, component counts, annulus widths
and intersection data of the level-two moduli space of deformations of a
height-2 formal module in equal characteristic.
"""

__version__ = "0.1.0"
