"""Exact symbolic engine for descendent invariants of 3-folds.

Implements two descendent algebras (one on the stable-pairs side, one on the
Gromov-Witten side), Virasoro-type operators on both, the transformation
intertwining them, and an equivariant vertex expansion that reproduces the
transformation's one-, two- and three-point coefficients.
"""

__version__ = "0.1.0"
