"""Coadjoint-orbit models of symmetric R-spaces.

The package builds compact real forms as dense real matrix algebras,
realizes each space in the catalogue as an adjoint orbit through a
distinguished grading element, and layers restricted-root data, momentum
geometry, systoles, symplectic capacities and Finsler norms on top.
"""

__version__ = "0.1.0"
