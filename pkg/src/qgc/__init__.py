"""Exact kernel for two-parameter quantum groups of type B_n.

Subpackages cover the coefficient field (scalars), the underlying root
system (rootdata), the algebra presentation with its triangular normal form
(qgroup), the skew and Rosso pairings (pairing), weight modules (repn), and
the Harish-Chandra / central-element machinery (center).  The ``qgc``
console script exposes the main computations.
"""

__version__ = "0.1.0"
