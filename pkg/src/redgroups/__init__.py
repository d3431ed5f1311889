"""Exact-arithmetic classification of connected reductive algebraic groups.

The library models a connected reductive group as central gluing data over
a torus and a simply connected semisimple group, decides isomorphism,
enumerates all groups of a fixed rank, evaluates variety invariants and the
structural criteria built on them, and produces certified pairs of
non-isomorphic groups whose underlying varieties are isomorphic.
"""

__version__ = "0.1.0"
