"""Exact-arithmetic lab for the constrained discrete logarithm problem.

Constructs subsets of Z_p with provable hardness certificates, computes
and bounds their covering complexities (generic, baby-step giant-step,
and the slope-one restriction), runs the matching attacks against an
encoded-group oracle, and verifies the supporting combinatorial and
geometric identities at desk scale.
"""

from .verify import VERSION as __version__

__all__ = ["__version__"]
