"""braidcalc: exact symbolic engine for braided Cartan calculus.

Verifies, on desk-scale instances, the laws of triangular Hopf algebra
actions, Drinfel'd twists and star products, braided multivector and
form calculus (Schouten bracket, insertion, differential, Lie
derivative), gauge equivalence of twisted calculi, equivariant
connections and metrics (including the braided Levi-Civita connection),
and projection of the whole apparatus to quotient algebras cut out by
H-stable ideals.
"""

from .errors import *  # noqa: F401,F403
from .ring import RATIONAL, AlgebraElement, PolyAlgebra, Ring, Scalar  # noqa: F401
