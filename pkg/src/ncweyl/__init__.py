"""Symbolic and numerical engine for 2D noncommutative quantum mechanics.

The package verifies the deformed Heisenberg-Weyl algebra of a plane with
both position-position and momentum-momentum noncommutativity: exact normal
ordering and commutators, the deformed/tilde ladder constructions and their
Fock spaces, the exact oscillator spectrum, and the proportionality
constraint between the two noncommutative parameters.
"""

from .coeff import Coefficient, GaussianRational, Monomial, xi_reduce
from .algebra import (
    AlgebraTable,
    Expr,
    SubstMap,
    adjoint,
    commutator,
    expr_equal,
    get_algebra,
    normal_order,
    register_algebra,
    substitute,
    vacuum_expectation,
)

__version__ = "0.1.0"
