"""Dimensional analysis and the constraint between the two deformation parameters.

The commuting-mode condition fixes only the ratio sqrt(theta/eta) in terms
of the ladder scale, so eta = K*theta with K = 1/c2'^2 of dimension
(mass/time)^2.  For a system whose characteristic parameters span the
dimension time/mass uniquely, exact exponent matching determines c2' up to
a dimensionless constant; for the harmonic oscillator, equality of vacuum
kinetic and potential energy resolves that constant to one, giving
eta = mu^2*omega^2*theta.  For other systems the module reports the
solution (or solution family) and leaves the dimensionless residue
symbolic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Mapping, Optional

from .algebra import map_coefficients, vacuum_expectation
from .coeff import Coefficient, UnboundSymbol
from .operators import GAMMA, HBAR, MU, OMEGA, phase_from_bose_map

__all__ = [
    "NoSolution",
    "NonUniqueSolution",
    "SystemSpec",
    "ConstraintResult",
    "OSCILLATOR",
    "dimensional_solve",
    "dimension_of",
    "monomial_from_exponents",
    "oscillator_vacuum_energies",
    "fix_gamma_oscillator",
    "eta_from_theta",
]

Dimension = tuple  # (mass, length, time) exponents as Fractions


class NoSolution(Exception):
    """No product of the parameters has the target dimension."""


class NonUniqueSolution(Exception):
    """The parameter dimensions are dependent; a family of products works."""

    def __init__(self, message: str, free_parameters=()):
        super().__init__(message)
        self.free_parameters = tuple(free_parameters)


@dataclass(frozen=True)
class SystemSpec:
    """Characteristic parameters with (mass, length, time) dimension triples."""

    name: str
    params: Mapping[str, Dimension]

    def __post_init__(self):
        cleaned = {
            k: tuple(Fraction(x) for x in v) for k, v in dict(self.params).items()
        }
        for k, v in cleaned.items():
            if len(v) != 3:
                raise ValueError(f"dimension of {k} must be a (mass, length, time) triple")
        object.__setattr__(self, "params", cleaned)


OSCILLATOR = SystemSpec(
    "oscillator",
    {
        "mu": (1, 0, 0),        # mass
        "omega": (0, 0, -1),    # frequency
        "hbar": (1, 2, -1),     # action
    },
)


def dimensional_solve(spec: SystemSpec, target: Dimension) -> dict:
    """Exponents t_k with prod(param_k^t_k) of the target dimension.

    Solves the exact rational linear system of dimension exponents;
    raises :class:`NoSolution` or :class:`NonUniqueSolution` with a
    diagnosis when the system is inconsistent or underdetermined.
    """
    names = list(spec.params)
    target = tuple(Fraction(x) for x in target)
    if len(target) != 3:
        raise ValueError("target must be a (mass, length, time) triple")

    # rows: mass/length/time; columns: parameters; augmented with target
    rows = [
        [spec.params[n][d] for n in names] + [target[d]] for d in range(3)
    ]
    ncols = len(names)
    pivot_cols = []
    r = 0
    for col in range(ncols):
        pivot = next((k for k in range(r, 3) if rows[k][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = rows[r][col]
        rows[r] = [x / scale for x in rows[r]]
        for k in range(3):
            if k != r and rows[k][col] != 0:
                factor = rows[k][col]
                rows[k] = [x - factor * y for x, y in zip(rows[k], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == 3:
            break
    for k in range(r, 3):
        if all(x == 0 for x in rows[k][:ncols]) and rows[k][ncols] != 0:
            raise NoSolution(
                f"no product of {names} has dimension {tuple(map(str, target))}"
            )
    free = [names[c] for c in range(ncols) if c not in pivot_cols]
    if free:
        raise NonUniqueSolution(
            f"dimensions of {names} are dependent; free parameters: {free}",
            free_parameters=free,
        )
    solution = {n: Fraction(0) for n in names}
    for row_idx, col in enumerate(pivot_cols):
        solution[names[col]] = rows[row_idx][ncols]
    return solution


def monomial_from_exponents(exponents: Mapping[str, Fraction]) -> Coefficient:
    out = Coefficient.one()
    for name, e in exponents.items():
        if e:
            out = out * Coefficient.symbol(name, e)
    return out


def dimension_of(value: Coefficient, spec: SystemSpec) -> Dimension:
    """Formal (mass, length, time) dimension of a pure-monomial coefficient.

    Numeric prime bases are dimensionless; every symbol must be a spec
    parameter.
    """
    dims = [Fraction(0)] * 3
    for key, e in value.monomial_exponents().items():
        if key.isdigit():
            continue
        if key not in spec.params:
            raise UnboundSymbol(f"{key!r} is not a parameter of {spec.name}")
        for d in range(3):
            dims[d] += spec.params[key][d] * e
    return tuple(dims)


@dataclass(frozen=True)
class ConstraintResult:
    """Proportionality eta = K*theta with K = 1/c2'^2 exactly."""

    system: str
    c2_prime: Coefficient
    K: Coefficient
    gamma_symbol: Optional[str] = None
    gamma_value: Optional[Coefficient] = None


@cache
def oscillator_vacuum_energies():
    """Vacuum expectations with the ladder scale c2' = gamma/(mu*omega).

    Returns (E_kin, E_pot, summed kinetic expectation): the per-mode
    energies hbar*omega/(4*gamma) and gamma*hbar*omega/4, plus
    <0|p_i p_i|0> = hbar*mu*omega/gamma with both modes summed.
    """
    scale = {"c2p": GAMMA / (MU * OMEGA)}
    pm = phase_from_bose_map()
    p1 = map_coefficients(pm.image["p1"], lambda c: c.substitute(scale))
    p2 = map_coefficients(pm.image["p2"], lambda c: c.substitute(scale))
    x1 = map_coefficients(pm.image["x1"], lambda c: c.substitute(scale))
    e_kin = (Coefficient.one() / (2 * MU)) * vacuum_expectation(p1 * p1)
    e_pot = (MU * OMEGA ** 2 * Coefficient.rational(1, 2)) * vacuum_expectation(x1 * x1)
    summed = vacuum_expectation(p1 * p1) + vacuum_expectation(p2 * p2)
    return e_kin, e_pot, summed


@cache
def fix_gamma_oscillator() -> ConstraintResult:
    """Resolve the oscillator's dimensionless constant.

    Equality of vacuum kinetic and potential energy forces gamma^2 = 1 and
    positivity of the kinetic energy picks gamma = 1, so c2' = 1/(mu*omega)
    and K = mu^2*omega^2.
    """
    e_kin, e_pot, _ = oscillator_vacuum_energies()
    gamma_sq = e_pot / e_kin  # equals gamma^2 exactly
    if gamma_sq != GAMMA ** 2:
        raise AssertionError("vacuum energy ratio is not gamma^2")
    gamma = Coefficient.one()  # positive root of gamma^2 = 1
    if e_kin.substitute({"gamma": gamma}) != e_pot.substitute({"gamma": gamma}):
        raise AssertionError("gamma = 1 does not equalize the vacuum energies")
    c2_prime = (GAMMA / (MU * OMEGA)).substitute({"gamma": gamma})
    K = c2_prime ** -2
    return ConstraintResult("oscillator", c2_prime, K, "gamma", gamma)


def eta_from_theta(K: Coefficient, theta: float, values: Mapping[str, complex]) -> float:
    """Evaluate eta = K*theta on the constraint line."""
    k = K.evaluate(values)
    if abs(k.imag) > 1e-12 * max(1.0, abs(k.real)):
        raise ValueError(f"K evaluates to a non-real value {k}")
    return k.real * theta
