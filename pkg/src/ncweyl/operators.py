"""Registered algebras and the canonical operator constructions.

Defines the deformed and undeformed phase-space algebras, the deformed
(hat), tilde and undeformed bosonic algebras, together with the maps that
connect them: the Bopp shift to undeformed variables, the ladder ansatz
a_i = c1*(x_i + i*c2*p_i) and its solved form with c2 = sqrt(theta/eta),
the tilde mixing with normalizations alpha_{1,2} = 1 +- xi^2*sqrt(theta*eta)/hbar,
and the representation of the deformed ladder directly in undeformed modes.

All tables are registered once at import; everything else returns immutable
expressions built from them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache

from .algebra import AlgebraTable, Expr, SubstMap, adjoint, register_algebra
from .coeff import Coefficient

__all__ = [
    "DEFORMED",
    "UNDEFORMED",
    "DEFORMED_THETA_ONLY",
    "HATBOSE",
    "TILDEBOSE",
    "BOSE",
    "SYMBOLS",
    "I",
    "HBAR",
    "THETA",
    "ETA",
    "MU",
    "OMEGA",
    "XI",
    "GAMMA",
    "C1",
    "C2",
    "C2P",
    "ALPHA1",
    "ALPHA2",
    "KAPPA",
    "C1_SOLVED",
    "C2_SOLVED",
    "alpha_bindings",
    "commutative_bindings",
    "oscillator_constraint_bindings",
    "bopp_map",
    "bopp_map_unit_xi",
    "bopp_map_theta_only",
    "hat_ansatz_map",
    "hat_from_phase_map",
    "phase_from_hat_map",
    "tilde_annihilator",
    "hat_to_tilde_map",
    "a_in_phase",
    "phase_from_bose_map",
    "hat_in_a_map",
    "mechanical_momentum",
    "x_tilde",
    "p_tilde",
    "hamiltonian_deformed",
    "hamiltonian_tilde_vars",
    "hamiltonian_number_form",
    "hat_number_op",
    "tilde_number_op",
    "hat_state",
    "tilde_state",
    "state_normalization",
    "footnote_a_prime",
    "footnote_a_double_prime",
]

I = Coefficient.i()
ONE = Coefficient.one()
HALF = Coefficient.rational(1, 2)

HBAR = Coefficient.symbol("hbar")
THETA = Coefficient.symbol("theta")
ETA = Coefficient.symbol("eta")
MU = Coefficient.symbol("mu")
OMEGA = Coefficient.symbol("omega")
XI = Coefficient.symbol("xi")
GAMMA = Coefficient.symbol("gamma")
C1 = Coefficient.symbol("c1")
C2 = Coefficient.symbol("c2")
C2P = Coefficient.symbol("c2p")
ALPHA1 = Coefficient.symbol("alpha1")
ALPHA2 = Coefficient.symbol("alpha2")
Q = Coefficient.symbol("q")
C_LIGHT = Coefficient.symbol("c")
B3 = Coefficient.symbol("B3")

#: symbol names the expression DSL accepts
SYMBOLS = (
    "hbar",
    "theta",
    "eta",
    "mu",
    "omega",
    "xi",
    "gamma",
    "c1",
    "c2",
    "c2p",
    "alpha1",
    "alpha2",
    "q",
    "c",
    "B3",
)

#: the cross commutator [a^_1, a^_2-dagger] of the deformed bosonic algebra
KAPPA = I * XI ** 2 * THETA.sqrt() * ETA.sqrt() / HBAR

#: solved ladder constants: c2 = sqrt(theta/eta), c1 = sqrt(1/(2*hbar*c2))
C2_SOLVED = (THETA / ETA).sqrt()
C1_SOLVED = (ONE / (2 * HBAR * C2_SOLVED)).sqrt()


def _phase_table(name, xs, ps, xx, pp, xp):
    x1, x2 = xs
    p1, p2 = ps
    comm = {
        (x1, x2): xx,
        (p1, p2): pp,
        (x1, p1): xp,
        (x2, p2): xp,
    }
    return AlgebraTable(name, (x1, x2, p1, p2), comm)


def _boson_table(name, b1, b2, cross):
    d1, d2 = b1 + "_dag", b2 + "_dag"
    comm = {
        (d1, b1): -ONE,          # [a1-dagger, a1]
        (d2, b2): -ONE,
        (d1, b2): cross,         # [a1-dagger, a2] = -[a2, a1-dagger] = cross
        (d2, b1): -cross,        # [a2-dagger, a1] = -[a1, a2-dagger]
    }
    adjoints = {b1: d1, d1: b1, b2: d2, d2: b2}
    return AlgebraTable(name, (d1, d2, b1, b2), comm, adjoints, annihilators=(b1, b2))


DEFORMED = register_algebra(
    _phase_table(
        "deformed",
        ("xh1", "xh2"),
        ("ph1", "ph2"),
        xx=I * XI ** 2 * THETA,
        pp=I * XI ** 2 * ETA,
        xp=I * HBAR,
    )
)

UNDEFORMED = register_algebra(
    _phase_table(
        "undeformed",
        ("x1", "x2"),
        ("p1", "p2"),
        xx=Coefficient.zero(),
        pp=Coefficient.zero(),
        xp=I * HBAR,
    )
)

# eta = 0 limit: only position-position noncommuting, xi = 1
DEFORMED_THETA_ONLY = register_algebra(
    _phase_table(
        "deformed_eta0",
        ("xh1", "xh2"),
        ("ph1", "ph2"),
        xx=I * THETA,
        pp=Coefficient.zero(),
        xp=I * HBAR,
    )
)

HATBOSE = register_algebra(_boson_table("hatbose", "ah1", "ah2", cross=KAPPA))
TILDEBOSE = register_algebra(_boson_table("tildebose", "at1", "at2", cross=Coefficient.zero()))
BOSE = register_algebra(_boson_table("bose", "a1", "a2", cross=Coefficient.zero()))


def _gen(table, name):
    return Expr.generator(table, name)


# -- parameter bindings -------------------------------------------------

def alpha_bindings() -> dict:
    """alpha_{1,2} -> 1 +- xi^2*sqrt(theta*eta)/hbar."""
    shift = XI ** 2 * THETA.sqrt() * ETA.sqrt() / HBAR
    return {"alpha1": ONE + shift, "alpha2": ONE - shift}


def commutative_bindings() -> dict:
    """theta = eta = 0 with the ladder scale held at c2 = 1/(mu*omega)."""
    zero = Coefficient.zero()
    c2_fixed = ONE / (MU * OMEGA)
    return {"theta": zero, "eta": zero, "c2": c2_fixed, "c2p": c2_fixed}


def oscillator_constraint_bindings() -> dict:
    """eta -> mu^2*omega^2*theta (the oscillator constraint)."""
    return {"eta": MU ** 2 * OMEGA ** 2 * THETA}


# -- maps between algebras ----------------------------------------------

@cache
def bopp_map(unit_xi: bool = False) -> SubstMap:
    """Deformed variables realized in undeformed ones (the Bopp shift).

    With ``unit_xi`` the overall scaling factor is dropped, which is the
    rescaling that breaks the x-p commutator by 1 + theta*eta/4*hbar^2.
    """
    scale = ONE if unit_xi else XI
    x1, x2 = _gen(UNDEFORMED, "x1"), _gen(UNDEFORMED, "x2")
    p1, p2 = _gen(UNDEFORMED, "p1"), _gen(UNDEFORMED, "p2")
    tk = THETA / (2 * HBAR)
    ek = ETA / (2 * HBAR)
    image = {
        "xh1": scale * (x1 - tk * p2),
        "xh2": scale * (x2 + tk * p1),
        "ph1": scale * (p1 + ek * x2),
        "ph2": scale * (p2 - ek * x1),
    }
    return SubstMap(DEFORMED, UNDEFORMED, image)


def bopp_map_unit_xi() -> SubstMap:
    return bopp_map(unit_xi=True)


@cache
def bopp_map_theta_only() -> SubstMap:
    """eta = 0 Bopp shift (xi = 1): momenta stay canonical."""
    x1, x2 = _gen(UNDEFORMED, "x1"), _gen(UNDEFORMED, "x2")
    p1, p2 = _gen(UNDEFORMED, "p1"), _gen(UNDEFORMED, "p2")
    tk = THETA / (2 * HBAR)
    image = {
        "xh1": x1 - tk * p2,
        "xh2": x2 + tk * p1,
        "ph1": p1,
        "ph2": p2,
    }
    return SubstMap(DEFORMED_THETA_ONLY, UNDEFORMED, image)


def _ladder_images(c1: Coefficient, c2: Coefficient) -> dict:
    xs = (_gen(DEFORMED, "xh1"), _gen(DEFORMED, "xh2"))
    ps = (_gen(DEFORMED, "ph1"), _gen(DEFORMED, "ph2"))
    image = {}
    for k, (x, p) in enumerate(zip(xs, ps), start=1):
        image[f"ah{k}"] = c1 * (x + I * c2 * p)
        image[f"ah{k}_dag"] = c1 * (x - I * c2 * p)
    return image


@cache
def hat_ansatz_map() -> SubstMap:
    """General ladder ansatz with c1, c2 left symbolic."""
    return SubstMap(HATBOSE, DEFORMED, _ladder_images(C1, C2))


@cache
def hat_from_phase_map() -> SubstMap:
    """Solved deformed ladder: a^_i = c1*(x^_i + i*sqrt(theta/eta)*p^_i)."""
    return SubstMap(HATBOSE, DEFORMED, _ladder_images(C1_SOLVED, C2_SOLVED))


@cache
def phase_from_hat_map(symbolic_scale: bool = False) -> SubstMap:
    """Inverse of the solved ladder: deformed x, p in hat modes.

    With ``symbolic_scale`` the ladder scale stays the symbol ``c2`` (useful
    for limits where the solved sqrt(theta/eta) would be 0/0).
    """
    c2 = C2 if symbolic_scale else C2_SOLVED
    xk = (HBAR * c2 / 2).sqrt()
    pk = -I * (HBAR / (2 * c2)).sqrt()
    image = {}
    for k in (1, 2):
        a = _gen(HATBOSE, f"ah{k}")
        ad = _gen(HATBOSE, f"ah{k}_dag")
        image[f"xh{k}"] = xk * (a + ad)
        image[f"ph{k}"] = pk * (a - ad)
    return SubstMap(DEFORMED, HATBOSE, image)


@cache
def tilde_annihilator(mode: int) -> Expr:
    """Tilde modes over the hat algebra: at_1 ~ (ah_1 + i*ah_2)/sqrt(2*alpha1)."""
    a1, a2 = _gen(HATBOSE, "ah1"), _gen(HATBOSE, "ah2")
    if mode == 1:
        return ((2 * ALPHA1).sqrt()).inverse() * (a1 + I * a2)
    if mode == 2:
        return ((2 * ALPHA2).sqrt()).inverse() * (a1 - I * a2)
    raise ValueError("mode must be 1 or 2")


@cache
def hat_to_tilde_map() -> SubstMap:
    """Hat modes in tilde modes (inverse of the tilde mixing)."""
    u = (2 * ALPHA1).sqrt()
    v = (2 * ALPHA2).sqrt()
    t1, t2 = _gen(TILDEBOSE, "at1"), _gen(TILDEBOSE, "at2")
    t1d, t2d = _gen(TILDEBOSE, "at1_dag"), _gen(TILDEBOSE, "at2_dag")
    image = {
        "ah1": HALF * (u * t1 + v * t2),
        "ah2": -I * HALF * (u * t1 - v * t2),
        "ah1_dag": HALF * (u * t1d + v * t2d),
        "ah2_dag": I * HALF * (u * t1d - v * t2d),
    }
    return SubstMap(HATBOSE, TILDEBOSE, image)


def a_in_phase(mode: int, c2_prime: Coefficient = C2P) -> Expr:
    """Undeformed ladder a_i = (x_i + i*c2'*p_i)/sqrt(2*hbar*c2')."""
    c1p = (ONE / (2 * HBAR * c2_prime)).sqrt()
    x = _gen(UNDEFORMED, f"x{mode}")
    p = _gen(UNDEFORMED, f"p{mode}")
    return c1p * (x + I * c2_prime * p)


@cache
def phase_from_bose_map() -> SubstMap:
    """Undeformed x, p in undeformed modes (scale symbol c2p)."""
    xk = (HBAR * C2P / 2).sqrt()
    pk = -I * (HBAR / (2 * C2P)).sqrt()
    image = {}
    for k in (1, 2):
        a = _gen(BOSE, f"a{k}")
        ad = _gen(BOSE, f"a{k}_dag")
        image[f"x{k}"] = xk * (a + ad)
        image[f"p{k}"] = pk * (a - ad)
    return SubstMap(UNDEFORMED, BOSE, image)


@cache
def hat_in_a_map() -> SubstMap:
    """Deformed modes directly in undeformed ones:
    ah_i = xi*(a_i + (i/2*hbar)*sqrt(theta*eta)*eps_ij*a_j)."""
    a1, a2 = _gen(BOSE, "a1"), _gen(BOSE, "a2")
    mix = I * THETA.sqrt() * ETA.sqrt() / (2 * HBAR)
    img1 = XI * (a1 + mix * a2)
    img2 = XI * (a2 - mix * a1)
    image = {
        "ah1": img1,
        "ah2": img2,
        "ah1_dag": adjoint(img1),
        "ah2_dag": adjoint(img2),
    }
    return SubstMap(HATBOSE, BOSE, image)


def mechanical_momentum(mode: int) -> Expr:
    """p - (q/c) A in the symmetric gauge A = (-B3*x2/2, B3*x1/2, 0)."""
    k = Q * B3 / (2 * C_LIGHT)
    p1, p2 = _gen(UNDEFORMED, "p1"), _gen(UNDEFORMED, "p2")
    x1, x2 = _gen(UNDEFORMED, "x1"), _gen(UNDEFORMED, "x2")
    if mode == 1:
        return p1 + k * x2
    if mode == 2:
        return p2 - k * x1
    raise ValueError("mode must be 1 or 2")


# -- tilde phase space ----------------------------------------------------

_SQRT2_INV = Coefficient.rational(1, 2).sqrt()


@cache
def x_tilde() -> Expr:
    return _SQRT2_INV * (_gen(DEFORMED, "xh1") + I * _gen(DEFORMED, "xh2"))


@cache
def p_tilde() -> Expr:
    return _SQRT2_INV * (_gen(DEFORMED, "ph1") - I * _gen(DEFORMED, "ph2"))


# -- Hamiltonians ----------------------------------------------------------

@cache
def hamiltonian_deformed() -> Expr:
    """Isotropic oscillator p^_i p^_i/2mu + mu*omega^2 x^_i x^_i/2."""
    kin = Expr.zero(DEFORMED)
    pot = Expr.zero(DEFORMED)
    for k in (1, 2):
        p = _gen(DEFORMED, f"ph{k}")
        x = _gen(DEFORMED, f"xh{k}")
        kin = kin + p * p
        pot = pot + x * x
    return (ONE / (2 * MU)) * kin + (MU * OMEGA ** 2 * HALF) * pot


@cache
def hamiltonian_tilde_vars() -> Expr:
    """Same Hamiltonian written in the tilde phase variables."""
    xt, pt = x_tilde(), p_tilde()
    xtd, ptd = adjoint(xt), adjoint(pt)
    kin = (ONE / (2 * MU)) * (pt * ptd + ptd * pt)
    pot = (MU * OMEGA ** 2 * HALF) * (xt * xtd + xtd * xt)
    return kin + pot


@cache
def hamiltonian_number_form() -> Expr:
    """hbar*(omega~_1 N~_1 + omega~_2 N~_2 + omega) with omega~_i = alpha_i*omega."""
    total = Expr.identity(TILDEBOSE, HBAR * OMEGA)
    for k, alpha in ((1, ALPHA1), (2, ALPHA2)):
        total = total + (HBAR * alpha * OMEGA) * tilde_number_op(k)
    return total


def hat_number_op(mode: int) -> Expr:
    return _gen(HATBOSE, f"ah{mode}_dag") * _gen(HATBOSE, f"ah{mode}")


def tilde_number_op(mode: int) -> Expr:
    return _gen(TILDEBOSE, f"at{mode}_dag") * _gen(TILDEBOSE, f"at{mode}")


# -- states ---------------------------------------------------------------

def state_normalization(m: int, n: int) -> Coefficient:
    """(m! n!)^(-1/2), the constant used for both hat and tilde states."""
    import math

    return Coefficient.rational(1, math.factorial(m) * math.factorial(n)).sqrt()


def hat_state(m: int, n: int) -> Expr:
    """Hat state word (ah1-dagger)^m (ah2-dagger)^n with (m!n!)^(-1/2)."""
    word = ("ah1_dag",) * m + ("ah2_dag",) * n
    return Expr.word(HATBOSE, word, state_normalization(m, n))


def tilde_state(m: int, n: int) -> Expr:
    """Tilde state (at1~-dagger)^m (at2~-dagger)^n over the hat algebra."""
    t1d = adjoint(tilde_annihilator(1))
    t2d = adjoint(tilde_annihilator(2))
    out = Expr.identity(HATBOSE, state_normalization(m, n))
    for _ in range(m):
        out = out * t1d
    for _ in range(n):
        out = out * t2d
    return out


# -- footnote operators -----------------------------------------------------

@cache
def footnote_a_prime(mode: int) -> Expr:
    """Alternative ladder that satisfies undeformed bosonic relations
    without constraining theta or eta; reduces to the undeformed a_i."""
    nu = XI * (ONE - THETA * ETA / (4 * HBAR ** 2))
    pref = nu.inverse() * (ONE / (2 * HBAR * C2P)).sqrt()
    x = (_gen(DEFORMED, "xh1"), _gen(DEFORMED, "xh2"))
    p = (_gen(DEFORMED, "ph1"), _gen(DEFORMED, "ph2"))
    i = mode - 1
    j = 1 - i
    eps = ONE if mode == 1 else -ONE
    bracket = (
        x[i]
        - eps * (I * C2P * ETA / (2 * HBAR)) * x[j]
        + I * C2P * p[i]
        + eps * (THETA / (2 * HBAR)) * p[j]
    )
    return pref * bracket


@cache
def footnote_a_double_prime(mode: int) -> Expr:
    """The eta = 0 variant over the theta-only algebra."""
    pref = (ONE / (2 * HBAR * C2P)).sqrt()
    x = (_gen(DEFORMED_THETA_ONLY, "xh1"), _gen(DEFORMED_THETA_ONLY, "xh2"))
    p = (_gen(DEFORMED_THETA_ONLY, "ph1"), _gen(DEFORMED_THETA_ONLY, "ph2"))
    i = mode - 1
    j = 1 - i
    eps = ONE if mode == 1 else -ONE
    bracket = x[i] + I * C2P * p[i] + eps * (THETA / (2 * HBAR)) * p[j]
    return pref * bracket
