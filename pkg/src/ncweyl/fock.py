"""Truncated two-mode Fock-space backend.

Dense complex matrices for every operator the symbolic engine can write,
with the basis ordering |n1, n2> -> index n1*N + n2.  Identities are
checked on the buffered subspace n1 + n2 <= N - 1 - buffer, where
truncation of operators of bounded ladder degree is exact, so an
infinite-dimensional identity becomes a finite statement checkable to
rounding.

Two realization routes are provided and cross-validated: ``bopp`` builds
deformed variables from undeformed position/momentum matrices, while
``ladder`` builds the deformed modes directly from the undeformed ones via
the exact mode-mixing representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional

import numpy as np

from .algebra import Expr, UnknownAlgebra
from .coeff import Coefficient

__all__ = [
    "DimensionMismatch",
    "UnreachableAlgebra",
    "SolverFailure",
    "FockConfig",
    "FockOperator",
    "SpectrumRow",
    "SpectrumResult",
    "symbol_values",
    "build_ladders",
    "realize",
    "buffered_mask",
    "commutator_residual",
    "hermiticity_residual",
    "oscillator_spectrum",
    "hat_state_gram",
    "spectrum_rows",
    "export_spectrum_csv",
    "export_matrix",
    "shadow_residual",
]


class DimensionMismatch(Exception):
    """Operands act on different truncated spaces."""


class UnreachableAlgebra(Exception):
    """No matrix route is defined for the expression's algebra."""


class SolverFailure(Exception):
    """The eigensolver did not converge or the matrix is not Hermitian."""


@dataclass(frozen=True)
class FockConfig:
    """Truncation and physical parameters for the numeric backend.

    ``eta=None`` means the oscillator constraint value mu^2*omega^2*theta.
    The buffered subspace excludes the top ``buffer`` total-excitation
    levels from residual checks.
    """

    n: int = 20
    buffer: int = 2
    hbar: float = 1.0
    theta: float = 0.1
    eta: Optional[float] = None
    mu: float = 1.0
    omega: float = 1.0
    q: float = 1.0
    c: float = 1.0
    b3: float = 1.0

    def __post_init__(self):
        if self.n < 4:
            raise ValueError("per-mode truncation must be at least 4")
        if not 1 <= self.buffer <= self.n - 2:
            raise ValueError("buffer must satisfy 1 <= buffer <= N - 2")
        values = {
            "hbar": self.hbar,
            "theta": self.theta,
            "mu": self.mu,
            "omega": self.omega,
        }
        if self.eta is not None:
            values["eta"] = self.eta
        for name, v in values.items():
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
        for name in ("hbar", "mu", "omega"):
            if values[name] <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("theta",) + (("eta",) if self.eta is not None else ()):
            if values[name] < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def eta_value(self) -> float:
        if self.eta is None:
            return self.mu ** 2 * self.omega ** 2 * self.theta
        return self.eta

    @property
    def dim(self) -> int:
        return self.n * self.n

    def on_constraint(self) -> bool:
        want = self.mu ** 2 * self.omega ** 2 * self.theta
        return math.isclose(self.eta_value, want, rel_tol=1e-12, abs_tol=1e-300)


@dataclass(frozen=True)
class FockOperator:
    """Dense complex matrix on the two-mode truncated space."""

    matrix: np.ndarray
    n: int

    @property
    def dim(self) -> int:
        return self.n * self.n

    def dagger(self) -> "FockOperator":
        return FockOperator(self.matrix.conj().T, self.n)


def symbol_values(cfg: FockConfig) -> dict:
    """Numeric values for every coefficient symbol, derived from cfg.

    The ladder scale c2 is sqrt(theta/eta) when both deformation
    parameters are positive and 1/(mu*omega) otherwise (the two agree on
    the oscillator constraint).
    """
    theta, eta, hbar = cfg.theta, cfg.eta_value, cfg.hbar
    xi_sq = 1.0 / (1.0 + theta * eta / (4.0 * hbar ** 2))
    if theta > 0 and eta > 0:
        c2 = math.sqrt(theta / eta)
    else:
        c2 = 1.0 / (cfg.mu * cfg.omega)
    shift = xi_sq * math.sqrt(theta * eta) / hbar
    return {
        "hbar": hbar,
        "theta": theta,
        "eta": eta,
        "mu": cfg.mu,
        "omega": cfg.omega,
        "xi": math.sqrt(xi_sq),
        "gamma": 1.0,
        "c1": math.sqrt(1.0 / (2.0 * hbar * c2)),
        "c2": c2,
        "c2p": c2,
        "alpha1": 1.0 + shift,
        "alpha2": 1.0 - shift,
        "q": cfg.q,
        "c": cfg.c,
        "B3": cfg.b3,
    }


def _single_mode_ladder(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=complex)
    for k in range(1, n):
        a[k - 1, k] = math.sqrt(k)
    return a


def build_ladders(cfg: FockConfig):
    """Two-mode ladder matrices (a1, a1-dagger, a2, a2-dagger).

    a|n> = sqrt(n)|n-1> on its own mode, identity on the other; mode 1
    occupies the slow index of |n1, n2> -> n1*N + n2.
    """
    a = _single_mode_ladder(cfg.n)
    eye = np.eye(cfg.n, dtype=complex)
    a1 = np.kron(a, eye)
    a2 = np.kron(eye, a)
    return (
        FockOperator(a1, cfg.n),
        FockOperator(a1.conj().T, cfg.n),
        FockOperator(a2, cfg.n),
        FockOperator(a2.conj().T, cfg.n),
    )


def _matrix_table(cfg: FockConfig, algebra_name: str, route: str) -> dict:
    if route not in ("bopp", "ladder"):
        raise ValueError(f"unknown route {route!r}")
    vals = symbol_values(cfg)
    hbar, theta, eta = vals["hbar"], vals["theta"], vals["eta"]
    xi, c2 = vals["xi"], vals["c2"]
    a1, a1d, a2, a2d = (op.matrix for op in build_ladders(cfg))

    def undeformed():
        xk = math.sqrt(hbar * c2 / 2.0)
        pk = -1j * math.sqrt(hbar / (2.0 * c2))
        return {
            "x1": xk * (a1 + a1d),
            "x2": xk * (a2 + a2d),
            "p1": pk * (a1 - a1d),
            "p2": pk * (a2 - a2d),
        }

    def hat_modes():
        mix = 0.5j * math.sqrt(theta * eta) / hbar
        m1 = xi * (a1 + mix * a2)
        m2 = xi * (a2 - mix * a1)
        return m1, m2

    def deformed():
        u = undeformed()
        if route == "bopp":
            tk = theta / (2.0 * hbar)
            ek = eta / (2.0 * hbar)
            return {
                "xh1": xi * (u["x1"] - tk * u["p2"]),
                "xh2": xi * (u["x2"] + tk * u["p1"]),
                "ph1": xi * (u["p1"] + ek * u["x2"]),
                "ph2": xi * (u["p2"] - ek * u["x1"]),
            }
        m1, m2 = hat_modes()
        xk = math.sqrt(hbar * c2 / 2.0)
        pk = -1j * math.sqrt(hbar / (2.0 * c2))
        return {
            "xh1": xk * (m1 + m1.conj().T),
            "xh2": xk * (m2 + m2.conj().T),
            "ph1": pk * (m1 - m1.conj().T),
            "ph2": pk * (m2 - m2.conj().T),
        }

    def hatbose():
        if route == "bopp":
            d = deformed()
            c1 = vals["c1"]
            out = {}
            for k in (1, 2):
                m = c1 * (d[f"xh{k}"] + 1j * c2 * d[f"ph{k}"])
                out[f"ah{k}"] = m
                out[f"ah{k}_dag"] = m.conj().T
            return out
        m1, m2 = hat_modes()
        return {
            "ah1": m1,
            "ah2": m2,
            "ah1_dag": m1.conj().T,
            "ah2_dag": m2.conj().T,
        }

    def tildebose():
        h = hatbose()
        t1 = (h["ah1"] + 1j * h["ah2"]) / math.sqrt(2.0 * vals["alpha1"])
        t2 = (h["ah1"] - 1j * h["ah2"]) / math.sqrt(2.0 * vals["alpha2"])
        return {
            "at1": t1,
            "at2": t2,
            "at1_dag": t1.conj().T,
            "at2_dag": t2.conj().T,
        }

    def deformed_theta_only():
        # eta = 0 semantics regardless of cfg.eta: xi = 1, canonical momenta
        u = undeformed()
        tk = theta / (2.0 * hbar)
        return {
            "xh1": u["x1"] - tk * u["p2"],
            "xh2": u["x2"] + tk * u["p1"],
            "ph1": u["p1"],
            "ph2": u["p2"],
        }

    builders = {
        "bose": lambda: {"a1": a1, "a1_dag": a1d, "a2": a2, "a2_dag": a2d},
        "undeformed": undeformed,
        "deformed": deformed,
        "hatbose": hatbose,
        "tildebose": tildebose,
        "deformed_eta0": deformed_theta_only,
    }
    try:
        return builders[algebra_name]()
    except KeyError:
        raise UnreachableAlgebra(
            f"no matrix route for algebra {algebra_name!r}"
        ) from None


def realize(e: Expr, cfg: FockConfig, route: str = "bopp") -> FockOperator:
    """Matrix of an expression: coefficients evaluated, words multiplied."""
    mats = _matrix_table(cfg, e.algebra.name, route)
    vals = symbol_values(cfg)
    dim = cfg.dim
    total = np.zeros((dim, dim), dtype=complex)
    eye = np.eye(dim, dtype=complex)
    for coeff, word in e.terms:
        m = eye
        for letter in word:
            m = m @ mats[letter]
        total += coeff.evaluate(vals) * m
    return FockOperator(total, cfg.n)


def buffered_mask(cfg: FockConfig) -> np.ndarray:
    """Boolean mask of the states with n1 + n2 <= N - 1 - buffer."""
    cut = cfg.n - 1 - cfg.buffer
    n1, n2 = np.divmod(np.arange(cfg.dim), cfg.n)
    return (n1 + n2) <= cut


def _buffered_norm(matrix: np.ndarray, cfg: FockConfig) -> float:
    mask = buffered_mask(cfg)
    block = matrix[np.ix_(mask, mask)]
    return float(np.max(np.abs(block))) if block.size else 0.0


def commutator_residual(
    A: FockOperator, B: FockOperator, expected: Coefficient, cfg: FockConfig
) -> float:
    """Buffered max-norm of [A, B] - expected*I."""
    if A.matrix.shape != B.matrix.shape or A.n != cfg.n or B.n != cfg.n:
        raise DimensionMismatch(
            f"operands {A.matrix.shape} / {B.matrix.shape} vs config N={cfg.n}"
        )
    value = expected.evaluate(symbol_values(cfg))
    resid = A.matrix @ B.matrix - B.matrix @ A.matrix
    resid -= value * np.eye(cfg.dim)
    return _buffered_norm(resid, cfg)


def hermiticity_residual(op: FockOperator) -> float:
    return float(np.max(np.abs(op.matrix - op.matrix.conj().T)))


@dataclass(frozen=True)
class SpectrumRow:
    n1: int
    n2: int
    eigenvalue: float
    formula: float
    residual: float
    matched: bool


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues with closed-form labels on the reliable window."""

    eigenvalues: tuple
    rows: tuple
    route_difference: float
    off_constraint: bool
    omega_tilde: tuple

    def max_residual(self) -> float:
        return max((r.residual for r in self.rows), default=0.0)

    def ground_state(self) -> float:
        return self.eigenvalues[0]


def oscillator_spectrum(cfg: FockConfig, match_tolerance: float = 1e-6) -> SpectrumResult:
    """Diagonalize the oscillator and label states by (n1, n2).

    The Hamiltonian is assembled via both routes (their difference is
    recorded), symmetrized, and solved with a Hermitian eigensolver;
    eigenvalues in the window n1 + n2 <= N - buffer are matched greedily
    against hbar*(omega~_1 n1 + omega~_2 n2 + omega) with
    omega~_{1,2} = (1 +- xi^2*sqrt(theta*eta)/hbar)*omega.
    """
    from .operators import hamiltonian_deformed

    h_expr = hamiltonian_deformed()
    h_bopp = realize(h_expr, cfg, "bopp")
    h_ladder = realize(h_expr, cfg, "ladder")
    route_diff = float(np.max(np.abs(h_bopp.matrix - h_ladder.matrix)))

    h = h_ladder.matrix
    herm = float(np.max(np.abs(h - h.conj().T)))
    scale = max(1.0, float(np.max(np.abs(h))))
    if herm > 1e-10 * scale:
        raise SolverFailure(f"Hamiltonian is not Hermitian (defect {herm:.3e})")
    try:
        eigenvalues = np.linalg.eigvalsh((h + h.conj().T) / 2.0)
    except np.linalg.LinAlgError as exc:
        raise SolverFailure(str(exc)) from exc
    eigenvalues = np.sort(eigenvalues.real)

    vals = symbol_values(cfg)
    shift = vals["xi"] ** 2 * math.sqrt(vals["theta"] * vals["eta"]) / vals["hbar"]
    w1 = (1.0 + shift) * cfg.omega
    w2 = (1.0 - shift) * cfg.omega

    window = [
        (n1, n2)
        for n1 in range(cfg.n)
        for n2 in range(cfg.n)
        if n1 + n2 <= cfg.n - cfg.buffer
    ]

    def formula(state):
        n1, n2 = state
        return cfg.hbar * (w1 * n1 + w2 * n2 + cfg.omega)

    used = np.zeros(len(eigenvalues), dtype=bool)
    rows = []
    for state in sorted(window, key=lambda s: (formula(s), s[0], s[1])):
        target = formula(state)
        candidates = np.where(~used)[0]
        best = candidates[np.argmin(np.abs(eigenvalues[candidates] - target))]
        residual = abs(eigenvalues[best] - target)
        matched = residual <= match_tolerance
        if matched:
            used[best] = True
        rows.append(
            SpectrumRow(state[0], state[1], float(eigenvalues[best]), target,
                        float(residual), matched)
        )
    return SpectrumResult(
        tuple(float(x) for x in eigenvalues),
        tuple(rows),
        route_diff,
        not cfg.on_constraint(),
        (w1, w2),
    )


def _state_vectors(cfg: FockConfig, mmax: int, tilde: bool, route: str):
    name = "tildebose" if tilde else "hatbose"
    mats = _matrix_table(cfg, name, route)
    up1 = mats["at1_dag" if tilde else "ah1_dag"]
    up2 = mats["at2_dag" if tilde else "ah2_dag"]
    vacuum = np.zeros(cfg.dim, dtype=complex)
    vacuum[0] = 1.0
    states = [(m, n) for m in range(mmax + 1) for n in range(mmax + 1) if m + n <= mmax]
    vectors = {}
    for m, n in states:
        v = vacuum
        for _ in range(m):
            v = up1 @ v
        for _ in range(n):
            v = up2 @ v
        vectors[(m, n)] = v / math.sqrt(math.factorial(m) * math.factorial(n))
    return states, vectors


def hat_state_gram(
    cfg: FockConfig, mmax: int, tilde: bool = False, route: str = "bopp"
):
    """Gram matrix of the (m!n!)^(-1/2)-normalized states with m + n <= mmax.

    Hat states exhibit the nonorthogonality of the deformed construction;
    with ``tilde`` the tilde states reproduce the identity.
    """
    states, vectors = _state_vectors(cfg, mmax, tilde, route)
    g = np.zeros((len(states), len(states)), dtype=complex)
    for i, si in enumerate(states):
        for j, sj in enumerate(states):
            g[i, j] = np.vdot(vectors[si], vectors[sj])
    return states, g


# -- exports ----------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def spectrum_rows(result: SpectrumResult) -> list:
    lines = ["n1,n2,lambda,formula,residual"]
    for r in result.rows:
        lines.append(
            f"{r.n1},{r.n2},{_fmt(r.eigenvalue)},{_fmt(r.formula)},{_fmt(r.residual)}"
        )
    return lines


def export_spectrum_csv(result: SpectrumResult, path) -> None:
    text = "\n".join(spectrum_rows(result)) + "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)


def export_matrix(op: FockOperator, path) -> None:
    """Debug dump: row-major re,im pairs, one matrix row per line."""
    with open(path, "w", encoding="ascii") as fh:
        for row in op.matrix:
            fh.write(" ".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in row))
            fh.write("\n")


# -- catalog shadows ---------------------------------------------------

def shadow_residual(spec, cfg: FockConfig, route: str = "bopp") -> Optional[float]:
    """Numeric residual of a catalog shadow, or None when undefined.

    Shadows marked ``needs_positive`` are skipped when either deformation
    parameter vanishes (their coefficients are singular there);
    ``constrained`` shadows are evaluated at eta = mu^2*omega^2*theta.
    """
    if spec is None:
        return None
    if spec.needs_positive and (cfg.theta <= 0 or cfg.eta_value <= 0):
        return None
    if spec.constrained:
        cfg = replace(cfg, eta=None)
    if spec.kind == "exprs":
        worst = 0.0
        for lhs, rhs in spec.pairs:
            a = realize(lhs, cfg, route)
            b = realize(rhs, cfg, route)
            worst = max(worst, _buffered_norm(a.matrix - b.matrix, cfg))
        return worst
    if spec.kind == "gram_hat":
        from .operators import KAPPA

        states, g = hat_state_gram(cfg, mmax=1, route=route)
        idx10 = states.index((1, 0))
        idx01 = states.index((0, 1))
        kappa = KAPPA.evaluate(symbol_values(cfg))
        return float(
            max(abs(g[idx10, idx01] - kappa), abs(g[idx01, idx10] + kappa))
        )
    if spec.kind == "gram_tilde":
        states, g = hat_state_gram(cfg, mmax=3, tilde=True, route=route)
        return float(np.max(np.abs(g - np.eye(len(states)))))
    raise ValueError(f"unknown shadow kind {spec.kind!r}")
