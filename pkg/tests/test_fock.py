"""Truncated Fock-space backend: residuals, routes, spectrum, Gram matrices."""

import math

import numpy as np
import pytest

from ncweyl.algebra import Expr, adjoint
from ncweyl.coeff import Coefficient, UnboundSymbol
from ncweyl.fock import (
    DimensionMismatch,
    FockConfig,
    FockOperator,
    UnreachableAlgebra,
    buffered_mask,
    build_ladders,
    commutator_residual,
    export_matrix,
    export_spectrum_csv,
    hat_state_gram,
    hermiticity_residual,
    oscillator_spectrum,
    realize,
    shadow_residual,
    spectrum_rows,
    symbol_values,
)
from ncweyl.operators import (
    DEFORMED,
    HATBOSE,
    HBAR,
    I,
    KAPPA,
    THETA,
    XI,
    hamiltonian_deformed,
)
from ncweyl.relations import catalog

C = Coefficient
ONE = C.one()

# identities are exercised at the commutative point, the symmetric point,
# and an asymmetric point on the constraint line with mu*omega = 3
PARAM_POINTS = (
    {"theta": 0.0, "eta": 0.0},
    {"theta": 0.1, "eta": 0.1},
    {"theta": 0.04, "eta": 0.36, "omega": 3.0},
)


def test_config_validation():
    with pytest.raises(ValueError):
        FockConfig(n=3)
    with pytest.raises(ValueError):
        FockConfig(buffer=0)
    with pytest.raises(ValueError):
        FockConfig(buffer=19, n=20)
    with pytest.raises(ValueError):
        FockConfig(theta=-0.1)
    with pytest.raises(ValueError):
        FockConfig(mu=0.0)
    assert FockConfig(theta=0.2).eta_value == pytest.approx(0.2)


def test_ladder_matrix_elements():
    cfg = FockConfig(n=6)
    a1, a1d, a2, a2d = build_ladders(cfg)
    assert (a1.matrix @ a1d.matrix)[0, 0] == pytest.approx(1.0)
    # [a1, a1d] = 1 except at the truncation edge
    comm = a1.matrix @ a1d.matrix - a1d.matrix @ a1.matrix
    inner = buffered_mask(cfg)
    assert np.max(np.abs((comm - np.eye(cfg.dim))[np.ix_(inner, inner)])) < 1e-14
    edge = np.abs(comm - np.eye(cfg.dim)).max()
    assert edge > 1.0  # the corner defect of the truncated commutator
    assert np.max(np.abs(a1.matrix @ a2.matrix - a2.matrix @ a1.matrix)) == 0.0


def test_realize_commutative_limit_position():
    cfg = FockConfig(theta=0.0, eta=0.0)
    got = realize(Expr.generator(DEFORMED, "xh1"), cfg, "bopp")
    a1, a1d, _, _ = build_ladders(cfg)
    c2p = 1.0 / (cfg.mu * cfg.omega)
    want = math.sqrt(cfg.hbar * c2p / 2.0) * (a1.matrix + a1d.matrix)
    assert np.max(np.abs(got.matrix - want)) < 1e-14


def test_realize_deformed_commutator_shadow():
    cfg = FockConfig()
    x1 = realize(Expr.generator(DEFORMED, "xh1"), cfg)
    x2 = realize(Expr.generator(DEFORMED, "xh2"), cfg)
    assert commutator_residual(x1, x2, I * XI ** 2 * THETA, cfg) < 1e-10


def test_realize_unreachable_algebra():
    from ncweyl.algebra import AlgebraTable, register_algebra

    table = register_algebra(
        AlgebraTable("islanded", ("g",), {})
    )
    cfg = FockConfig(n=4, buffer=1)
    with pytest.raises(UnreachableAlgebra):
        realize(Expr.generator(table, "g"), cfg)


def test_realize_unbound_symbol():
    cfg = FockConfig(n=4, buffer=1)
    e = Expr.identity(DEFORMED, Coefficient.symbol("nosuchsym"))
    with pytest.raises(UnboundSymbol):
        realize(e, cfg)


def test_commutator_residual_trivial_and_mismatch():
    cfg = FockConfig(n=6)
    a1, a1d, _, _ = build_ladders(cfg)
    assert commutator_residual(a1, a1, C.zero(), cfg) == 0.0
    small = FockConfig(n=4, buffer=1)
    with pytest.raises(DimensionMismatch):
        commutator_residual(a1, a1, C.zero(), small)


@pytest.mark.parametrize("params", PARAM_POINTS)
def test_hat_cross_commutator_residual(params):
    cfg = FockConfig(**params)
    for route in ("bopp", "ladder"):
        A = realize(Expr.generator(HATBOSE, "ah1"), cfg, route)
        B = realize(Expr.generator(HATBOSE, "ah2_dag"), cfg, route)
        assert commutator_residual(A, B, KAPPA, cfg) < 1e-10


def test_tilde_phase_commutator_residual():
    cfg = FockConfig()
    from ncweyl.operators import p_tilde, x_tilde

    xt = realize(x_tilde(), cfg)
    ptd = realize(adjoint(p_tilde()), cfg)
    assert commutator_residual(xt, ptd, C.zero(), cfg) < 1e-10


@pytest.mark.parametrize("params", PARAM_POINTS)
def test_route_equivalence(params):
    cfg = FockConfig(**params)
    exprs = [Expr.generator(DEFORMED, g) for g in ("xh1", "xh2", "ph1", "ph2")]
    exprs += [Expr.generator(HATBOSE, g) for g in ("ah1", "ah2")]
    exprs.append(hamiltonian_deformed())
    mask = buffered_mask(cfg)
    for e in exprs:
        a = realize(e, cfg, "bopp").matrix
        b = realize(e, cfg, "ladder").matrix
        assert np.max(np.abs((a - b)[np.ix_(mask, mask)])) < 1e-10


def test_hermiticity_of_realizations():
    cfg = FockConfig()
    for name in ("xh1", "xh2", "ph1", "ph2"):
        op = realize(Expr.generator(DEFORMED, name), cfg)
        assert hermiticity_residual(op) < 1e-12
    # realize(adjoint(e)) equals realize(e) dagger; adjoint reorders the
    # word, so agreement is exact away from the truncation edge
    e = Expr.word(HATBOSE, ("ah1", "ah2_dag"))
    lhs = realize(adjoint(e), cfg).matrix
    rhs = realize(e, cfg).matrix.conj().T
    mask = buffered_mask(cfg)
    assert np.max(np.abs((lhs - rhs)[np.ix_(mask, mask)])) < 1e-12
    # self-adjoint phase-space realizations agree entrywise
    h = realize(hamiltonian_deformed(), cfg)
    assert np.max(np.abs(realize(adjoint(hamiltonian_deformed()), cfg).matrix
                         - h.matrix.conj().T)) < 1e-12


@pytest.mark.parametrize("params", PARAM_POINTS)
def test_all_catalog_shadows(params):
    cfg = FockConfig(**params)
    for check in catalog():
        resid = shadow_residual(check.shadow, cfg)
        if resid is not None:
            assert resid < 1e-10, f"{check.id} shadow residual {resid}"


def test_spectrum_commutative_degeneracy():
    cfg = FockConfig(n=12, theta=0.0, eta=0.0)
    res = oscillator_spectrum(cfg)
    want = [1.0, 2.0, 2.0, 3.0, 3.0, 3.0, 4.0, 4.0, 4.0, 4.0]
    assert np.max(np.abs(np.array(res.eigenvalues[:10]) - want)) < 1e-12
    assert res.max_residual() < 1e-12
    assert not res.off_constraint


def test_spectrum_splitting_and_labels():
    cfg = FockConfig(n=20)
    res = oscillator_spectrum(cfg)
    xi_sq = 1.0 / (1.0 + 0.1 * 0.1 / 4.0)
    split = 2.0 * xi_sq * math.sqrt(0.1 * 0.1)
    e10 = next(r for r in res.rows if (r.n1, r.n2) == (1, 0))
    e01 = next(r for r in res.rows if (r.n1, r.n2) == (0, 1))
    assert e10.eigenvalue > e01.eigenvalue
    assert abs((e10.eigenvalue - e01.eigenvalue) - split) < 1e-12
    assert abs(res.ground_state() - 1.0) < 1e-12
    assert res.route_difference < 1e-10
    # labels cover the reliable window
    window = {(r.n1, r.n2) for r in res.rows}
    assert all(
        (n1, n2) in window
        for n1 in range(cfg.n)
        for n2 in range(cfg.n)
        if n1 + n2 <= cfg.n - cfg.buffer
    )


def test_spectrum_off_constraint_flag():
    res = oscillator_spectrum(FockConfig(n=8, buffer=2, theta=0.1, eta=0.3))
    assert res.off_constraint


def test_gram_matrices():
    cfg = FockConfig()
    states, g = hat_state_gram(cfg, 1)
    i10, i01 = states.index((1, 0)), states.index((0, 1))
    kappa = KAPPA.evaluate(symbol_values(cfg))
    assert abs(g[i10, i01] - kappa) < 1e-12
    assert abs(g[i01, i10] + kappa) < 1e-12
    states, gt = hat_state_gram(cfg, 3, tilde=True)
    assert np.max(np.abs(gt - np.eye(len(states)))) < 1e-10
    # no deformation: the hat Gram is the identity
    states, g0 = hat_state_gram(FockConfig(theta=0.0, eta=0.0), 2)
    assert np.max(np.abs(g0 - np.eye(len(states)))) < 1e-12


def test_spectrum_csv_format(tmp_path):
    res = oscillator_spectrum(FockConfig(n=8, buffer=2))
    rows = spectrum_rows(res)
    assert rows[0] == "n1,n2,lambda,formula,residual"
    first = rows[1].split(",")
    assert first[0] == "0" and first[1] == "0"
    assert float(first[2]) == pytest.approx(1.0)
    assert "e" not in first[2].lower() or "e+" in first[2] or "e-" in first[2]
    path = tmp_path / "spec.csv"
    export_spectrum_csv(res, path)
    assert path.read_text().splitlines()[0] == rows[0]


def test_matrix_export(tmp_path):
    cfg = FockConfig(n=4, buffer=1)
    a1, _, _, _ = build_ladders(cfg)
    path = tmp_path / "a1.txt"
    export_matrix(a1, path)
    lines = path.read_text().splitlines()
    assert len(lines) == cfg.dim
    first_entries = lines[0].split()
    assert len(first_entries) == cfg.dim
    assert all("," in entry for entry in first_entries)


def test_seventeen_digit_format():
    from ncweyl.fock import _fmt

    assert _fmt(1.0) == "1"
    assert _fmt(0.1) == "0.10000000000000001"
    assert _fmt(1e-12) == "9.9999999999999998e-13"
