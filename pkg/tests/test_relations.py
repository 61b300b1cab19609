"""The identity catalog: every check passes, derivations solve exactly."""

import time

import pytest

from ncweyl.algebra import Expr, expr_equal, expr_is_zero, substitute
from ncweyl.coeff import Coefficient
from ncweyl.operators import (
    C1,
    C2,
    C2_SOLVED,
    DEFORMED,
    ETA,
    HATBOSE,
    HBAR,
    I,
    KAPPA,
    MU,
    OMEGA,
    THETA,
    XI,
    hat_from_phase_map,
)
from ncweyl.relations import (
    UnknownId,
    catalog_ids,
    check_hat_pathology,
    derive_bose_condition,
    derive_c1,
    footnote_operators,
    get_check,
    oscillator_tilde_form,
    run_catalog,
    tilde_construction,
    tilde_phase_space,
)

ONE = Coefficient.one()


def test_full_catalog_passes_quickly():
    start = time.time()
    records = run_catalog()
    elapsed = time.time() - start
    failures = [r.id for r in records if not r.ok]
    assert failures == []
    assert len(records) >= 25
    assert elapsed < 10.0


@pytest.mark.parametrize(
    "prefix,count",
    [("eq_2_1", 3), ("eq_3_5", 4), ("eq_4_3", 6)],
)
def test_filter_prefix_counts(prefix, count):
    records = run_catalog(prefix)
    assert len(records) == count
    assert all(r.ok for r in records)


def test_filter_matching_nothing_is_empty():
    assert run_catalog("nosuch") == []


def test_get_check_unknown_id():
    with pytest.raises(UnknownId):
        get_check("nosuch")
    assert get_check("eq_2_1_xx").id == "eq_2_1_xx"


def test_ids_unique():
    ids = catalog_ids()
    assert len(ids) == len(set(ids))


def test_derive_c1():
    d = derive_c1("c2")
    assert d.value == (ONE / (2 * HBAR * C2)).sqrt()
    assert d.value ** 2 == ONE / (2 * HBAR * C2)
    assert d.residual_is_zero()
    # with c2 = 1/(mu*omega): c1 = sqrt(mu*omega/(2*hbar))
    bound = d.value.substitute({"c2": ONE / (MU * OMEGA)})
    assert bound == (MU * OMEGA / (2 * HBAR)).sqrt()


def test_derive_bose_condition():
    d = derive_bose_condition()
    assert d.extracted == I * C1 ** 2 * XI ** 2 * (THETA - C2 ** 2 * ETA)
    assert d.value == (THETA / ETA).sqrt()
    assert d.residual_is_zero()
    # theta = eta gives c2 = 1
    assert d.value.substitute({"theta": ETA}) == ONE


def test_composed_derivations_reproduce_ladder():
    c1 = derive_c1("c2").value.substitute({"c2": derive_bose_condition().value})
    assert c1 == ((ONE / (2 * HBAR)) * (ETA / THETA).sqrt()).sqrt()
    for mode in (1, 2):
        x = Expr.generator(DEFORMED, f"xh{mode}")
        p = Expr.generator(DEFORMED, f"ph{mode}")
        composed = c1 * (x + I * C2_SOLVED * p)
        registered = substitute(
            Expr.generator(HATBOSE, f"ah{mode}"), hat_from_phase_map()
        )
        assert composed == registered


def test_hat_pathology_report():
    rep = check_hat_pathology()
    assert rep.number_commutator_nonzero
    assert not expr_is_zero(rep.number_commutator)
    assert rep.inner_10_01 == KAPPA
    assert rep.inner_01_10 == -KAPPA
    assert rep.magnitude_squared_ok
    assert all(rec.exact for rec in rep.ladder_actions)
    # displayed coefficients hold on the N1 diagonal
    diag = [r for r in rep.ladder_actions if r.op == "N1" and r.m == r.n]
    assert diag and all(r.matches_display for r in diag)
    # and fail somewhere off it (the shifts are n*kappa, not m*kappa)
    off = [r for r in rep.ladder_actions if r.op == "N1" and r.m != r.n]
    assert any(not r.matches_display for r in off)


def test_tilde_construction_report():
    rep = tilde_construction()
    assert rep.relations_ok and rep.gram_ok and rep.eigen_ok
    assert rep.max_mn == 3


def test_tilde_phase_space_report():
    rep = tilde_phase_space()
    assert rep.commutators_ok and rep.rewrite_ok


def test_oscillator_tilde_form_report():
    rep = oscillator_tilde_form()
    assert rep.constrained_ok
    assert not expr_is_zero(rep.free_residual)
    assert rep.forms_related_by_xi2
    assert rep.gap_number_form == 2 * OMEGA * XI ** 2 * (THETA * ETA).sqrt()
    assert rep.gap_display_form == 2 * HBAR * OMEGA * (THETA * ETA).sqrt()


def test_footnote_report():
    rep = footnote_operators()
    assert rep.prime_bosonic_ok and rep.prime_reduction_ok
    assert rep.double_prime_bosonic_ok and rep.double_prime_reduction_ok


def test_xi_necessity_residual_value():
    rec = get_check("eq_2_4_xi_necessity").run()
    assert rec.ok
    # the residual against i*hbar is exactly i*theta*eta/(4*hbar)
    from ncweyl.operators import bopp_map
    from ncweyl.algebra import commutator

    m = bopp_map(unit_xi=True)
    lhs = commutator(
        substitute(Expr.generator(DEFORMED, "xh1"), m),
        substitute(Expr.generator(DEFORMED, "ph1"), m),
    )
    from ncweyl.operators import UNDEFORMED

    resid = lhs - Expr.identity(UNDEFORMED, I * HBAR)
    assert resid == Expr.identity(UNDEFORMED, I * THETA * ETA / (4 * HBAR))
