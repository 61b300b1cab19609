"""Acceptance criteria, one test per criterion.

Every tolerance is pinned here; each test prints a PASS line for its
criterion after the assertions have held, so a verbose run reads as the
acceptance report.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from ncweyl.algebra import (
    Expr,
    adjoint,
    commutator,
    expr_is_zero,
    get_algebra,
    normal_order,
    normal_order_word_shuffled,
    substitute,
)
from ncweyl.coeff import Coefficient
from ncweyl.constraint import (
    OSCILLATOR,
    dimension_of,
    dimensional_solve,
    fix_gamma_oscillator,
)
from ncweyl.fock import (
    FockConfig,
    buffered_mask,
    hat_state_gram,
    oscillator_spectrum,
    realize,
    shadow_residual,
    symbol_values,
)
from ncweyl.operators import (
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
    bopp_map,
    hamiltonian_deformed,
)
from ncweyl.parser import parse, render
from ncweyl.relations import (
    catalog,
    check_hat_pathology,
    derive_bose_condition,
    derive_c1,
    oscillator_tilde_form,
    run_catalog,
    tilde_construction,
)
from conftest import random_expr, random_word

ONE = Coefficient.one()

SYMBOLIC_GROUPS = (
    "eq_2_1", "eq_2_3", "eq_2_4", "eq_3_2", "eq_3_3", "eq_3_4", "eq_3_5",
    "eq_4_1", "eq_4_2", "eq_4_3", "eq_4_5", "eq_5_2", "eq_5_3", "eq_5_4",
    "eq_5_5", "eq_5_6", "footnote",
)


def test_criterion_1_symbolic_catalog():
    """All defining-relation checks pass with exactly-zero residuals, < 10 s."""
    start = time.time()
    records = run_catalog()
    elapsed = time.time() - start
    by_id = {r.id: r for r in records}
    for prefix in SYMBOLIC_GROUPS:
        matching = [r for r in records if r.id.startswith(prefix)]
        assert matching, f"no checks under prefix {prefix}"
        for r in matching:
            assert r.ok, f"{r.id} failed: {r.residual}"
    assert all(r.ok for r in records)
    assert elapsed < 10.0
    print(f"\nACCEPT 1: symbolic catalog {len(records)} checks pass in {elapsed:.2f} s")


def test_criterion_2_xi_necessity():
    """With unit scale factor the x-p commutator residual is i*theta*eta/(4*hbar)."""
    m = bopp_map(unit_xi=True)
    lhs = commutator(
        substitute(Expr.generator(DEFORMED, "xh1"), m),
        substitute(Expr.generator(DEFORMED, "ph1"), m),
    )
    target = get_algebra("undeformed")
    blown = Expr.identity(target, I * HBAR * (ONE + THETA * ETA / (4 * HBAR ** 2)))
    assert lhs == blown
    residual = lhs - Expr.identity(target, I * HBAR)
    assert residual == Expr.identity(target, I * THETA * ETA / (4 * HBAR))
    print("\nACCEPT 2: unit-scale commutator residual is exactly i*theta*eta/(4*hbar)")


def test_criterion_3_bose_condition_derivation():
    """The derivations return the exact scalars and compose to the ladder."""
    bose = derive_bose_condition()
    c2 = Coefficient.symbol("c2")
    c1 = Coefficient.symbol("c1")
    assert bose.extracted == I * c1 ** 2 * XI ** 2 * (THETA - c2 ** 2 * ETA)
    assert bose.value == (THETA / ETA).sqrt()
    assert bose.residual_is_zero()
    fix = derive_c1("c2")
    assert fix.value == (ONE / (2 * HBAR * c2)).sqrt()
    assert fix.residual_is_zero()
    composed_c1 = fix.value.substitute({"c2": bose.value})
    assert composed_c1 == ((ONE / (2 * HBAR)) * (ETA / THETA).sqrt()).sqrt()
    from ncweyl.operators import hat_from_phase_map

    for mode in (1, 2):
        x = Expr.generator(DEFORMED, f"xh{mode}")
        p = Expr.generator(DEFORMED, f"ph{mode}")
        composed = composed_c1 * (x + I * bose.value * p)
        registered = substitute(
            Expr.generator(HATBOSE, f"ah{mode}"), hat_from_phase_map()
        )
        assert composed == registered
    print("\nACCEPT 3: c2 = sqrt(theta/eta), c1 = sqrt(1/(2*hbar*c2)) reproduce the ladder")


def test_criterion_4_hat_state_pathology():
    """Noncommuting number operators, exact overlap, orthonormal tilde basis."""
    rep = check_hat_pathology()
    assert rep.number_commutator_nonzero
    magnitude = XI ** 2 * (THETA * ETA).sqrt() / HBAR
    assert rep.inner_10_01 * rep.inner_10_01.conjugate() == magnitude ** 2
    assert rep.inner_01_10 == -rep.inner_10_01

    tilde = tilde_construction()
    assert tilde.gram_ok and tilde.max_mn == 3

    cfg = FockConfig(n=20, theta=0.1, eta=0.1, hbar=1.0)
    states, g = hat_state_gram(cfg, 1)
    i10, i01 = states.index((1, 0)), states.index((0, 1))
    oracle = abs(rep.inner_10_01.evaluate(symbol_values(cfg)))
    assert oracle == pytest.approx(0.09975062344139651, abs=1e-15)
    assert abs(abs(g[i10, i01]) - oracle) < 1e-10
    print(f"\nACCEPT 4: hat overlap magnitude {abs(g[i10, i01]):.10f} matches the symbolic oracle")


ACCEPT5_POINTS = (
    {"theta": 0.0, "eta": 0.0},
    {"theta": 0.1, "eta": 0.1},
    {"theta": 0.04, "eta": 0.36, "omega": 3.0},
)


def test_criterion_5_numeric_cross_validation():
    """Catalog shadows < 1e-10 at N=20, buffer=2; routes agree to 1e-10."""
    shadowed = 0
    for params in ACCEPT5_POINTS:
        cfg = FockConfig(n=20, buffer=2, **params)
        for check in catalog():
            resid = shadow_residual(check.shadow, cfg)
            if resid is not None:
                shadowed += 1
                assert resid < 1e-10, f"{check.id} at {params}: {resid}"
    assert shadowed > 40

    cfg = FockConfig(n=20, buffer=2, theta=0.1, eta=0.1)
    mask = buffered_mask(cfg)
    probes = [Expr.generator(DEFORMED, g) for g in ("xh1", "xh2", "ph1", "ph2")]
    probes += [Expr.generator(HATBOSE, g) for g in ("ah1", "ah2")]
    probes.append(hamiltonian_deformed())
    for e in probes:
        a = realize(e, cfg, "bopp").matrix
        b = realize(e, cfg, "ladder").matrix
        assert np.max(np.abs((a - b)[np.ix_(mask, mask)])) < 1e-10
    print(f"\nACCEPT 5: {shadowed} matrix shadows < 1e-10; both routes agree")


def test_criterion_6_oscillator_spectrum():
    """N=40 spectrum matches the closed form; zero-point level unshifted."""
    cfg = FockConfig(n=40, buffer=2, theta=0.1, eta=0.1)
    result = oscillator_spectrum(cfg)
    low = [r for r in result.rows if r.n1 + r.n2 <= 10]
    assert len(low) == 66
    assert all(r.matched for r in low)
    assert max(r.residual for r in low) < 1e-8
    assert abs(result.ground_state() - 1.0) < 1e-10

    xi_sq = 1.0 / (1.0 + 0.1 * 0.1 / 4.0)
    split_formula = 2.0 * xi_sq * math.sqrt(0.1 * 0.1)
    e10 = next(r.eigenvalue for r in result.rows if (r.n1, r.n2) == (1, 0))
    e01 = next(r.eigenvalue for r in result.rows if (r.n1, r.n2) == (0, 1))
    assert e10 - e01 == pytest.approx(split_formula, abs=1e-10)
    assert split_formula == pytest.approx(0.19950124688279303, abs=1e-15)

    # the sqrt(theta*eta) display form gives 0.2 here: documented alongside,
    # never asserted against the measured splitting
    report = oscillator_tilde_form()
    display_value = report.gap_display_form.evaluate(
        {"hbar": 1.0, "omega": 1.0, "theta": 0.1, "eta": 0.1}
    )
    assert display_value.real == pytest.approx(0.2)
    assert report.forms_related_by_xi2
    print(
        f"\nACCEPT 6: splitting {e10 - e01:.10f} (display form {display_value.real:.3f} "
        "logged alongside)"
    )


def test_criterion_7_constraint():
    """gamma = 1, c2' = 1/(mu*omega), K = mu^2*omega^2, unique dimensional solve."""
    res = fix_gamma_oscillator()
    assert res.gamma_value == ONE
    assert res.c2_prime == ONE / (MU * OMEGA)
    assert res.K == MU ** 2 * OMEGA ** 2
    assert res.K * THETA == MU ** 2 * OMEGA ** 2 * THETA
    exps = dimensional_solve(OSCILLATOR, (Fraction(-1), Fraction(0), Fraction(1)))
    assert exps == {"mu": Fraction(-1), "omega": Fraction(-1), "hbar": Fraction(0)}
    assert dimension_of(res.K, OSCILLATOR) == (Fraction(2), Fraction(0), Fraction(-2))
    print("\nACCEPT 7: constraint eta = mu^2*omega^2*theta with unique dimensional solve")


def test_criterion_8_commutative_limit():
    """theta = eta = 0 collapses everything to the undeformed theory."""
    for check_id in (
        "limit_bopp_collapse",
        "limit_ladder_collapse",
        "limit_hamiltonian_collapse",
    ):
        rec = next(c for c in catalog() if c.id == check_id).run()
        assert rec.ok, rec.id
    cfg = FockConfig(n=12, theta=0.0, eta=0.0)
    result = oscillator_spectrum(cfg)
    for row in result.rows:
        want = cfg.hbar * cfg.omega * (row.n1 + row.n2 + 1)
        assert abs(row.eigenvalue - want) < 1e-12
    print("\nACCEPT 8: commutative limit is the degenerate hbar*omega*(n1+n2+1) ladder")


def test_criterion_9_engine_properties():
    """1000 randomized cases per engine property."""
    rng = random.Random(97)

    for _ in range(1000):
        table = get_algebra(rng.choice(("deformed", "hatbose")))
        w = random_word(rng, table, max_len=8)
        assert normal_order(Expr.word(table, w)) == normal_order_word_shuffled(
            table, w, rng
        )

    names = ("deformed", "undeformed", "hatbose", "tildebose", "bose")
    for _ in range(1000):
        table = get_algebra(rng.choice(names))
        a, b, c = (
            Expr.generator(table, rng.choice(table.generators)) for _ in range(3)
        )
        jac = (
            commutator(commutator(a, b), c)
            + commutator(commutator(b, c), a)
            + commutator(commutator(c, a), b)
        )
        assert expr_is_zero(jac)

    for _ in range(1000):
        table = get_algebra(rng.choice(names))
        e = random_expr(rng, table, max_terms=2, max_len=4)
        assert adjoint(adjoint(e)) == normal_order(e)

    for _ in range(1000):
        table = get_algebra(rng.choice(("deformed", "hatbose", "bose")))
        e = normal_order(random_expr(rng, table, max_terms=2, max_len=4))
        assert parse(render(e), table) == e

    print("\nACCEPT 9: confluence, Jacobi, adjoint involution, parser round-trip x1000")
