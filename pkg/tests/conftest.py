import random
from fractions import Fraction

import pytest

from ncweyl.algebra import Expr
from ncweyl.coeff import Coefficient

SYMBOL_POOL = ("hbar", "theta", "eta", "mu", "omega")


def random_coeff(rng: random.Random, allow_fractional=True) -> Coefficient:
    re = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
    im = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    out = Coefficient.gaussian(
        type(Coefficient.one().num[0][0])(re, im)
    )
    for _ in range(rng.randint(0, 2)):
        name = rng.choice(SYMBOL_POOL)
        if allow_fractional and rng.random() < 0.4:
            exp = Fraction(rng.choice((1, -1, 3)), 2)
        else:
            exp = Fraction(rng.choice((1, 2, -1)))
        out = out * Coefficient.symbol(name, exp)
    return out


def random_word(rng: random.Random, table, max_len=4) -> tuple:
    return tuple(
        rng.choice(table.generators) for _ in range(rng.randint(0, max_len))
    )


def random_expr(rng: random.Random, table, max_terms=3, max_len=4) -> Expr:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        coeff = random_coeff(rng)
        terms.append((coeff, random_word(rng, table, max_len)))
    return Expr(table, terms)


@pytest.fixture
def rng():
    return random.Random(20260810)
