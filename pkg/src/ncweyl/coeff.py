"""Exact scalars for the operator engine.

A :class:`Coefficient` is a fraction of two sums of monomials.  Term
coefficients are Gaussian rationals, monomials carry rational exponents
over a symbol alphabet (``hbar``, ``theta``, ``eta``, ``mu``, ``omega``,
``xi``, ...), and roots of positive integers stay exact by factoring the
base into primes, so values such as ``(i/hbar)*xi^2*theta^(1/2)*eta^(1/2)``
or ``1/(2*hbar*c2)^(1/2)`` live in the ring without any floating point.

``xi`` is an ordinary symbol; its defining relation (``xi^2`` equals the
inverse of ``1 + theta*eta/4*hbar^2``) is applied only through
:func:`xi_reduce`, never implicitly.

Everything here is immutable and every operation is a pure function, so
values are safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "CoeffError",
    "DivisionByZero",
    "OddXiPower",
    "FractionalPowerOfSum",
    "UnboundSymbol",
    "NegativeFractionalPower",
    "GaussianRational",
    "Monomial",
    "Coefficient",
    "xi_reduce",
    "coeff_add",
    "coeff_mul",
    "coeff_subst",
    "coeff_eval",
]

RationalLike = Union[int, Fraction]

XI_SYMBOL = "xi"


class CoeffError(Exception):
    """Base class for coefficient arithmetic errors."""


class DivisionByZero(CoeffError, ZeroDivisionError):
    """A denominator is exactly zero."""


class OddXiPower(CoeffError):
    """xi appears with an odd (or fractional) exponent during xi-reduction."""


class FractionalPowerOfSum(CoeffError):
    """A fractional power would have to act on a sum of monomials."""


class UnboundSymbol(CoeffError):
    """Numeric evaluation or substitution met a symbol without a value."""


class NegativeFractionalPower(CoeffError):
    """A fractional power would have to act on a negative or complex base."""


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex rational ``re + i*im``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if type(self.re) is not Fraction:
            object.__setattr__(self, "re", Fraction(self.re))
        if type(self.im) is not Fraction:
            object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def scaled(self, factor: Fraction) -> "GaussianRational":
        return GaussianRational(self.re * factor, self.im * factor)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise DivisionByZero("inverse of zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_one(self) -> bool:
        return self.re == 1 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


_GR_ZERO = GaussianRational()
_GR_ONE = GaussianRational(Fraction(1))
_GR_I = GaussianRational(Fraction(0), Fraction(1))


def _key_rank(key: str):
    # numeric prime bases sort ahead of symbols, symbols lexicographically
    if key.isdigit():
        return (0, int(key), "")
    return (1, 0, key)


@dataclass(frozen=True)
class Monomial:
    """Product of ``key^exponent`` factors with rational exponents.

    Keys are symbol names, plus decimal strings for prime bases (``"2"``)
    whose exponents are kept in ``[0, 1)``; integer parts of prime powers
    are folded into the term's Gaussian-rational coefficient.
    """

    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(self.items))
        object.__setattr__(self, "_skey", None)

    def __hash__(self):
        return self._hash

    def exponent(self, key: str) -> Fraction:
        for k, e in self.items:
            if k == key:
                return e
        return Fraction(0)

    def sort_key(self):
        key = self._skey
        if key is None:
            key = tuple((_key_rank(k), e) for k, e in self.items)
            object.__setattr__(self, "_skey", key)
        return key

    def is_identity(self) -> bool:
        return not self.items


_MONO_ONE = Monomial()


def _factor_int(n: int) -> dict:
    """Prime factorization of n >= 1 by trial division (bases stay small)."""
    out: dict = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _mono_make(exps: Mapping[str, Fraction]):
    """Canonical monomial from an exponent map.

    Returns ``(carry, Monomial)`` where ``carry`` is the rational factor
    produced by folding integer parts of prime-base exponents.
    """
    carry = Fraction(1)
    kept = {}
    for key, e in exps.items():
        if e == 0:
            continue
        if key.isdigit():
            base = int(key)
            whole = e.numerator // e.denominator
            frac = e - whole
            if whole:
                carry *= Fraction(base) ** whole
            if frac:
                kept[key] = frac
        else:
            kept[key] = e
    items = tuple(sorted(kept.items(), key=lambda kv: _key_rank(kv[0])))
    return carry, Monomial(items)


def _mono_mul(a: Monomial, b: Monomial):
    exps = dict(a.items)
    for k, e in b.items:
        exps[k] = exps.get(k, Fraction(0)) + e
    return _mono_make(exps)


def _mono_div(a: Monomial, b: Monomial):
    exps = dict(a.items)
    for k, e in b.items:
        exps[k] = exps.get(k, Fraction(0)) - e
    return _mono_make(exps)


def _mono_pow(a: Monomial, q: Fraction):
    return _mono_make({k: e * q for k, e in a.items})


# A term is a (GaussianRational, Monomial) pair; an "msum" is a canonical
# tuple of terms sorted by monomial, with like terms merged and zeros dropped.


def _msum(terms: Iterable) -> tuple:
    acc: dict = {}
    for g, m in terms:
        if g.is_zero():
            continue
        prev = acc.get(m)
        acc[m] = g if prev is None else prev + g
    out = [(g, m) for m, g in acc.items() if not g.is_zero()]
    out.sort(key=lambda t: t[1].sort_key())
    return tuple(out)


def _msum_mul(a: tuple, b: tuple) -> tuple:
    prods = []
    for g1, m1 in a:
        for g2, m2 in b:
            carry, m = _mono_mul(m1, m2)
            prods.append(((g1 * g2).scaled(carry), m))
    return _msum(prods)


def _msum_neg(a: tuple) -> tuple:
    return tuple((-g, m) for g, m in a)


def _msum_conj(a: tuple) -> tuple:
    return _msum((g.conjugate(), m) for g, m in a)


_MSUM_ONE = ((_GR_ONE, _MONO_ONE),)


def _strip_monomial(terms: tuple, divisor: Monomial) -> tuple:
    out = []
    for g, m in terms:
        carry, mm = _mono_div(m, divisor)
        out.append((g.scaled(carry), mm))
    return _msum(out)


@dataclass(frozen=True, eq=False)
class Coefficient:
    """Exact scalar: fraction of two canonical monomial sums.

    Invariants: the denominator is never zero, carries leading coefficient
    one, and is the trivial sum ``1`` unless it is a genuine multi-term sum;
    any monomial factor shared by every numerator and denominator term is
    cancelled, so e.g. ``a - a`` is the canonical zero and equal values
    built in different term orders are identical tuples.
    """

    num: tuple
    den: tuple

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero() -> "Coefficient":
        return _COEFF_ZERO

    @staticmethod
    def one() -> "Coefficient":
        return _COEFF_ONE

    @staticmethod
    def i() -> "Coefficient":
        return _COEFF_I

    @staticmethod
    def rational(p: RationalLike, q: RationalLike = 1) -> "Coefficient":
        return _coeff([(GaussianRational(Fraction(p, 1) / Fraction(q, 1)), _MONO_ONE)], _MSUM_ONE)

    @staticmethod
    def gaussian(g: GaussianRational) -> "Coefficient":
        return _coeff([(g, _MONO_ONE)], _MSUM_ONE)

    @staticmethod
    def from_term(g: GaussianRational, m: Monomial) -> "Coefficient":
        return _coeff([(g, m)], _MSUM_ONE)

    @staticmethod
    def symbol(name: str, exponent: RationalLike = 1) -> "Coefficient":
        carry, m = _mono_make({name: Fraction(exponent)})
        return _coeff([(_GR_ONE.scaled(carry), m)], _MSUM_ONE)

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == _MSUM_ONE and self.den == _MSUM_ONE

    def is_monomial(self) -> bool:
        """Single term over a trivial denominator."""
        return len(self.num) == 1 and self.den == _MSUM_ONE

    def is_negative(self) -> bool:
        """Sign of the leading numerator term (rendering convention)."""
        if not self.num:
            return False
        g = self.num[0][0]
        return g.re < 0 or (g.re == 0 and g.im < 0)

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return _coeff(self.num + other.num, self.den)
        return _coeff(
            _msum_mul(self.num, other.den) + _msum_mul(other.num, self.den),
            _msum_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> "Coefficient":
        return _coeff(_msum_neg(self.num), self.den)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return _COEFF_ZERO
        if self.num == _MSUM_ONE and self.den == _MSUM_ONE:
            return other
        if other.num == _MSUM_ONE and other.den == _MSUM_ONE:
            return self
        return _coeff(_msum_mul(self.num, other.num), _msum_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "Coefficient":
        if self.is_zero():
            raise DivisionByZero("inverse of zero coefficient")
        return _coeff(self.den, self.num)

    def __pow__(self, exponent):
        e = Fraction(exponent)
        if e.denominator == 1:
            return self._int_pow(e.numerator)
        if self.is_zero():
            if e > 0:
                return _COEFF_ZERO
            raise DivisionByZero("zero to a negative power")
        if not self.is_monomial():
            raise FractionalPowerOfSum(
                f"cannot raise a sum to the power {e}: {self}"
            )
        g, m = self.num[0]
        return _term_fraction_power(g, m, e)

    def _int_pow(self, n: int) -> "Coefficient":
        if n == 0:
            return _COEFF_ONE
        base = self if n > 0 else self.inverse()
        n = abs(n)
        out = _COEFF_ONE
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sqrt(self) -> "Coefficient":
        return self ** Fraction(1, 2)

    def conjugate(self) -> "Coefficient":
        """Complex conjugate; all symbols are treated as real."""
        return _coeff(_msum_conj(self.num), _msum_conj(self.den))

    # -- equality ----------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _msum_mul(self.num, other.den) == _msum_mul(other.num, self.den)

    __hash__ = None  # value equality crosses representations; do not hash

    # -- substitution and evaluation ---------------------------------

    def substitute(self, bindings: Mapping[str, "Coefficient"]) -> "Coefficient":
        """Replace symbols by coefficients.

        Bound symbols must appear with integer exponents unless the binding
        is itself a pure monomial (or zero), in which case rational powers
        distribute; otherwise :class:`FractionalPowerOfSum` is raised.
        """
        if not bindings:
            return self
        num = _subst_msum(self.num, bindings)
        den = _subst_msum(self.den, bindings)
        return num / den

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        """Floating evaluation with every symbol bound."""
        den = _eval_msum(self.den, values)
        if den == 0:
            raise DivisionByZero("denominator evaluates to zero")
        return _eval_msum(self.num, values) / den

    def monomial_exponents(self) -> dict:
        """Exponent map of a pure monomial value (prime bases included)."""
        if self.is_zero():
            raise ValueError("zero has no monomial exponents")
        if not self.is_monomial():
            raise ValueError(f"not a monomial: {self}")
        return dict(self.num[0][1].items)

    # -- rendering ---------------------------------------------------

    def __str__(self) -> str:
        if not self.num:
            return "0"
        if self.den == _MSUM_ONE:
            return _msum_str(self.num)
        return f"({_msum_str(self.num)})/({_msum_str(self.den)})"

    def __repr__(self) -> str:
        return f"Coefficient({self})"


def _coerce(value):
    if isinstance(value, Coefficient):
        return value
    if isinstance(value, (int, Fraction)):
        return Coefficient.rational(value)
    return NotImplemented


def _coeff(num_terms, den_terms) -> Coefficient:
    """Normalize a fraction of monomial sums into canonical form."""
    num = num_terms if num_terms is _MSUM_ONE else _msum(num_terms)
    den = den_terms if den_terms is _MSUM_ONE else _msum(den_terms)
    if not den:
        raise DivisionByZero("denominator is the zero sum")
    if not num:
        return Coefficient((), _MSUM_ONE)
    if den is _MSUM_ONE or den == _MSUM_ONE:
        # trivial denominator: content extraction is a no-op round trip
        return Coefficient(num, _MSUM_ONE)

    # cancel the monomial content shared by every term of num and den
    keys = {k for _, m in num + den for k, _ in m.items}
    content = {}
    for k in keys:
        lo = min(m.exponent(k) for _, m in num + den)
        if lo != 0:
            content[k] = lo
    if content:
        divisor = Monomial(tuple(sorted(content.items(), key=lambda kv: _key_rank(kv[0]))))
        num = _strip_monomial(num, divisor)
        den = _strip_monomial(den, divisor)

    # scale so the leading denominator coefficient is exactly one
    g0 = den[0][0]
    if not g0.is_one():
        ginv = g0.inverse()
        num = _msum((g * ginv, m) for g, m in num)
        den = _msum((g * ginv, m) for g, m in den)

    # collapse a numerator that is a scalar multiple of the denominator
    if len(num) == len(den) and len(den) > 1:
        ratio = num[0][0] * den[0][0].inverse()
        if all(mn == md and gn == gd * ratio for (gn, mn), (gd, md) in zip(num, den)):
            num = ((ratio, _MONO_ONE),)
            den = _MSUM_ONE

    # fold a single-term denominator into the numerator
    if len(den) == 1:
        m0 = den[0][1]
        if not m0.is_identity():
            num = _strip_monomial(num, m0)
        den = _MSUM_ONE

    return Coefficient(num, den)


_COEFF_ZERO = Coefficient((), _MSUM_ONE)
_COEFF_ONE = Coefficient(_MSUM_ONE, _MSUM_ONE)
_COEFF_I = Coefficient(((_GR_I, _MONO_ONE),), _MSUM_ONE)


def _term_fraction_power(g: GaussianRational, m: Monomial, q: Fraction) -> Coefficient:
    if g.im != 0 or g.re < 0:
        raise NegativeFractionalPower(
            f"fractional power {q} of non-positive scalar {g.re}+{g.im}i"
        )
    if g.re == 0:
        return _COEFF_ZERO if q > 0 else _COEFF_ZERO.inverse()
    exps = {k: e * q for k, e in m.items}
    for prime, n in _factor_int(g.re.numerator).items():
        key = str(prime)
        exps[key] = exps.get(key, Fraction(0)) + n * q
    for prime, n in _factor_int(g.re.denominator).items():
        key = str(prime)
        exps[key] = exps.get(key, Fraction(0)) - n * q
    carry, mono = _mono_make(exps)
    return Coefficient.from_term(_GR_ONE.scaled(carry), mono)


def _subst_msum(terms: tuple, bindings: Mapping[str, Coefficient]) -> Coefficient:
    total = _COEFF_ZERO
    for g, m in terms:
        part = Coefficient.gaussian(g)
        for k, e in m.items:
            if k in bindings and not k.isdigit():
                b = bindings[k]
                if e.denominator == 1:
                    part = part * (b ** e.numerator)
                elif b.is_zero() or b.is_monomial():
                    part = part * (b ** e)
                else:
                    raise FractionalPowerOfSum(
                        f"binding for {k} is a sum but appears as {k}^{e}"
                    )
            else:
                part = part * Coefficient.from_term(_GR_ONE, Monomial(((k, e),)))
        total = total + part
    return total


def _eval_msum(terms: tuple, values: Mapping[str, complex]) -> complex:
    total = 0j
    for g, m in terms:
        v = complex(g)
        for k, e in m.items:
            if k.isdigit():
                base = complex(int(k))
            else:
                try:
                    base = complex(values[k])
                except KeyError:
                    raise UnboundSymbol(f"no value bound for symbol {k!r}") from None
            if base.imag == 0:
                x = base.real
                if x < 0 and e.denominator != 1:
                    raise NegativeFractionalPower(f"({x})^{e}")
                if x == 0:
                    if e < 0:
                        raise DivisionByZero(f"0^{e}")
                    v = 0j
                    break
                v *= x ** float(e)
            else:
                v *= base ** float(e)
        total += v
    return total


# -- xi reduction ----------------------------------------------------

def _xi_square_value() -> Coefficient:
    # xi^2 -> 4*hbar^2 / (4*hbar^2 + theta*eta)
    hbar2 = Monomial((("hbar", Fraction(2)),))
    theta_eta = Monomial((("eta", Fraction(1)), ("theta", Fraction(1))))
    num = ((GaussianRational(Fraction(4)), hbar2),)
    den = ((GaussianRational(Fraction(4)), hbar2), (_GR_ONE, theta_eta))
    return _coeff(num, den)


_XI_SQUARE = _xi_square_value()


def xi_reduce(value: Coefficient, allow_odd: bool = False) -> Coefficient:
    """Replace every even power of ``xi`` by its exact defining fraction.

    Odd integer powers keep a single bare ``xi`` and reduce the rest when
    ``allow_odd`` is set; otherwise (and for fractional powers) they raise
    :class:`OddXiPower` so the caller decides whether that is acceptable.
    """

    def reduce_terms(terms: tuple) -> Coefficient:
        total = _COEFF_ZERO
        for g, m in terms:
            e = m.exponent(XI_SYMBOL)
            if e == 0:
                total = total + Coefficient.from_term(g, m)
                continue
            if e.denominator != 1:
                if allow_odd:
                    total = total + Coefficient.from_term(g, m)
                    continue
                raise OddXiPower(f"fractional power xi^{e}")
            half, rem = divmod(e.numerator, 2)
            if rem and not allow_odd:
                raise OddXiPower(f"odd power xi^{e} remains")
            stripped = {k: x for k, x in m.items if k != XI_SYMBOL}
            if rem:
                stripped[XI_SYMBOL] = Fraction(1)
            carry, mono = _mono_make(stripped)
            base = Coefficient.from_term(g.scaled(carry), mono)
            total = total + base * (_XI_SQUARE ** half)
        return total

    return reduce_terms(value.num) / reduce_terms(value.den)


# -- spec-facing functional aliases ----------------------------------

def coeff_add(a: Coefficient, b: Coefficient) -> Coefficient:
    return a + b


def coeff_mul(a: Coefficient, b: Coefficient) -> Coefficient:
    return a * b


def coeff_subst(a: Coefficient, bindings: Mapping[str, Coefficient]) -> Coefficient:
    return a.substitute(bindings)


def coeff_eval(a: Coefficient, values: Mapping[str, complex]) -> complex:
    return a.evaluate(values)


# -- canonical text rendering ----------------------------------------

def _factor_order(items):
    # exponent descending, then name descending: xi^2*theta^(1/2)*eta^(1/2)
    return sorted(sorted(items, key=lambda kv: kv[0], reverse=True), key=lambda kv: -kv[1])


def _pow_str(name: str, e: Fraction) -> str:
    if e == 1:
        return name
    if e.denominator == 1:
        return f"{name}^{e.numerator}"
    return f"{name}^({e})"


def _gauss_parts(g: GaussianRational):
    """Positive Gaussian rational as (numerator string, integer denominator)."""
    if g.im == 0:
        return str(g.re.numerator), g.re.denominator
    if g.re == 0:
        if g.im == 1:
            return "i", 1
        if g.im.numerator == 1:
            return "i", g.im.denominator
        return f"{g.im.numerator}*i", g.im.denominator
    sign = "+" if g.im > 0 else "-"
    im = abs(g.im)
    im_str = "i" if im == 1 else f"{im}*i"
    return f"({g.re}{sign}{im_str})", 1


def _term_str(g: GaussianRational, m: Monomial):
    neg = g.re < 0 or (g.re == 0 and g.im < 0)
    if neg:
        g = -g
    pos = [(k, e) for k, e in m.items if e > 0]
    negs = [(k, -e) for k, e in m.items if e < 0]
    num_str, den_int = _gauss_parts(g)
    den_parts = ([str(den_int)] if den_int != 1 else []) + [
        _pow_str(k, e) for k, e in _factor_order(negs)
    ]
    pos_parts = [_pow_str(k, e) for k, e in _factor_order(pos)]
    if not den_parts:
        parts = list(pos_parts)
        if num_str != "1" or not parts:
            parts.insert(0, num_str)
        return neg, "*".join(parts)
    den_str = den_parts[0] if len(den_parts) == 1 else "(" + "*".join(den_parts) + ")"
    group = f"{num_str}/{den_str}"
    if pos_parts:
        return neg, "(" + group + ")*" + "*".join(pos_parts)
    return neg, group


def _msum_str(terms: tuple) -> str:
    chunks = []
    for idx, (g, m) in enumerate(terms):
        neg, body = _term_str(g, m)
        if idx == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)
