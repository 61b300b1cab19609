"""Noncommutative words and expressions over algebras with central commutators.

An :class:`AlgebraTable` registers a finite generator alphabet with a fixed
canonical order, a scalar commutator for every generator pair, an adjoint
involution and (optionally) the subset of generators that annihilate the
vacuum.  Because every commutator is a central scalar, normal ordering by
adjacent swaps terminates and is confluent, which makes expression equality
decidable.

Expressions are immutable; algebra registration happens once at import time
and tables are read-only afterwards, so everything is safe for concurrent
reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .coeff import Coefficient, xi_reduce

__all__ = [
    "AlgebraError",
    "AlgebraMismatch",
    "MissingImage",
    "NoVacuumDeclared",
    "UnknownAlgebra",
    "UnknownGenerator",
    "AlgebraTable",
    "Expr",
    "SubstMap",
    "register_algebra",
    "get_algebra",
    "registered_algebras",
    "normal_order",
    "commutator",
    "substitute",
    "adjoint",
    "vacuum_expectation",
    "applied_to_vacuum",
    "expr_equal",
    "expr_is_zero",
    "map_coefficients",
]

_ZERO = Coefficient.zero()
_ONE = Coefficient.one()


class AlgebraError(Exception):
    """Base class for algebra-level errors."""


class AlgebraMismatch(AlgebraError):
    """Operands live over different algebras."""


class MissingImage(AlgebraError):
    """A substitution map lacks an image for a generator."""


class NoVacuumDeclared(AlgebraError):
    """Vacuum expectation requested on an algebra without annihilators."""


class UnknownAlgebra(AlgebraError):
    """No algebra registered under the requested name."""


class UnknownGenerator(AlgebraError):
    """Name is not a generator (or known symbol) of the algebra."""


class AlgebraTable:
    """Generators with a total order, central commutators and an adjoint map.

    ``commutators`` maps pairs ``(a, b)`` with ``a`` before ``b`` in the
    canonical order to the scalar ``[a, b]``; the reversed commutator is
    always derived by antisymmetry, never stored.  When ``annihilators``
    are declared, every generator must be an annihilator or the adjoint of
    one, and all creators must precede all annihilators in the canonical
    order (normal ordering then puts words into creators-left form, which
    vacuum expectation relies on).
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[str],
        commutators: Mapping[tuple, Coefficient],
        adjoints: Mapping[str, str] | None = None,
        annihilators: Iterable[str] = (),
    ):
        self.name = name
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise AlgebraError(f"duplicate generators in {name}")
        self._index = {g: i for i, g in enumerate(self.generators)}

        self._comm = {}
        for (a, b), c in commutators.items():
            if a not in self._index or b not in self._index:
                raise UnknownGenerator(f"commutator key ({a}, {b}) outside {name}")
            if self._index[a] >= self._index[b]:
                raise AlgebraError(
                    f"commutator keys must be in canonical order, got ({a}, {b})"
                )
            if not c.is_zero():
                self._comm[(a, b)] = c
                self._comm[(b, a)] = -c

        adjoints = dict(adjoints or {})
        self._adjoint = {}
        for g in self.generators:
            partner = adjoints.get(g, g)
            if partner not in self._index:
                raise UnknownGenerator(f"adjoint of {g} is {partner}, not in {name}")
            self._adjoint[g] = partner
        for g, p in self._adjoint.items():
            if self._adjoint[p] != g:
                raise AlgebraError(f"adjoint map of {name} is not an involution")

        self.annihilators = frozenset(annihilators)
        for a in self.annihilators:
            if a not in self._index:
                raise UnknownGenerator(f"annihilator {a} not in {name}")
            if self._adjoint[a] in self.annihilators:
                raise AlgebraError(f"adjoint of annihilator {a} is an annihilator")
        self.creators = frozenset(self._adjoint[a] for a in self.annihilators)
        if self.annihilators:
            leftover = set(self.generators) - self.annihilators - self.creators
            if leftover:
                raise AlgebraError(
                    f"{name}: generators {sorted(leftover)} are neither "
                    "annihilators nor creators"
                )
            if max(self._index[c] for c in self.creators) > min(
                self._index[a] for a in self.annihilators
            ):
                raise AlgebraError(f"{name}: creators must precede annihilators")

        # rendering: a daggered generator prints as adj(base)
        self.display = {}
        for a in self.annihilators:
            self.display[self._adjoint[a]] = f"adj({a})"

        self._order_cache: dict = {}
        self._vev_cache: dict = {}

    def index(self, gen: str) -> int:
        try:
            return self._index[gen]
        except KeyError:
            raise UnknownGenerator(f"{gen!r} is not a generator of {self.name}") from None

    def comm(self, a: str, b: str) -> Coefficient:
        """Central scalar ``[a, b]`` for any generator pair."""
        self.index(a), self.index(b)
        return self._comm.get((a, b), _ZERO)

    def adjoint_of(self, gen: str) -> str:
        self.index(gen)
        return self._adjoint[gen]

    def display_name(self, gen: str) -> str:
        return self.display.get(gen, gen)

    def __repr__(self):
        return f"AlgebraTable({self.name!r}, {len(self.generators)} generators)"


_REGISTRY: dict = {}


def register_algebra(table: AlgebraTable) -> AlgebraTable:
    existing = _REGISTRY.get(table.name)
    if existing is not None and existing is not table:
        raise AlgebraError(f"algebra {table.name!r} already registered")
    _REGISTRY[table.name] = table
    return table


def get_algebra(name: str) -> AlgebraTable:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownAlgebra(f"no algebra registered under {name!r}") from None


def registered_algebras() -> tuple:
    return tuple(sorted(_REGISTRY))


def _word_sort_key(table: AlgebraTable, word: tuple):
    return (-len(word), tuple(table._index[g] for g in word))


class Expr:
    """Finite sum of (coefficient, word) terms over one algebra.

    Terms are kept canonical (like words merged, zeros dropped, fixed
    ordering) but words are *not* reordered implicitly; call
    :func:`normal_order` for the rewritten form.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraTable, terms: Iterable = ()):
        acc: dict = {}
        for c, w in terms:
            if c.is_zero():
                continue
            prev = acc.get(w)
            acc[w] = c if prev is None else prev + c
        items = [(c, w) for w, c in acc.items() if not c.is_zero()]
        items.sort(key=lambda t: _word_sort_key(algebra, t[1]))
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", tuple(items))

    def __setattr__(self, *_):
        raise AttributeError("Expr is immutable")

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(algebra: AlgebraTable) -> "Expr":
        return Expr(algebra)

    @staticmethod
    def identity(algebra: AlgebraTable, coeff: Coefficient = _ONE) -> "Expr":
        return Expr(algebra, [(coeff, ())])

    @staticmethod
    def generator(algebra: AlgebraTable, name: str) -> "Expr":
        algebra.index(name)
        return Expr(algebra, [(_ONE, (name,))])

    @staticmethod
    def word(algebra: AlgebraTable, letters: Sequence[str], coeff: Coefficient = _ONE) -> "Expr":
        for g in letters:
            algebra.index(g)
        return Expr(algebra, [(coeff, tuple(letters))])

    # -- structure ---------------------------------------------------

    def is_zero_literal(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(not w for _, w in self.terms)

    def scalar_part(self) -> Coefficient:
        for c, w in self.terms:
            if not w:
                return c
        return _ZERO

    # -- arithmetic --------------------------------------------------

    def _check(self, other: "Expr"):
        if self.algebra.name != other.algebra.name:
            raise AlgebraMismatch(
                f"{self.algebra.name} vs {other.algebra.name}"
            )

    def __add__(self, other: "Expr") -> "Expr":
        if not isinstance(other, Expr):
            return NotImplemented
        self._check(other)
        return Expr(self.algebra, self.terms + other.terms)

    def __sub__(self, other: "Expr") -> "Expr":
        if not isinstance(other, Expr):
            return NotImplemented
        self._check(other)
        return Expr(self.algebra, self.terms + tuple((-c, w) for c, w in other.terms))

    def __neg__(self) -> "Expr":
        return Expr(self.algebra, ((-c, w) for c, w in self.terms))

    def __mul__(self, other):
        if isinstance(other, Expr):
            self._check(other)
            prods = []
            for c1, w1 in self.terms:
                for c2, w2 in other.terms:
                    prods.append((c1 * c2, w1 + w2))
            return Expr(self.algebra, prods)
        scaled = _scale_coeff(other)
        if scaled is NotImplemented:
            return NotImplemented
        return Expr(self.algebra, ((c * scaled, w) for c, w in self.terms))

    def __rmul__(self, other):
        scaled = _scale_coeff(other)
        if scaled is NotImplemented:
            return NotImplemented
        return Expr(self.algebra, ((scaled * c, w) for c, w in self.terms))

    def __pow__(self, n: int) -> "Expr":
        if n < 0:
            raise ValueError("negative powers of operator expressions")
        out = Expr.identity(self.algebra)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self.algebra.name == other.algebra.name and self.terms == other.terms

    __hash__ = None

    # -- views -------------------------------------------------------

    def normal_ordered(self) -> "Expr":
        return normal_order(self)

    def adjoint(self) -> "Expr":
        return adjoint(self)

    def __str__(self) -> str:
        return render_expr(self)

    def __repr__(self) -> str:
        return f"Expr[{self.algebra.name}]({self})"


def _scale_coeff(value):
    if isinstance(value, Coefficient):
        return value
    if isinstance(value, (int, Fraction)):
        return Coefficient.rational(value)
    return NotImplemented


@dataclass(frozen=True)
class SubstMap:
    """Homomorphism sending each source generator to an expression over the target."""

    source: AlgebraTable
    target: AlgebraTable
    image: Mapping[str, Expr] = field(default_factory=dict)

    def __post_init__(self):
        for g in self.source.generators:
            if g not in self.image:
                raise MissingImage(f"no image for generator {g}")
        for g, e in self.image.items():
            if e.algebra.name != self.target.name:
                raise AlgebraMismatch(
                    f"image of {g} lives over {e.algebra.name}, expected {self.target.name}"
                )


# -- normal ordering --------------------------------------------------

def _order_word(table: AlgebraTable, word: tuple) -> tuple:
    """Canonical form of a single word as a tuple of (coefficient, word)."""
    cached = table._order_cache.get(word)
    if cached is not None:
        return cached
    idx = table._index
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if idx[a] > idx[b]:
            swapped = word[:i] + (b, a) + word[i + 2 :]
            acc: dict = {}
            for c, w in _order_word(table, swapped):
                acc[w] = acc.get(w, _ZERO) + c
            scalar = table.comm(a, b)
            if not scalar.is_zero():
                rest = word[:i] + word[i + 2 :]
                for c, w in _order_word(table, rest):
                    acc[w] = acc.get(w, _ZERO) + scalar * c
            result = tuple(
                sorted(
                    ((c, w) for w, c in acc.items() if not c.is_zero()),
                    key=lambda t: _word_sort_key(table, t[1]),
                )
            )
            table._order_cache[word] = result
            return result
    result = ((_ONE, word),)
    table._order_cache[word] = result
    return result


def normal_order(e: Expr) -> Expr:
    """Rewrite every word into the algebra's canonical generator order.

    Adjacent out-of-order pairs are swapped via ``g_j g_i = g_i g_j + [g_j, g_i]``;
    commutators are central, so the result is independent of swap order.
    """
    table = e.algebra
    out = []
    for c, w in e.terms:
        for g, ww in _order_word(table, w):
            out.append((c * g, ww))
    return Expr(table, out)


def normal_order_word_shuffled(table: AlgebraTable, word: tuple, rng) -> Expr:
    """Normal ordering with a randomized choice of swap position (test hook)."""
    pending = [(_ONE, tuple(word))]
    out: dict = {}
    idx = table._index
    while pending:
        c, w = pending.pop()
        spots = [i for i in range(len(w) - 1) if idx[w[i]] > idx[w[i + 1]]]
        if not spots:
            out[w] = out.get(w, _ZERO) + c
            continue
        i = rng.choice(spots)
        a, b = w[i], w[i + 1]
        pending.append((c, w[:i] + (b, a) + w[i + 2 :]))
        scalar = table.comm(a, b)
        if not scalar.is_zero():
            pending.append((c * scalar, w[:i] + w[i + 2 :]))
    return Expr(table, ((c, w) for w, c in out.items()))


# -- derived operations ------------------------------------------------

def commutator(a: Expr, b: Expr) -> Expr:
    """Normal-ordered ``a b - b a``."""
    if a.algebra.name != b.algebra.name:
        raise AlgebraMismatch(f"{a.algebra.name} vs {b.algebra.name}")
    return normal_order(a * b - b * a)


def substitute(e: Expr, m: SubstMap) -> Expr:
    """Homomorphic image of ``e``, normal-ordered over the target algebra."""
    if e.algebra.name != m.source.name:
        raise AlgebraMismatch(
            f"expression over {e.algebra.name}, map from {m.source.name}"
        )
    total = Expr.zero(m.target)
    for c, w in e.terms:
        part = Expr.identity(m.target, c)
        for g in w:
            try:
                img = m.image[g]
            except KeyError:
                raise MissingImage(f"no image for generator {g}") from None
            part = part * img
        total = total + part
    return normal_order(total)


def adjoint(e: Expr) -> Expr:
    """Hermitian adjoint: words reversed, generators daggered, scalars conjugated."""
    table = e.algebra
    terms = [
        (c.conjugate(), tuple(table.adjoint_of(g) for g in reversed(w)))
        for c, w in e.terms
    ]
    return normal_order(Expr(table, terms))


def _vev_word(table: AlgebraTable, word: tuple) -> Coefficient:
    if not word:
        return _ONE
    cached = table._vev_cache.get(word)
    if cached is not None:
        return cached
    head, rest = word[0], word[1:]
    if head in table.creators:
        value = _ZERO  # the bra side kills a leading creator
    else:
        value = _ZERO
        for j, g in enumerate(rest):
            scalar = table.comm(head, g)
            if not scalar.is_zero():
                value = value + scalar * _vev_word(table, rest[:j] + rest[j + 1 :])
    table._vev_cache[word] = value
    return value


def vacuum_expectation(e: Expr) -> Coefficient:
    """Exact ``<0| e |0>`` over an algebra with declared annihilators.

    Equivalent to normal ordering and keeping the identity-word coefficient:
    in creators-left normal form every non-identity word either ends in an
    annihilator or starts with a creator, and both kill the vacuum.
    """
    table = e.algebra
    if not table.annihilators:
        raise NoVacuumDeclared(f"algebra {table.name} declares no annihilators")
    total = _ZERO
    for c, w in e.terms:
        total = total + c * _vev_word(table, w)
    return total


def applied_to_vacuum(e: Expr) -> Expr:
    """State ``e |0>`` as the creator-only part of the normal-ordered form."""
    table = e.algebra
    if not table.annihilators:
        raise NoVacuumDeclared(f"algebra {table.name} declares no annihilators")
    n = normal_order(e)
    kept = [(c, w) for c, w in n.terms if not any(g in table.annihilators for g in w)]
    return Expr(table, kept)


def map_coefficients(e: Expr, fn: Callable[[Coefficient], Coefficient]) -> Expr:
    return Expr(e.algebra, ((fn(c), w) for c, w in e.terms))


def expr_is_zero(e: Expr) -> bool:
    """True iff the normal-ordered expression vanishes after xi-reduction."""
    n = normal_order(e)
    return all(xi_reduce(c, allow_odd=True).is_zero() for c, _ in n.terms)


def expr_equal(a: Expr, b: Expr) -> bool:
    """Exact equality: the difference normal-orders to zero (xi-reduced)."""
    if a.algebra.name != b.algebra.name:
        raise AlgebraMismatch(f"{a.algebra.name} vs {b.algebra.name}")
    return expr_is_zero(a - b)


# -- rendering ---------------------------------------------------------

def _word_str(table: AlgebraTable, word: tuple) -> str:
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = table.display_name(word[i])
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def _coeff_prefix(c: Coefficient):
    """Coefficient as (negative, text or None) for use in a product."""
    if c.is_one():
        return False, None
    if (-c).is_one():
        return True, None
    neg = c.is_negative()
    if neg:
        c = -c
    text = str(c)
    if len(c.num) > 1 and c.den == Coefficient.one().den:
        text = f"({text})"
    return neg, text


def render_expr(e: Expr) -> str:
    """Deterministic text form; ``parse(render_expr(e))`` returns ``e``."""
    if not e.terms:
        return "0"
    chunks = []
    for idx, (c, w) in enumerate(e.terms):
        neg, coeff_text = _coeff_prefix(c)
        word_text = _word_str(e.algebra, w) if w else None
        if coeff_text is None:
            body = word_text if word_text is not None else "1"
        elif word_text is None:
            body = coeff_text
        else:
            body = f"{coeff_text}*{word_text}"
        if idx == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)
