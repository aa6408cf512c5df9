"""Exact polynomials over Omega-words.

Coefficients live in the rationals (``fractions.Fraction``) or in a prime
field ``F_p``.  A :class:`Poly` never stores a zero coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .lalg.normal import bracket
from .order import WordOrder
from .term import (
    HOLE, INFIX_OPS, Context, Mode, Node, Signature, Word, format_term,
    parse_linear_combination,
)


class ModP:
    """An element of ``F_p`` in canonical form ``0 <= value < p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(self._coerce(other), self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """Coefficient field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    def __init__(self, p: int | None = None):
        if p is not None and (p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1))):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"Fp({self.p})"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __call__(self, num, den: int = 1):
        if self.p is None:
            return Fraction(num, den)
        if isinstance(num, Fraction):
            num, den = num.numerator, num.denominator * den
        if den % self.p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes in F_{self.p}")
        return ModP(num * pow(den, -1, self.p), self.p)

    @classmethod
    def parse(cls, text: str) -> Field:
        t = text.replace(" ", "")
        if t in ("Q", "QQ"):
            return cls()
        if t.startswith("Fp(") and t.endswith(")"):
            return cls(int(t[3:-1]))
        raise ValueError(f"unknown field {text!r}; use Q or Fp(p)")


QQ = Field()


def _exact(c):
    if isinstance(c, (Fraction, ModP)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"inexact coefficient {c!r}")


class Poly:
    """A finite linear combination of words; immutable once built."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[Word, object]] = ()):
        acc: dict[Word, object] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = _exact(c)
            if w in acc:
                acc[w] = acc[w] + c
            else:
                acc[w] = c
        self.terms = {w: c for w, c in acc.items() if c != 0}

    @classmethod
    def word(cls, w: Word, coef=1) -> Poly:
        return cls({w: coef})

    @classmethod
    def _trusted(cls, terms: dict) -> Poly:
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return Poly._trusted(out)

    def __neg__(self) -> Poly:
        return Poly._trusted({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, alpha) -> Poly:
        alpha = _exact(alpha)
        if alpha == 0:
            return Poly()
        return Poly._trusted({w: c * alpha for w, c in self.terms.items()})

    def __mul__(self, alpha) -> Poly:
        if isinstance(alpha, Poly):
            return NotImplemented
        return self.scale(alpha)

    __rmul__ = __mul__

    def __truediv__(self, alpha) -> Poly:
        return self.scale(1 / _exact(alpha))

    @property
    def support(self) -> list[Word]:
        return list(self.terms)

    def coeff(self, w: Word):
        return self.terms.get(w, 0)

    def leading(self, order: WordOrder) -> tuple[Word, object]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading word")
        w = order.max(self.terms)
        return w, self.terms[w]

    def lead_word(self, order: WordOrder) -> Word:
        return self.leading(order)[0]

    def monic(self, order: WordOrder) -> Poly:
        _, c = self.leading(order)
        return self if c == 1 else self.scale(1 / c)

    def sorted_terms(self, order: WordOrder) -> list[tuple[Word, object]]:
        return [(w, self.terms[w]) for w in order.sorted(self.terms, descending=True)]

    def map_words(self, fn: Callable[[Word], Word]) -> Poly:
        return Poly((fn(w), c) for w, c in self.terms.items())

    def format(self, order: WordOrder | None = None) -> str:
        if not self.terms:
            return "0"
        items = self.sorted_terms(order) if order else list(self.terms.items())
        parts = []
        for i, (w, c) in enumerate(items):
            neg = _is_negative(c)
            mag = -c if neg else c
            text = format_term(w)
            if mag != 1:
                if isinstance(w, Node) and w.op in INFIX_OPS:
                    text = f"({text})"
                text = f"{mag}*{text}"
            if i == 0:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self.format()!r})"


def _is_negative(c) -> bool:
    if isinstance(c, ModP):
        return False
    return c < 0


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def scale(alpha, f: Poly) -> Poly:
    return f.scale(alpha)


def leading(f: Poly, order: WordOrder) -> tuple[Word, object]:
    return f.leading(order)


def monic(f: Poly, order: WordOrder) -> Poly:
    return f.monic(order)


def normalize(f: Poly, mode: Mode) -> Poly:
    """Bracket every word in L-mode; identity in the free Omega-algebra."""
    if mode is Mode.L:
        return f.map_words(bracket)
    return f


def apply_context(c: Context, f: Poly, mode: Mode = Mode.OMEGA) -> Poly:
    """Linear extension of plugging; in L-mode each result is bracket-normalised."""
    if c.frame is HOLE:
        return normalize(f, mode)
    if mode is Mode.L:
        return Poly((bracket(c.plug(w)), a) for w, a in f.terms.items())
    return Poly._trusted({c.plug(w): a for w, a in f.terms.items()})


def parse_poly(text: str, sig: Signature, field: Field = QQ) -> Poly:
    """Parse ``c1*t1 + c2*t2 - ...`` with rational literals ``p/q``."""
    return Poly((w, field(num, den)) for num, den, w in parse_linear_combination(text, sig))
