"""Normal words of the free L-algebra.

A word is normal when it has no subterm ``(a>b)<c``.  Every word equals a
unique normal word modulo the entanglement relation ``(a>b)<c = a>(b<c)``,
and :func:`nmul` multiplies normal words without leaving that set.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from ..term import PREC, SUCC, Gen, Node, Signature, Word, prec, succ


def _succ_rooted(u: Word) -> bool:
    return isinstance(u, Node) and u.op == SUCC


@lru_cache(maxsize=1 << 17)
def is_normal(u: Word) -> bool:
    if isinstance(u, Gen):
        return True
    a, b = u.args
    if u.op == PREC and _succ_rooted(a):
        return False
    return is_normal(a) and is_normal(b)


def nmul(u: Word, op: str, v: Word) -> Word:
    """Product of two normal words in the free L-algebra.

    ``u>v`` is already normal.  For ``u<v`` descend the right spine of ``>``
    in ``u``: ``[(u1>u2)<v] = u1>[u2<v]``.
    """
    if op == SUCC:
        return succ(u, v)
    lefts = []
    while _succ_rooted(u):
        lefts.append(u.args[0])
        u = u.args[1]
    out = prec(u, v)
    for a in reversed(lefts):
        out = succ(a, out)
    return out


@lru_cache(maxsize=1 << 17)
def bracket(u: Word) -> Word:
    """The unique normal word equal to ``u`` in the free L-algebra."""
    if isinstance(u, Gen):
        return u
    a, b = u.args
    return nmul(bracket(a), u.op, bracket(b))


@lru_cache(maxsize=None)
def _normal_by_size(gens: tuple[str, ...], size: int) -> tuple[Word, ...]:
    if size == 1:
        return tuple(Gen(g) for g in gens)
    out = []
    for k in range(1, size):
        lefts = _normal_by_size(gens, k)
        rights = _normal_by_size(gens, size - k)
        for a in lefts:
            for b in rights:
                out.append(succ(a, b))
            if not _succ_rooted(a):
                for b in rights:
                    out.append(prec(a, b))
    return tuple(out)


def enumerate_normal(size: int, gens: Sequence[str]) -> list[Word]:
    """All normal words with ``size`` leaves, ascending in the leaf-count-first order."""
    from ..order import OrderKind, word_order

    gens = tuple(gens)
    words = _normal_by_size(gens, size) if size >= 1 else ()
    return word_order(Signature.l_algebra(gens), OrderKind.L).sorted(words)


def count_normal(size: int, n_gens: int = 1) -> int:
    """Closed form ``n_gens**size * C(3*size - 2, size - 1) / size``."""
    return n_gens**size * comb(3 * size - 2, size - 1) // size


def loday_form(u: Word) -> tuple[int, list[str], int] | None:
    """Decompose ``x_-m > (... > (x_0 < (x_1 > ... > (x_{n-1} > x_n))))``.

    Returns ``(m, letters, n)`` with ``letters = [x_-m, ..., x_n]`` or ``None``
    when ``u`` does not have this shape.
    """
    letters: list[str] = []
    while _succ_rooted(u) and isinstance(u.args[0], Gen):
        letters.append(u.args[0].name)
        u = u.args[1]
    m = len(letters)
    if isinstance(u, Gen):
        return m, letters + [u.name], 0
    if u.op != PREC or not isinstance(u.args[0], Gen):
        return None
    letters.append(u.args[0].name)
    rest = u.args[1]
    n = 1
    while _succ_rooted(rest) and isinstance(rest.args[0], Gen):
        letters.append(rest.args[0].name)
        rest = rest.args[1]
        n += 1
    if not isinstance(rest, Gen):
        return None
    letters.append(rest.name)
    return m, letters, n


def fp_irr_characterization(u: Word, X: Iterable[str], Y: Iterable[str]) -> bool:
    """Closed-form irreducibility for the free product of two algebras on bases X, Y."""
    return _fp_irr(u, frozenset(X), frozenset(Y))


@lru_cache(maxsize=1 << 17)
def _fp_irr(u: Word, X: frozenset, Y: frozenset) -> bool:
    if not is_normal(u):
        return False
    if isinstance(u, Gen):
        return u.name in X or u.name in Y
    a, b = u.args
    if u.leaves == 2:
        return _side(a, X, Y) != _side(b, X, Y)
    if not (_fp_irr(a, X, Y) and _fp_irr(b, X, Y)):
        return False
    if u.op == PREC:
        return True
    if a.leaves >= 2:
        return True
    return not _prec_chain_from(b, _side(a, X, Y), X, Y)


def _side(w: Word, X, Y) -> str | None:
    if isinstance(w, Gen):
        return "X" if w.name in X else "Y" if w.name in Y else None
    return None


def _prec_chain_from(w: Word, side, X, Y) -> bool:
    """Is ``w = ((g<w1)<...)<wn`` with ``n >= 1`` and ``g`` on the given side?"""
    depth = 0
    while isinstance(w, Node) and w.op == PREC:
        w = w.args[0]
        depth += 1
    return depth >= 1 and _side(w, X, Y) == side
