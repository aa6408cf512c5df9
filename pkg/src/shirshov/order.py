"""The two monomial orderings on Omega-words.

``weight-general`` compares ``(|u|_Omega + |u|_X, |u|_X, op, children...)``
and is a monomial well-order for any signature.  ``weight-L`` compares
``(|u|_X, op, children...)``; it is only offered for the binary signature
``{>, <}`` where the leaf count is a genuine weight.  With unary operations
the latter is not well-founded, see :func:`remark_chain`.
"""

from __future__ import annotations

import enum
from typing import Iterable

from .term import Gen, Node, Signature, SignatureError, Word


_KEY_CACHE_LIMIT = 1 << 18


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class OrderKind(enum.Enum):
    GENERAL = "weight-general"
    L = "weight-L"


class WordOrder:
    """Memoised sort keys for one ordering over one signature.

    Keys are nested tuples, so Python's tuple comparison is exactly the
    recursive lexicographic comparison of weight tuples.
    """

    def __init__(self, sig: Signature, kind: OrderKind | str = OrderKind.L,
                 *, _allow_any: bool = False):
        kind = OrderKind(kind)
        if kind is OrderKind.L and not sig.is_binary_l and not _allow_any:
            raise SignatureError("weight-L ordering needs the binary signature [>/2, </2]")
        self.sig = sig
        self.kind = kind
        self._cache: dict[Word, tuple] = {}

    def __repr__(self):
        return f"WordOrder({self.kind.value})"

    def key(self, w: Word) -> tuple:
        k = self._cache.get(w)
        if k is None:
            k = self._key(w)
            if len(self._cache) >= _KEY_CACHE_LIMIT:
                self._cache.clear()
            self._cache[w] = k
        return k

    def _key(self, w: Word) -> tuple:
        sig = self.sig
        if isinstance(w, Gen):
            if self.kind is OrderKind.GENERAL:
                return (1, sig.gen_index(w.name))
            # generators precede operations in the second slot
            return (1, (0, sig.gen_index(w.name)))
        assert isinstance(w, Node)
        children = tuple(self.key(a) for a in w.args)
        if self.kind is OrderKind.GENERAL:
            return (w.nodes + w.leaves, w.leaves, sig.op_index(w.op)) + children
        return (w.leaves, (1, sig.op_index(w.op))) + children

    def compare(self, u: Word, v: Word) -> Cmp:
        if u == v:
            return Cmp.EQ
        return Cmp.GT if self.key(u) > self.key(v) else Cmp.LT

    def greater(self, u: Word, v: Word) -> bool:
        return self.key(u) > self.key(v)

    def max(self, words: Iterable[Word]) -> Word:
        return max(words, key=self.key)

    def sorted(self, words: Iterable[Word], descending: bool = False) -> list[Word]:
        return sorted(words, key=self.key, reverse=descending)


_orders: dict[tuple[Signature, OrderKind], WordOrder] = {}


def word_order(sig: Signature, kind: OrderKind | str) -> WordOrder:
    kind = OrderKind(kind)
    try:
        return _orders[sig, kind]
    except KeyError:
        o = _orders[sig, kind] = WordOrder(sig, kind)
        return o


def compare_general(u: Word, v: Word, sig: Signature) -> Cmp:
    return word_order(sig, OrderKind.GENERAL).compare(u, v)


def compare_L(u: Word, v: Word, sig: Signature) -> Cmp:
    return word_order(sig, OrderKind.L).compare(u, v)


REMARK_SIGNATURE = Signature(("x",), (("zeta", 1), ("delta", 1)))
_remark_order = WordOrder(REMARK_SIGNATURE, OrderKind.L, _allow_any=True)


def remark_compare(u: Word, v: Word) -> Cmp:
    """Leaf-count-first comparison over one generator and unary ``delta > zeta``."""
    return _remark_order.compare(u, v)


def remark_chain(k: int) -> list[Word]:
    """``delta(x), zeta(delta(x)), zeta(zeta(delta(x))), ...`` (first ``k`` terms).

    Every term has one leaf, and each is strictly smaller than the previous one
    under the leaf-count-first ordering: an infinite descending chain.
    """
    out: list[Word] = []
    w: Word = Node("delta", (Gen("x"),))
    for _ in range(k):
        out.append(w)
        w = Node("zeta", (w,))
    return out
