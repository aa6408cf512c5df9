"""Omega-words, one-hole contexts and linear rule patterns.

Words are immutable trees: a :class:`Gen` leaf or a :class:`Node` carrying an
operation symbol and its arguments.  Binary operations spelled ``>`` and ``<``
print infix (``x>(y<z)``); every other operation prints prefix (``f(x, y)``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping, Protocol, Sequence, Union

SUCC = ">"
PREC = "<"
INFIX_OPS = (SUCC, PREC)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = {"lchain", "rchain"}
_ALIASES = {"≻": SUCC, "≺": PREC}


class Mode(enum.Enum):
    OMEGA = "omega"
    L = "L"


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(message + where)


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    """Ordered generators, ordered operations with arities, and the ambient mode.

    Declaration order is the well-order used by both monomial orderings.
    """

    generators: tuple[str, ...]
    operations: tuple[tuple[str, int], ...]
    mode: Mode = Mode.OMEGA
    _gen_index: dict = field(init=False, repr=False, compare=False, hash=False)
    _op_index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        ops = tuple((_ALIASES.get(s, s), int(a)) for s, a in self.operations)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "operations", ops)
        if not gens:
            raise SignatureError("a signature needs at least one generator")
        for g in gens:
            if not _IDENT.match(g) or g in _RESERVED:
                raise SignatureError(f"bad generator name {g!r}")
        symbols = list(gens) + [s for s, _ in ops]
        if len(set(symbols)) != len(symbols):
            raise SignatureError("generator and operation symbols must be distinct")
        for sym, arity in ops:
            if arity < 1:
                raise SignatureError(f"operation {sym!r} has arity {arity} < 1")
            if sym in INFIX_OPS:
                if arity != 2:
                    raise SignatureError(f"infix operation {sym!r} must be binary")
            elif not _IDENT.match(sym) or sym in _RESERVED:
                raise SignatureError(f"bad operation symbol {sym!r}")
        if self.mode is Mode.L and ops != ((SUCC, 2), (PREC, 2)):
            raise SignatureError("L-algebra mode fixes the operations to [>/2, </2]")
        object.__setattr__(self, "_gen_index", {g: i for i, g in enumerate(gens)})
        object.__setattr__(self, "_op_index", {s: i for i, (s, _) in enumerate(ops)})

    @classmethod
    def l_algebra(cls, generators: Sequence[str]) -> Signature:
        return cls(tuple(generators), ((SUCC, 2), (PREC, 2)), Mode.L)

    @classmethod
    def binary(cls, generators: Sequence[str]) -> Signature:
        """The free Omega-algebra on the two L-operations (no entanglement)."""
        return cls(tuple(generators), ((SUCC, 2), (PREC, 2)), Mode.OMEGA)

    @property
    def is_binary_l(self) -> bool:
        return self.operations == ((SUCC, 2), (PREC, 2))

    def gen_index(self, name: str) -> int:
        return self._gen_index[name]

    def op_index(self, symbol: str) -> int:
        return self._op_index[symbol]

    def arity(self, symbol: str) -> int:
        return self.operations[self._op_index[symbol]][1]

    def has_generator(self, name: str) -> bool:
        return name in self._gen_index

    def has_operation(self, symbol: str) -> bool:
        return symbol in self._op_index

    def with_generators(self, generators: Sequence[str]) -> Signature:
        return Signature(tuple(generators), self.operations, self.mode)


# ---------------------------------------------------------------------------
# words


class Word:
    __slots__ = ("_hash", "leaves", "nodes")

    def __lt__(self, other):
        # words have no intrinsic order; use an order from shirshov.order
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{type(self).__name__} {format_term(self)}>"

    def __str__(self):
        return format_term(self)


class Gen(Word):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("gen", name))
        self.leaves = 1
        self.nodes = 0

    def __eq__(self, other):
        return self is other or (type(other) is Gen and other.name == self.name)

    __hash__ = Word.__hash__

    def __reduce__(self):
        return (Gen, (self.name,))


class Node(Word):
    __slots__ = ("op", "args")
    __match_args__ = ("op", "args")

    def __init__(self, op: str, args: Sequence[Word]):
        args = tuple(args)
        self.op = op
        self.args = args
        self._hash = hash((op, args))
        if len(args) == 2:
            a, b = args
            self.leaves = a.leaves + b.leaves
            self.nodes = 1 + a.nodes + b.nodes
        else:
            self.leaves = sum(a.leaves for a in args)
            self.nodes = 1 + sum(a.nodes for a in args)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is Node
            and self._hash == other._hash
            and self.op == other.op
            and self.args == other.args
        )

    __hash__ = Word.__hash__

    def __reduce__(self):
        return (Node, (self.op, self.args))


class _Hole(Word):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("⋆")
        self.leaves = 1
        self.nodes = 0

    def __eq__(self, other):
        return other is self

    __hash__ = Word.__hash__


HOLE = _Hole()


def succ(a: Word, b: Word) -> Node:
    return Node(SUCC, (a, b))


def prec(a: Word, b: Word) -> Node:
    return Node(PREC, (a, b))


def measures(u: Word) -> tuple[int, int]:
    """Return ``(|u|_X, |u|_Omega)``: leaf count and operation count."""
    return u.leaves, u.nodes


def top_op(u: Word) -> str | None:
    return u.op if isinstance(u, Node) else None


def positions(u: Word, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], Word]]:
    """Preorder walk yielding ``(path, subterm)``."""
    yield path, u
    if isinstance(u, Node):
        for i, a in enumerate(u.args):
            yield from positions(a, path + (i,))


def subterm(u: Word, path: Sequence[int]) -> Word:
    for i in path:
        u = u.args[i]
    return u


def replace_at(u: Word, path: Sequence[int], t: Word) -> Word:
    if not path:
        return t
    i = path[0]
    args = list(u.args)
    args[i] = replace_at(args[i], path[1:], t)
    return Node(u.op, args)


@dataclass(frozen=True)
class Context:
    """A word with exactly one hole; ``path`` locates the hole."""

    frame: Word
    path: tuple[int, ...]

    @classmethod
    def identity(cls) -> Context:
        return cls(HOLE, ())

    @classmethod
    def at(cls, u: Word, path: Sequence[int]) -> Context:
        return cls(replace_at(u, tuple(path), HOLE), tuple(path))

    @classmethod
    def from_frame(cls, frame: Word) -> Context:
        holes = [p for p, s in positions(frame) if s is HOLE]
        if len(holes) != 1:
            raise ValueError(f"a context needs exactly one hole, found {len(holes)}")
        return cls(frame, holes[0])

    def plug(self, t: Word) -> Word:
        return replace_at(self.frame, self.path, t)

    def __str__(self):
        return format_term(self.frame)


def plug(c: Context, t: Word) -> Word:
    return c.plug(t)


def occurrences(u: Word) -> list[tuple[Context, Word]]:
    """All decompositions ``u = c|_s`` in preorder, the root ``(⋆, u)`` first."""
    return [(Context.at(u, p), s) for p, s in positions(u)]


@lru_cache(maxsize=None)
def enumerate_words(sig: Signature, size: int) -> tuple[Word, ...]:
    """All words of ``sig`` with exactly ``size`` leaves, in construction order."""
    if size < 1:
        return ()
    if any(a == 1 for _, a in sig.operations):
        raise SignatureError("unary operations give infinitely many words per size")
    out: list[Word] = [Gen(g) for g in sig.generators] if size == 1 else []
    for sym, arity in sig.operations:
        if arity > size:
            continue
        for split in _compositions(size, arity):
            for args in product(*(enumerate_words(sig, k) for k in split)):
                out.append(Node(sym, args))
    return tuple(out)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# guards and patterns


class IrrOracle(Protocol):
    def is_irreducible(self, word: Word, labels: frozenset[str] | None = None) -> bool: ...


@dataclass(frozen=True)
class IsIrr:
    labels: frozenset[str]

    def holds(self, w: Word, env: IrrOracle | None) -> bool:
        if env is None:
            raise ValueError("an irr() guard needs an irreducibility oracle")
        return env.is_irreducible(w, self.labels)

    def __str__(self):
        return f"irr({', '.join(sorted(self.labels))})"


@dataclass(frozen=True)
class NotGenerator:
    def holds(self, w: Word, env) -> bool:
        return not isinstance(w, Gen)

    def __str__(self):
        return "notgen"


@dataclass(frozen=True)
class NotInSet:
    names: frozenset[str]

    def holds(self, w: Word, env) -> bool:
        return not (isinstance(w, Gen) and w.name in self.names)

    def __str__(self):
        return f"notin({', '.join(sorted(self.names))})"


@dataclass(frozen=True)
class NotTopOp:
    op: str

    def holds(self, w: Word, env) -> bool:
        return top_op(w) != self.op

    def __str__(self):
        return f"nottop({self.op})"


@dataclass(frozen=True)
class MaxSize:
    n: int

    def holds(self, w: Word, env) -> bool:
        return w.leaves <= self.n

    def __str__(self):
        return f"maxsize({self.n})"


Guard = Union[IsIrr, NotGenerator, NotInSet, NotTopOp, MaxSize]


@dataclass(frozen=True)
class Var:
    name: str
    guards: tuple[Guard, ...] = ()


@dataclass(frozen=True)
class PNode:
    op: str
    args: tuple


@dataclass(frozen=True)
class LChain:
    """``(((core op v1) op v2) ... op vk)`` for a spine length k in ``[lo, hi]``."""

    op: str
    core: object
    var: str
    guards: tuple[Guard, ...] = ()
    lo: int = 0
    hi: int | None = None


@dataclass(frozen=True)
class RChain:
    """``v1 op (v2 op (... op (vk op tail)))`` for a spine length k in ``[lo, hi]``."""

    op: str
    var: str
    tail: object
    guards: tuple[Guard, ...] = ()
    lo: int = 0
    hi: int | None = None


Pattern = Union[Word, Var, PNode, LChain, RChain]
Binding = dict


def is_ground(p: Pattern) -> bool:
    return isinstance(p, Word)


def pattern_vars(p: Pattern) -> list[str]:
    """Metavariable names in left-to-right order; spine lists are suffixed ``*``."""
    if isinstance(p, Word):
        return []
    if isinstance(p, Var):
        return [p.name]
    if isinstance(p, PNode):
        return [v for a in p.args for v in pattern_vars(a)]
    if isinstance(p, LChain):
        return pattern_vars(p.core) + [p.var + "*"]
    return [p.var + "*"] + pattern_vars(p.tail)


def pattern_size(p: Pattern) -> int:
    """Leaves contributed by the fixed part of a pattern (variables and spines count 0)."""
    if isinstance(p, Word):
        return p.leaves
    if isinstance(p, Var):
        return 0
    if isinstance(p, PNode):
        return sum(pattern_size(a) for a in p.args)
    if isinstance(p, LChain):
        return pattern_size(p.core)
    return pattern_size(p.tail)


def with_guards(p: Pattern, guards: Mapping[str, Sequence[Guard]]) -> Pattern:
    """Attach guards by metavariable name (spine lists use their bare name)."""
    if isinstance(p, Word):
        return p
    if isinstance(p, Var):
        return Var(p.name, p.guards + tuple(guards.get(p.name, ())))
    if isinstance(p, PNode):
        return PNode(p.op, tuple(with_guards(a, guards) for a in p.args))
    if isinstance(p, LChain):
        return LChain(p.op, with_guards(p.core, guards), p.var,
                      p.guards + tuple(guards.get(p.var, ())), p.lo, p.hi)
    return RChain(p.op, p.var, with_guards(p.tail, guards),
                  p.guards + tuple(guards.get(p.var, ())), p.lo, p.hi)


def with_spine_range(p: Pattern, lo: int, hi: int | None) -> Pattern:
    if isinstance(p, (Word, Var)):
        return p
    if isinstance(p, PNode):
        return PNode(p.op, tuple(with_spine_range(a, lo, hi) for a in p.args))
    if isinstance(p, LChain):
        return LChain(p.op, with_spine_range(p.core, lo, hi), p.var, p.guards, lo, hi)
    return RChain(p.op, p.var, with_spine_range(p.tail, lo, hi), p.guards, lo, hi)


def spine_ranges(p: Pattern) -> list[tuple[int, int | None]]:
    if isinstance(p, (Word, Var)):
        return []
    if isinstance(p, PNode):
        return [r for a in p.args for r in spine_ranges(a)]
    if isinstance(p, LChain):
        return spine_ranges(p.core) + [(p.lo, p.hi)]
    return [(p.lo, p.hi)] + spine_ranges(p.tail)


def _guards_ok(guards, w: Word, env) -> bool:
    return all(g.holds(w, env) for g in guards)


def _match(p: Pattern, t: Word, b: dict, env, bounded: bool) -> Iterator[dict]:
    if isinstance(p, Word):
        if p == t:
            yield b
    elif isinstance(p, Var):
        if _guards_ok(p.guards, t, env):
            nb = dict(b)
            nb[p.name] = t
            yield nb
    elif isinstance(p, PNode):
        if isinstance(t, Node) and t.op == p.op:
            yield from _match_args(p.args, t.args, 0, b, env, bounded)
    elif isinstance(p, LChain):
        bases = [t]
        while isinstance(bases[-1], Node) and bases[-1].op == p.op:
            bases.append(bases[-1].args[0])
        top = len(bases) - 1
        if bounded and p.hi is not None:
            top = min(top, p.hi)
        # spine element d (outermost first) is bases[d].args[1]
        ok = _GuardPrefix(p.guards, [bases[d].args[1] for d in range(top)], env)
        for k in range(top, p.lo - 1, -1):
            for nb in _match(p.core, bases[k], b, env, bounded):
                if ok.upto(k):
                    nb = dict(nb)
                    nb[p.var] = tuple(bases[i].args[1] for i in range(k - 1, -1, -1))
                    yield nb
    else:  # RChain
        tails = [t]
        while isinstance(tails[-1], Node) and tails[-1].op == p.op:
            tails.append(tails[-1].args[1])
        top = len(tails) - 1
        if bounded and p.hi is not None:
            top = min(top, p.hi)
        ok = _GuardPrefix(p.guards, [tails[i].args[0] for i in range(top)], env)
        for k in range(top, p.lo - 1, -1):
            if not ok.upto(k):
                continue
            nb = dict(b)
            nb[p.var] = tuple(tails[i].args[0] for i in range(k))
            yield from _match(p.tail, tails[k], nb, env, bounded)


class _GuardPrefix:
    """Lazily evaluated guards over a spine; ``upto(k)`` asks for the first ``k``."""

    def __init__(self, guards, items, env):
        self.guards = guards
        self.items = items
        self.env = env
        self.good = 0 if guards else len(items)
        self.failed = False

    def upto(self, k: int) -> bool:
        while self.good < k and not self.failed:
            if _guards_ok(self.guards, self.items[self.good], self.env):
                self.good += 1
            else:
                self.failed = True
        return self.good >= k


def _match_args(ps, ts, i, b, env, bounded):
    if i == len(ps):
        yield b
        return
    for nb in _match(ps[i], ts[i], b, env, bounded):
        yield from _match_args(ps, ts, i + 1, nb, env, bounded)


def iter_matches(p: Pattern, t: Word, env: IrrOracle | None = None,
                 bounded: bool = False) -> Iterator[Binding]:
    return _match(p, t, {}, env, bounded)


def match_pattern(p: Pattern, t: Word, env: IrrOracle | None = None,
                  bounded: bool = False) -> list[Binding]:
    """Every binding whose instantiation is ``t`` and whose guards hold.

    Spines are tried longest first.  With ``bounded`` the spine lengths are also
    capped by each chain's ``hi``; by default only ``lo`` applies.
    """
    return list(_match(p, t, {}, env, bounded))


def instantiate(p: Pattern, b: Mapping[str, object]) -> Word:
    if isinstance(p, Word):
        return p
    if isinstance(p, Var):
        try:
            return b[p.name]
        except KeyError:
            raise ValueError(f"missing binding for ${p.name}") from None
    if isinstance(p, PNode):
        return Node(p.op, tuple(instantiate(a, b) for a in p.args))
    if p.var not in b:
        raise ValueError(f"missing binding for ${p.var}*")
    if isinstance(p, LChain):
        out = instantiate(p.core, b)
        for v in b[p.var]:
            out = Node(p.op, (out, v))
        return out
    out = instantiate(p.tail, b)
    for v in reversed(b[p.var]):
        out = Node(p.op, (v, out))
    return out


# ---------------------------------------------------------------------------
# text syntax

_TOKEN = re.compile(
    r"""\s*(?:
      (?P<arrow>->)
    | (?P<num>\d+)
    | (?P<meta>\$[A-Za-z_][A-Za-z0-9_]*\*?)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<op>[><≻≺])
    | (?P<punct>[(),+\-*/:;])
    )""",
    re.VERBOSE,
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "op":
            value = _ALIASES.get(value, value)
        out.append((kind, value, start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, sig: Signature, allow_patterns: bool):
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig
        self.allow_patterns = allow_patterns
        self.seen: set[str] = set()

    # token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def at_end(self) -> bool:
        return self.peek()[0] == "end"

    def fresh_var(self, name: str, pos: int):
        if name in self.seen:
            raise ParseError(f"metavariable ${name} repeated (patterns are linear)", pos)
        self.seen.add(name)

    def check_op(self, sym: str, arity: int, pos: int):
        if not self.sig.has_operation(sym):
            raise ParseError(f"unknown operation {sym!r}", pos)
        want = self.sig.arity(sym)
        if want != arity:
            raise ParseError(f"operation {sym!r} takes {want} arguments, got {arity}", pos)

    # grammar
    def expr(self):
        left = self.atom()
        kind, v, pos = self.peek()
        if kind == "op":
            self.take()
            self.check_op(v, 2, pos)
            right = self.atom()
            left = _node(v, (left, right))
            kind2, _, pos2 = self.peek()
            if kind2 == "op":
                raise ParseError("chained infix operations need parentheses", pos2)
        return left

    def atom(self):
        kind, v, pos = self.take()
        if v == "(" and kind == "punct":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "meta":
            if not self.allow_patterns:
                raise ParseError("metavariables are not allowed here", pos)
            if v.endswith("*"):
                raise ParseError("spine variables may only appear inside lchain/rchain", pos)
            name = v[1:]
            self.fresh_var(name, pos)
            return Var(name)
        if kind == "ident":
            if v in _RESERVED:
                if not self.allow_patterns:
                    raise ParseError(f"{v} is only allowed in patterns", pos)
                return self.chain(v, pos)
            if self.peek()[1] == "(":
                self.take()
                args = [self.expr()]
                while self.peek()[1] == ",":
                    self.take()
                    args.append(self.expr())
                self.expect(")")
                if v in INFIX_OPS:
                    raise ParseError(f"{v!r} is infix", pos)
                self.check_op(v, len(args), pos)
                return _node(v, tuple(args))
            if self.sig.has_generator(v):
                return Gen(v)
            if self.sig.has_operation(v):
                raise ParseError(f"operation {v!r} used without arguments", pos)
            raise ParseError(f"unknown symbol {v!r}", pos)
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)

    def chain_op(self):
        kind, v, pos = self.take()
        if kind not in ("op", "ident"):
            raise ParseError("expected an operation symbol", pos)
        self.check_op(v, 2, pos)
        return v

    def spine_var(self):
        kind, v, pos = self.take()
        if kind != "meta" or not v.endswith("*"):
            raise ParseError("expected a spine variable like $v*", pos)
        name = v[1:-1]
        self.fresh_var(name, pos)
        return name

    def chain(self, which: str, pos: int):
        self.expect("(")
        op = self.chain_op()
        self.expect(",")
        if which == "lchain":
            core = self.expr()
            self.expect(",")
            var = self.spine_var()
            self.expect(")")
            return LChain(op, core, var)
        var = self.spine_var()
        self.expect(",")
        tail = self.expr()
        self.expect(")")
        return RChain(op, var, tail)

    def number(self):
        kind, v, pos = self.take()
        if kind != "num":
            raise ParseError("expected a number", pos)
        num = int(v)
        den = 1
        if self.peek()[1] == "/":
            self.take()
            kind, d, pos = self.take()
            if kind != "num" or int(d) == 0:
                raise ParseError("expected a nonzero denominator", pos)
            den = int(d)
        return num, den

    def poly(self):
        terms = []
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "punct":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            self.seen = set()
            num, den = 1, 1
            kind, v, pos = self.peek()
            term = None
            if kind == "num":
                num, den = self.number()
                if self.peek()[1] == "*":
                    self.take()
                    term = self.expr()
                elif num != 0:
                    raise ParseError("constants are not words; write c*term", pos)
            else:
                term = self.expr()
            if term is not None:
                terms.append((sign * num, den, term))
            kind, v, pos = self.peek()
            if kind == "punct" and v in "+-":
                self.take()
                sign = -1 if v == "-" else 1
                continue
            break
        return terms


def _node(op, args):
    if all(isinstance(a, Word) for a in args):
        return Node(op, args)
    return PNode(op, args)


def parse_term(text: str, sig: Signature, allow_patterns: bool = True) -> Pattern:
    """Parse one term; returns a :class:`Word` when no metavariables occur."""
    p = _Parser(text, sig, allow_patterns)
    out = p.expr()
    if not p.at_end():
        _, v, pos = p.peek()
        raise ParseError(f"trailing input {v!r}", pos)
    return out


def parse_word(text: str, sig: Signature) -> Word:
    return parse_term(text, sig, allow_patterns=False)


def parse_linear_combination(text: str, sig: Signature,
                             allow_patterns: bool = False) -> list[tuple[int, int, Pattern]]:
    """Parse ``c1*t1 + c2*t2 - ...`` into ``(numerator, denominator, term)`` triples."""
    p = _Parser(text, sig, allow_patterns)
    out = p.poly()
    if not p.at_end():
        _, v, pos = p.peek()
        raise ParseError(f"trailing input {v!r}", pos)
    return out


_GUARD_RE = re.compile(r"\s*([a-z]+)\s*(?:\(([^()]*)\))?\s*(?:,|$)")


def parse_guards(text: str, sig: Signature) -> dict[str, tuple[Guard, ...]]:
    """Parse a ``where`` clause: ``$u: irr(S1, S2), notin(x); $v: irr(S1)``."""
    out: dict[str, tuple[Guard, ...]] = {}
    for clause in filter(None, (c.strip() for c in text.split(";"))):
        head, sep, body = clause.partition(":")
        head = head.strip().rstrip("*")
        if not sep or not head.startswith("$"):
            raise ParseError(f"bad guard clause {clause!r}")
        name = head[1:]
        guards = []
        pos = 0
        body = body.strip()
        while pos < len(body):
            m = _GUARD_RE.match(body, pos)
            if m is None or m.end() == pos:
                raise ParseError(f"bad guard list {body!r}", pos)
            kind, arg = m.group(1), m.group(2)
            items = [a.strip() for a in (arg or "").split(",") if a.strip()]
            if kind == "irr":
                guards.append(IsIrr(frozenset(items)))
            elif kind == "notgen":
                guards.append(NotGenerator())
            elif kind == "notin":
                for g in items:
                    if not sig.has_generator(g):
                        raise ParseError(f"unknown generator {g!r} in notin()")
                guards.append(NotInSet(frozenset(items)))
            elif kind == "nottop":
                op = _ALIASES.get(arg.strip(), arg.strip()) if arg else ""
                if not sig.has_operation(op):
                    raise ParseError(f"unknown operation {op!r} in nottop()")
                guards.append(NotTopOp(op))
            elif kind == "maxsize":
                guards.append(MaxSize(int(arg)))
            else:
                raise ParseError(f"unknown guard {kind!r}")
            pos = m.end()
        out[name] = out.get(name, ()) + tuple(guards)
    return out


def format_term(p: Pattern) -> str:
    """Canonical text; the top level carries no outer parentheses."""
    if p is HOLE:
        return "*"
    if isinstance(p, Gen):
        return p.name
    if isinstance(p, Var):
        return "$" + p.name
    if isinstance(p, LChain):
        return f"lchain({p.op}, {format_term(p.core)}, ${p.var}*)"
    if isinstance(p, RChain):
        return f"rchain({p.op}, ${p.var}*, {format_term(p.tail)})"
    op, args = p.op, p.args
    if op in INFIX_OPS:
        return _format_arg(args[0]) + op + _format_arg(args[1])
    return f"{op}({', '.join(format_term(a) for a in args)})"


def _format_arg(p) -> str:
    s = format_term(p)
    if isinstance(p, (Node, PNode)) and p.op in INFIX_OPS:
        return f"({s})"
    return s
