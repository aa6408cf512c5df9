"""Theories, reduction to normal form, and irreducible-word enumeration.

A :class:`Theory` holds ground rules (monic polynomials whose leading word is
the rewrite target) and rule schemas (a linear pattern on the left, a linear
combination of patterns on the right).  Reduction matches schemas directly,
with no size bound; :func:`instantiate_schemas` produces ground instances up
to a size bound for composition enumeration and for the quotient oracle.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterator, Sequence

from .lalg.normal import _normal_by_size, bracket, is_normal
from .order import OrderKind, WordOrder
from .poly import QQ, Field, Poly, _is_negative, apply_context, normalize
from .term import (
    PREC, SUCC, Context, Gen, IsIrr, LChain, Mode, Node, PNode, RChain, Signature, Var,
    Word, enumerate_words, format_term, instantiate, iter_matches, subterm, top_op,
)

DEFAULT_FUEL = 10**6


CACHE_LIMIT = 1 << 18


def remember(cache: dict, key, value, limit: int = CACHE_LIMIT) -> None:
    """Store in a memo table, dropping everything once it grows past ``limit``."""
    if len(cache) >= limit:
        cache.clear()
    cache[key] = value


class TheoryError(ValueError):
    pass


class OrientationError(TheoryError):
    """A rule whose left side is not the strictly greatest word."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class FuelExhausted(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# rules


@dataclass(frozen=True, eq=False)
class GroundRule:
    """A monic polynomial; its leading word ``lhs`` rewrites to ``lhs - poly``."""

    name: str
    poly: Poly
    lhs: Word
    label: str
    origin: tuple | None = None  # (schema name, binding) for instances

    @classmethod
    def from_poly(cls, name: str, f: Poly, order: WordOrder, mode: Mode,
                  label: str | None = None, origin=None) -> GroundRule:
        f = normalize(f, mode)
        if not f:
            raise TheoryError(f"rule {name!r} is zero")
        f = f.monic(order)
        return cls(name, f, f.lead_word(order), label or name, origin)

    @classmethod
    def oriented(cls, name: str, lhs: Word, rhs: Poly, order: WordOrder, mode: Mode,
                 label: str | None = None, origin=None) -> GroundRule:
        """Build ``lhs -> rhs`` and insist that ``lhs`` is the leading word."""
        if mode is Mode.L:
            lhs = bracket(lhs)
            rhs = normalize(rhs, mode)
        for w in rhs.terms:
            if w == lhs or not order.greater(lhs, w):
                raise OrientationError(
                    f"rule {name!r}: {format_term(w)} is not smaller than {format_term(lhs)}",
                    witness=(lhs, w))
        return cls(name, Poly.word(lhs) - rhs, lhs, label or name, origin)

    @property
    def rhs(self) -> Poly:
        return Poly.word(self.lhs) - self.poly

    def describe(self, order: WordOrder | None = None) -> str:
        return f"{format_term(self.lhs)} -> {self.rhs.format(order)}"


@dataclass(frozen=True, eq=False)
class Schema:
    """``lhs -> sum(c * pattern)`` for every binding whose guards hold."""

    name: str
    lhs: object
    rhs: tuple[tuple[object, object], ...]
    label: str = ""

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.name)

    def describe(self) -> str:
        parts = []
        for i, (c, p) in enumerate(self.rhs):
            text = format_term(p)
            neg = _is_negative(c)
            mag = -c if neg else c
            if mag != 1:
                text = f"{mag}*({text})"
            parts.append(("-" if neg else "") + text if i == 0
                         else (" - " if neg else " + ") + text)
        return f"{format_term(self.lhs)} -> {''.join(parts) or '0'}"


Rule = "GroundRule | Schema"


def _guard_labels(p) -> set[str]:
    out: set[str] = set()
    if isinstance(p, Var):
        guards = p.guards
    elif isinstance(p, PNode):
        for a in p.args:
            out |= _guard_labels(a)
        return out
    elif isinstance(p, LChain):
        out |= _guard_labels(p.core)
        guards = p.guards
    elif isinstance(p, RChain):
        out |= _guard_labels(p.tail)
        guards = p.guards
    else:
        return out
    for g in guards:
        if isinstance(g, IsIrr):
            out |= set(g.labels)
    return out


def _head(p) -> str | None:
    """Top operation every match must have, or ``None`` when it varies."""
    if isinstance(p, Word):
        return top_op(p)
    if isinstance(p, PNode):
        return p.op
    if isinstance(p, LChain):
        if p.lo >= 1:
            return p.op
        core = _head(p.core)
        return p.op if core == p.op else None
    if isinstance(p, RChain):
        if p.lo >= 1:
            return p.op
        tail = _head(p.tail)
        return p.op if tail == p.op else None
    return None


def _fixed_leaves(p, path: tuple = ()) -> list[tuple[tuple[int, ...], Word]]:
    """Ground subpatterns reached through plain nodes only, for quick rejection."""
    if isinstance(p, Word):
        return [(path, p)]
    if isinstance(p, PNode):
        return [x for k, a in enumerate(p.args) for x in _fixed_leaves(a, path + (k,))]
    return []


def _leaves_agree(w: Word, fixed) -> bool:
    for path, g in fixed:
        t = w
        for k in path:
            if not isinstance(t, Node):
                return False
            t = t.args[k]
        if t != g:
            return False
    return True


def min_leaves(p) -> int:
    if isinstance(p, Word):
        return p.leaves
    if isinstance(p, Var):
        return 1
    if isinstance(p, PNode):
        return sum(min_leaves(a) for a in p.args)
    if isinstance(p, LChain):
        return min_leaves(p.core) + p.lo
    return min_leaves(p.tail) + p.lo


# ---------------------------------------------------------------------------
# theory


@dataclass(frozen=True, eq=False)
class Theory:
    signature: Signature
    rules: tuple = ()
    order_kind: OrderKind = OrderKind.L
    field: Field = QQ
    family_bound: int = 3
    fuel: int = DEFAULT_FUEL
    name: str = ""
    bounded_matching: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "order_kind", OrderKind(self.order_kind))
        names = [r.name for r in self.rules]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise TheoryError(f"duplicate rule names: {', '.join(sorted(dup))}")
        order = self.order
        for r in self.rules:
            if isinstance(r, GroundRule):
                lead, c = r.poly.leading(order)
                if lead != r.lhs or c != 1:
                    raise OrientationError(f"rule {r.name!r} is not monic with leading word "
                                           f"{format_term(r.lhs)}", witness=(r.lhs, lead))
        self._check_strata()

    def _check_strata(self):
        labels = {r.label for r in self.rules}
        deps: dict[str, set[str]] = {lab: set() for lab in labels}
        for r in self.rules:
            if isinstance(r, Schema):
                used = _guard_labels(r.lhs)
                missing = used - labels
                if missing:
                    raise TheoryError(f"rule {r.name!r} guards mention unknown rule sets "
                                      f"{', '.join(sorted(missing))}")
                deps[r.label] |= used
        state: dict[str, int] = {}

        def visit(lab, stack):
            if state.get(lab) == 2:
                return
            if state.get(lab) == 1:
                cycle = stack[stack.index(lab):] + [lab]
                raise TheoryError("cyclic irr() guards: " + " -> ".join(cycle))
            state[lab] = 1
            for d in sorted(deps[lab]):
                visit(d, stack + [lab])
            state[lab] = 2

        for lab in sorted(deps):
            visit(lab, [])

    @property
    def mode(self) -> Mode:
        return self.signature.mode

    @cached_property
    def order(self) -> WordOrder:
        return WordOrder(self.signature, self.order_kind)

    @cached_property
    def engine(self) -> Engine:
        return Engine(self)

    @property
    def ground_rules(self) -> list[GroundRule]:
        return [r for r in self.rules if isinstance(r, GroundRule)]

    @property
    def schemas(self) -> list[Schema]:
        return [r for r in self.rules if isinstance(r, Schema)]

    def rule(self, name: str):
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def with_rules(self, extra: Sequence) -> Theory:
        return replace(self, rules=self.rules + tuple(extra))

    def with_options(self, **kw) -> Theory:
        return replace(self, **kw)

    def describe(self) -> str:
        sig = self.signature
        lines = [
            f"mode {sig.mode.value}",
            "generators " + " ".join(sig.generators),
            "operations " + " ".join(f"{s}/{a}" for s, a in sig.operations),
            f"order {self.order_kind.value}",
            f"field {self.field.name}",
            f"family_bound {self.family_bound}",
        ]
        for r in self.rules:
            body = r.describe(self.order) if isinstance(r, GroundRule) else r.describe()
            lines.append(f"rule {r.name} [{r.label}] {body}")
            if isinstance(r, Schema):
                lines.append(f"  guards {_describe_guards(r.lhs)}")
        return "\n".join(lines) + "\n"

    @property
    def hash(self) -> str:
        return hashlib.sha256(self.describe().encode()).hexdigest()[:16]


def _describe_guards(p) -> str:
    out = []

    def walk(q):
        if isinstance(q, Var):
            if q.guards:
                out.append(f"${q.name}: " + ", ".join(map(str, q.guards)))
        elif isinstance(q, PNode):
            for a in q.args:
                walk(a)
        elif isinstance(q, LChain):
            walk(q.core)
            if q.guards:
                out.append(f"${q.var}*: " + ", ".join(map(str, q.guards)))
            out.append(f"${q.var}* length {q.lo}..{'' if q.hi is None else q.hi}")
        elif isinstance(q, RChain):
            if q.guards:
                out.append(f"${q.var}*: " + ", ".join(map(str, q.guards)))
            out.append(f"${q.var}* length {q.lo}..{'' if q.hi is None else q.hi}")
            walk(q.tail)

    walk(p)
    return "; ".join(out)


# ---------------------------------------------------------------------------
# engine


class Status(enum.Enum):
    NORMAL_FORM = "normal_form"
    FUEL_EXHAUSTED = "fuel_exhausted"


@dataclass(frozen=True)
class Redex:
    path: tuple[int, ...]
    rule: str
    binding: dict | None


@dataclass(frozen=True)
class Step:
    word: Word
    path: tuple[int, ...]
    rule: str
    binding: dict | None
    coef: object

    def context(self) -> Context:
        return Context.at(self.word, self.path)


@dataclass
class ReductionTrace:
    steps: list[Step] = field(default_factory=list)
    status: Status = Status.NORMAL_FORM

    def __len__(self):
        return len(self.steps)

    def format(self) -> str:
        lines = []
        for s in self.steps:
            ctx = format_term(Context.at(s.word, s.path).frame)
            lines.append(f"{s.coef}*{format_term(s.word)}  rule {s.rule}  context {ctx}")
        lines.append(self.status.value)
        return "\n".join(lines)


class Engine:
    """Memoised matcher for one theory; also the irreducibility oracle for guards."""

    def __init__(self, th: Theory):
        self.th = th
        self.mode = th.mode
        self.order = th.order
        self.rules = th.rules
        self._active: dict = {}
        self._redex: dict = {}
        self._steps: dict = {}
        self._irr: dict[int, tuple[Word, ...]] = {}

    def _index(self, labels):
        idx = self._active.get(labels)
        if idx is None:
            ground: dict[Word, int] = {}
            schemas = []
            for i, r in enumerate(self.rules):
                if labels is not None and r.label not in labels:
                    continue
                if isinstance(r, GroundRule):
                    ground.setdefault(r.lhs, i)
                else:
                    schemas.append((i, r, _head(r.lhs), min_leaves(r.lhs),
                                    _fixed_leaves(r.lhs)))
            idx = self._active[labels] = (ground, schemas)
        return idx

    def root_match(self, w: Word, labels=None):
        """First rule (in declaration order) whose left side matches ``w`` itself."""
        ground, schemas = self._index(labels)
        g = ground.get(w)
        op = top_op(w)
        for i, sch, head, low, fixed in schemas:
            if g is not None and i > g:
                break
            if (head is not None and head != op) or w.leaves < low:
                continue
            if fixed and not _leaves_agree(w, fixed):
                continue
            for b in iter_matches(sch.lhs, w, self, self.th.bounded_matching):
                return i, b
        if g is not None:
            return g, None
        return None

    def find_redex(self, w: Word, labels=None) -> Redex | None:
        """First redex in preorder; ``labels`` restricts the rule set."""
        found = self._find(w, labels)
        return None if found is None else found[0]

    def _find(self, w: Word, labels):
        key = (labels, w)
        try:
            return self._redex[key]
        except KeyError:
            pass
        hit = self.root_match(w, labels)
        if hit is not None:
            res = (Redex((), self.rules[hit[0]].name, hit[1]), hit[0])
        else:
            res = None
            if isinstance(w, Node):
                for i, a in enumerate(w.args):
                    sub = self._find(a, labels)
                    if sub is not None:
                        r, k = sub
                        res = (Redex((i,) + r.path, r.rule, r.binding), k)
                        break
        remember(self._redex, key, res)
        return res

    def is_irreducible(self, w: Word, labels=None) -> bool:
        if labels is not None and type(labels) is not frozenset:
            labels = frozenset(labels)
        return self.find_redex(w, labels) is None

    def instance(self, rule_index: int, binding, target: Word) -> Poly:
        """The monic rule polynomial whose leading word is ``target``."""
        r = self.rules[rule_index]
        if isinstance(r, GroundRule):
            return r.poly
        lmode = self.mode is Mode.L
        key = self.order.key
        top = key(target)
        terms = {target: self.th.field(1)}
        for c, p in r.rhs:
            w = instantiate(p, binding)
            if lmode:
                w = bracket(w)
            if w == target or not key(w) < top:
                raise OrientationError(
                    f"instance of {r.name!r} at {format_term(target)} produces the "
                    f"larger word {format_term(w)}", witness=(target, w))
            s = terms.get(w, 0) - c
            if s == 0:
                del terms[w]
            else:
                terms[w] = s
        return Poly._trusted(terms)

    def step(self, w: Word):
        """``(redex, contextual rule polynomial with leading word w)`` or ``None``."""
        try:
            return self._steps[w]
        except KeyError:
            pass
        found = self._find(w, None)
        if found is None:
            out = None
        else:
            redex, k = found
            sub = subterm(w, redex.path)
            poly = self.instance(k, redex.binding, sub)
            if redex.path:
                poly = apply_context(Context.at(w, redex.path), poly, self.mode)
            assert poly.coeff(w) == 1, "rewriting left the normal words"
            out = (redex, poly)
        remember(self._steps, w, out)
        return out

    def normal_form(self, f: Poly, fuel: int | None = None,
                    trace: bool = True) -> tuple[Poly, ReductionTrace]:
        if self.mode is Mode.L and not all(map(is_normal, f.terms)):
            f = normalize(f, self.mode)
        fuel = self.th.fuel if fuel is None else fuel
        key = self.order.key
        pending = dict(f.terms)
        result = {}
        tr = ReductionTrace()
        used = 0
        while pending:
            w = max(pending, key=key)
            c = pending.pop(w)
            st = self.step(w)
            if st is None:
                result[w] = c
                continue
            if used >= fuel:
                pending[w] = c
                tr.status = Status.FUEL_EXHAUSTED
                break
            used += 1
            redex, poly = st
            for u, a in poly.terms.items():
                if u is w or u == w:
                    continue
                s = pending.get(u, 0) - c * a
                if s == 0:
                    pending.pop(u, None)
                else:
                    pending[u] = s
            if trace:
                tr.steps.append(Step(w, redex.path, redex.rule, redex.binding, c))
        result.update(pending)
        return Poly._trusted(result), tr

    def irreducible_words(self, size: int) -> tuple[Word, ...]:
        """Irreducible words with ``size`` leaves, ascending; built from irreducible parts."""
        if size in self._irr:
            return self._irr[size]
        sig = self.th.signature
        out: list[Word] = []
        if size == 1:
            out = [Gen(g) for g in sig.generators if self.root_match(Gen(g)) is None]
        else:
            if any(a == 1 for _, a in sig.operations):
                raise TheoryError("unary operations give infinitely many words per size")
            from itertools import product
            from .term import _compositions
            for sym, arity in sig.operations:
                if arity > size:
                    continue
                for split in _compositions(size, arity):
                    parts = [self.irreducible_words(k) for k in split]
                    for args in product(*parts):
                        if self.mode is Mode.L and sym == PREC and top_op(args[0]) == SUCC:
                            continue
                        w = Node(sym, args)
                        if self.root_match(w) is None:
                            out.append(w)
        res = tuple(self.order.sorted(out))
        self._irr[size] = res
        return res


# ---------------------------------------------------------------------------
# module-level API


def reduce_once(f: Poly, th: Theory) -> tuple[Poly, Step] | None:
    """Rewrite the greatest reducible support word once."""
    eng = th.engine
    f = normalize(f, th.mode)
    for w in th.order.sorted(f.terms, descending=True):
        st = eng.step(w)
        if st is not None:
            redex, poly = st
            c = f.terms[w]
            return f - poly.scale(c), Step(w, redex.path, redex.rule, redex.binding, c)
    return None


def normal_form(f: Poly, th: Theory, fuel: int | None = None) -> tuple[Poly, ReductionTrace]:
    return th.engine.normal_form(f, fuel)


def is_irreducible(u: Word, th: Theory) -> bool:
    if th.mode is Mode.L and not is_normal(u):
        return False
    return th.engine.is_irreducible(u)


def irr_enumerate(th: Theory, size: int) -> list[Word]:
    return list(th.engine.irreducible_words(size))


def dims(th: Theory, max_size: int) -> dict[int, int]:
    return {n: len(th.engine.irreducible_words(n)) for n in range(1, max_size + 1)}


def all_words(sig: Signature, size: int) -> tuple[Word, ...]:
    """The ambient basis at one size: all words, or normal words in L-mode."""
    if sig.mode is Mode.L:
        return _normal_by_size(sig.generators, size)
    return enumerate_words(sig, size)


# ---------------------------------------------------------------------------
# ground instantiation


def instantiate_schemas(th: Theory, bound: int, *, spines: str = "family") -> list[GroundRule]:
    """Ground instances of every schema whose leading word has at most ``bound`` leaves.

    ``spines="family"`` honours each chain's declared length range; ``"size"``
    ignores upper limits so that only the size bound applies.
    """
    gen = _Instantiator(th, bound, spines == "size")
    out: list[GroundRule] = []
    seen: set = set()
    for r in th.rules:
        if not isinstance(r, Schema):
            continue
        for lhs, b in gen.run(r.lhs):
            if th.mode is Mode.L and not is_normal(lhs):
                continue
            rhs = normalize(Poly((instantiate(p, b), c) for c, p in r.rhs), th.mode)
            rule = GroundRule.oriented(f"{r.name}{_binding_text(b)}", lhs, rhs,
                                       th.order, th.mode, r.label, origin=(r.name, b))
            key = (rule.lhs, frozenset(rule.poly.terms.items()))
            if key in seen:
                continue
            seen.add(key)
            out.append(rule)
    return out


def ground_rules_at(th: Theory, bound: int, *, spines: str = "family") -> list[GroundRule]:
    """The theory's own ground rules within the bound followed by schema instances."""
    own = [r for r in th.ground_rules if r.lhs.leaves <= bound]
    return own + instantiate_schemas(th, bound, spines=spines)


def _binding_text(b: dict) -> str:
    parts = []
    for k, v in b.items():
        if isinstance(v, tuple):
            parts.append(f"{k}*=[{', '.join(format_term(x) for x in v)}]")
        else:
            parts.append(f"{k}={format_term(v)}")
    return "{" + "; ".join(parts) + "}"


class _Instantiator:
    def __init__(self, th: Theory, bound: int, unbounded_spines: bool):
        self.th = th
        self.bound = bound
        self.unbounded = unbounded_spines
        self.env = th.engine
        self._cands: dict = {}

    def candidates(self, guards, budget: int) -> list[Word]:
        key = (guards, budget)
        got = self._cands.get(key)
        if got is None:
            got = []
            for n in range(1, budget + 1):
                for w in all_words(self.th.signature, n):
                    if all(g.holds(w, self.env) for g in guards):
                        got.append(w)
            self._cands[key] = got
        return got

    def run(self, p) -> Iterator[tuple[Word, dict]]:
        for w, b in self.gen(p, self.bound, {}):
            yield w, b

    def gen(self, p, budget: int, b: dict):
        if isinstance(p, Word):
            if p.leaves <= budget:
                yield p, b
        elif isinstance(p, Var):
            for w in self.candidates(p.guards, budget):
                nb = dict(b)
                nb[p.name] = w
                yield w, nb
        elif isinstance(p, PNode):
            for args, nb in self.gen_seq(list(p.args), budget, b):
                yield Node(p.op, args), nb
        elif isinstance(p, LChain):
            for k in self.spine_lengths(p, budget - min_leaves(p.core)):
                for core, nb in self.gen(p.core, budget - k, b):
                    for vs in self.spine(p.guards, k, budget - core.leaves):
                        w = core
                        for v in vs:
                            w = Node(p.op, (w, v))
                        nb2 = dict(nb)
                        nb2[p.var] = vs
                        yield w, nb2
        else:
            for k in self.spine_lengths(p, budget - min_leaves(p.tail)):
                for vs in self.spine(p.guards, k, budget - min_leaves(p.tail)):
                    used = sum(v.leaves for v in vs)
                    nb = dict(b)
                    nb[p.var] = vs
                    for tail, nb2 in self.gen(p.tail, budget - used, nb):
                        w = tail
                        for v in reversed(vs):
                            w = Node(p.op, (v, w))
                        yield w, nb2

    def spine_lengths(self, p, room: int) -> range:
        hi = room
        if p.hi is not None and not self.unbounded:
            hi = min(hi, p.hi)
        return range(p.lo, hi + 1)

    def spine(self, guards, k: int, budget: int):
        if k == 0:
            yield ()
            return
        for v in self.candidates(guards, budget - (k - 1)):
            for rest in self.spine(guards, k - 1, budget - v.leaves):
                yield (v,) + rest

    def gen_seq(self, ps: list, budget: int, b: dict):
        if not ps:
            yield (), b
            return
        rest_min = sum(min_leaves(q) for q in ps[1:])
        for w, nb in self.gen(ps[0], budget - rest_min, b):
            for ws, nb2 in self.gen_seq(ps[1:], budget - w.leaves, nb):
                yield (w,) + ws, nb2


# ---------------------------------------------------------------------------
# the independent quotient oracle


def quotient_dims_oracle(th: Theory, max_size: int) -> dict[int, int]:
    """Codimension of the relation subspace per leaf count, by exact elimination.

    Columns are all words (normal words in L-mode) of at most ``max_size``
    leaves.  Rows are ``c|_s`` for every ground instance ``s`` (spines limited
    only by size) and every context ``c`` that fits.  Relations need not be
    homogeneous, so ranks are taken on the leaf-count filtration.
    """
    sig = th.signature
    cols: dict[Word, int] = {}
    per_size = {}
    for n in range(1, max_size + 1):
        ws = th.order.sorted(all_words(sig, n))
        per_size[n] = len(ws)
        for w in ws:
            cols[w] = len(cols)
    rels = ground_rules_at(th, max_size, spines="size")
    rows_by_size: dict[int, list[dict]] = {n: [] for n in range(1, max_size + 1)}
    for r in rels:
        k = r.lhs.leaves
        for m in range(1, max_size - k + 2):
            for ctx in enumerate_contexts(sig, m):
                f = apply_context(ctx, r.poly, th.mode)
                if not f:
                    continue
                row = {cols[w]: c for w, c in f.terms.items()}
                top = max(w.leaves for w in f.terms)
                rows_by_size[top].append(row)
    pivots: dict[int, dict] = {}
    rank_upto = {}
    for n in range(1, max_size + 1):
        for row in rows_by_size[n]:
            _insert(pivots, row)
        rank_upto[n] = len(pivots)
    out = {}
    prev = 0
    total = 0
    for n in range(1, max_size + 1):
        total += per_size[n]
        q = total - rank_upto[n]
        out[n] = q - prev
        prev = q
    return out


def _insert(pivots: dict[int, dict], row: dict) -> bool:
    row = dict(row)
    while row:
        p = max(row)
        prow = pivots.get(p)
        if prow is None:
            c = row[p]
            pivots[p] = {k: v / c for k, v in row.items()}
            return True
        c = row[p]
        for k, v in prow.items():
            s = row.get(k, 0) - c * v
            if s == 0:
                row.pop(k, None)
            else:
                row[k] = s
    return False


def enumerate_contexts(sig: Signature, leaves: int) -> Iterator[Context]:
    """Raw one-hole contexts with ``leaves`` leaves, the hole counted as one."""
    from itertools import product

    from .term import HOLE, _compositions

    if leaves == 1:
        yield Context.identity()
        return
    for sym, arity in sig.operations:
        if arity == 1:
            raise TheoryError("unary operations give infinitely many contexts per size")
        if arity > leaves:
            continue
        for split in _compositions(leaves, arity):
            for hole in range(arity):
                others = [enumerate_words(sig, split[i]) if i != hole else None
                          for i in range(arity)]
                for inner in enumerate_contexts(sig, split[hole]):
                    pools = [o if o is not None else (inner.frame,) for o in others]
                    for args in product(*pools):
                        yield Context(Node(sym, args), (hole,) + inner.path)
