"""Theories presenting concrete L-algebras.

* :func:`from_structure_constants` - a finite-dimensional algebra from its
  multiplication tables.
* :func:`l_identity_theory` - the entanglement identity as one schema over the
  free Omega-algebra on ``>`` and ``<``.
* :func:`dialgebra_theory` - the free dialgebra as a quotient of L(X).
* :func:`free_product_theory` - the free product of two algebras.
* :func:`embed_two_gen_theory` - a two-generated algebra containing a given one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Sequence

from ..order import OrderKind
from ..poly import QQ, Field, Poly
from ..rewrite import GroundRule, Schema, Theory, TheoryError
from ..term import (
    PREC, SUCC, Gen, IsIrr, LChain, Mode, NotInSet, PNode, RChain, Signature, Var,
    Word, prec, succ,
)
from .normal import is_normal

OPS = (SUCC, PREC)


class EntanglementError(TheoryError):
    """The tables violate ``(a>b)<c = a>(b<c)`` on a basis triple."""

    def __init__(self, triple: tuple[int, int, int], left, right):
        i, j, l = triple
        super().__init__(
            f"entanglement fails at basis triple ({i}, {j}, {l}): "
            f"(x{i}>x{j})<x{l} gives {left} but x{i}>(x{j}<x{l}) gives {right}")
        self.triple = triple


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """Multiplication tables on a basis; ``table[op][i][j]`` maps basis names to coefficients."""

    basis: tuple[str, ...]
    table: Mapping[str, tuple[tuple[dict, ...], ...]]
    field: Field = QQ

    def __post_init__(self):
        d = len(self.basis)
        if d == 0 or len(set(self.basis)) != d:
            raise ValueError("a basis needs at least one name and no repeats")
        for op in OPS:
            rows = self.table[op]
            if len(rows) != d or any(len(r) != d for r in rows):
                raise ValueError(f"the {op} table must be {d}x{d}")
            for r in rows:
                for cell in r:
                    unknown = set(cell) - set(self.basis)
                    if unknown:
                        raise ValueError(f"table entry uses unknown basis names {sorted(unknown)}")
        self.check_entanglement()

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def from_function(cls, basis: Sequence[str], fn: Callable[[str, int, int], Mapping],
                      field: Field = QQ) -> StructureConstants:
        """``fn(op, i, j)`` gives the product of basis elements ``i`` and ``j`` (0-based)."""
        d = len(basis)
        table = {
            op: tuple(tuple({k: field(v) if not _is_field_elem(v) else v
                             for k, v in dict(fn(op, i, j)).items() if v != 0}
                            for j in range(d)) for i in range(d))
            for op in OPS
        }
        return cls(tuple(basis), table, field)

    @classmethod
    def constant(cls, basis: Sequence[str], succ_table, prec_table,
                 field: Field = QQ) -> StructureConstants:
        """Tables given as nested lists of ``{name: coef}`` (0-based rows)."""
        tables = {SUCC: succ_table, PREC: prec_table}
        return cls.from_function(basis, lambda op, i, j: tables[op][i][j], field)

    def product(self, op: str, a: dict, b: dict) -> dict:
        """Bilinear product of two coefficient vectors."""
        out: dict[str, object] = {}
        idx = {n: k for k, n in enumerate(self.basis)}
        for na, ca in a.items():
            for nb, cb in b.items():
                for t, ct in self.table[op][idx[na]][idx[nb]].items():
                    out[t] = out.get(t, 0) + ca * cb * ct
        return {k: v for k, v in out.items() if v != 0}

    def check_entanglement(self) -> None:
        one = self.field(1)
        vec = [{n: one} for n in self.basis]
        d = self.dim
        for i, j, l in product(range(d), repeat=3):
            left = self.product(PREC, self.product(SUCC, vec[i], vec[j]), vec[l])
            right = self.product(SUCC, vec[i], self.product(PREC, vec[j], vec[l]))
            if left != right:
                raise EntanglementError((i + 1, j + 1, l + 1), _vec_text(left), _vec_text(right))

    def poly(self, op: str, i: int, j: int) -> Poly:
        return Poly((Gen(n), c) for n, c in self.table[op][i][j].items())


def _is_field_elem(v) -> bool:
    from fractions import Fraction

    from ..poly import ModP
    return isinstance(v, (Fraction, ModP))


def _vec_text(v: dict) -> str:
    if not v:
        return "0"
    return " + ".join(f"{c}*{n}" for n, c in sorted(v.items()))


def idempotent(name: str = "x", field: Field = QQ) -> StructureConstants:
    """The one-dimensional algebra with ``x>x = x<x = x``."""
    return StructureConstants.constant([name], [[{name: 1}]], [[{name: 1}]], field)


def max_algebra(d: int, prefix: str = "x", field: Field = QQ) -> StructureConstants:
    """``x_i > x_j = x_i < x_j = x_max(i,j)`` on basis ``x1..xd``."""
    basis = [f"{prefix}{k + 1}" for k in range(d)]
    return StructureConstants.from_function(
        basis, lambda op, i, j: {basis[max(i, j)]: 1}, field)


# ---------------------------------------------------------------------------
# theory builders


def _table_rules(sc: StructureConstants, theory_sig: Signature, order, label: str,
                 prefix: str = "") -> list[GroundRule]:
    rules = []
    names = {SUCC: "succ", PREC: "prec"}
    for op in OPS:
        for i, a in enumerate(sc.basis):
            for j, b in enumerate(sc.basis):
                lhs = _pair(op, a, b)
                rules.append(GroundRule.oriented(
                    f"{prefix}{names[op]}[{a},{b}]", lhs, sc.poly(op, i, j), order,
                    theory_sig.mode, label))
    return rules


def _pair(op: str, a: str, b: str) -> Word:
    return succ(Gen(a), Gen(b)) if op == SUCC else prec(Gen(a), Gen(b))


def from_structure_constants(sc: StructureConstants, label: str = "S",
                             name: str = "structure_constants") -> Theory:
    """``x_i o x_j -> {x_i o x_j}`` for both operations and all basis pairs."""
    sig = Signature.l_algebra(sc.basis)
    th = Theory(sig, (), OrderKind.L, sc.field, name=name)
    return th.with_rules(_table_rules(sc, sig, th.order, label))


def l_identity_theory(generators: Sequence[str] = ("x",), field: Field = QQ,
                      family_bound: int = 3) -> Theory:
    """``(x>y)<z -> x>(y<z)`` over the free Omega-algebra on ``>`` and ``<``."""
    sig = Signature.binary(generators)
    x, y, z = Var("x"), Var("y"), Var("z")
    rule = Schema("L", PNode(PREC, (PNode(SUCC, (x, y)), z)),
                  ((field(1), PNode(SUCC, (x, PNode(PREC, (y, z))))),))
    return Theory(sig, (rule,), OrderKind.L, field, family_bound, name="l_identity")


def dialgebra_theory(generators: Sequence[str] = ("x",), family_bound: int = 3,
                     field: Field = QQ) -> Theory:
    """Families F1-F5 presenting the free dialgebra inside L(X)."""
    if family_bound < 1:
        raise ValueError("family_bound must be at least 1")
    sig = Signature.l_algebra(generators)
    a, b, c = Var("a"), Var("b"), Var("c")
    one = field(1)

    def P(l, r):
        return PNode(PREC, (l, r))

    def S(l, r):
        return PNode(SUCC, (l, r))

    rules = [
        Schema("F1", P(a, P(b, c)), ((one, P(a, S(b, c))),)),
        Schema("F2", S(P(a, b), c), ((one, S(a, S(b, c))),)),
        Schema("F3", P(P(a, b), c), ((one, P(a, S(b, c))),)),
        Schema("F4", S(S(a, b), c), ((one, S(a, S(b, c))),)),
        Schema("F5",
               P(a, RChain(SUCC, "v", P(b, c), (), 1, family_bound)),
               ((one, P(Var("a"), RChain(SUCC, "v", S(Var("b"), Var("c")), (), 1,
                                         family_bound))),)),
    ]
    return Theory(sig, tuple(rules), OrderKind.L, field, family_bound, name="dialgebra")


def _product_family(name: str, sc: StructureConstants, label_guard: frozenset,
                    side: Sequence[str], family_bound: int, lo: int = 0) -> list[Schema]:
    """``x_i > lchain(<, x_j < $u, $v*) -> sum_t c_t lchain(<, x_t < $u, $v*)``."""
    out = []
    irr = IsIrr(label_guard)
    for i, xi in enumerate(sc.basis):
        for j, xj in enumerate(sc.basis):
            u = Var("u", (irr, NotInSet(frozenset(side))))
            lhs = PNode(SUCC, (Gen(xi), LChain(PREC, PNode(PREC, (Gen(xj), u)), "v",
                                               (irr,), lo, family_bound)))
            rhs = []
            for xt, coef in sc.table[SUCC][i][j].items():
                rhs.append((coef, LChain(PREC, PNode(PREC, (Gen(xt), Var("u"))), "v",
                                         (irr,), lo, family_bound)))
            out.append(Schema(f"{name}[{xi},{xj}]", lhs, tuple(rhs), name))
    return out


def free_product_theory(A: StructureConstants, B: StructureConstants,
                        family_bound: int = 2) -> Theory:
    """S1, S2 from the tables plus the correction families F1 (on X) and F2 (on Y)."""
    if set(A.basis) & set(B.basis):
        raise ValueError("the two bases must be disjoint")
    if A.field != B.field:
        raise ValueError("both algebras need the same field")
    sig = Signature.l_algebra(A.basis + B.basis)
    th = Theory(sig, (), OrderKind.L, A.field, family_bound, name="free_product")
    s1 = _table_rules(A, sig, th.order, "S1")
    s2 = _table_rules(B, sig, th.order, "S2")
    guard = frozenset({"S1", "S2"})
    f1 = _product_family("F1", A, guard, A.basis, family_bound)
    f2 = _product_family("F2", B, guard, B.basis, family_bound)
    return th.with_rules(s1 + s2 + f1 + f2)


def encode_generator(i: int, a: str = "a", b: str = "b") -> Word:
    """``a<(b<(...(b<b)))`` with ``i`` copies of ``b``."""
    if i < 1:
        raise ValueError("generator indices start at 1")
    chain: Word = Gen(b)
    for _ in range(i - 1):
        chain = prec(Gen(b), chain)
    return prec(Gen(a), chain)


def embed_two_gen_theory(A: StructureConstants, family_bound: int = 3,
                         a: str = "a", b: str = "b") -> Theory:
    """The algebra on ``X + {a, b}`` in which ``encode_generator(i)`` equals ``x_i``."""
    if a in A.basis or b in A.basis or a == b:
        raise ValueError("the new generators must be fresh")
    sig = Signature.l_algebra(A.basis + (a, b))
    th = Theory(sig, (), OrderKind.L, A.field, family_bound, name="embed_two_gen")
    order = th.order
    rules: list = []
    names = {SUCC: "F1", PREC: "F2"}
    for op in OPS:
        for i, xi in enumerate(A.basis):
            for j, xj in enumerate(A.basis):
                rules.append(GroundRule.oriented(f"{names[op]}[{xi},{xj}]", _pair(op, xi, xj),
                                                 A.poly(op, i, j), order, Mode.L, names[op]))
    for i, xi in enumerate(A.basis):
        lhs = encode_generator(i + 1, a, b)
        assert is_normal(lhs)
        rules.append(GroundRule.oriented(f"F3[{xi}]", lhs, Poly.word(Gen(xi), A.field(1)),
                                         order, Mode.L, "F3"))
    rules += _product_family("F4", A, frozenset({"F1", "F2", "F3"}), A.basis, family_bound)
    return th.with_rules(rules)
