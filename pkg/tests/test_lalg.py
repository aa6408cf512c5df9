from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb

import pytest

from shirshov.lalg import (
    bracket, count_normal, enumerate_normal, fp_irr_characterization, is_normal, loday_form, nmul,
)
from shirshov.lalg.builders import (
    EntanglementError, StructureConstants, dialgebra_theory, embed_two_gen_theory,
    encode_generator, free_product_theory, from_structure_constants, idempotent, max_algebra,
)
from shirshov.order import OrderKind, WordOrder
from shirshov.poly import Poly
from shirshov.rewrite import instantiate_schemas, irr_enumerate, is_irreducible, normal_form
from shirshov.term import (
    Gen, Node, Signature, enumerate_words, format_term, parse_word, positions, prec, replace_at,
    succ,
)

L1 = Signature.l_algebra(("x",))
L3 = Signature.l_algebra(("x", "y", "z", "w"))
B1 = Signature.binary(("x",))
B2 = Signature.binary(("x", "y"))


def W(text, sig=L3):
    return parse_word(text, sig)


def rewrite_closure(u):
    """Every word reachable by (a>b)<c -> a>(b<c) at any position, in any order."""
    seen = {u}
    todo = [u]
    while todo:
        w = todo.pop()
        for path, s in positions(w):
            if isinstance(s, Node) and s.op == "<" and isinstance(s.args[0], Node) \
                    and s.args[0].op == ">":
                a, b = s.args[0].args
                t = replace_at(w, path, succ(a, prec(b, s.args[1])))
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
    return seen


def _leaf_names(u):
    return [s.name for _, s in positions(u) if isinstance(s, Gen)]


@pytest.mark.parametrize("text,expected", [
    ("x", True), ("(x>y)<z", False), ("(x<y)<z", True), ("x<(y>z)", True),
    ("w>((x>y)<z)", False),
])
def test_is_normal(text, expected):
    assert is_normal(W(text)) is expected


@pytest.mark.parametrize("text,expected", [
    ("(x>y)<z", "x>(y<z)"),
    ("x<y", "x<y"),
    ("((x>y)>z)<w", "(x>y)>(z<w)"),
])
def test_bracket_examples(text, expected):
    assert bracket(W(text)) == W(expected)


@pytest.mark.parametrize("u,op,v,expected", [
    ("x", ">", "y", "x>y"),
    ("x>y", "<", "z", "x>(y<z)"),
    ("x>(y>z)", "<", "w", "x>(y>(z<w))"),
])
def test_nmul_examples(u, op, v, expected):
    assert nmul(W(u), op, W(v)) == W(expected)


@pytest.mark.parametrize("sig,size", [(B1, n) for n in range(1, 7)] + [(B2, n) for n in range(1, 5)])
def test_bracket_against_exhaustive_rewriting(sig, size):
    for u in enumerate_words(sig, size):
        b = bracket(u)
        closure = rewrite_closure(u)
        terminal = [w for w in closure if is_normal(w)]
        assert terminal == [b]
        assert bracket(b) == b
        assert Counter(_leaf_names(b)) == Counter(_leaf_names(u))
        assert b.leaves == u.leaves


def test_nmul_equals_bracket_of_product():
    normals = {n: enumerate_normal(n, ("x",)) for n in range(1, 7)}
    for a in range(1, 7):
        for b in range(1, 8 - a):
            for u in normals[a]:
                for v in normals[b]:
                    for op in "><":
                        assert nmul(u, op, v) == bracket(Node(op, (u, v)))


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 7), (4, 30), (5, 143), (6, 728)])
def test_normal_counts_one_generator(n, expected):
    words = enumerate_normal(n, ("x",))
    brute = [w for w in enumerate_words(B1, n) if is_normal(w)]
    assert len(words) == len(brute) == expected == comb(3 * n - 2, n - 1) // n
    assert set(words) == set(brute)
    assert count_normal(n) == expected


@pytest.mark.parametrize("n", range(1, 5))
def test_normal_counts_two_generators(n):
    assert len(enumerate_normal(n, ("x", "y"))) == 2**n * len(enumerate_normal(n, ("x",)))


def test_enumerate_normal_sorted_and_small_cases():
    assert [format_term(w) for w in enumerate_normal(2, ("x",))] == ["x>x", "x<x"]
    order = WordOrder(Signature.l_algebra(("x", "y")), OrderKind.L)
    words = enumerate_normal(3, ("x", "y"))
    assert words == sorted(words, key=order.key)


# --- structure constants -----------------------------------------------------


def test_idempotent_theory():
    th = from_structure_constants(idempotent())
    assert len(th.rules) == 2
    f, _ = normal_form(Poly.word(W("(x>x)<x", L1)), th)
    assert f == Poly.word(Gen("x"))


@pytest.mark.parametrize("alpha,beta", [(2, 3), (0, 5), (Fraction(1, 2), -1), (0, 0)])
def test_one_dimensional_tables_always_entangle(alpha, beta):
    sc = StructureConstants.constant(["x"], [[{"x": alpha}]], [[{"x": beta}]])
    th = from_structure_constants(sc)
    assert len(th.rules) == 2


def test_entanglement_violation_names_triple():
    tables = {">": [[{"x1": 1}, {"x1": 1}], [{}, {}]], "<": [[{}, {"x2": 1}], [{}, {}]]}
    with pytest.raises(EntanglementError) as info:
        StructureConstants.from_function(["x1", "x2"], lambda op, i, j: tables[op][i][j])
    i, j, l = info.value.triple
    assert all(1 <= k <= 2 for k in (i, j, l))
    assert f"({i}, {j}, {l})" in str(info.value)


def test_max_algebra_dims():
    th = from_structure_constants(max_algebra(2))
    assert len(th.rules) == 8
    assert [len(irr_enumerate(th, n)) for n in (1, 2, 3)] == [2, 0, 0]


# --- dialgebra -------------------------------------------------------------


def test_dialgebra_instances():
    th = dialgebra_theory(("x",), 3)
    rules = {format_term(r.lhs): r for r in instantiate_schemas(th, 5)}
    f1 = rules["x<(x<x)"]
    assert f1.label == "F1" and f1.rhs == Poly.word(W("x<(x>x)", L1))
    f5 = rules["x<(x>(x<x))"]
    assert f5.label == "F5" and f5.rhs == Poly.word(W("x<(x>(x>x))", L1))
    order = th.order
    for r in rules.values():
        if r.label == "F3":
            assert r.lhs.op == "<" and r.lhs.args[0].op == "<"
            for w in r.rhs.terms:
                assert order.greater(r.lhs, w)


def test_dialgebra_family_bound():
    th = dialgebra_theory(("x",), 2)
    spans = {len(r.origin[1]["v"]) for r in instantiate_schemas(th, 8) if r.label == "F5"}
    assert spans == {1, 2}
    with pytest.raises(ValueError):
        dialgebra_theory(("x",), 0)


@pytest.mark.parametrize("text,expected", [
    ("x", (0, ["x"], 0)),
    ("x>(y<z)", (1, ["x", "y", "z"], 1)),
    ("x>y", (1, ["x", "y"], 0)),
    ("(x<y)<z", None),
    ("x<(y<z)", None),
])
def test_loday_form(text, expected):
    assert loday_form(W(text)) == expected


@pytest.mark.parametrize("size", range(1, 6))
def test_loday_shape_count(size):
    assert sum(loday_form(w) is not None for w in enumerate_normal(size, ("x",))) == size


def test_dialgebra_irr_matches_loday_shape():
    th = dialgebra_theory(("x",), 3)
    irr = irr_enumerate(th, 4)
    assert len(irr) == 4
    assert all(loday_form(w) is not None for w in irr)


# --- free product ----------------------------------------------------------


def test_free_product_examples():
    th = free_product_theory(idempotent("x"), idempotent("y"), 2)
    sig = th.signature
    f, _ = normal_form(Poly.word(parse_word("x>(x<y)", sig)), th)
    assert f == Poly.word(parse_word("x<y", sig))
    assert is_irreducible(parse_word("x<y", sig), th)
    assert not is_irreducible(parse_word("x>(x<y)", sig), th)
    fp = [r for r in instantiate_schemas(th, 3) if r.label == "F1"]
    assert any(format_term(r.lhs) == "x>(x<y)" and r.rhs == Poly.word(parse_word("x<y", sig))
               for r in fp)


def test_free_product_disjoint_bases():
    with pytest.raises(ValueError):
        free_product_theory(idempotent("x"), idempotent("x"))


@pytest.mark.parametrize("text,expected", [
    ("x", True),
    ("x>(x<y)", False),
    ("(x<y)>x", True),
    ("x<y", True),
    ("x>x", False),
])
def test_fp_irr_characterization_examples(text, expected):
    sig = Signature.l_algebra(("x", "y"))
    assert fp_irr_characterization(parse_word(text, sig), {"x"}, {"y"}) is expected


def test_fp_irr_characterization_agrees_with_engine():
    th = free_product_theory(idempotent("x"), idempotent("y"), 2)
    for n in range(1, 6):
        for w in enumerate_normal(n, ("x", "y")):
            assert fp_irr_characterization(w, {"x"}, {"y"}) == is_irreducible(w, th), w


# --- two-generator embedding -------------------------------------------------


def test_encode_generator():
    sig = Signature.l_algebra(("a", "b"))
    assert encode_generator(1) == parse_word("a<b", sig)
    assert encode_generator(3) == parse_word("a<(b<(b<b))", sig)
    with pytest.raises(ValueError):
        encode_generator(0)


def test_embedding_decodes_generators():
    A = max_algebra(2)
    th = embed_two_gen_theory(A, 3)
    for i, xi in enumerate(A.basis, start=1):
        f, trace = normal_form(Poly.word(encode_generator(i)), th)
        assert f == Poly.word(Gen(xi))
        assert len(trace) == 1


def test_embedding_needs_fresh_generators():
    with pytest.raises(ValueError):
        embed_two_gen_theory(max_algebra(2, prefix="a"), 3, a="a1")
