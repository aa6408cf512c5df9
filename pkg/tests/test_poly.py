from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shirshov.order import OrderKind, WordOrder
from shirshov.poly import QQ, Field, ModP, Poly, add, apply_context, leading, monic, parse_poly, scale
from shirshov.term import HOLE, Context, Gen, Mode, Node, Signature, enumerate_words, parse_word

LSIG = Signature.l_algebra(("x", "y", "z", "w"))
BIN = Signature.binary(("x", "y", "z", "w"))
ORDER_L = WordOrder(LSIG, OrderKind.L)


def P(text, sig=BIN, field=QQ):
    return parse_poly(text, sig, field)


def test_linear_laws():
    f = P("(x>y) - 2*z")
    assert add(f, Poly()) == f
    assert not add(f, scale(-1, f))
    assert P("x>y") + P("x>y") == P("2*(x>y)")


def test_zero_coefficients_never_stored():
    assert P("x - x") == Poly()
    assert Poly([(Gen("x"), 0)]).terms == {}


def test_leading_and_monic():
    order = WordOrder(BIN, OrderKind.L)
    f = P("(x>y)<z - x>(y<z)")
    assert leading(f, order) == (parse_word("(x>y)<z", BIN), 1)
    assert monic(P("2*(x<y) - 2*(x>y)"), order) == P("(x<y) - (x>y)")
    g = P("3*x + y")
    assert monic(g, order).leading(order) == (Gen("y"), 1)
    with pytest.raises(ValueError):
        leading(Poly(), order)


def test_apply_context_examples():
    f = P("x>y - w")
    assert apply_context(Context.identity(), f) == f
    c = Context.from_frame(Node("<", (HOLE, Gen("z"))))
    assert apply_context(c, f, Mode.OMEGA) == P("(x>y)<z - w<z")
    got = apply_context(c, parse_poly("x>y", LSIG), Mode.L)
    assert got == parse_poly("x>(y<z)", LSIG)


def test_format_descending():
    f = parse_poly("x + 2*(x>y) - 1/2*(x<y)", LSIG)
    assert f.format(ORDER_L) == "-1/2*(x<y) + 2*(x>y) + x"


def test_prime_field():
    F7 = Field(7)
    f = parse_poly("3*x + 5*y", LSIG, F7)
    g = f.scale(F7(5))
    assert g.coeff(Gen("x")) == ModP(1, 7)
    assert (g / F7(5)) == f
    assert F7(1, 3) * 3 == 1
    with pytest.raises(ValueError):
        Field(8)
    with pytest.raises(ZeroDivisionError):
        F7(1, 7)
    assert Field.parse("Fp(7)") == F7 and Field.parse("Q") == QQ


def test_floats_rejected():
    with pytest.raises(TypeError):
        Poly([(Gen("x"), 0.5)])


WORDS = [w for n in range(1, 4) for w in enumerate_words(Signature.binary(("x", "y")), n)]


@st.composite
def polys(draw):
    items = draw(st.lists(st.tuples(st.sampled_from(WORDS),
                                    st.fractions(max_denominator=7).filter(lambda q: abs(q) < 50)),
                          max_size=6))
    return Poly(items)


@settings(max_examples=200, deadline=None)
@given(polys(), polys(), polys())
def test_arith_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f / 3) * 3 == f
    assert all(c != 0 for c in (f - g).terms.values())


def test_random_arith_sequences_keep_support_clean():
    rng = random.Random(5)
    for _ in range(1000):
        f = Poly()
        for _ in range(rng.randint(1, 6)):
            g = Poly([(rng.choice(WORDS), Fraction(rng.randint(-3, 3), rng.randint(1, 3)))])
            f = f + g if rng.random() < 0.5 else f - g.scale(rng.randint(-2, 2))
            assert all(c != 0 for c in f.terms.values())


def test_leading_word_commutes_with_context():
    rng = random.Random(6)
    sig = Signature.binary(("x", "y"))
    order = WordOrder(sig, OrderKind.GENERAL)
    for _ in range(300):
        f = Poly([(rng.choice(WORDS), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))])
        frame = HOLE
        for _ in range(rng.randint(0, 3)):
            other = rng.choice(WORDS)
            frame = Node(rng.choice("><"), (frame, other) if rng.random() < 0.5 else (other, frame))
        c = Context.from_frame(frame)
        assert apply_context(c, f).lead_word(order) == c.plug(f.lead_word(order))
