from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from qplab.errors import UnboundVariable, ZeroDenominatorBinding
from qplab.exactmath import (
    GaussianRational,
    I,
    MultiPoly,
    ResidueClass,
    discriminant,
    format_rational,
    fraction_identity,
    parse_rational,
    poly_arith,
    poly_eval,
    poly_substitute,
    rational_height,
    resultant,
    units_mod,
)

x, y, u, v = MultiPoly.vars("x y u v")

small = st.integers(-6, 6)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@st.composite
def polys(draw, names=("x", "y", "u"), max_deg=3, max_terms=5):
    p = MultiPoly.const(draw(small))
    for _ in range(draw(st.integers(0, max_terms))):
        mono = MultiPoly.const(draw(st.integers(-5, 5)))
        for n in names:
            mono = mono * MultiPoly.var(n) ** draw(st.integers(0, max_deg))
        p = p + mono
    return p


# --- rationals ------------------------------------------------------------

def test_parse_and_format_roundtrip():
    assert parse_rational("-6/4") == Fraction(-3, 2)
    assert parse_rational("7") == 7
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(5) == "5/1"


@pytest.mark.parametrize("bad", ["1.5", "1/0", "", "a/b", "1e3", "3/-4"])
def test_parse_rejects_inexact_or_malformed(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_rational_height():
    assert rational_height(Fraction(-4, 3)) == pytest.approx(1.3862943611198906)
    assert rational_height(Fraction(20, 3)) == pytest.approx(2.995732273553991)


ops = st.sampled_from(["+", "-", "*", "/"])


@settings(max_examples=200)
@given(st.lists(st.tuples(ops, rationals), min_size=50, max_size=50), rationals)
def test_canonical_form_survives_operation_chains(chain, start):
    acc = start
    for op, val in chain:
        if op == "+":
            acc = acc + val
        elif op == "-":
            acc = acc - val
        elif op == "*":
            acc = acc * val
        elif val != 0:
            acc = acc / val
        assert gcd(acc.numerator, acc.denominator) == 1
        assert acc.denominator > 0


@given(rationals, rationals)
def test_gaussian_norm(a, b):
    z = GaussianRational(a, b)
    assert z * z.conjugate() == GaussianRational(a * a + b * b, 0)
    assert z.norm() == a * a + b * b


def test_gaussian_basics():
    assert I * I == -1
    assert (1 + I) / (1 - I) == I
    assert (2 + I).inverse() * (2 + I) == 1


def test_residue_class_and_units():
    assert {r.value for r in units_mod(15)} == {1, 2, 4, 7, 8, 11, 13, 14}
    assert {r.value for r in units_mod(2)} == {1}
    assert {r.value for r in units_mod(5)} == {1, 2, 3, 4}
    r = ResidueClass(-2, 15)
    assert r.value == 13 and r.signed() == -2
    assert (r * r.inverse()).value == 1
    assert ResidueClass(8, 15).signed() == -7
    assert ResidueClass(7, 15).signed() == 7


# --- polynomials ----------------------------------------------------------

def test_poly_arith_examples():
    assert poly_arith(x + y, x - y, "mul") == x**2 - y**2
    assert poly_arith(x + y, MultiPoly(), "mul").is_zero()
    assert (1 + u**3) ** 2 == 1 + 2 * u**3 + u**6


def test_structural_equality_ignores_variable_universe():
    assert (x + 0 * y) == x
    assert hash(x.extend(("x", "y", "u"))) == hash(x)


def test_substitute_examples():
    num, den = poly_substitute(u**2, {"u": (-u, (1 + u) ** 2)})
    assert num == u**2 and den == (1 + u) ** 4
    assert poly_substitute(x, {"x": x}) == (x, MultiPoly.const(1))
    assert poly_substitute(u**3, {"u": x * y}) == (x**3 * y**3, MultiPoly.const(1))


def test_substitute_rejects_zero_denominator():
    with pytest.raises(ZeroDenominatorBinding):
        poly_substitute(u, {"u": (x, MultiPoly())})


def test_eval_examples():
    sextic = u**6 + 2 * u**5 - 5 * u**4 - 16 * u**3 - 5 * u**2 + 2 * u + 1
    assert poly_eval(sextic, {"u": 1}) == -20
    p = MultiPoly.vars("p")[0]
    assert poly_eval(x**2 - p, {"x": Fraction(-4, 3), "p": Fraction(32, 3)}) == Fraction(-80, 9)
    assert poly_eval(3 + x * y, {"x": 0, "y": 0}) == 3
    with pytest.raises(UnboundVariable):
        poly_eval(x * y, {"x": 1})


def test_fraction_identity_zero_iff_equal():
    assert fraction_identity((x, x + 1), (2 * x, 2 * x + 2)).is_zero()
    assert not fraction_identity((x, x + 1), (x, x + 2)).is_zero()


def test_resultant_and_discriminant():
    # t^3 - 3t + 1 has discriminant 81; t^2 - 1 and t - 1 share a root
    assert discriminant([1, -3, 0, 1]) == 81
    assert resultant([-1, 0, 1], [-1, 1]) == 0
    assert discriminant([-4, 0, 1]) == 16


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly()


@given(
    polys(names=("x", "y"), max_deg=2),
    polys(names=("u", "v"), max_deg=2, max_terms=2),
    polys(names=("u", "v"), max_deg=1, max_terms=2),
    polys(names=("u", "v"), max_deg=2, max_terms=2),
    rationals,
    rationals,
)
def test_substitution_commutes_with_evaluation(p, nx, dx, ny, uu, vv):
    assume(not dx.is_zero())
    point = {"u": uu, "v": vv}
    dval = poly_eval(dx, point)
    assume(dval != 0)
    num, den = poly_substitute(p, {"x": (nx, dx), "y": ny})
    den_val = poly_eval(den, point)
    assume(den_val != 0)
    direct = poly_eval(p, {"x": poly_eval(nx, point) / dval, "y": poly_eval(ny, point)})
    assert poly_eval(num, point) / den_val == direct
