"""Hypothesis strategies for random family parameters."""

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from qplab.elliptic import EllipticCurve
from qplab.errors import DegenerateParameters, SingularCurve
from qplab.family import Genus4Params, make_curve

coeff = st.one_of(
    st.integers(-25, 25),
    st.fractions(min_value=-12, max_value=12, max_denominator=6),
)


def build_curve(a, b, c, d, quotients=("E0", "E1")):
    """Curve whose requested quotients are all nonsingular, or None."""
    try:
        curve = make_curve(Genus4Params(a, b, c, d), quotients)
        q = curve.quotient
        for which in quotients:
            EllipticCurve(*((q.p0, q.q0) if which == "E0" else (q.p1, q.q1)))
    except (DegenerateParameters, SingularCurve):
        return None
    return curve


@st.composite
def valid_curves(draw, a_nonzero=False):
    a = draw(coeff.filter(lambda v: v != 0) if a_nonzero else coeff)
    b, c, d = draw(coeff), draw(coeff), draw(coeff)
    curve = build_curve(a, b, c, d)
    assume(curve is not None)
    return curve


@st.composite
def cd_zero_curves(draw):
    """Tuples with cd = 0, a != 0, usable E0."""
    a = draw(coeff.filter(lambda v: v != 0))
    b = draw(coeff)
    other = draw(coeff.filter(lambda v: v != 0))
    c, d = (Fraction(0), other) if draw(st.booleans()) else (other, Fraction(0))
    curve = build_curve(a, b, c, d, quotients=("E0",))
    assume(curve is not None)
    return curve


@st.composite
def ab_eq_cd_curves(draw):
    """Tuples with ab = cd, a != 0, usable E1."""
    a = draw(coeff.filter(lambda v: v != 0))
    c = draw(coeff.filter(lambda v: v != 0))
    d = draw(coeff)
    b = Fraction(c) * d / a
    curve = build_curve(a, b, c, d, quotients=("E1",))
    assume(curve is not None)
    return curve
