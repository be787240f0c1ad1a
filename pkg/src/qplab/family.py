"""The triple-involution family of (3,3) curves and its quotient pipeline.

A curve in the main component is

    F(x, y) = a(1 + x^3 y^3) + b(xy + x^2 y^2) + c(x^2 + x y^3) + d(y^2 + x^3 y).

Quotienting by (x, y) -> (-x, -y) via u = xy, v = x^2 gives a genus-2 curve
w^2 = sextic(u); the substitutions x0 = -u/(1+u)^2 and x1 = u/(u-1)^2 then
land on the elliptic quotients E0 and E1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .elliptic import ECPoint, EllipticCurve
from .errors import (
    DegenerateParameters,
    NonIntegralGenus,
    SingularCurve,
    SingularQuartic,
    SingularQuotient,
    TwoTorsionInput,
)
from .exactmath import MultiPoly, as_rational, discriminant, format_rational
from .report import CheckReport

a_, b_, c_, d_, x_, y_, u_ = MultiPoly.vars("a b c d x y u")


# ---------------------------------------------------------------------------
# Parameters and derived data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Genus4Params:
    """Homogeneous coordinates [a, b, c, d], stored exactly as given."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not any(self.as_tuple()):
            raise DegenerateParameters("(a, b, c, d) = (0, 0, 0, 0)")

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def normalize(self) -> Genus4Params:
        """Projectively equivalent tuple whose first nonzero entry is 1."""
        lead = next(v for v in self.as_tuple() if v)
        return Genus4Params(*(v / lead for v in self.as_tuple()))

    def projectively_equal(self, other: Genus4Params) -> bool:
        return self.normalize() == other.normalize()

    def to_dict(self) -> dict:
        return {k: format_rational(v) for k, v in zip("abcd", self.as_tuple())}

    def __str__(self):
        return "(" + ", ".join(str(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class ComponentLabel:
    lam: int
    mu: int

    def __post_init__(self):
        if self.lam not in (1, -1) or self.mu not in (1, -1):
            raise ValueError("component labels are +-1")

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "mu": self.mu}

    def __str__(self):
        return f"({self.lam},{self.mu})"


MAIN_COMPONENT = ComponentLabel(1, 1)
NOT_IN_FAMILY = None


@dataclass(frozen=True)
class QuotientData:
    A0: Fraction
    B0: Fraction
    C0: Fraction
    D0: Fraction
    A1: Fraction
    B1: Fraction
    C1: Fraction
    D1: Fraction

    @staticmethod
    def _pq(A, B, C, D):
        p = A * C - B * B / 3
        q = (2 * B**3 - 9 * A * B * C + 27 * A * A * D) / 27
        return p, q

    @property
    def p0(self) -> Fraction:
        return self._pq(self.A0, self.B0, self.C0, self.D0)[0]

    @property
    def q0(self) -> Fraction:
        return self._pq(self.A0, self.B0, self.C0, self.D0)[1]

    @property
    def p1(self) -> Fraction:
        return self._pq(self.A1, self.B1, self.C1, self.D1)[0]

    @property
    def q1(self) -> Fraction:
        return self._pq(self.A1, self.B1, self.C1, self.D1)[1]

    def cubic(self, which: str) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if which == "E0":
            return (self.A0, self.B0, self.C0, self.D0)
        if which == "E1":
            return (self.A1, self.B1, self.C1, self.D1)
        raise ValueError(f"unknown quotient {which!r}")

    def to_dict(self) -> dict:
        names = ["A0", "B0", "C0", "D0", "A1", "B1", "C1", "D1", "p0", "q0", "p1", "q1"]
        return {n: format_rational(getattr(self, n)) for n in names}


def quotient_cubic_coefficients(a, b, c, d):
    """(A0, B0, C0, D0, A1, B1, C1, D1) as expressions in a, b, c, d.

    Works for Fractions and for MultiPoly symbols alike.
    """
    A0 = 4 * (c - d) ** 2
    B0 = (3 * a - b) ** 2 - 4 * c * d
    C0 = 2 * a * (3 * a - b)
    D0 = a * a
    A1 = 4 * (a + b) ** 2 - 4 * (c + d) ** 2
    B1 = (a + b) * (9 * a + b) - 4 * c * d
    C1 = 6 * a * a + 2 * a * b
    D1 = a * a
    return A0, B0, C0, D0, A1, B1, C1, D1


def quotient_data(params: Genus4Params) -> QuotientData:
    return QuotientData(*quotient_cubic_coefficients(*params.as_tuple()))


def family_polynomial(a, b, c, d) -> MultiPoly:
    """F(x, y) for the main component, coefficients numeric or symbolic."""
    x, y = x_, y_
    return (
        a * (1 + x**3 * y**3)
        + b * (x * y + x**2 * y**2)
        + c * (x**2 + x * y**3)
        + d * (y**2 + x**3 * y)
    )


@dataclass(frozen=True)
class Genus4Curve:
    params: Genus4Params
    quotient: QuotientData
    F: MultiPoly = field(compare=False)

    @property
    def degenerate_cd(self) -> bool:
        """cd = 0: the E0 projection of the canonical point is torsion."""
        return self.params.c * self.params.d == 0

    @property
    def degenerate_ab_cd(self) -> bool:
        """ab = cd: the E1 projection of the canonical point is torsion."""
        p = self.params
        return p.a * p.b == p.c * p.d


def make_curve(params: Genus4Params, quotients=("E0", "E1")) -> Genus4Curve:
    """Attach quotient data and the defining polynomial to ``params``.

    Only the quotients named in ``quotients`` are required to be
    non-degenerate, so ``quotients=("E0",)`` admits tuples with A1 = 0.
    """
    a, b, c, d = params.as_tuple()
    if "E0" in quotients and c == d:
        raise DegenerateParameters("c = d makes A0 = 4(c-d)^2 vanish")
    if "E1" in quotients and (a + b) ** 2 == (c + d) ** 2:
        raise DegenerateParameters("(a+b)^2 = (c+d)^2 makes A1 vanish")
    return Genus4Curve(params, quotient_data(params), family_polynomial(a, b, c, d))


# ---------------------------------------------------------------------------
# Components of the moduli space and the W x W action
# ---------------------------------------------------------------------------

def _neg_xy(mono, coeff):
    sign = -1 if (mono.get("x", 0) + mono.get("y", 0)) % 2 else 1
    return mono, coeff * sign


def _reflect_xy(mono, coeff):
    mono = dict(mono)
    mono["x"] = 3 - mono.get("x", 0)
    mono["y"] = 3 - mono.get("y", 0)
    return mono, coeff


def component_classify(f: MultiPoly) -> Optional[ComponentLabel]:
    """(lambda, mu) with f(-x,-y) = lambda f and x^3 y^3 f(1/x,1/y) = mu f.

    Coefficients may themselves be polynomials in other variables. Returns
    None when f is not in any of the four components.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree("x") > 3 or f.degree("y") > 3:
        return NOT_IN_FAMILY
    neg = f.map_monomials(_neg_xy)
    refl = f.map_monomials(_reflect_xy)
    lam = next((s for s in (1, -1) if neg == f * s), None)
    mu = next((s for s in (1, -1) if refl == f * s), None)
    if lam is None or mu is None:
        return NOT_IN_FAMILY
    return ComponentLabel(lam, mu)


# First monomial of each parameter's pair; the partner is its (3-i, 3-j) reflection.
_TEMPLATE_LEAD = {
    1: ((0, 0), (1, 1), (2, 0), (0, 2)),
    -1: ((1, 0), (0, 1), (3, 0), (1, 2)),
}


def component_template(label: ComponentLabel, a, b, c, d) -> MultiPoly:
    """Universal curve of component (lambda, mu) at parameters a, b, c, d."""
    out = MultiPoly()
    for coeff, (i, j) in zip((a, b, c, d), _TEMPLATE_LEAD[label.lam]):
        pair = x_**i * y_**j + label.mu * x_ ** (3 - i) * y_ ** (3 - j)
        out = out + coeff * pair
    return out


def extract_parameters(f: MultiPoly, label: ComponentLabel):
    """Read (a, b, c, d) of ``f`` in the normal form of its component.

    Entries are MultiPoly in the non-(x, y) variables; constants for numeric f.
    """
    parts = f.coefficients_in(("x", "y"))
    params = [parts.get(ij, MultiPoly()) for ij in _TEMPLATE_LEAD[label.lam]]
    if component_template(label, *params) != f:
        raise ValueError("polynomial does not match its component template")
    return tuple(params)


# Elements of W: identity, x -> -x, x -> 1/x, x -> -1/x.
W_ELEMENTS = ("id", "w1", "w2", "w3")


def _apply_w(f: MultiPoly, var: str, w: str) -> MultiPoly:
    """Pull back f along w acting on one coordinate, clearing denominators."""
    if w == "id":
        return f
    if w == "w1":
        return f.map_monomials(
            lambda m, c: (m, c * (-1 if m.get(var, 0) % 2 else 1))
        )

    def flip(m, c):
        m = dict(m)
        e = m.get(var, 0)
        m[var] = 3 - e
        if w == "w3" and e % 2:
            c = -c
        return m, c

    return f.map_monomials(flip)


def act(f: MultiPoly, g: tuple[str, str]) -> MultiPoly:
    """Image of the curve f = 0 under g = (w_i, w_j) in W x W."""
    gx, gy = g
    return _apply_w(_apply_w(f, "x", gx), "y", gy)


def translate_component(
    params: Genus4Params,
    g: tuple[str, str],
    source: ComponentLabel = MAIN_COMPONENT,
) -> tuple[ComponentLabel, Genus4Params]:
    """Move a curve of component ``source`` by g and re-read its parameters."""
    f = component_template(source, *params.as_tuple())
    image = act(f, g)
    label = component_classify(image)
    if label is None:
        raise ValueError("image left the family")
    coeffs = extract_parameters(image, label)
    return label, Genus4Params(*(p.constant_term() for p in coeffs))


def translate_symbolic(source: ComponentLabel, g: tuple[str, str]):
    """Symbolic version over Q[a, b, c, d]: (label, parameter polynomials)."""
    image = act(component_template(source, a_, b_, c_, d_), g)
    label = component_classify(image)
    if label is None:
        return None, None
    return label, extract_parameters(image, label)


# ---------------------------------------------------------------------------
# Genus-2 quotient
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SexticModel:
    """w^2 = sum coeffs[k] u^k (index = degree)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != 7:
            raise ValueError("a sextic model has 7 coefficients")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    def descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def is_palindromic(self) -> bool:
        return all(self.coeffs[k] == self.coeffs[6 - k] for k in range(4))

    def normal_form(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(A, B, C, D) in A(u^6+1) + B(u^5+u) + C(u^4+u^2) + D u^3."""
        s = self.coeffs
        return (s[6], s[5], s[4], s[3])

    def discriminant(self) -> Fraction:
        """Discriminant of the sextic (zero when the quotient is singular)."""
        if not any(self.coeffs):
            return Fraction(0)
        return discriminant(self.coeffs)

    def polynomial(self, var: str = "u") -> MultiPoly:
        return MultiPoly.from_univariate(var, self.coeffs)

    def __call__(self, u) -> Fraction:
        u = as_rational(u)
        return sum(c * u**k for k, c in enumerate(self.coeffs))


def sextic_coefficients(a, b, c, d):
    """(s0, ..., s6) of the genus-2 quotient, numeric or symbolic."""
    s0 = a * a
    s1 = 2 * a * b
    s2 = b * b + 2 * a * b - 4 * d * c
    s3 = 2 * a * a + 2 * b * b - 4 * c * c - 4 * d * d
    return (s0, s1, s2, s3, s2, s1, s0)


def genus2_model(curve: Genus4Curve) -> SexticModel:
    return SexticModel(sextic_coefficients(*curve.params.as_tuple()))


# ---------------------------------------------------------------------------
# Elliptic quotients and the canonical point
# ---------------------------------------------------------------------------

def quotient_curve(curve: Genus4Curve, which: str) -> EllipticCurve:
    q = curve.quotient
    p_, q_ = (q.p0, q.q0) if which == "E0" else (q.p1, q.q1)
    try:
        return EllipticCurve(p_, q_)
    except SingularCurve as exc:
        raise SingularQuotient(which) from exc


def elliptic_quotients(curve: Genus4Curve) -> tuple[EllipticCurve, EllipticCurve]:
    return quotient_curve(curve, "E0"), quotient_curve(curve, "E1")


def xi_projection(curve: Genus4Curve, which: str) -> ECPoint:
    """Image on E_i of the points of C over x = 0.

    At x = 0 we have u = 0, so x0 = x1 = 0 and w = a. On E0, y0 = w/(1+u)^3
    = a; on E1, y1 = w/(u-1)^3 = -a. Hence P_E0 = (B0/3, A0 a) and
    P_E1 = (B1/3, -A1 a).
    """
    E = quotient_curve(curve, which)
    q, a = curve.quotient, curve.params.a
    if which == "E0":
        P = ECPoint(q.B0 / 3, q.A0 * a)
    else:
        P = ECPoint(q.B1 / 3, -q.A1 * a)
    if not E.on_curve(P):
        raise AssertionError(f"projection {P} is off {which}")
    return P


def xi_image(curve: Genus4Curve, which: str) -> ECPoint:
    """p_i(xi) = [6] P_{E_i}."""
    E = quotient_curve(curve, which)
    return E.mul(6, xi_projection(curve, which))


def expected_double_x(curve: Genus4Curve, which: str) -> Fraction:
    """Closed form of x([2]P_{E_i}) (sign-corrected for E0)."""
    a, b, c, d = curve.params.as_tuple()
    q = curve.quotient
    if which == "E0":
        return q.B0 / 3 + 4 * c * d
    return q.B1 / 3 + 4 * c * d - 4 * a * b


# ---------------------------------------------------------------------------
# E+ / E- of a genus-2 curve with extra involution
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuarticModel:
    """v^2 = sum coeffs[k] u^k (index = degree)."""

    coeffs: tuple[Fraction, ...]

    def descending(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def __call__(self, u) -> Fraction:
        u = as_rational(u)
        return sum(c * u**k for k, c in enumerate(self.coeffs))


def eplus_eminus(alpha1, alpha2, alpha3) -> tuple[QuarticModel, QuarticModel]:
    """Quartic models v^2 = (u +- 2)(u - a1)(u - a2)(u - a3) of E+ and E-."""
    alphas = [as_rational(x) for x in (alpha1, alpha2, alpha3)]
    if len(set(alphas)) != 3:
        raise SingularQuartic("alpha_i must be pairwise distinct")
    if any(al in (2, -2) for al in alphas):
        raise SingularQuartic("alpha_i = +-2 gives a repeated root")
    base = MultiPoly.const(1)
    for al in alphas:
        base = base * (u_ - al)
    out = []
    for shift in (2, -2):
        poly = base * (u_ + shift)
        out.append(QuarticModel(tuple(poly.coefficient({"u": k}) for k in range(5))))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# Riemann-Hurwitz
# ---------------------------------------------------------------------------

def riemann_hurwitz_genus(g_base: int, degree: int, ram_sum: int) -> int:
    """Genus g of a cover: 2g - 2 = degree (2 g_base - 2) + ram_sum."""
    total = degree * (2 * g_base - 2) + ram_sum
    if total % 2 or total < -2:
        raise NonIntegralGenus(f"2g - 2 = {total} has no genus solution")
    return total // 2 + 1


def riemann_hurwitz_base_genus(g_cover: int, degree: int, ram_sum: int) -> int:
    """Genus of the base: solves 2 g_cover - 2 = degree (2 g - 2) + ram_sum."""
    rest = 2 * g_cover - 2 - ram_sum
    if degree <= 0 or rest % degree:
        raise NonIntegralGenus(f"{rest} is not divisible by degree {degree}")
    twice = rest // degree
    if twice % 2 or twice < -2:
        raise NonIntegralGenus(f"2g - 2 = {twice} has no genus solution")
    return twice // 2 + 1


# ---------------------------------------------------------------------------
# Numeric point-level check
# ---------------------------------------------------------------------------

def check_double_x_formula(curve: Genus4Curve, which: str) -> CheckReport:
    """Compare x([2]P_{E_i}) with its closed form, exactly."""
    E = quotient_curve(curve, which)
    P = xi_projection(curve, which)
    if P.y == 0:
        raise TwoTorsionInput(f"P_{which} is 2-torsion (a = 0)")
    got = E.double(P).x
    want = expected_double_x(curve, which)
    report = CheckReport(
        f"double_x_{which}",
        got == want,
        {"x_2P": format_rational(got), "closed_form": format_rational(want)},
        difference=format_rational(got - want),
    )
    if which == "E0":
        c, d = curve.params.c, curve.params.d
        reference = curve.quotient.B0 / 3 - 4 * c * d
        if reference != got:
            report.warnings.append(
                f"reference form B0/3 - 4cd = {reference} disagrees; B0/3 + 4cd = {want} holds"
            )
    return report
