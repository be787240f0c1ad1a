"""Symbolic identity checks for the quotient pipeline.

Every check expands both sides over Q[a, b, c, d, ...] and asserts that the
difference polynomial is structurally zero. Checks accept a ``fault`` name so
the harness can prove that a corrupted identity is actually caught.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonIntegralGenus
from .exactmath import MultiPoly, fraction_identity, poly_substitute
from .report import CheckReport
from .family import (
    MAIN_COMPONENT,
    ComponentLabel,
    act,
    component_classify,
    component_template,
    family_polynomial,
    quotient_cubic_coefficients,
    riemann_hurwitz_base_genus,
    riemann_hurwitz_genus,
    sextic_coefficients,
    translate_symbolic,
)

a, b, c, d, x, y, u, v, w = MultiPoly.vars("a b c d x y u v w")
x0, y0 = MultiPoly.var("x0"), MultiPoly.var("y0")

FAULTS = (
    "sextic_s3",
    "b0_sign",
    "q_image_sign",
    "component_table",
    "eplus_shift",
    "riemann_hurwitz",
)


def _report(name, diffs, details=None, warnings=None) -> CheckReport:
    """Pass iff every difference polynomial is zero (they are never summed)."""
    if isinstance(diffs, MultiPoly):
        diffs = {name: diffs}
    details = dict(details or {})
    if len(diffs) > 1:
        for key, diff in diffs.items():
            details.setdefault(key, "pass" if diff.is_zero() else "fail")
    failing = {k: v for k, v in diffs.items() if not v.is_zero()}
    if not failing:
        difference = "0"
    elif len(diffs) == 1:
        difference = str(next(iter(failing.values())))
    else:
        difference = "; ".join(f"{k}: {v}" for k, v in failing.items())
    return CheckReport(name, not failing, details, difference, list(warnings or []))


def _sextic_poly(fault=None) -> MultiPoly:
    s = list(sextic_coefficients(a, b, c, d))
    if fault == "sextic_s3":
        s[3] = s[3] + 1
    out = MultiPoly()
    for k, coeff in enumerate(s):
        out = out + coeff * u**k
    return out


def verify_sextic_identity(fault=None) -> CheckReport:
    """(a(1+u^3) + bu(1+u))^2 - 4(c+du)(cu+d)u^2 equals the palindromic sextic."""
    lhs = (a * (1 + u**3) + b * u * (1 + u)) ** 2 - 4 * (c + d * u) * (c * u + d) * u**2
    return _report("sextic_identity", lhs - _sextic_poly(fault))


def verify_w_substitution() -> CheckReport:
    """w = 2(c+du)v + a(1+u^3) + b(u+u^2) at u = xy, v = x^2 is c(x^2-xy^3) + d(x^3y-y^2) + F.

    So on the curve F = 0 both expressions for w agree, and the quadratic in v
    has discriminant equal to the sextic.
    """
    w_uv = 2 * (c + d * u) * v + a * (1 + u**3) + b * (u + u**2)
    w_xy = w_uv.subs({"u": x * y, "v": x**2})
    F = family_polynomial(a, b, c, d)
    diff = w_xy - (c * (x**2 - x * y**3) + d * (x**3 * y - y**2)) - F
    # quadratic in v: (c+du)v^2 + (a(1+u^3)+b(u+u^2))v + u^2(cu+d) = v * F|_{u,v}
    quad = (c + d * u) * v**2 + (a * (1 + u**3) + b * (u + u**2)) * v + u**2 * (c * u + d)
    disc = (a * (1 + u**3) + b * (u + u**2)) ** 2 - 4 * (c + d * u) * u**2 * (c * u + d)
    diff2 = (w_uv**2 - disc) - 4 * (c + d * u) * quad
    diff3 = quad.subs({"u": x * y, "v": x**2}) - x**2 * F
    return _report("w_substitution", {"w_on_curve": diff, "w_squared": diff2, "quadratic_in_v": diff3})


def _cubic(which: str, fault=None):
    A0, B0, C0, D0, A1, B1, C1, D1 = quotient_cubic_coefficients(a, b, c, d)
    if fault == "b0_sign":
        B0 = -B0
    return (A0, B0, C0, D0) if which == "E0" else (A1, B1, C1, D1)


def _weierstrass_diff(A, B, C, D) -> MultiPoly:
    p = A * C - B * B * Fraction(1, 3)
    q = (2 * B**3 - 9 * A * B * C + 27 * A * A * D) * Fraction(1, 27)
    X = A * x0 + B * Fraction(1, 3)
    Y = A * y0
    lhs = Y**2 - X**3 - p * X - q
    rhs = A * A * (y0**2 - (A * x0**3 + B * x0**2 + C * x0 + D))
    return lhs - rhs


def verify_weierstrass_transform(fault=None) -> CheckReport:
    """Both quotient chains, from the sextic to the short Weierstrass models.

    1. sextic(u)/(1+u)^6 = cubic0(x0) with x0 = -u/(1+u)^2, and
       sextic(u)/(u-1)^6 = cubic1(x1) with x1 = u/(u-1)^2.
    2. Y^2 - X^3 - pX - q = A^2 (y^2 - cubic(x)) under X = Ax + B/3, Y = Ay.
    """
    sextic = _sextic_poly()
    diffs = {}
    details = {}
    for which, sub, den in (
        ("E0", (-u, (1 + u) ** 2), (1 + u) ** 6),
        ("E1", (u, (u - 1) ** 2), (u - 1) ** 6),
    ):
        A, B, C, D = _cubic(which, fault)
        cubic = A * x0**3 + B * x0**2 + C * x0 + D
        rhs = poly_substitute(cubic, {"x0": sub})
        diffs[f"fraction_{which}"] = fraction_identity((sextic, den), rhs)
        diffs[f"weierstrass_{which}"] = _weierstrass_diff(A, B, C, D)

    # The intermediate display ((3a-b)x0+a)^2 + 4((c-d)^2 x0^3 + cd x0^2)
    # expands to B0 = (3a-b)^2 + 4cd; record whether that variant fails.
    A0, B0, C0, D0 = _cubic("E0")
    shown = ((3 * a - b) * x0 + a) ** 2 + 4 * ((c - d) ** 2 * x0**3 + c * d * x0**2)
    shown_diff = fraction_identity(
        (sextic, (1 + u) ** 6), poly_substitute(shown, {"x0": (-u, (1 + u) ** 2)})
    )
    warnings = []
    if not shown_diff.is_zero():
        warnings.append(
            "display '+4((c-d)^2 x0^3 + cd x0^2)' fails the fraction identity; "
            "B0 = (3a-b)^2 - 4cd is the consistent coefficient"
        )
    details["display_plus_4cd"] = "consistent" if shown_diff.is_zero() else "inconsistent"
    return _report("weierstrass_transform", diffs, details, warnings)


def verify_double_x_symbolic() -> CheckReport:
    """x([2]P) closed forms as polynomial identities in a, b, c, d.

    With P = (B/3, Y), the duplication formula reads
    x(2P) * 4 Y^2 = X^4 - 2pX^2 - 8qX + p^2; cleared of denominators.
    """
    A0, B0, C0, D0, A1, B1, C1, D1 = quotient_cubic_coefficients(a, b, c, d)
    diffs = {}
    for which, (A, B, C, D), target in (
        ("E0", (A0, B0, C0, D0), B0 * Fraction(1, 3) + 4 * c * d),
        ("E1", (A1, B1, C1, D1), B1 * Fraction(1, 3) + 4 * c * d - 4 * a * b),
    ):
        p = A * C - B * B * Fraction(1, 3)
        q = (2 * B**3 - 9 * A * B * C + 27 * A * A * D) * Fraction(1, 27)
        X = B * Fraction(1, 3)
        Ysq = (A * a) ** 2
        numer = X**4 - 2 * p * X**2 - 8 * q * X + p * p
        diffs[which] = numer - target * 4 * Ysq
    return _report("double_x_symbolic", diffs)


def verify_q_image(fault=None) -> CheckReport:
    """Points over x = 0 map to P_E0 = (B0/3, A0 a); over y = 0 to (B0/3, -A0 a).

    On x = 0 the curve reads a + d y^2 = 0 and w = -d y^2; on y = 0 it reads
    a + c x^2 = 0 and w = c x^2. Binding the square s to -a/d (resp. -a/c)
    gives w = a (resp. -a), and y0 = w/(1+u)^3 = w since u = xy = 0 there.
    """
    A0 = _cubic("E0")[0]
    s = MultiPoly.var("s")
    zero = MultiPoly.const(0)
    w_xy = c * (x**2 - x * y**3) + d * (x**3 * y - y**2)
    F = family_polynomial(a, b, c, d)
    diffs = {
        "P_line": F.subs({"x": zero}) - (a + d * y**2),
        "P_w": w_xy.subs({"x": zero}) + d * y**2,
        "Q_line": F.subs({"y": zero}) - (a + c * x**2),
        "Q_w": w_xy.subs({"y": zero}) - c * x**2,
    }
    w_P = poly_substitute(-d * s, {"s": (-a, d)})
    w_Q = poly_substitute(c * s, {"s": (-a, c)})
    Y_P = (A0 * w_P[0], w_P[1])
    Y_Q = (A0 * w_Q[0], w_Q[1])
    diffs["P_image"] = fraction_identity(Y_P, (A0 * a, MultiPoly.const(1)))
    sign = 1 if fault == "q_image_sign" else -1
    diffs["Q_is_minus_P"] = fraction_identity(Y_Q, (sign * A0 * a, MultiPoly.const(1)))
    # x0 = -u/(1+u)^2 vanishes at u = 0, so both images have X = B0/3.
    diffs["x0_at_u0"] = (-u).subs({"u": zero})
    return _report("q_image", diffs)


# Expected action of (w1, id) and (w2, id) on the four components.
COMPONENT_TABLE = {
    (("w1", "id"), (1, 1)): (1, -1),
    (("w1", "id"), (-1, 1)): (-1, -1),
    (("w2", "id"), (1, 1)): (-1, 1),
    (("w2", "id"), (1, -1)): (-1, -1),
    (("w2", "id"), (-1, 1)): (1, 1),
    (("w2", "id"), (-1, -1)): (1, -1),
}


def verify_component_table(fault=None) -> CheckReport:
    """Classify every component's image under the four cosets of W^2/Sigma.

    Also checks that the diagonal Sigma fixes each component and that
    (w1, id) and (w2, id) move the components as tabulated.
    """
    labels = [ComponentLabel(l, m) for l in (1, -1) for m in (1, -1)]
    cosets = [("id", "id"), ("w1", "id"), ("w2", "id"), ("w3", "id")]
    table = {}
    ok = True
    for src in labels:
        f = component_template(src, a, b, c, d)
        if component_classify(f) != src:
            ok = False
        for diag in ("w1", "w2", "w3"):
            if component_classify(act(f, (diag, diag))) != src:
                ok = False
        for g in cosets:
            label, params = translate_symbolic(src, g)
            table[f"{g[0]}*C{src}"] = str(label)
            if label is None:
                ok = False
            expected = COMPONENT_TABLE.get((g, (src.lam, src.mu)))
            if fault == "component_table" and expected is not None:
                expected = (expected[0], -expected[1])
            if expected is not None and (label.lam, label.mu) != expected:
                ok = False
    images = {table[f"{g[0]}*C{MAIN_COMPONENT}"] for g in cosets}
    transitive = len(images) == 4
    details = {"table": table, "transitive_on_components": transitive}
    # (w1, id) on the main component sends (a,b,c,d) to (a,-b,c,d)
    _, params = translate_symbolic(MAIN_COMPONENT, ("w1", "id"))
    details["w1_image_params"] = [str(p) for p in params]
    sign_ok = list(params) == [a, -b, c, d]
    passed = ok and transitive and sign_ok
    return CheckReport("component_table", passed, details, difference="0" if passed else "table mismatch")


def verify_eplus_eminus_template(fault=None) -> CheckReport:
    """v = y(1/x +- 1/x^2) turns y^2 = prod(x^2 - al_i x + 1) into (u +- 2) prod(u - al_i).

    Here u = x + 1/x. Both sides are rational in x; we cross-multiply.
    Also checks that v is invariant under (x, y) -> (1/x, +- y/x^3).
    """
    al = MultiPoly.vars("al1 al2 al3")
    ysq = MultiPoly.const(1)
    for ai in al:
        ysq = ysq * (x**2 - ai * x + 1)
    diffs = {}
    warnings = []
    for tag, sgn in (("E+", 1), ("E-", -1)):
        # (1/x + sgn/x^2)^2 = (x + sgn)^2 / x^4
        lhs = (ysq * (x + sgn) ** 2, x**4)
        shift = 2 * sgn if fault != "eplus_shift" else -2 * sgn
        rhs_u = u + shift
        for ai in al:
            rhs_u = rhs_u * (u - ai)
        rhs = poly_substitute(rhs_u, {"u": (x**2 + 1, x)})
        diffs[tag] = fraction_identity(lhs, rhs)
        # the displayed middle expression carries an extra x^3
        shown = (x**3 * ysq * (x + sgn) ** 2, x**4)
        if not fraction_identity(shown, rhs).is_zero():
            warnings.append(f"{tag}: extra factor x^3 in the displayed middle term")
        # v = y (x + sgn)/x^2 under (x, y) -> (1/x, sgn y/x^3): the y factor
        # contributes sgn/x^3, and (x + sgn)/x^2 becomes (1 + sgn x) x / 1.
        img = (sgn * (1 + sgn * x) * x, x**3)
        diffs[f"{tag}_invariant"] = fraction_identity(img, (x + sgn, x**2))
    return _report("eplus_eminus_template", diffs, warnings=sorted(set(warnings)))


def verify_normal_form_involution() -> CheckReport:
    """tau(u, w) = (1/u, w/u^3) preserves w^2 = sextic(u) (sextic is palindromic)."""
    sextic = _sextic_poly()
    img = poly_substitute(sextic, {"u": (MultiPoly.const(1), u)})
    # (w/u^3)^2 = sextic(1/u)  <=>  sextic(u)/u^6 = sextic(1/u)
    return _report("normal_form_involution", fraction_identity((sextic, u**6), img))


def verify_riemann_hurwitz(fault=None) -> CheckReport:
    """The two genus computations: C -> C/sigma_i and y^5 = x^3 - 1 -> P^1."""
    ram = 2 if fault != "riemann_hurwitz" else 4
    try:
        base = riemann_hurwitz_base_genus(4, 2, ram)
    except NonIntegralGenus:
        base = None
    cover = riemann_hurwitz_genus(0, 5, 16)
    passed = base == 2 and cover == 4
    return CheckReport(
        "riemann_hurwitz",
        passed,
        {"quotient_genus": base, "cm_curve_genus": cover},
        difference="0" if passed else f"genera ({base}, {cover}) != (2, 4)",
    )


def run_all(fault=None) -> list[CheckReport]:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {FAULTS}")
    return [
        verify_sextic_identity(fault),
        verify_w_substitution(),
        verify_normal_form_involution(),
        verify_weierstrass_transform(fault),
        verify_double_x_symbolic(),
        verify_q_image(fault),
        verify_component_table(fault),
        verify_eplus_eminus_template(fault),
        verify_riemann_hurwitz(fault),
    ]
