"""Single-curve analysis reports and parameter-scan rows.

Everything here reduces to plain JSON types (exact rationals as "num/den"
strings, heights as floats) so reports round-trip through json unchanged.
"""

from __future__ import annotations

import decimal
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .elliptic import EllipticCurve, canonical_height, is_torsion
from .errors import DegenerateParameters, SingularCurve
from .exactmath import format_rational
from .family import (
    Genus4Params,
    check_double_x_formula,
    component_classify,
    elliptic_quotients,
    genus2_model,
    make_curve,
    xi_image,
    xi_projection,
)

DECIMAL_DIGITS = 15

CSV_COLUMNS = [
    "a", "b", "c", "d", "lambda", "mu",
    "p0", "q0", "p1", "q1", "j0", "j1",
    "h0", "h0_err", "h1", "h1_err",
    "tors0", "tors1", "degenerate",
]


def render_decimal(value: Fraction, digits: int = DECIMAL_DIGITS) -> str:
    """Round an exact rational to ``digits`` significant digits."""
    ctx = decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)
    return str(ctx.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator)))


@dataclass
class AnalysisReport:
    params: dict
    component: Optional[dict]
    quotient: dict
    curves: dict
    xi_points: dict
    xi_images: dict
    heights: dict
    torsion: dict
    checks: dict
    decimal_digits: int = DECIMAL_DIGITS
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisReport:
        return cls(**data)

    def csv_row(self) -> dict:
        p = self.params
        comp = self.component or {"lambda": "", "mu": ""}
        q = self.quotient
        return {
            "a": p["a"], "b": p["b"], "c": p["c"], "d": p["d"],
            "lambda": comp["lambda"], "mu": comp["mu"],
            "p0": q["p0"], "q0": q["q0"], "p1": q["p1"], "q1": q["q1"],
            "j0": self.curves["E0"]["j"], "j1": self.curves["E1"]["j"],
            "h0": self.heights["E0"]["value"], "h0_err": self.heights["E0"]["error_bound"],
            "h1": self.heights["E1"]["value"], "h1_err": self.heights["E1"]["error_bound"],
            "tors0": self.torsion["E0"]["is_torsion"], "tors1": self.torsion["E1"]["is_torsion"],
            "degenerate": self.checks["degenerate_cd0"] or self.checks["degenerate_ab_eq_cd"],
        }


def analyze(params: Genus4Params, height_iters: int = 12, tolerance: float = 1e-6) -> AnalysisReport:
    """Run the whole pipeline on one parameter tuple.

    Raises DegenerateParameters or SingularQuotient for tuples outside the
    usable locus.
    """
    curve = make_curve(params)
    E0, E1 = elliptic_quotients(curve)
    curves, points, images, heights, torsion, checks = {}, {}, {}, {}, {}, {}
    warnings = []
    for name, E in (("E0", E0), ("E1", E1)):
        j = E.j_invariant()
        curves[name] = {
            **E.to_dict(),
            "discriminant": format_rational(E.discriminant()),
            "j": format_rational(j),
            "j_decimal": render_decimal(j),
        }
        P = xi_projection(curve, name)
        points[name] = P.to_dict()
        images[name] = xi_image(curve, name).to_dict()
        tors, order = is_torsion(E, P)
        torsion[name] = {"is_torsion": tors, "order": order}
        heights[name] = canonical_height(E, P, height_iters, tolerance).to_dict()
        checks[f"on_curve_{name}"] = E.on_curve(P)
        if P.y != 0:
            rep = check_double_x_formula(curve, name)
            checks[f"double_x_{name}"] = rep.passed
            warnings.extend(rep.warnings)
        else:
            checks[f"double_x_{name}"] = None
    sextic = genus2_model(curve)
    checks["sextic_discriminant_nonzero"] = sextic.discriminant() != 0
    checks["degenerate_cd0"] = curve.degenerate_cd
    checks["degenerate_ab_eq_cd"] = curve.degenerate_ab_cd
    label = component_classify(curve.F)
    return AnalysisReport(
        params=params.to_dict(),
        component=label.to_dict() if label else None,
        quotient=curve.quotient.to_dict(),
        curves=curves,
        xi_points=points,
        xi_images=images,
        heights=heights,
        torsion=torsion,
        checks=checks,
        warnings=warnings,
    )


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScanSettings:
    height_iters: int = 8
    tolerance: float = 1e-6


def scan_row(values: tuple[int, int, int, int], settings: ScanSettings = ScanSettings()) -> Optional[dict]:
    """CSV-ready row for one integer tuple, or None if the tuple is skipped.

    A tuple is skipped when E0 is unavailable (all-zero, c = d, or singular).
    If only E1 is unavailable, (a+b)^2 = (c+d)^2 being the usual cause, the
    row is kept with empty E1 columns and ``degenerate`` set.
    """
    try:
        curve = make_curve(Genus4Params(*values), quotients=("E0",))
    except DegenerateParameters:
        return None
    q = curve.quotient
    try:
        E0 = EllipticCurve(q.p0, q.q0)
    except SingularCurve:
        return None
    try:
        E1 = EllipticCurve(q.p1, q.q1) if q.A1 != 0 else None
    except SingularCurve:
        E1 = None
    row = {k: format_rational(Fraction(v)) for k, v in zip("abcd", values)}
    label = component_classify(curve.F)
    row["lambda"], row["mu"] = label.lam, label.mu
    row.update(
        p0=format_rational(q.p0), q0=format_rational(q.q0),
        p1=format_rational(q.p1), q1=format_rational(q.q1),
    )
    for idx, (name, E) in enumerate((("E0", E0), ("E1", E1))):
        if E is None:
            row.update({f"j{idx}": "", f"h{idx}": "", f"h{idx}_err": "", f"tors{idx}": ""})
            continue
        P = xi_projection(curve, name)
        h = canonical_height(E, P, settings.height_iters, settings.tolerance)
        row[f"j{idx}"] = format_rational(E.j_invariant())
        row[f"h{idx}"] = h.value
        row[f"h{idx}_err"] = h.error_bound
        row[f"tors{idx}"] = is_torsion(E, P)[0]
    row["degenerate"] = curve.degenerate_cd or curve.degenerate_ab_cd or E1 is None
    return {k: row[k] for k in CSV_COLUMNS}


def _scan_row_star(args):
    return scan_row(*args)


def box(ranges) -> Iterable[tuple[int, int, int, int]]:
    """Integer tuples of the box, in lexicographic order."""
    return itertools.product(*(range(lo, hi + 1) for lo, hi in ranges))


def box_size(ranges) -> int:
    size = 1
    for lo, hi in ranges:
        size *= max(0, hi - lo + 1)
    return size


def run_scan(ranges, settings: ScanSettings = ScanSettings(), parallel: int = 1):
    """Evaluate every tuple of the box; returns (rows, skipped_count).

    Rows come back in lexicographic parameter order for any ``parallel``.
    """
    tuples = list(box(ranges))
    work = [(t, settings) for t in tuples]
    if parallel > 1 and len(work) > 1:
        chunk = max(1, len(work) // (parallel * 8))
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_scan_row_star, work, chunksize=chunk))
    else:
        results = [_scan_row_star(w) for w in work]
    rows = [r for r in results if r is not None]
    return rows, len(results) - len(rows)
