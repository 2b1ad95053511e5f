"""Assembly of adjusted predegree polynomials and derived orbit data.

The adjusted predegree polynomial of a curve is
exp(d*H) * (1 + sum of global corrections) * product of local factors,
where global corrections (lines, nonlinear components) combine
additively and local factors multiplicatively; both compositions agree
for the local terms because their orders are at least 6.

From the polynomial the report reads off the predegree coefficients
a_i = i! * c_i, the orbit dimension (largest i with a_i nonzero), the
predegree a_dim, and, when a stabilizer degree is supplied, the degree
of the orbit closure itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from . import corrections, model
from .corrections import Correction
from .series import KJet2, TruncSeries, exp_linear, rational_to_string

F = Fraction


class EngineError(Exception):
    """A computation could not be carried out on the given data."""


class ValidationError(EngineError):
    """The descriptor failed validation; carries the violation list."""

    def __init__(self, violations: Sequence[model.Violation]):
        self.violations = tuple(violations)
        summary = "; ".join(str(v) for v in violations)
        super().__init__(f"invalid descriptor: {summary}")


#: Factor per transversal intersection of two nonlinear components.
PAIR_CROSSING_FACTOR = TruncSeries.from_terms(
    {0: 1, 6: F(-1, 9), 7: F(11, 40), 8: F(-311, 960)}
)
#: Factor per transversal intersection of a nonlinear component and a line.
LINE_CROSSING_FACTOR = TruncSeries.from_terms(
    {0: 1, 6: F(-1, 24), 7: F(7, 60), 8: F(-13, 80)}
)
#: Factor per point of simple tangency of a line with a curve.
SIMPLE_TANGENCY_FACTOR = TruncSeries.from_terms(
    {0: 1, 6: F(-1, 6), 7: F(7, 15), 8: F(-13, 20)}
)

_ERRATUM_NOTE = (
    "strict mode: the ordinary-inflection factor uses the circulated H^6 "
    "coefficient -1/42 instead of the derived -1/48; golden values that "
    "depend on inflection counts will not be reproduced"
)


@dataclass(frozen=True)
class OrbitReport:
    """Everything the computation yields for one curve."""

    app: TruncSeries
    predegree_polynomial: tuple[Fraction, ...]
    orbit_dimension: int
    predegree: Fraction
    degree: Optional[Fraction]
    breakdown: tuple[tuple[str, Correction], ...]
    erratum_notes: tuple[str, ...] = ()


def _build_report(
    app: TruncSeries,
    breakdown: Sequence[tuple[str, Correction]],
    stabilizer_degree: Optional[int],
    erratum_notes: tuple[str, ...] = (),
) -> OrbitReport:
    coefficients = app.app_coefficients()
    dimension = 0
    for i, a in enumerate(coefficients):
        if a != 0:
            dimension = i
    predegree = coefficients[dimension]
    degree: Optional[Fraction] = None
    if stabilizer_degree is not None:
        degree = predegree / stabilizer_degree
        if degree.denominator != 1 or degree <= 0:
            raise EngineError(
                f"stabilizer degree {stabilizer_degree} does not divide the predegree "
                f"{rational_to_string(predegree)} into a positive integer"
            )
    return OrbitReport(
        app=app,
        predegree_polynomial=coefficients,
        orbit_dimension=dimension,
        predegree=predegree,
        degree=degree,
        breakdown=tuple(breakdown),
        erratum_notes=erratum_notes,
    )


def _feature_label(feature: model.PointFeature, index: int) -> str:
    return feature.label if feature.label is not None else f"points[{index}]"


def _feature_corrections(
    feature: model.PointFeature, index: int, erratum_strict: bool
) -> list[tuple[str, Correction]]:
    label = _feature_label(feature, index)
    out: list[tuple[str, Correction]] = []
    if isinstance(feature, model.FlexPoint):
        if erratum_strict and feature.contact == 3:
            factor = corrections.flex_factor(printed=True)
        else:
            factor = corrections.irreducible_singularity_factor(
                model.IrreducibleSingularity(1, feature.contact)
            )
        out.append((label, Correction(corrections.KIND_FLEX, factor - TruncSeries.one())))
    elif isinstance(feature, model.IrreduciblePoint):
        factor = corrections.irreducible_singularity_factor(feature.singularity)
        out.append((label, Correction(corrections.KIND_IRREDUCIBLE, factor - TruncSeries.one())))
    else:
        if feature.tangent_cone is not None:
            out.append(
                (f"{label}.tangent_cone", corrections.tangent_cone_correction(feature.tangent_cone.line_mults))
            )
        for i, side in enumerate(feature.sides):
            if side.suppress:
                continue
            out.append((f"{label}.sides[{i}]", corrections.newton_side_correction(side)))
        for i, trunc in enumerate(feature.truncations):
            out.append((f"{label}.truncations[{i}]", corrections.truncation_correction(trunc)))
    return out


def assemble(descriptor: model.CurveDescriptor, *, erratum_strict: bool = False) -> OrbitReport:
    """Compute the orbit report of a curve from its descriptor.

    Raises ValidationError when the descriptor breaks an invariant and
    EngineError when a supplied stabilizer degree does not divide the
    predegree.
    """
    violations = model.validate(descriptor)
    if violations:
        raise ValidationError(violations)
    d = descriptor.degree
    breakdown: list[tuple[str, Correction]] = []

    global_sum = TruncSeries.zero()
    for i, line in enumerate(descriptor.linear):
        corr = corrections.line_correction(line.mult, line.meets, d)
        breakdown.append((f"linear[{i}]", corr))
        global_sum = global_sum + corr.term
    for i, comp in enumerate(descriptor.nonlinear):
        corr = corrections.nonlinear_correction(d, comp.deg, comp.mult)
        breakdown.append((f"nonlinear[{i}]", corr))
        global_sum = global_sum + corr.term

    app = exp_linear(d) * (TruncSeries.one() + global_sum)

    flex_in_use = False
    for i, feature in enumerate(descriptor.points):
        if isinstance(feature, model.FlexPoint) and feature.contact == 3:
            flex_in_use = True
        for label, corr in _feature_corrections(feature, i, erratum_strict):
            breakdown.append((label, corr))
            app = app * (TruncSeries.one() + corr.term)

    count = model.resolved_flex_count(descriptor)
    if count:
        flex_in_use = True
        factor = corrections.flex_equivalent(count, printed=erratum_strict)
        breakdown.append(("ordinary_flexes", Correction(corrections.KIND_FLEX, factor - TruncSeries.one())))
        app = app * factor

    notes = (_ERRATUM_NOTE,) if erratum_strict and flex_in_use else ()
    return _build_report(app, breakdown, descriptor.stabilizer_degree, notes)


def union(
    left: OrbitReport,
    right: OrbitReport,
    crossings: int = 0,
    line_crossings: int = 0,
    tangencies: int = 0,
    stabilizer_degree: Optional[int] = None,
) -> OrbitReport:
    """Report for the union of two reduced curves meeting transversally at
    nonsingular non-inflection points (plus optional simple tangencies).

    `crossings` counts nonlinear-with-nonlinear intersections,
    `line_crossings` nonlinear-with-line intersections.  The geometric
    preconditions are the caller's responsibility.
    """
    if min(crossings, line_crossings, tangencies) < 0:
        raise EngineError("intersection counts must be >= 0")
    app = left.app * right.app
    breakdown = [(f"left.{label}", corr) for label, corr in left.breakdown]
    breakdown += [(f"right.{label}", corr) for label, corr in right.breakdown]
    for count, factor, label in (
        (crossings, PAIR_CROSSING_FACTOR, "crossings"),
        (line_crossings, LINE_CROSSING_FACTOR, "line_crossings"),
        (tangencies, SIMPLE_TANGENCY_FACTOR, "tangencies"),
    ):
        if count:
            piece = factor**count
            app = app * piece
            breakdown.append((label, Correction(corrections.KIND_LOCAL, piece - TruncSeries.one())))
    notes = tuple(dict.fromkeys(left.erratum_notes + right.erratum_notes))
    return _build_report(app, breakdown, stabilizer_degree, notes)


def scale(report: OrbitReport, multiple: int, stabilizer_degree: Optional[int] = None) -> OrbitReport:
    """Report for the m-fold multiple of a curve: H is replaced by m*H.

    The stabilizer of the multiple need not match the original curve's,
    so the degree field is only populated when a stabilizer degree is
    passed explicitly.
    """
    app = report.app.substitute_scaled(multiple)
    breakdown = [
        (label, Correction(corr.kind, corr.term.substitute_scaled(multiple)))
        for label, corr in report.breakdown
    ]
    return _build_report(app, breakdown, stabilizer_degree, report.erratum_notes)


# ---------------------------------------------------------------------------
# direct route to the top coefficient
# ---------------------------------------------------------------------------


def _direct_line(d: int, m: int, meets: Sequence[int]) -> Fraction:
    r3 = sum(r**3 for r in meets)
    r4 = sum(r**4 for r in meets)
    r5 = sum(r**5 for r in meets)
    return F(
        m**3
        * (
            d**3 * (10 * d**2 - 15 * d * m + 6 * m**2)
            + 10 * (28 * d**2 - 48 * d * m + 21 * m**2) * ((d - m) ** 3 - r3)
            - 45 * (8 * d - 7 * m) * ((d - m) ** 4 - r4)
            + 126 * ((d - m) ** 5 - r5)
        )
    )


def _direct_nonlinear(d: int, e: int, m: int) -> Fraction:
    return F(16 * d * e * m**5 * (7 * d**2 - 18 * d * m + 12 * m**2))


def _direct_tangent_cone(d: int, line_mults: Sequence[int]) -> Fraction:
    es = corrections._elementary_symmetric(line_mults, 5)
    e1 = es[1]
    return F(30 * e1 * (es[2] * es[3] - e1 * es[4] - es[5]) * (28 * d**2 - 48 * d * e1 + 21 * e1**2))


def _direct_side_vertex_polynomial(j0: int, k0: int, j1: int, k1: int, d: int) -> int:
    return (
        90 * j0**4 * k0**2
        + 180 * j0**3 * k0**3
        + 90 * j0**2 * k0**4
        + 60 * j0**3 * k0**2 * j1
        + 90 * j0**2 * k0**3 * j1
        + 30 * j0 * k0**4 * j1
        + 36 * j0**2 * k0**2 * j1**2
        + 36 * j0 * k0**3 * j1**2
        + 6 * k0**4 * j1**2
        + 18 * j0 * k0**2 * j1**3
        + 9 * k0**3 * j1**3
        + 6 * k0**2 * j1**4
        - 240 * j0**3 * k0**2 * d
        - 240 * j0**2 * k0**3 * d
        - 144 * j0**2 * k0**2 * j1 * d
        - 96 * j0 * k0**3 * j1 * d
        - 72 * j0 * k0**2 * j1**2 * d
        - 24 * k0**3 * j1**2 * d
        - 24 * k0**2 * j1**3 * d
        + 168 * j0**2 * k0**2 * d**2
        + 84 * j0 * k0**2 * j1 * d**2
        + 28 * k0**2 * j1**2 * d**2
        + 30 * j0**4 * k0 * k1
        + 90 * j0**3 * k0**2 * k1
        + 60 * j0**2 * k0**3 * k1
        + 48 * j0**3 * k0 * j1 * k1
        + 108 * j0**2 * k0**2 * j1 * k1
        + 48 * j0 * k0**3 * j1 * k1
        + 54 * j0**2 * k0 * j1**2 * k1
        + 81 * j0 * k0**2 * j1**2 * k1
        + 18 * k0**3 * j1**2 * k1
        + 48 * j0 * k0 * j1**3 * k1
        + 36 * k0**2 * j1**3 * k1
        + 30 * k0 * j1**4 * k1
        - 96 * j0**3 * k0 * d * k1
        - 144 * j0**2 * k0**2 * d * k1
        - 144 * j0**2 * k0 * j1 * d * k1
        - 144 * j0 * k0**2 * j1 * d * k1
        - 144 * j0 * k0 * j1**2 * d * k1
        - 72 * k0**2 * j1**2 * d * k1
        - 96 * k0 * j1**3 * d * k1
        + 84 * j0**2 * k0 * d**2 * k1
        + 112 * j0 * k0 * j1 * d**2 * k1
        + 84 * k0 * j1**2 * d**2 * k1
        + 6 * j0**4 * k1**2
        + 36 * j0**3 * k0 * k1**2
        + 36 * j0**2 * k0**2 * k1**2
        + 18 * j0**3 * j1 * k1**2
        + 81 * j0**2 * k0 * j1 * k1**2
        + 54 * j0 * k0**2 * j1 * k1**2
        + 36 * j0**2 * j1**2 * k1**2
        + 108 * j0 * k0 * j1**2 * k1**2
        + 36 * k0**2 * j1**2 * k1**2
        + 60 * j0 * j1**3 * k1**2
        + 90 * k0 * j1**3 * k1**2
        + 90 * j1**4 * k1**2
        - 24 * j0**3 * d * k1**2
        - 72 * j0**2 * k0 * d * k1**2
        - 72 * j0**2 * j1 * d * k1**2
        - 144 * j0 * k0 * j1 * d * k1**2
        - 144 * j0 * j1**2 * d * k1**2
        - 144 * k0 * j1**2 * d * k1**2
        - 240 * j1**3 * d * k1**2
        + 28 * j0**2 * d**2 * k1**2
        + 84 * j0 * j1 * d**2 * k1**2
        + 168 * j1**2 * d**2 * k1**2
        + 9 * j0**3 * k1**3
        + 18 * j0**2 * k0 * k1**3
        + 36 * j0**2 * j1 * k1**3
        + 48 * j0 * k0 * j1 * k1**3
        + 90 * j0 * j1**2 * k1**3
        + 60 * k0 * j1**2 * k1**3
        + 180 * j1**3 * k1**3
        - 24 * j0**2 * d * k1**3
        - 96 * j0 * j1 * d * k1**3
        - 240 * j1**2 * d * k1**3
        + 6 * j0**2 * k1**4
        + 30 * j0 * j1 * k1**4
        + 90 * j1**2 * k1**4
    )


def _direct_side(d: int, j0: int, k0: int, j1: int, k1: int, s: Sequence[int]) -> Fraction:
    area2 = j1 * k0 - j0 * k1
    span = gcd(j1 - j0, k0 - k1)
    p5 = sum(v**5 for v in s)
    p6 = sum(v**6 for v in s)
    p7 = sum(v**7 for v in s)
    vertex_part = area2 * _direct_side_vertex_polynomial(j0, k0, j1, k1, d)
    root_part = F(16 * area2, span) * (7 * d**2 * p5 - 18 * d * p6 + 12 * p7)
    return vertex_part - root_part


def _direct_truncation(d: int, trunc: model.Truncation) -> Fraction:
    total = sum(trunc.s)
    p5 = sum(v**5 for v in trunc.s)
    p6 = sum(v**6 for v in trunc.s)
    p7 = sum(v**7 for v in trunc.s)
    return (
        trunc.ell
        * trunc.weight
        * (192 * (total**7 - p7) - 288 * d * (total**6 - p6) + 112 * d**2 * (total**5 - p5))
    )


def irreducible_truncations(sing: model.IrreducibleSingularity) -> list[model.Truncation]:
    """The truncation features through which an irreducible singularity
    contributes, one per essential exponent past the initial grouping."""
    chain = sing.gcd_chain()
    es = sing.essential
    out: list[model.Truncation] = []
    if es and sing.n % sing.m == 0:
        out.append(model.Truncation(ell=1, weight=F(es[0]), s=(chain[1],) * (sing.m // chain[1])))
    for j in range(2, len(es) + 1):
        weight = F(
            sum((chain[t - 1] - chain[t]) * es[t - 1] for t in range(1, j)) + chain[j - 1] * es[j - 1],
            sing.m,
        )
        out.append(
            model.Truncation(
                ell=sing.m // chain[j - 1],
                weight=weight,
                s=(chain[j],) * (chain[j - 1] // chain[j]),
            )
        )
    return out


def _direct_top_coefficient(descriptor: model.CurveDescriptor) -> Fraction:
    """d^8 minus the direct per-feature top-coefficient contributions.

    Evaluated from closed-form integer expressions, independently of the
    series assembly; equals 8! times the H^8 coefficient of the
    adjusted predegree polynomial for every valid descriptor.
    """
    d = descriptor.degree
    total = F(d**8)
    for line in descriptor.linear:
        total -= _direct_line(d, line.mult, line.meets)
    for comp in descriptor.nonlinear:
        total -= _direct_nonlinear(d, comp.deg, comp.mult)
    for feature in descriptor.points:
        if isinstance(feature, model.FlexPoint):
            total -= _direct_side(d, 0, 1, feature.contact, 0, (1,))
        elif isinstance(feature, model.IrreduciblePoint):
            sing = feature.singularity
            total -= _direct_side(d, 0, sing.m, sing.n, 0, (gcd(sing.m, sing.n),))
            for trunc in irreducible_truncations(sing):
                total -= _direct_truncation(d, trunc)
        else:
            if feature.tangent_cone is not None:
                total -= _direct_tangent_cone(d, feature.tangent_cone.line_mults)
            for side in feature.sides:
                if not side.suppress:
                    total -= _direct_side(d, side.j0, side.k0, side.j1, side.k1, side.s)
            for trunc in feature.truncations:
                total -= _direct_truncation(d, trunc)
    count = model.resolved_flex_count(descriptor)
    if count:
        total -= count * _direct_side(d, 0, 1, 3, 0, (1,))
    return total


def predegree_direct(descriptor: model.CurveDescriptor) -> int:
    """The predegree by direct summation of top-coefficient contributions.

    Only applicable when the orbit has dimension 8 (checked by running
    the assembly); serves as an end-to-end cross-check of `assemble`.
    """
    violations = model.validate(descriptor)
    if violations:
        raise ValidationError(violations)
    report = assemble(descriptor)
    if report.orbit_dimension < 8:
        raise EngineError(
            f"direct formula inapplicable: orbit dimension is {report.orbit_dimension}, not 8"
        )
    value = _direct_top_coefficient(descriptor)
    if value.denominator != 1:
        raise EngineError(f"direct route produced a non-integer value {value}")
    return int(value)


# ---------------------------------------------------------------------------
# closed form for curves whose special points are parametrized (t^m, t^n)
# ---------------------------------------------------------------------------


def predegree_from_cusp_types(degree: int, points: Sequence[tuple[int, int]]) -> int:
    """Predegree of a reduced line-free curve whose special points are all
    parametrized as (t^m, t^n) with coprime exponents (ordinary flexes
    being the (1, k) cases), assuming the orbit has dimension 8.

    Each point enters through the order-2 jet of
    m*n*(m^2 n^2/((1+mk)^3 (1+nk)^3) - 4/((1+k)^3 (1+2k)^3)); ordinary
    flexes not listed explicitly are budgeted automatically as (1, 3)
    points, 3d(d-2) minus the absorbed count.
    """
    d = degree
    for m, n in points:
        if m < 1 or n <= m or gcd(m, n) != 1:
            raise EngineError(f"({m}, {n}) is not a coprime multiplicity/contact pair")
    remaining = 3 * d * (d - 2) - sum(3 * m * n - 2 * m - 2 * n for m, n in points)
    if remaining < 0:
        raise EngineError("absorbed flexes exceed the 3d(d-2) budget")
    jet = 4 * d * d * (KJet2.inverse_cube(1) * KJet2.inverse_cube(2))
    for m, n in points:
        jet = jet + m * n * corrections.pair_jet(m, n)
    if remaining:
        jet = jet + remaining * 3 * corrections.pair_jet(1, 3)
    envelope = KJet2((1, 8 * d, 28 * d * d))
    value = F(d**8) - (envelope * jet).coeffs[2]
    if value.denominator != 1:
        raise EngineError(f"closed form produced a non-integer value {value}")
    return int(value)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def report_to_obj(report: OrbitReport) -> dict:
    """JSON-ready form of a report, with all rationals as exact strings."""
    out: dict[str, object] = {
        "app": report.app.to_strings(),
        "predegree_polynomial": [rational_to_string(a) for a in report.predegree_polynomial],
        "orbit_dimension": report.orbit_dimension,
        "predegree": rational_to_string(report.predegree),
    }
    if report.degree is not None:
        out["degree"] = rational_to_string(report.degree)
    out["breakdown"] = [
        {"label": label, "kind": corr.kind, "term": corr.term.to_strings()}
        for label, corr in report.breakdown
    ]
    if report.erratum_notes:
        out["erratum_notes"] = list(report.erratum_notes)
    return out


def report_to_text(report: OrbitReport) -> str:
    """Human-readable rendering of a report."""
    lines = [
        f"adjusted predegree polynomial: {report.app}",
        "predegree coefficients: "
        + ", ".join(
            f"a{i}={rational_to_string(a)}" for i, a in enumerate(report.predegree_polynomial)
        ),
        f"orbit dimension: {report.orbit_dimension}",
        f"predegree: {rational_to_string(report.predegree)}",
    ]
    if report.degree is not None:
        lines.append(f"orbit closure degree: {rational_to_string(report.degree)}")
    if report.breakdown:
        lines.append("contributions:")
        for label, corr in report.breakdown:
            lines.append(f"  {label} [{corr.kind}]: {corr.term}")
    for note in report.erratum_notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
