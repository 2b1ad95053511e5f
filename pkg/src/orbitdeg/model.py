"""Curve descriptors: data model, validation rules, and the JSON input format.

A descriptor records the discrete data of a plane curve that the degree
computation consumes: the global components (lines and higher-degree
components with their multiplicities), and per-point local features
(inflection contact orders, irreducible singularities given by their
characteristic exponents, or composite features given by tangent-cone
multiplicities, polygon sides, and branch truncations).  Points are
abstract labels; no coordinates are stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Optional, Union

from .series import rational_to_string, to_rational

AUTO_FLEXES = "auto"


class DescriptorError(Exception):
    """Base class for descriptor ingestion failures."""


class DescriptorParseError(DescriptorError):
    """The input is not valid JSON; carries line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class DescriptorSchemaError(DescriptorError):
    """The JSON is well-formed but does not match the descriptor schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class Violation:
    """A single validation failure: which field, and what rule it breaks."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


@dataclass(frozen=True)
class LinearComponent:
    """A line in the curve, with its multiplicity and the multiplicities
    of the points where it meets the rest of the curve."""

    mult: int
    meets: tuple[int, ...] = ()


@dataclass(frozen=True)
class NonlinearComponent:
    """A component of degree >= 2 with its multiplicity."""

    deg: int
    mult: int = 1


@dataclass(frozen=True)
class TangentCone:
    """Multiplicities of the distinct lines in the tangent cone at a point."""

    line_mults: tuple[int, ...]


@dataclass(frozen=True)
class NewtonSide:
    """A polygon side from (j0, k0) to (j1, k1) with the root
    multiplicities of its side polynomial.

    Only sides of slope strictly between -1 and 0 qualify; `suppress`
    opts a side out of the computation without deleting it from the
    descriptor.
    """

    j0: int
    k0: int
    j1: int
    k1: int
    s: tuple[int, ...]
    suppress: bool = False

    def span(self) -> int:
        """Number of lattice steps along the side (= expected sum of s)."""
        return gcd(abs(self.j1 - self.j0), abs(self.k0 - self.k1))


@dataclass(frozen=True)
class Truncation:
    """A branch-truncation feature: denominator-clearing exponent `ell`,
    rational weight, and the multiplicities of the limit conics."""

    ell: int
    weight: Fraction
    s: tuple[int, ...]


@dataclass(frozen=True)
class IrreducibleSingularity:
    """An irreducible (one-branch) singularity.

    `m` is the multiplicity, `n` the contact order with the branch
    tangent, and `essential` the strictly increasing exponents that are
    not multiples of the running gcd.  `essential` may be empty.
    """

    m: int
    n: int
    essential: tuple[int, ...] = ()

    def gcd_chain(self) -> tuple[int, ...]:
        """The chain d_0 = m, d_j = gcd(d_{j-1}, e_j)."""
        chain = [self.m]
        for e in self.essential:
            chain.append(gcd(chain[-1], e))
        return tuple(chain)

    def absorbed_flex_count(self) -> int:
        """How many ordinary inflections the singularity uses up.

        Evaluates (3mn - 2m - 2n) + 3 * sum (e_{j+1} - e_j)(d_j - 1)
        with e_0 = n and e_{r+1} = 0.
        """
        m, n = self.m, self.n
        chain = self.gcd_chain()
        exponents = (n,) + self.essential + (0,)
        total = 3 * m * n - 2 * m - 2 * n
        for j in range(len(self.essential) + 1):
            total += 3 * (exponents[j + 1] - exponents[j]) * (chain[j] - 1)
        return total


@dataclass(frozen=True)
class FlexPoint:
    """A nonsingular point where the tangent meets the curve with the
    given contact order (>= 3)."""

    contact: int
    label: Optional[str] = None


@dataclass(frozen=True)
class IrreduciblePoint:
    singularity: IrreducibleSingularity
    label: Optional[str] = None


@dataclass(frozen=True)
class CompositePoint:
    """A point feature assembled from raw local data: an optional tangent
    cone, polygon sides, truncations, and a user-supplied count of
    absorbed inflections."""

    tangent_cone: Optional[TangentCone] = None
    sides: tuple[NewtonSide, ...] = ()
    truncations: tuple[Truncation, ...] = ()
    absorbed_flexes: int = 0
    label: Optional[str] = None


PointFeature = Union[FlexPoint, IrreduciblePoint, CompositePoint]


@dataclass(frozen=True)
class CurveDescriptor:
    degree: int
    linear: tuple[LinearComponent, ...] = ()
    nonlinear: tuple[NonlinearComponent, ...] = ()
    points: tuple[PointFeature, ...] = ()
    flexes: Union[int, str] = 0
    stabilizer_degree: Optional[int] = None

    def flexes_auto(self) -> bool:
        return self.flexes == AUTO_FLEXES


def absorbed_flexes(feature: PointFeature) -> int:
    """The number of ordinary inflections a feature removes from the budget."""
    if isinstance(feature, FlexPoint):
        return feature.contact - 2
    if isinstance(feature, IrreduciblePoint):
        return feature.singularity.absorbed_flex_count()
    return feature.absorbed_flexes


def resolved_flex_count(descriptor: CurveDescriptor) -> int:
    """The ordinary-flex count: the explicit value, or 3d(d-2) minus all
    absorbed flexes when the descriptor asks for automatic bookkeeping."""
    if not descriptor.flexes_auto():
        assert isinstance(descriptor.flexes, int)
        return descriptor.flexes
    d = descriptor.degree
    budget = 3 * d * (d - 2)
    return budget - sum(absorbed_flexes(p) for p in descriptor.points)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def irreducible_violations(sing: IrreducibleSingularity, path: str = "singularity") -> list[Violation]:
    """Invariant checks for a one-branch singularity (empty list = valid)."""
    out: list[Violation] = []
    _validate_irreducible(sing, path, out)
    return out


def side_violations(side: NewtonSide, path: str = "side") -> list[Violation]:
    """Invariant checks for a polygon side (empty list = valid)."""
    out: list[Violation] = []
    _validate_side(side, path, out)
    return out


def truncation_violations(trunc: Truncation, path: str = "truncation") -> list[Violation]:
    """Invariant checks for a truncation feature (empty list = valid)."""
    out: list[Violation] = []
    _validate_truncation(trunc, path, out)
    return out


def _validate_irreducible(sing: IrreducibleSingularity, path: str, out: list[Violation]) -> None:
    if sing.m < 1:
        out.append(Violation(f"{path}.m", "multiplicity must be a positive integer"))
        return
    if sing.n <= sing.m:
        out.append(Violation(f"{path}.n", f"contact order must exceed the multiplicity {sing.m}"))
        return
    previous = None
    for idx, e in enumerate(sing.essential):
        epath = f"{path}.essential[{idx}]"
        if previous is not None and e <= previous:
            out.append(Violation(epath, "exponents must be strictly increasing"))
            return
        previous = e
    if sing.essential and sing.essential[0] < sing.n:
        out.append(
            Violation(f"{path}.essential[0]", f"first exponent must be >= the contact order {sing.n}")
        )
        return
    chain = sing.gcd_chain()
    for idx, e in enumerate(sing.essential):
        if e % chain[idx] == 0:
            out.append(
                Violation(
                    f"{path}.essential[{idx}]",
                    f"{e} is a multiple of gcd {chain[idx]}, so it is not essential",
                )
            )
            return
    if chain[-1] != 1:
        out.append(
            Violation(path, f"gcd of multiplicity and exponents is {chain[-1]}, not 1 (branch not reduced)")
        )
        return
    if sing.n % sing.m != 0 and (not sing.essential or sing.essential[0] != sing.n):
        out.append(
            Violation(
                f"{path}.n",
                f"{sing.n} is not a multiple of {sing.m}, so it is itself essential and must open the exponent list",
            )
        )


def _validate_side(side: NewtonSide, path: str, out: list[Violation]) -> None:
    for name in ("j0", "k0", "j1", "k1"):
        if getattr(side, name) < 0:
            out.append(Violation(f"{path}.{name}", "endpoint coordinates must be non-negative"))
            return
    if side.j0 >= side.j1:
        out.append(Violation(path, "endpoints must satisfy j0 < j1"))
        return
    drop = side.k0 - side.k1
    run = side.j1 - side.j0
    if not 0 < drop < run:
        out.append(Violation(path, "side slope must lie strictly between -1 and 0"))
        return
    if any(v < 1 for v in side.s):
        out.append(Violation(f"{path}.s", "root multiplicities must be positive"))
        return
    span = side.span()
    if sum(side.s) != span:
        out.append(
            Violation(f"{path}.s", f"root multiplicities sum to {sum(side.s)}, expected the lattice span {span}")
        )


def _validate_truncation(trunc: Truncation, path: str, out: list[Violation]) -> None:
    if trunc.ell < 1:
        out.append(Violation(f"{path}.ell", "ell must be a positive integer"))
    if trunc.weight <= 0:
        out.append(Violation(f"{path}.W", "weight must be positive"))
    if not trunc.s or any(v < 1 for v in trunc.s):
        out.append(Violation(f"{path}.s", "conic multiplicities must be a non-empty list of positive integers"))


def validate(descriptor: CurveDescriptor) -> list[Violation]:
    """Check every descriptor invariant; an empty list means valid.

    Violations are data, not exceptions: callers decide how to surface
    them.
    """
    out: list[Violation] = []
    d = descriptor.degree
    if d < 1:
        out.append(Violation("degree", "degree must be a positive integer"))
        return out

    degree_sum = 0
    for idx, line in enumerate(descriptor.linear):
        path = f"linear[{idx}]"
        if line.mult < 1:
            out.append(Violation(f"{path}.mult", "multiplicity must be a positive integer"))
            continue
        degree_sum += line.mult
        if any(r < 1 for r in line.meets):
            out.append(Violation(f"{path}.meets", "intersection multiplicities must be positive"))
            continue
        if sum(line.meets) != d - line.mult:
            out.append(
                Violation(
                    f"{path}.meets",
                    f"intersection multiplicities sum to {sum(line.meets)}, expected degree - mult = {d - line.mult}",
                )
            )
    for idx, comp in enumerate(descriptor.nonlinear):
        path = f"nonlinear[{idx}]"
        if comp.deg < 2:
            out.append(Violation(f"{path}.deg", "nonlinear components must have degree >= 2"))
            continue
        if comp.mult < 1:
            out.append(Violation(f"{path}.mult", "multiplicity must be a positive integer"))
            continue
        degree_sum += comp.deg * comp.mult
    if not out and degree_sum != d:
        out.append(
            Violation(
                "degree",
                f"component degrees (counted with multiplicity) sum to {degree_sum}, expected {d}",
            )
        )

    for idx, feature in enumerate(descriptor.points):
        path = f"points[{idx}]"
        if isinstance(feature, FlexPoint):
            if feature.contact < 3:
                out.append(Violation(f"{path}.contact", "flex contact order must be >= 3"))
        elif isinstance(feature, IrreduciblePoint):
            _validate_irreducible(feature.singularity, path, out)
        else:
            if feature.tangent_cone is not None and any(v < 1 for v in feature.tangent_cone.line_mults):
                out.append(Violation(f"{path}.tangent_cone", "line multiplicities must be positive"))
            for sidx, side in enumerate(feature.sides):
                _validate_side(side, f"{path}.sides[{sidx}]", out)
            for tidx, trunc in enumerate(feature.truncations):
                _validate_truncation(trunc, f"{path}.truncations[{tidx}]", out)
            if feature.absorbed_flexes < 0:
                out.append(Violation(f"{path}.absorbed_flexes", "absorbed flex count must be >= 0"))

    if descriptor.flexes_auto():
        if descriptor.linear:
            out.append(Violation("flexes", 'automatic flex counting refuses curves with line components'))
        elif len(descriptor.nonlinear) != 1 or descriptor.nonlinear[0].mult != 1:
            out.append(
                Violation("flexes", "automatic flex counting requires a single reduced nonlinear component")
            )
        elif not out and resolved_flex_count(descriptor) < 0:
            out.append(
                Violation(
                    "flexes",
                    f"absorbed flexes exceed the budget 3d(d-2) = {3 * d * (d - 2)}",
                )
            )
    elif isinstance(descriptor.flexes, int):
        if descriptor.flexes < 0:
            out.append(Violation("flexes", "flex count must be >= 0"))
    else:
        out.append(Violation("flexes", 'flex count must be an integer or "auto"'))

    if descriptor.stabilizer_degree is not None and descriptor.stabilizer_degree < 1:
        out.append(Violation("stabilizer_degree", "stabilizer degree must be a positive integer"))
    return out


# ---------------------------------------------------------------------------
# JSON ingestion
# ---------------------------------------------------------------------------


def _require_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise DescriptorSchemaError(path, f"expected an object, got {type(value).__name__}")
    return value


def _require_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise DescriptorSchemaError(path, f"expected an array, got {type(value).__name__}")
    return value


def _require_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DescriptorSchemaError(path, f"expected an integer, got {type(value).__name__}")
    return value


def _require_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise DescriptorSchemaError(path, f"expected a string, got {type(value).__name__}")
    return value


def _require_rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise DescriptorSchemaError(path, f'expected an integer or "num/den" string, got {type(value).__name__}')
    try:
        return to_rational(value)
    except ValueError as exc:
        raise DescriptorSchemaError(path, str(exc)) from None


def _check_keys(obj: dict, allowed: set[str], path: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        name = sorted(unknown)[0]
        raise DescriptorSchemaError(f"{path}.{name}" if path else name, "unknown field")


def _int_list(value: Any, path: str) -> tuple[int, ...]:
    return tuple(_require_int(v, f"{path}[{i}]") for i, v in enumerate(_require_list(value, path)))


def _pair(value: Any, path: str) -> tuple[int, int]:
    items = _int_list(value, path)
    if len(items) != 2:
        raise DescriptorSchemaError(path, "expected a [j, k] pair")
    return items[0], items[1]


def _side_from_obj(obj: Any, path: str) -> NewtonSide:
    data = _require_object(obj, path)
    _check_keys(data, {"from", "to", "s", "suppress"}, path)
    for key in ("from", "to", "s"):
        if key not in data:
            raise DescriptorSchemaError(path, f'missing "{key}"')
    j0, k0 = _pair(data["from"], f"{path}.from")
    j1, k1 = _pair(data["to"], f"{path}.to")
    s = _int_list(data["s"], f"{path}.s")
    suppress = data.get("suppress", False)
    if not isinstance(suppress, bool):
        raise DescriptorSchemaError(f"{path}.suppress", "expected a boolean")
    return NewtonSide(j0, k0, j1, k1, s, suppress)


def _truncation_from_obj(obj: Any, path: str) -> Truncation:
    data = _require_object(obj, path)
    _check_keys(data, {"ell", "W", "s"}, path)
    for key in ("ell", "W", "s"):
        if key not in data:
            raise DescriptorSchemaError(path, f'missing "{key}"')
    return Truncation(
        ell=_require_int(data["ell"], f"{path}.ell"),
        weight=_require_rational(data["W"], f"{path}.W"),
        s=_int_list(data["s"], f"{path}.s"),
    )


def _multiple_point_feature(data: dict, path: str, label: Optional[str]) -> CompositePoint:
    """Desugar the ordinary-multiple-point shorthand into a composite feature.

    A point of multiplicity m with nonlinear-branch contacts r produces
    m reduced tangent-cone lines and one polygon side (m-1,1)->(r,0) per
    contact.  When every branch is nonlinear and no count is given, the
    absorbed-flex count defaults to 3m(m-1) + sum(r) - m(m+1), which is
    the smooth-branch count 3m(m-1) plus one per extra contact order.
    """
    _check_keys(data, {"kind", "label", "m", "contacts", "absorbed_flexes"}, path)
    if "m" not in data:
        raise DescriptorSchemaError(path, 'missing "m"')
    m = _require_int(data["m"], f"{path}.m")
    contacts = _int_list(data.get("contacts", []), f"{path}.contacts")
    if m < 2:
        raise DescriptorSchemaError(f"{path}.m", "multiple points need multiplicity >= 2")
    if len(contacts) > m:
        raise DescriptorSchemaError(f"{path}.contacts", f"at most m = {m} branches")
    for i, r in enumerate(contacts):
        if r < m + 1:
            raise DescriptorSchemaError(f"{path}.contacts[{i}]", f"contact must be >= m + 1 = {m + 1}")
    if "absorbed_flexes" in data:
        absorbed = _require_int(data["absorbed_flexes"], f"{path}.absorbed_flexes")
    elif len(contacts) == m:
        absorbed = 3 * m * (m - 1) + sum(contacts) - m * (m + 1)
    else:
        absorbed = 0
    sides = tuple(NewtonSide(m - 1, 1, r, 0, (1,)) for r in contacts)
    return CompositePoint(
        tangent_cone=TangentCone((1,) * m),
        sides=sides,
        truncations=(),
        absorbed_flexes=absorbed,
        label=label,
    )


def _point_from_obj(obj: Any, path: str) -> PointFeature:
    data = _require_object(obj, path)
    kind = _require_str(data.get("kind", ""), f"{path}.kind")
    label = None
    if "label" in data:
        label = _require_str(data["label"], f"{path}.label")
    if kind == "flex":
        _check_keys(data, {"kind", "label", "contact"}, path)
        if "contact" not in data:
            raise DescriptorSchemaError(path, 'missing "contact"')
        return FlexPoint(contact=_require_int(data["contact"], f"{path}.contact"), label=label)
    if kind == "irreducible":
        _check_keys(data, {"kind", "label", "m", "n", "essential"}, path)
        for key in ("m", "n"):
            if key not in data:
                raise DescriptorSchemaError(path, f'missing "{key}"')
        sing = IrreducibleSingularity(
            m=_require_int(data["m"], f"{path}.m"),
            n=_require_int(data["n"], f"{path}.n"),
            essential=_int_list(data.get("essential", []), f"{path}.essential"),
        )
        return IrreduciblePoint(singularity=sing, label=label)
    if kind == "composite":
        _check_keys(data, {"kind", "label", "tangent_cone", "sides", "truncations", "absorbed_flexes"}, path)
        cone = None
        if data.get("tangent_cone") is not None:
            cone = TangentCone(_int_list(data["tangent_cone"], f"{path}.tangent_cone"))
        sides = tuple(
            _side_from_obj(v, f"{path}.sides[{i}]") for i, v in enumerate(_require_list(data.get("sides", []), f"{path}.sides"))
        )
        truncations = tuple(
            _truncation_from_obj(v, f"{path}.truncations[{i}]")
            for i, v in enumerate(_require_list(data.get("truncations", []), f"{path}.truncations"))
        )
        absorbed = 0
        if "absorbed_flexes" in data:
            absorbed = _require_int(data["absorbed_flexes"], f"{path}.absorbed_flexes")
        return CompositePoint(cone, sides, truncations, absorbed, label)
    if kind == "ordinary_multiple_point":
        return _multiple_point_feature(data, path, label)
    raise DescriptorSchemaError(f"{path}.kind", f"unknown point kind {kind!r}")


def descriptor_from_obj(obj: Any) -> CurveDescriptor:
    """Build a descriptor from already-decoded JSON data."""
    data = _require_object(obj, "")
    _check_keys(data, {"degree", "stabilizer_degree", "flexes", "linear", "nonlinear", "points"}, "")
    if "degree" not in data:
        raise DescriptorSchemaError("degree", "missing required field")
    degree = _require_int(data["degree"], "degree")
    stabilizer = None
    if data.get("stabilizer_degree") is not None:
        stabilizer = _require_int(data["stabilizer_degree"], "stabilizer_degree")
    flexes: Union[int, str] = 0
    if "flexes" in data:
        raw = data["flexes"]
        if raw == AUTO_FLEXES:
            flexes = AUTO_FLEXES
        else:
            flexes = _require_int(raw, "flexes")

    linear = []
    for i, entry in enumerate(_require_list(data.get("linear", []), "linear")):
        path = f"linear[{i}]"
        item = _require_object(entry, path)
        _check_keys(item, {"mult", "meets"}, path)
        if "mult" not in item:
            raise DescriptorSchemaError(path, 'missing "mult"')
        linear.append(
            LinearComponent(
                mult=_require_int(item["mult"], f"{path}.mult"),
                meets=_int_list(item.get("meets", []), f"{path}.meets"),
            )
        )

    nonlinear = []
    for i, entry in enumerate(_require_list(data.get("nonlinear", []), "nonlinear")):
        path = f"nonlinear[{i}]"
        item = _require_object(entry, path)
        _check_keys(item, {"deg", "mult"}, path)
        if "deg" not in item:
            raise DescriptorSchemaError(path, 'missing "deg"')
        nonlinear.append(
            NonlinearComponent(
                deg=_require_int(item["deg"], f"{path}.deg"),
                mult=_require_int(item.get("mult", 1), f"{path}.mult"),
            )
        )

    points = tuple(
        _point_from_obj(entry, f"points[{i}]")
        for i, entry in enumerate(_require_list(data.get("points", []), "points"))
    )

    return CurveDescriptor(
        degree=degree,
        linear=tuple(linear),
        nonlinear=tuple(nonlinear),
        points=points,
        flexes=flexes,
        stabilizer_degree=stabilizer,
    )


def parse(text: str) -> CurveDescriptor:
    """Parse a JSON descriptor; raises DescriptorParseError / DescriptorSchemaError."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorParseError(exc.msg, exc.lineno, exc.colno) from None
    return descriptor_from_obj(obj)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _point_to_obj(feature: PointFeature) -> dict:
    out: dict[str, Any] = {}
    if feature.label is not None:
        out["label"] = feature.label
    if isinstance(feature, FlexPoint):
        out.update(kind="flex", contact=feature.contact)
        return out
    if isinstance(feature, IrreduciblePoint):
        sing = feature.singularity
        out.update(kind="irreducible", m=sing.m, n=sing.n, essential=list(sing.essential))
        return out
    out["kind"] = "composite"
    if feature.tangent_cone is not None:
        out["tangent_cone"] = list(feature.tangent_cone.line_mults)
    out["sides"] = [
        {
            "from": [side.j0, side.k0],
            "to": [side.j1, side.k1],
            "s": list(side.s),
            **({"suppress": True} if side.suppress else {}),
        }
        for side in feature.sides
    ]
    out["truncations"] = [
        {"ell": t.ell, "W": rational_to_string(t.weight), "s": list(t.s)} for t in feature.truncations
    ]
    out["absorbed_flexes"] = feature.absorbed_flexes
    return out


def descriptor_to_obj(descriptor: CurveDescriptor) -> dict:
    out: dict[str, Any] = {"degree": descriptor.degree}
    if descriptor.stabilizer_degree is not None:
        out["stabilizer_degree"] = descriptor.stabilizer_degree
    out["flexes"] = descriptor.flexes
    out["linear"] = [{"mult": c.mult, "meets": list(c.meets)} for c in descriptor.linear]
    out["nonlinear"] = [{"deg": c.deg, "mult": c.mult} for c in descriptor.nonlinear]
    out["points"] = [_point_to_obj(p) for p in descriptor.points]
    return out


def serialize(descriptor: CurveDescriptor, indent: int | None = 2) -> str:
    return json.dumps(descriptor_to_obj(descriptor), indent=indent)
