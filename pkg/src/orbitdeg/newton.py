"""Newton-polygon extraction and exact univariate polynomial utilities.

The input is the monomial support of a curve equation that the user has
already normalized: the point under study sits at (1:0:0) and the
tangent line under study is z = 0, so the relevant exponents are the
(j, k) of y^j z^k.  From the support this module computes the lower-left
polygon, selects the sides of slope strictly between -1 and 0, and reads
off each side's coefficient string and root-multiplicity profile.

Root multiplicities are obtained without factoring: a squarefree
decomposition over the rationals already reveals how many roots (over
the algebraic closure) occur with each multiplicity, which is all the
downstream power sums need.

Univariate polynomials are plain lists of Fractions, constant term
first, with no trailing zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from . import model
from .series import RationalLike, to_rational

Poly = list[Fraction]

Side = tuple[tuple[int, int], tuple[int, int]]


class SupportError(ValueError):
    """The monomial support is unusable for the requested operation."""


@dataclass(frozen=True)
class MonomialSupport:
    """The support of a degree-d equation sum coeff * x^(d-j-k) y^j z^k."""

    degree: int
    terms: tuple[tuple[int, int, Fraction], ...]

    @classmethod
    def from_terms(cls, degree: int, terms: Iterable[tuple[int, int, RationalLike]]) -> "MonomialSupport":
        if degree < 1:
            raise SupportError("degree must be a positive integer")
        seen: set[tuple[int, int]] = set()
        cleaned = []
        for j, k, coeff in terms:
            if j < 0 or k < 0:
                raise SupportError(f"exponents must be non-negative, got ({j}, {k})")
            if j + k > degree:
                raise SupportError(f"term ({j}, {k}) exceeds degree {degree}")
            if (j, k) in seen:
                raise SupportError(f"duplicate term ({j}, {k})")
            value = to_rational(coeff)
            if value == 0:
                raise SupportError(f"term ({j}, {k}) has zero coefficient")
            seen.add((j, k))
            cleaned.append((j, k, value))
        return cls(degree, tuple(sorted(cleaned)))

    def coefficient(self, j: int, k: int) -> Fraction:
        for tj, tk, coeff in self.terms:
            if (tj, tk) == (j, k):
                return coeff
        return Fraction(0)


@dataclass(frozen=True)
class Polygon:
    """Lower-left boundary vertices: j strictly increasing, k strictly decreasing."""

    vertices: tuple[tuple[int, int], ...]

    def sides(self) -> list[Side]:
        return [(self.vertices[i], self.vertices[i + 1]) for i in range(len(self.vertices) - 1)]


@dataclass(frozen=True)
class SideData:
    """One side with its coefficient string and root-multiplicity profile.

    `gammas` holds the coefficient at each of the span+1 lattice points
    of the side (zero where the support has no term); `profile` pairs
    each multiplicity with the number of distinct roots carrying it.
    """

    j0: int
    k0: int
    j1: int
    k1: int
    span: int
    gammas: tuple[Fraction, ...]
    profile: tuple[tuple[int, int], ...]

    def s_values(self) -> tuple[int, ...]:
        out: list[int] = []
        for mult, count in self.profile:
            out.extend([mult] * count)
        return tuple(sorted(out, reverse=True))

    def as_newton_side(self) -> model.NewtonSide:
        return model.NewtonSide(self.j0, self.k0, self.j1, self.k1, self.s_values())


def _cross(o: tuple[int, int], a: tuple[int, int], b: tuple[int, int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(support: MonomialSupport) -> Polygon:
    """Boundary of the hull of the positive quadrants rooted at the support.

    Only the compact lower-left chain is returned; the vertical and
    horizontal rays it joins are implicit.
    """
    if not support.terms:
        raise SupportError("empty support has no polygon")
    points = sorted({(j, k) for j, k, _ in support.terms})
    lowest: dict[int, int] = {}
    for j, k in points:
        lowest[j] = min(lowest.get(j, k), k)
    frontier: list[tuple[int, int]] = []
    best = None
    for j in sorted(lowest):
        k = lowest[j]
        if best is None or k < best:
            frontier.append((j, k))
            best = k
    hull: list[tuple[int, int]] = []
    for p in frontier:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return Polygon(tuple(hull))


def qualifying_sides(polygon: Polygon) -> list[Side]:
    """The polygon sides of slope strictly between -1 and 0, left to right."""
    out = []
    for (j0, k0), (j1, k1) in polygon.sides():
        if 0 < k0 - k1 < j1 - j0:
            out.append(((j0, k0), (j1, k1)))
    return out


def side_data(support: MonomialSupport, side: Side) -> SideData:
    """Coefficients along a side and the multiplicity profile of its roots."""
    (j0, k0), (j1, k1) = side
    span = gcd(j1 - j0, k0 - k1)
    step_j = (j1 - j0) // span
    step_k = (k0 - k1) // span
    gammas = tuple(
        support.coefficient(j0 + t * step_j, k0 - t * step_k) for t in range(span + 1)
    )
    # Dehomogenize the side polynomial at the second coordinate; the
    # coefficient of xi^u is gamma_{span - u}.
    coeffs: Poly = [gammas[span - u] for u in range(span + 1)]
    leading_zeros = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        leading_zeros += 1
    profile: list[tuple[int, int]] = []
    if leading_zeros:
        # Root at infinity; cannot occur for genuine polygon sides, whose
        # endpoint coefficients are nonzero, but kept for odd inputs.
        profile.append((leading_zeros, 1))
    if coeffs and len(coeffs) > 1:
        for mult, factor in yun_squarefree(coeffs):
            degree = len(factor) - 1
            if degree > 0:
                profile.append((mult, degree))
    profile.sort(reverse=True)
    return SideData(j0, k0, j1, k1, span, gammas, tuple(profile))


def local_invariants(support: MonomialSupport) -> tuple[int, int | None]:
    """Multiplicity at (1:0:0) and the contact order with z = 0.

    The contact order is None when z divides the equation (the line is a
    component, so the contact is unbounded).
    """
    if not support.terms:
        raise SupportError("empty support")
    if support.coefficient(0, 0) != 0:
        raise SupportError("point not on curve: the support contains (0, 0)")
    multiplicity = min(j + k for j, k, _ in support.terms)
    on_line = [j for j, k, _ in support.terms if k == 0]
    contact = min(on_line) if on_line else None
    return multiplicity, contact


# ---------------------------------------------------------------------------
# exact univariate polynomials (constant term first, no trailing zeros)
# ---------------------------------------------------------------------------


def poly_trim(p: Sequence[RationalLike]) -> Poly:
    out = [to_rational(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return poly_trim(out)


def poly_derivative(p: Sequence[Fraction]) -> Poly:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Poly, Poly]:
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quotient = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    remainder = list(a)
    lead = b[-1]
    while len(remainder) >= len(b):
        shift = len(remainder) - len(b)
        factor = remainder[-1] / lead
        quotient[shift] = factor
        for i, c in enumerate(b):
            remainder[shift + i] -= factor * c
        remainder = poly_trim(remainder[:-1])
        if not remainder:
            break
    return poly_trim(quotient), remainder


def poly_monic(p: Sequence[Fraction]) -> Poly:
    p = poly_trim(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    a = poly_trim(a)
    b = poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def yun_squarefree(p: Sequence[RationalLike]) -> list[tuple[int, Poly]]:
    """Squarefree decomposition: pairs (multiplicity, monic factor).

    The product of factor**multiplicity over all pairs reproduces the
    input up to its leading coefficient; factors of degree zero are not
    reported.
    """
    p = poly_trim(p)
    if not p:
        raise ValueError("zero polynomial has no squarefree decomposition")
    out: list[tuple[int, Poly]] = []
    if len(p) == 1:
        return out
    dp = poly_derivative(p)
    g = poly_gcd(p, dp)
    b, _ = poly_divmod(p, g)
    c, _ = poly_divmod(dp, g)
    d = poly_trim([x - y for x, y in _padded(c, poly_derivative(b))])
    i = 1
    while len(b) > 1:
        factor = poly_gcd(b, d)
        if len(factor) > 1:
            out.append((i, factor))
        b, _ = poly_divmod(b, factor)
        quotient, _ = poly_divmod(d, factor)
        d = poly_trim([x - y for x, y in _padded(quotient, poly_derivative(b))])
        i += 1
    return out


def _padded(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    width = max(len(a), len(b))
    zero = Fraction(0)
    return [
        (a[i] if i < len(a) else zero, b[i] if i < len(b) else zero)
        for i in range(width)
    ]
