"""Extremal convex configurations from coprime slope vectors, exact convexity
certificates, and cover counting for convex graphs.

The piecewise construction sorts all coprime vectors (q, a) with entries up
to H by slope and walks their prefix sums; the resulting polygon carries
roughly H^2 integer points inside a box of side at most H^3.  A quadratic
smoothing dips each chord midpoint by a small epsilon, which keeps every
knot fixed, makes each segment strictly convex, and preserves the knot slope
ordering; the offset must point below the chord, since a bump above it would
make the segments concave.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Callable, Optional, Sequence

from .detmethod import (
    CoverCertificate,
    DerivativeBoundSpec,
    LatticePoint,
    curve_budget,
    greedy_cover,
)
from .monomials import full_set


class OracleBoundError(RuntimeError):
    """A sampled derivative coefficient violated the certified decay bound."""


class ConvexityViolation(RuntimeError):
    """A line met more than two points of a supposedly strictly convex graph."""


@dataclass(frozen=True)
class JarnikConfiguration:
    """Coprime slope vectors sorted by slope with their prefix-sum polygon."""

    H: int
    vectors: tuple[tuple[int, int], ...]  # (q, a), slopes a/q strictly increasing
    points: tuple[tuple[int, int], ...]  # (Q_i, A_i) prefix sums, starting at (0, 0)
    epsilon: Fraction  # magnitude of the downward midpoint offset

    @property
    def t(self) -> int:
        return len(self.vectors)

    @property
    def q_total(self) -> int:
        return self.points[-1][0]

    @property
    def a_total(self) -> int:
        return self.points[-1][1]


def jarnik_construct(h: int) -> JarnikConfiguration:
    """All coprime (q, a) with 1 <= a, q <= H, sorted by slope, summed up."""
    if h < 1:
        raise ValueError("H must be >= 1")
    vectors = sorted(
        ((q, a) for q in range(1, h + 1) for a in range(1, h + 1) if gcd(a, q) == 1),
        key=lambda v: Fraction(v[1], v[0]),
    )
    points = [(0, 0)]
    for q, a in vectors:
        points.append((points[-1][0] + q, points[-1][1] + a))
    q_total = points[-1][0]
    epsilon = Fraction(1, 4 * q_total * q_total)
    return JarnikConfiguration(h, tuple(vectors), tuple(points), epsilon)


def convex_slope_check(points: Sequence[tuple[int, int] | LatticePoint]) -> bool:
    """True iff consecutive chord slopes strictly increase (exact comparison)."""
    pts = [(int(p[0]), int(p[1])) for p in points]
    for (x0, _), (x1, _) in zip(pts, pts[1:]):
        if x0 >= x1:
            raise ValueError("points must have strictly increasing x")
    prev: Optional[Fraction] = None
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        slope = Fraction(y1 - y0, x1 - x0)
        if prev is not None and slope <= prev:
            return False
        prev = slope
    return True


# -- the smoothed function ------------------------------------------------------


def _segment_quadratic(
    config: JarnikConfiguration, index: int
) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients (c0, c1, c2) of the smoothed parabola on segment `index`,
    written around the left knot: f(x) = c0 + c1*(x-Q_i) + c2*(x-Q_i)^2."""
    (x0, y0), (x1, y1) = config.points[index], config.points[index + 1]
    h = Fraction(x1 - x0)
    s = Fraction(y1 - y0, x1 - x0)
    c2 = 4 * config.epsilon / (h * h)  # upward parabola: strictly convex piece
    c1 = s - c2 * h  # forces f(x1) = y1 with the dip at the midpoint
    return Fraction(y0), c1, c2


def segment_index_for(config: JarnikConfiguration, x: Fraction) -> int:
    if not config.points[0][0] <= x <= config.points[-1][0]:
        raise ValueError("abscissa outside the configuration range")
    for i in range(len(config.points) - 1):
        if x < config.points[i + 1][0]:
            return i
    return len(config.points) - 2


def smoothed_value(config: JarnikConfiguration, x: Fraction | int) -> Fraction:
    x = Fraction(x)
    i = segment_index_for(config, x)
    c0, c1, c2 = _segment_quadratic(config, i)
    dx = x - config.points[i][0]
    return c0 + c1 * dx + c2 * dx * dx


def smoothed_taylor(config: JarnikConfiguration, x: Fraction | int, kmax: int) -> list[Fraction]:
    """[f(x), f'(x), f''(x)/2, 0, ...] of the smoothed piecewise parabola."""
    x = Fraction(x)
    i = segment_index_for(config, x)
    c0, c1, c2 = _segment_quadratic(config, i)
    dx = x - config.points[i][0]
    out = [c0 + c1 * dx + c2 * dx * dx]
    if kmax >= 1:
        out.append(c1 + 2 * c2 * dx)
    if kmax >= 2:
        out.append(c2)
    out.extend([Fraction(0)] * max(0, kmax + 1 - len(out)))
    return out


def verify_smoothing(config: JarnikConfiguration, samples_per_segment: int = 4) -> bool:
    """Exact strict-convexity certificate for the smoothed graph.

    Checks each segment's quadratic coefficient is positive, that one-sided
    slopes at every knot strictly increase, and that a dense rational sample
    across all segments passes the chord-slope test.
    """
    t = len(config.points) - 1
    for i in range(t):
        c0, c1, c2 = _segment_quadratic(config, i)
        if c2 <= 0:
            return False
    for i in range(t - 1):
        _, c1_l, c2_l = _segment_quadratic(config, i)
        h_l = Fraction(config.points[i + 1][0] - config.points[i][0])
        left_end_slope = c1_l + 2 * c2_l * h_l
        _, c1_r, _ = _segment_quadratic(config, i + 1)
        if not left_end_slope < c1_r:
            return False
    sample: list[tuple[Fraction, Fraction]] = []
    for i in range(t):
        x0, x1 = Fraction(config.points[i][0]), Fraction(config.points[i + 1][0])
        for j in range(samples_per_segment):
            x = x0 + (x1 - x0) * Fraction(j, samples_per_segment)
            sample.append((x, smoothed_value(config, x)))
    sample.append((Fraction(config.points[-1][0]), Fraction(config.points[-1][1])))
    prev: Optional[Fraction] = None
    for (xa, ya), (xb, yb) in zip(sample, sample[1:]):
        slope = (yb - ya) / (xb - xa)
        if prev is not None and slope <= prev:
            return False
        prev = slope
    return True


# -- cover counting for convex graphs ----------------------------------------------


@dataclass
class TaylorOracle:
    """Exact normalized Taylor data f^(i)(x)/i! for a convex graph on [lo, hi]."""

    lo: Fraction
    hi: Fraction
    coefficients: Callable[[Fraction, int], list[Fraction]]


def polynomial_taylor_oracle(poly, lo: Fraction | int, hi: Fraction | int) -> TaylorOracle:
    """Oracle backed by a univariate polynomial (UniPoly)."""

    def coeffs(x: Fraction, kmax: int) -> list[Fraction]:
        out: list[Fraction] = []
        q = poly
        fact = 1
        for i in range(kmax + 1):
            out.append(q.evaluate(x) / fact)
            q = q.derivative()
            fact *= i + 1
        return out

    return TaylorOracle(Fraction(lo), Fraction(hi), coeffs)


def jarnik_taylor_oracle(config: JarnikConfiguration) -> TaylorOracle:
    return TaylorOracle(
        Fraction(0),
        Fraction(config.q_total),
        lambda x, kmax: smoothed_taylor(config, x, kmax),
    )


@dataclass
class ConvexCoverReport:
    total: int
    points: list[LatticePoint]
    certificate: CoverCertificate
    per_curve_counts: list[int]
    budget: int
    parameters: dict = field(default_factory=dict)


def convex_cover_count(
    oracle: TaylorOracle, d: int, n_box: int, delta: Fraction | int
) -> ConvexCoverReport:
    """Count integer points on a convex graph by covering them with curves of
    degree <= d, verifying each claimed point directly against the oracle.

    Every sampled coefficient is checked against the decay bound
    |f^(i)(x)/i!| <= N * delta^i; a line curve collecting more than two
    points contradicts strict convexity and aborts.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    delta = Fraction(delta)
    mset = full_set(d)
    spec = DerivativeBoundSpec(X=Fraction(n_box), delta=delta, N=Fraction(n_box))
    pts: list[LatticePoint] = []
    for k in range(max(0, ceil(oracle.lo)), min(n_box, floor(oracle.hi)) + 1):
        cs = oracle.coefficients(Fraction(k), mset.D - 1)
        for i, ci in enumerate(cs):
            if abs(ci) > spec.X * delta**i:
                raise OracleBoundError(
                    f"coefficient level {i} at x={k} violates the decay bound"
                )
        c0 = cs[0]
        if c0.denominator == 1 and 0 <= c0 <= n_box:
            pts.append(LatticePoint(k, int(c0)))
    cert = greedy_cover(pts, mset)
    per_curve: list[int] = []
    for idx, cov in enumerate(cert.curves):
        count = sum(1 for p in pts if cov.evaluate(p.x, p.y) == 0)
        if cov.degree == 1 and count > 2:
            raise ConvexityViolation(
                "a line met more than two points of the convex graph"
            )
        per_curve.append(count)
    budget = curve_budget(oracle.hi - oracle.lo, spec, mset)
    return ConvexCoverReport(
        total=len(pts),
        points=pts,
        certificate=cert,
        per_curve_counts=per_curve,
        budget=budget,
        parameters={"d": d, "N": n_box, "delta": str(delta)},
    )
