"""End-to-end lattice-point counting in the box {1..N}^2.

Two independent routes: a brute-force sweep over integer abscissas, and the
cover-curve pipeline (decompose into |f'| <= 1 branches, partition by
derivative thresholds, greedily cover each all-small piece, count per cover
curve through resultants).  Reports carry enough detail to audit every
counted point and every budget comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .branch import (
    branch_integer_point,
    graph_decompose,
    large_interval_check,
    partition_by_bounds,
)
from .detmethod import (
    CoverCertificate,
    DerivativeBoundSpec,
    LatticePoint,
    curve_budget,
    greedy_cover,
)
from .monomials import punctured_set
from .poly2 import BiPoly, corner_index, divides, ingestion_check, resultant_eliminating_y
from .unipoly import integer_roots, poly_gcd


class CountingError(ValueError):
    """Structured failure of a counting precondition."""


class LineFactorError(CountingError):
    """A vertical or horizontal line inside the box makes the count trivial;
    the caller must handle it explicitly."""


class CommonComponentError(CountingError):
    """Intersection counting requires curves without a common component."""


# -- brute-force oracle ---------------------------------------------------------


def _sweep_range(curve: BiPoly, lo: int, hi: int, n_box: int) -> list[LatticePoint]:
    """Pure sweep over x in [lo, hi]; chunks may run on independent workers
    and merge deterministically in range order."""
    points: list[LatticePoint] = []
    for x0 in range(lo, hi + 1):
        u = curve.at_x(x0)
        if u.is_zero():
            raise LineFactorError(f"vertical line x = {x0} lies inside the box")
        if u.degree < 1:
            continue
        points.extend(
            LatticePoint(x0, y0) for y0 in integer_roots(u) if 1 <= y0 <= n_box
        )
    return points


def brute_force_count(curve: BiPoly, n_box: int) -> tuple[int, list[LatticePoint]]:
    """Integer solutions in {1..N}^2 by an exact sweep over x = 1..N."""
    if curve.is_zero():
        raise CountingError("curve must be nonzero")
    if n_box < 1:
        raise CountingError("box size must be >= 1")
    if curve.degree_y() == 0:
        fx = curve.as_unipoly_x()
        if fx.degree < 1:
            raise CountingError("curve must be nonconstant")
        hits = [k for k in integer_roots(fx) if 1 <= k <= n_box]
        if hits:
            raise LineFactorError(f"vertical line x = {hits[0]} lies inside the box")
        return 0, []
    probe = curve.at_x(1)
    if not probe.is_zero() and probe.degree >= 1:
        for y0 in integer_roots(probe):
            if 1 <= y0 <= n_box and curve.at_y(y0).is_zero():
                raise LineFactorError(f"horizontal line y = {y0} lies inside the box")
    chunk = 1024
    points: list[LatticePoint] = []
    for lo in range(1, n_box + 1, chunk):
        points.extend(_sweep_range(curve, lo, min(lo + chunk - 1, n_box), n_box))
    return len(points), points


# -- pairwise intersection through resultants ------------------------------------


def bezout_intersect(f: BiPoly, g: BiPoly, n_box: int) -> list[LatticePoint]:
    """All integer points of {1..N}^2 with f = g = 0, capped by deg f * deg g."""
    if f.is_zero() or g.is_zero():
        raise CountingError("both curves must be nonzero")
    if divides(f, g) or divides(g, f):
        raise CommonComponentError("Bezout hypothesis violated: one curve divides the other")
    dy_f, dy_g = f.degree_y(), g.degree_y()
    xs: list[int]
    if dy_f >= 1 and dy_g >= 1:
        res = resultant_eliminating_y(f, g)
        if res.is_zero():
            raise CommonComponentError("Bezout hypothesis violated: common component")
        xs = [k for k in integer_roots(res) if 1 <= k <= n_box] if res.degree >= 1 else []
    elif dy_f == 0 and dy_g == 0:
        fx, gx = f.as_unipoly_x(), g.as_unipoly_x()
        if poly_gcd(fx, gx).degree >= 1:
            raise CommonComponentError("Bezout hypothesis violated: common vertical lines")
        xs = []
    else:
        yfree = f if dy_f == 0 else g
        xs = [k for k in integer_roots(yfree.as_unipoly_x()) if 1 <= k <= n_box]
    points: list[LatticePoint] = []
    for x0 in xs:
        uf, ug = f.at_x(x0), g.at_x(x0)
        if uf.is_zero() and ug.is_zero():
            raise CommonComponentError(f"both curves contain the line x = {x0}")
        if uf.is_zero() or ug.is_zero():
            live = ug if uf.is_zero() else uf
            ys = integer_roots(live) if live.degree >= 1 else []
        elif uf.degree < 1 or ug.degree < 1:
            ys = []  # one side is a nonzero constant at this abscissa
        else:
            ys = [y0 for y0 in integer_roots(uf) if ug.evaluate(y0) == 0]
        points.extend(LatticePoint(x0, y0) for y0 in ys if 1 <= y0 <= n_box)
    points = sorted(set(points))
    cap = f.degree * g.degree
    if len(points) > cap:
        raise RuntimeError("intersection exceeded the Bezout cap; inputs share a component")
    return points


# -- pipeline report --------------------------------------------------------------


@dataclass
class PieceReport:
    interval: tuple[str, str]
    flags: tuple[str, ...]
    mode: str  # "cover" or "enumerate"
    emitted_curves: int
    budget: Optional[int]
    curves: list[dict] = field(default_factory=list)
    direct_points: list[LatticePoint] = field(default_factory=list)


@dataclass
class BranchReport:
    descriptor: dict
    certificates: list[CoverCertificate]
    pieces: list[PieceReport]


@dataclass
class CountReport:
    parameters: dict
    total: int
    oracle_total: Optional[int]
    per_branch: list[BranchReport]
    exceptions: list[LatticePoint]
    warnings: list[str]
    ok: bool
    curve_points: list[LatticePoint] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "total": self.total,
            "oracle_total": self.oracle_total,
            "branches": [
                {
                    **br.descriptor,
                    "pieces": [
                        {
                            "interval": list(pr.interval),
                            "flags": list(pr.flags),
                            "mode": pr.mode,
                            "budget": pr.budget,
                            "curves": pr.curves,
                            "direct_points": [list(p) for p in pr.direct_points],
                        }
                        for pr in br.pieces
                    ],
                }
                for br in self.per_branch
            ],
            "exceptions": [list(p) for p in self.exceptions],
            "warnings": self.warnings,
        }

    def csv_rows(self) -> list[tuple[int, int, int]]:
        rows = []
        seen = set()
        curve_index = 0
        for br in self.per_branch:
            for pr in br.pieces:
                for cd in pr.curves:
                    for x0, y0 in cd["points"]:
                        if (x0, y0) not in seen:
                            seen.add((x0, y0))
                            rows.append((x0, y0, curve_index))
                    curve_index += 1
        for p in self.exceptions:
            if tuple(p) not in seen:
                seen.add(tuple(p))
                rows.append((p.x, p.y, -1))
        return rows


def _unswap(points: Sequence[LatticePoint], swapped: bool) -> list[LatticePoint]:
    return [LatticePoint(p.y, p.x) if swapped else LatticePoint(*p) for p in points]


def _in_box(p: LatticePoint, n_box: int) -> bool:
    return 1 <= p.x <= n_box and 1 <= p.y <= n_box


def default_ell(d: int, n_box: int) -> int:
    return max(d, (max(n_box, 2) - 1).bit_length())


def default_delta(d: int, ell: int, n_box: int) -> Fraction:
    """The recursion-shaped choice K^(2d)/N with K=(d*ell)^2, capped at 1.

    At practical box sizes the uncapped value exceeds 1, which would make the
    short-piece machinery meaningless; the cap keeps every formula valid
    (delta * N >= 1 still holds)."""
    k = (d * ell) ** 2
    return min(Fraction(1), Fraction(k ** (2 * d), n_box))


def determinant_method_count(
    curve: BiPoly,
    n_box: int,
    ell: Optional[int] = None,
    delta: Optional[Fraction] = None,
    compare_oracle: bool = True,
) -> CountReport:
    """Count integer points on the curve in {1..N}^2 via cover curves.

    Decomposes the curve into oriented branches, partitions each branch by
    the derivative thresholds, covers every all-small piece greedily and
    counts per cover curve through resultant intersections; short large
    pieces and critical abscissas are enumerated directly.
    """
    g = ingestion_check(curve)
    d = g.degree
    if d < 2:
        raise CountingError("the cover pipeline needs degree >= 2")
    if n_box < 1:
        raise CountingError("box size must be >= 1")
    ell = ell if ell is not None else default_ell(d, n_box)
    if ell < d:
        raise CountingError("ell must be at least the curve degree")
    delta = Fraction(delta) if delta is not None else default_delta(d, ell, n_box)
    i_f = corner_index(g)
    mset = punctured_set(d, ell, i_f)
    spec = DerivativeBoundSpec(X=Fraction(n_box), delta=delta, N=Fraction(n_box))

    warnings: list[str] = []
    ok = True
    oracle_total: Optional[int] = None
    if compare_oracle:
        oracle_total, _ = brute_force_count(g, n_box)
    decomposition = graph_decompose(g, n_box)
    curve_points: set[LatticePoint] = set()
    direct_points: set[LatticePoint] = set(decomposition.direct_points)
    branch_reports: list[BranchReport] = []

    for br in decomposition.branches:
        frame_curve = br.curve
        part = partition_by_bounds(br, mset.D, Fraction(n_box), delta)
        piece_reports: list[PieceReport] = []
        certificates: list[CoverCertificate] = []
        for piece in part.pieces:
            pts = []
            for k in piece.integer_abscissas:
                hit = branch_integer_point(br, k)
                if hit is not None:
                    pts.append(hit)
            interval = (str(piece.lo), str(piece.hi))
            if piece.all_small():
                cert = greedy_cover(
                    pts,
                    mset,
                    curve=frame_curve,
                    parameters={
                        "N": n_box,
                        "X": str(spec.X),
                        "delta": str(delta),
                        "monomials": mset.describe(),
                        "interval": list(interval),
                    },
                )
                certificates.append(cert)
                budget = curve_budget(piece.length(), spec, mset)
                if len(cert.curves) > budget:
                    warnings.append(
                        f"curve budget exceeded on piece {interval}: "
                        f"{len(cert.curves)} > {budget}"
                    )
                    ok = False
                curve_dicts = []
                for cov in cert.curves:
                    hits = bezout_intersect(frame_curve, cov, n_box)
                    boxed = [p for p in _unswap(hits, br.swapped) if _in_box(p, n_box)]
                    curve_points.update(boxed)
                    curve_dicts.append(
                        {"poly": cov.pretty(), "points": sorted([list(p) for p in boxed])}
                    )
                piece_reports.append(
                    PieceReport(interval, piece.flags, "cover", len(cert.curves), budget, curve_dicts)
                )
            else:
                k_large = piece.minimal_large_index() or 1
                if not large_interval_check(piece, k_large, spec.X, delta):
                    warnings.append(
                        f"large-derivative piece {interval} exceeds 2/delta"
                    )
                    ok = False
                boxed = [p for p in _unswap(pts, br.swapped) if _in_box(p, n_box)]
                direct_points.update(boxed)
                piece_reports.append(
                    PieceReport(interval, piece.flags, "enumerate", 0, None, [], boxed)
                )
        branch_reports.append(BranchReport(br.describe(), certificates, piece_reports))

    boxed_direct = {p for p in direct_points if _in_box(p, n_box)}
    boxed_curve = {p for p in curve_points if _in_box(p, n_box)}
    exceptions = sorted(boxed_direct - boxed_curve)
    total = len(boxed_curve) + len(exceptions)

    if compare_oracle and oracle_total != total:
        warnings.append(f"oracle mismatch: pipeline {total} vs sweep {oracle_total}")
        ok = False

    return CountReport(
        parameters={
            "poly": g.pretty(),
            "N": n_box,
            "d": d,
            "ell": ell,
            "delta": str(delta),
            "box": "{1..N}^2",
        },
        total=total,
        oracle_total=oracle_total,
        per_branch=branch_reports,
        exceptions=exceptions,
        warnings=warnings,
        ok=ok,
        curve_points=sorted(boxed_curve),
    )
