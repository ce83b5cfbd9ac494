"""Smooth branches y = f(x) of a plane curve, exact implicit derivatives,
derivative level sets, interval partitioning, and box decomposition.

A branch is identified by its curve, an x-interval, and the index of its
y-value among the real roots of the specialized curve; the index is stable
because construction forbids discriminant and leading-coefficient roots
inside the open interval.  Branch values are handled as isolating intervals
and every sign decision is made exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, comb, factorial, floor, gcd as _gcd
from typing import NamedTuple, Optional

from .detmethod import LatticePoint
from .poly2 import BiPoly, divides, ingestion_check, partial, resultant_eliminating_y
from .unipoly import (
    RootInterval,
    UniPoly,
    cauchy_root_bound,
    count_real_roots,
    integer_roots,
    isolate_real_roots,
    poly_gcd,
    rational_root_in,
    refine_disjoint,
    refine_root,
    squarefree_part,
)

_REFINE_DEPTH = 256


class BranchError(ValueError):
    """Invalid branch construction or evaluation."""


class DegenerateLevelSetError(RuntimeError):
    """The level-set polynomial vanished on the whole curve: the normalized
    derivative is identically equal to the requested level, so there is no
    finite solution set to isolate."""


class LevelSetContactError(RuntimeError):
    """A tangential level-set contact at an irrational abscissa could not be
    certified either way within the refinement budget."""


@dataclass(frozen=True)
class AlgebraicBranch:
    """One smooth function branch of `curve` over a closed x-interval.

    `root_index` selects the branch value among the sorted real roots of
    curve(x, .); `root_count` pins the expected number of those roots, which
    is constant on the domain.  `swapped` marks that the frame axes are the
    transpose of the caller's.
    """

    curve: BiPoly
    seed_x: Fraction
    seed_lo: Fraction
    seed_hi: Fraction
    root_index: int
    root_count: int
    domain: tuple[Fraction, Fraction]
    swapped: bool = False

    def length(self) -> Fraction:
        return self.domain[1] - self.domain[0]

    def describe(self) -> dict:
        return {
            "domain": [str(self.domain[0]), str(self.domain[1])],
            "orientation": "y-over-x" if self.swapped else "x-over-y",
            "root_index": self.root_index,
        }


def _isolate_all(u: UniPoly) -> list[RootInterval]:
    bound = int(cauchy_root_bound(u)) + 1
    return isolate_real_roots(u, -bound, bound)


def branch_from_point(
    curve: BiPoly,
    x0: Fraction | int,
    y0: Fraction | int,
    domain: tuple[Fraction | int, Fraction | int],
    swapped: bool = False,
) -> AlgebraicBranch:
    """Construct a branch through the rational curve point (x0, y0).

    Certifies at construction that no discriminant or leading-coefficient
    root lies in the open domain, so the branch function exists and stays
    smooth across it.
    """
    x0, y0 = Fraction(x0), Fraction(y0)
    lo, hi = Fraction(domain[0]), Fraction(domain[1])
    if not lo <= x0 <= hi:
        raise BranchError("seed abscissa outside the domain")
    if curve.evaluate(x0, y0) != 0:
        raise BranchError("seed is not a curve point")
    if curve.degree_y() < 1:
        raise BranchError("curve must depend on y in this orientation")
    if partial(curve, "y").evaluate(x0, y0) == 0:
        raise BranchError("branch is singular/vertical at the seed")
    _certify_smooth_over(curve, lo, hi)
    u = curve.at_x(x0)
    roots = _isolate_all(u)
    idx = next(
        (k for k, r in enumerate(roots) if r.lo <= y0 <= r.hi and (r.is_exact() or u.evaluate(y0) == 0)),
        None,
    )
    if idx is None:
        raise BranchError("seed value is not a root of the specialized curve")
    return AlgebraicBranch(
        curve=curve,
        seed_x=x0,
        seed_lo=y0,
        seed_hi=y0,
        root_index=idx,
        root_count=len(roots),
        domain=(lo, hi),
        swapped=swapped,
    )


@lru_cache(maxsize=64)
def _smoothness_obstructions(curve: BiPoly) -> tuple[UniPoly, ...]:
    """Polynomials whose roots bound where branch structure can change."""
    out: list[UniPoly] = []
    fy = partial(curve, "y")
    if fy.degree_y() >= 1:
        out.append(resultant_eliminating_y(curve, fy))
    elif not fy.is_zero() and fy.degree_x() >= 1:
        out.append(fy.as_unipoly_x())
    lead = curve.y_coefficients()[-1]
    if lead.degree >= 1:
        out.append(lead)
    return tuple(out)


def _certify_smooth_over(curve: BiPoly, lo: Fraction, hi: Fraction) -> None:
    if hi <= lo:
        return
    for obs in _smoothness_obstructions(curve):
        if obs.is_zero():
            raise BranchError("curve fails the smoothness certificate (zero obstruction)")
        # roots strictly inside (lo, hi) are forbidden
        inner = count_real_roots(obs, lo, hi)
        if obs.evaluate(lo) == 0:
            inner -= 1
        if hi > lo and obs.evaluate(hi) == 0:
            inner -= 1
        if inner > 0:
            raise BranchError("branch is singular/vertical inside the requested domain")


def branch_value_bracket(branch: AlgebraicBranch, x0: Fraction | int) -> RootInterval:
    """Isolating interval for the branch value f(x0)."""
    x0 = Fraction(x0)
    lo, hi = branch.domain
    if not lo <= x0 <= hi:
        raise BranchError("abscissa outside the branch domain")
    if x0 == branch.seed_x and branch.seed_lo == branch.seed_hi:
        u = branch.curve.at_x(x0)
        return RootInterval(branch.seed_lo, branch.seed_lo, squarefree_part(u))
    u = branch.curve.at_x(x0)
    roots = _isolate_all(u)
    if len(roots) != branch.root_count:
        raise BranchError("root structure changed inside the domain")
    return roots[branch.root_index]


@lru_cache(maxsize=1024)
def _primitive_int_coeffs(p: UniPoly) -> tuple[int, ...]:
    """Integer coefficients after a positive rescaling (sign-faithful)."""
    denom = 1
    for c in p.coeffs:
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    ints = [int(c * denom) for c in p.coeffs]
    g = 0
    for v in ints:
        g = _gcd(g, v)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)


def _hull_sign(coeffs: tuple[int, ...], lo: Fraction, hi: Fraction) -> Optional[int]:
    """Sign of p on [lo, hi] when the interval enclosure decides it, else None.

    Denominators are cleared once so the Horner recursion runs on integers.
    """
    c = lo.denominator * hi.denominator // _gcd(lo.denominator, hi.denominator)
    a = lo.numerator * (c // lo.denominator)
    b = hi.numerator * (c // hi.denominator)
    qlo = qhi = coeffs[-1]
    power = 1
    for ci in reversed(coeffs[:-1]):
        power *= c
        prods = (qlo * a, qlo * b, qhi * a, qhi * b)
        scaled = ci * power
        qlo, qhi = min(prods) + scaled, max(prods) + scaled
    if qlo > 0:
        return 1
    if qhi < 0:
        return -1
    return None


def branch_sign(branch: AlgebraicBranch, x0: Fraction | int, p: BiPoly) -> int:
    """Exact sign of p(x0, f(x0)) along the branch."""
    x0 = Fraction(x0)
    v = p.at_x(x0)
    bracket = branch_value_bracket(branch, x0)
    return _sign_at_isolated_root(bracket.polynomial, bracket, v)


class BranchPointEvaluator:
    """Sign evaluations of many polynomials at one branch point.

    Shares the progressively refined value bracket across evaluations, so a
    batch of sign queries at the same abscissa refines it only once.
    """

    def __init__(self, branch: AlgebraicBranch, x0: Fraction | int) -> None:
        self.x0 = Fraction(x0)
        self.bracket = refine_root(branch_value_bracket(branch, self.x0), Fraction(1, 16))
        self.u = self.bracket.polynomial

    def sign(self, p: BiPoly, assume_nonzero: bool = False) -> int:
        v = p.at_x(self.x0)
        s, self.bracket = _tracked_sign_at_root(
            self.u, self.bracket, v, assume_nonzero=assume_nonzero
        )
        return s


def branch_value_rational(branch: AlgebraicBranch, x0: Fraction | int) -> Optional[Fraction]:
    """The exact branch value f(x0) when rational, else None (certified)."""
    bracket = branch_value_bracket(branch, Fraction(x0))
    if bracket.is_exact():
        return bracket.lo
    return rational_root_in(branch.curve.at_x(Fraction(x0)), bracket.lo, bracket.hi)


def branch_integer_point(branch: AlgebraicBranch, k: int) -> Optional[LatticePoint]:
    """(k, f(k)) when the branch value at the integer abscissa k is integral."""
    u = branch.curve.at_x(k)
    bracket = refine_root(branch_value_bracket(branch, k), Fraction(1, 2))
    lo, hi = bracket.lo, bracket.hi
    if bracket.is_exact():
        return LatticePoint(k, int(lo)) if lo.denominator == 1 else None
    p = bracket.polynomial
    s_lo = p.evaluate(lo)
    for _ in range(_REFINE_DEPTH):
        lo_c, hi_c = ceil(lo), floor(hi)
        if lo_c > hi_c:
            return None
        found = [c for c in range(lo_c, hi_c + 1) if u.evaluate(c) == 0]
        if found:
            return LatticePoint(k, found[0])
        mid = (lo + hi) / 2
        pm = p.evaluate(mid)
        if pm == 0:
            return LatticePoint(k, int(mid)) if mid.denominator == 1 else None
        if (s_lo > 0) != (pm > 0):
            hi = mid
        else:
            lo, s_lo = mid, pm
    raise BranchError("integer test exceeded the refinement depth limit")


# -- implicit derivative machinery ------------------------------------------


@lru_cache(maxsize=64)
def _curve_parts(curve: BiPoly) -> tuple[BiPoly, BiPoly, BiPoly]:
    fx = partial(curve, "x")
    fy = partial(curve, "y")
    mixed = fy * partial(fx, "y") - fx * partial(fy, "y")
    return fx, fy, mixed


@lru_cache(maxsize=256)
def hk_sequence(curve: BiPoly, kmax: int) -> tuple[BiPoly, ...]:
    """Polynomials H_1..H_kmax with H_k(x, f) + F_y(x, f)^(2k-1) f^(k)(x) = 0
    along any smooth branch y = f(x) of the curve F."""
    if curve.degree < 1:
        raise ValueError("curve must be nonconstant")
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    fx, fy, mixed = _curve_parts(curve)
    if kmax == 1:
        return (fx,)
    prev = hk_sequence(curve, kmax - 1)
    h = prev[-1]
    k = kmax - 1
    nxt = fy * fy * partial(h, "x") - fy * fx * partial(h, "y") - (2 * k - 1) * h * mixed
    return prev + (nxt,)


def _undetermined_taylor(
    curve: BiPoly, at: Fraction, y0: Fraction, kmax: int
) -> list[Fraction]:
    """Taylor coefficients of the branch through (at, y0) by matching powers
    in F(at + s, sum c_i s^i) = 0, one coefficient at a time."""
    fy0 = partial(curve, "y").evaluate(at, y0)
    if fy0 == 0:
        raise BranchError("branch is singular/vertical here")
    coeffs = [y0]
    # expansions of (at + s)^j1 are binomial; series powers of y are rebuilt
    # per step at the needed truncation only
    for k in range(1, kmax + 1):
        acc = Fraction(0)  # coefficient of s^k with c_k set to zero
        ypows: dict[int, list[Fraction]] = {0: [Fraction(1)] + [Fraction(0)] * k}
        base = coeffs + [Fraction(0)] * (k + 1 - len(coeffs))

        def ypow(e: int) -> list[Fraction]:
            if e not in ypows:
                prev = ypow(e - 1)
                cur = [Fraction(0)] * (k + 1)
                for i, a in enumerate(prev):
                    if a:
                        for j2, b in enumerate(base):
                            if i + j2 > k:
                                break
                            cur[i + j2] += a * b
                ypows[e] = cur
            return ypows[e]

        for (j1, j2), c in curve.terms.items():
            yp = ypow(j2)
            for t in range(min(j1, k) + 1):
                acc += c * comb(j1, t) * at ** (j1 - t) * yp[k - t]
        coeffs.append(-acc / fy0)
    return coeffs


def taylor_coefficients(
    branch: AlgebraicBranch, at: Fraction | int, kmax: int
) -> list[Fraction]:
    """Exact [f(at), f'(at), f''(at)/2!, ...] up to order kmax.

    Computed from the implicit-derivative recurrence and cross-validated
    against a power-series expansion with undetermined coefficients.
    """
    at = Fraction(at)
    y0 = branch_value_rational(branch, at)
    if y0 is None:
        raise BranchError("evaluation point must be a rational curve point")
    fy0 = partial(branch.curve, "y").evaluate(at, y0)
    if fy0 == 0:
        raise BranchError("branch is singular/vertical here")
    out = [y0]
    if kmax >= 1:
        for k, hk in enumerate(hk_sequence(branch.curve, kmax), start=1):
            out.append(-hk.evaluate(at, y0) / (factorial(k) * fy0 ** (2 * k - 1)))
    check = _undetermined_taylor(branch.curve, at, y0, kmax) if kmax >= 1 else [y0]
    if check != out:
        raise RuntimeError("implicit-derivative recurrence disagrees with series expansion")
    return out


# -- level sets and partitioning ---------------------------------------------


@lru_cache(maxsize=512)
def _level_curve(curve: BiPoly, i: int, c: Fraction) -> BiPoly:
    """H_i + F_y^(2i-1) * (i! * c): vanishes on branch points with f^(i)/i! = c."""
    hk = hk_sequence(curve, i)[-1]
    fy = partial(curve, "y")
    return hk + fy ** (2 * i - 1) * (factorial(i) * c)


@lru_cache(maxsize=512)
def _level_resultant(curve: BiPoly, i: int, c: Fraction) -> tuple[BiPoly, UniPoly, UniPoly, UniPoly]:
    """(level curve, eliminant, its squarefree part, repeated-root part)."""
    rc = _level_curve(curve, i, c)
    if rc.is_zero() or divides(curve, rc):
        raise DegenerateLevelSetError(
            "degenerate level set: the level curve vanishes on the whole input curve"
        )
    if rc.degree_y() >= 1:
        res = resultant_eliminating_y(curve, rc)
    else:
        res = rc.as_unipoly_x()
    if res.is_zero():
        raise DegenerateLevelSetError("level-set eliminant vanished identically")
    if res.degree < 1:
        return rc, res, UniPoly([1]), UniPoly([1])
    mult = poly_gcd(res, res.derivative())
    ssf = res // mult if mult.degree >= 1 else res
    return rc, res, ssf, mult


def level_set_abscissas(
    branch: AlgebraicBranch, i: int, c: Fraction | int
) -> list[RootInterval]:
    """Isolating intervals for the x in the domain with f^(i)(x)/i! = c."""
    if i < 1:
        raise ValueError("derivative order must be >= 1")
    c = Fraction(c)
    rc, res, ssf, mult = _level_resultant(branch.curve, i, c)
    lo, hi = branch.domain
    if res.degree < 1:
        return []
    if rc.degree_y() < 1:
        # the level curve does not involve y: every eliminant root is on the branch
        return isolate_real_roots(res, lo, hi)
    roots = isolate_real_roots(ssf, lo, hi)
    if not roots:
        return []
    width = min(Fraction(1, 4), (hi - lo) / (4 * len(roots) + 4)) if hi > lo else Fraction(1, 4)
    roots = refine_disjoint(roots, width)
    included: list[RootInterval] = []
    for r in roots:
        if r.is_exact():
            if branch_sign(branch, r.lo, rc) == 0:
                included.append(r)
            continue
        s_lo = branch_sign(branch, r.lo, rc)
        s_hi = branch_sign(branch, r.hi, rc)
        if s_lo == 0 or s_hi == 0:
            raise LevelSetContactError("sample point unexpectedly on the level set")
        if s_lo * s_hi < 0:
            included.append(r)
            continue
        if mult.degree < 1 or count_real_roots(mult, r.lo, r.hi) == 0:
            continue  # simple eliminant root without a crossing: not on this branch
        rr = rational_root_in(r.polynomial, r.lo, r.hi)
        if rr is not None:
            if branch_sign(branch, rr, rc) == 0:
                included.append(RootInterval(rr, rr, r.polynomial))
            continue
        raise LevelSetContactError(
            "cannot certify a tangential level-set contact at an irrational abscissa"
        )
    return included


@dataclass
class Piece:
    """One partition piece with certified small/large flags per derivative order."""

    lo: Fraction
    hi: Fraction
    flags: tuple[str, ...]  # entry i-1 covers derivative order i
    integer_abscissas: tuple[int, ...]
    left_cut: Optional[RootInterval]
    right_cut: Optional[RootInterval]

    def length(self) -> Fraction:
        return self.hi - self.lo

    def all_small(self) -> bool:
        return all(f == "small" for f in self.flags)

    def minimal_large_index(self) -> Optional[int]:
        for i, f in enumerate(self.flags, start=1):
            if f == "large":
                return i
        return None


@dataclass
class IntervalPartition:
    domain: tuple[Fraction, Fraction]
    pieces: list[Piece]
    thresholds: tuple[Fraction, ...]  # N*delta^i for i = 1..D-1


def _root_strictly_inside(r: RootInterval, lo: Fraction, hi: Fraction) -> tuple[bool, RootInterval]:
    """Decide whether the isolated root lies in the open interval (lo, hi)."""
    p = r.polynomial
    for _ in range(_REFINE_DEPTH):
        if r.is_exact():
            return (lo < r.lo < hi), r
        if lo < r.lo and r.hi < hi:
            return True, r
        if r.hi <= lo or r.lo >= hi:
            return False, r
        for edge in (lo, hi):
            if r.lo <= edge <= r.hi and p.evaluate(edge) == 0:
                return False, RootInterval(edge, edge, p)
        r = refine_root(r, r.width / 4)
    raise BranchError("range test exceeded the refinement depth limit")


def _assign_side(cut: RootInterval, k: int) -> int:
    """-1 when the integer k lies left of the isolated cut root, +1 right, 0 equal."""
    if k < cut.lo:
        return -1
    if k > cut.hi:
        return 1
    p = cut.polynomial
    if p.evaluate(k) == 0:
        return 0
    # the cut root and k both lie in [lo, hi]; compare by counting on one side
    return 1 if count_real_roots(p, cut.lo, Fraction(k)) > 0 else -1


def partition_by_bounds(
    branch: AlgebraicBranch, big_d: int, n_box: Fraction | int, delta: Fraction | int
) -> IntervalPartition:
    """Split the branch domain at all |f^(i)/i!| = N*delta^i crossings and
    certify on each piece, for every 1 <= i < D, whether the normalized
    derivative stays below (small) or above (large) the threshold."""
    if big_d < 2:
        raise ValueError("D must be >= 2")
    n_box, delta = Fraction(n_box), Fraction(delta)
    lo, hi = branch.domain
    if delta <= 0 or delta * n_box < 1:
        raise ValueError("delta * N must be at least 1")
    thresholds = tuple(n_box * delta**i for i in range(1, big_d))
    raw_cuts: list[RootInterval] = []
    forced_small: set[int] = set()
    for i in range(1, big_d):
        thr = thresholds[i - 1]
        for c in (thr, -thr):
            try:
                raw_cuts.extend(level_set_abscissas(branch, i, c))
            except DegenerateLevelSetError:
                # f^(i)/i! is identically +-thr on the branch: the closed
                # bound |f^(i)/i!| <= thr holds everywhere, with no cuts
                forced_small.add(i)
    cuts: list[RootInterval] = []
    if raw_cuts:
        for r in refine_disjoint(raw_cuts, Fraction(1, 4)):
            inside, r2 = _root_strictly_inside(r, lo, hi)
            if inside:
                cuts.append(r2)
    fy = partial(branch.curve, "y")

    bounds: list[tuple[Fraction, Fraction, Optional[RootInterval], Optional[RootInterval]]] = []
    prev = lo
    prev_cut: Optional[RootInterval] = None
    for cut in cuts:
        bounds.append((prev, cut.lo, prev_cut, cut))
        prev, prev_cut = cut.hi, cut
    bounds.append((prev, hi, prev_cut, None))

    pieces: list[Piece] = []
    for plo, phi, lcut, rcut in bounds:
        mid = (plo + phi) / 2
        ev = BranchPointEvaluator(branch, mid)
        sfy = ev.sign(fy)
        if sfy == 0:
            raise BranchError("branch derivative degenerate at a piece midpoint")
        flags: list[str] = []
        for i in range(1, big_d):
            if i in forced_small:
                flags.append("small")
                continue
            thr = thresholds[i - 1]
            s_plus = ev.sign(_level_curve(branch.curve, i, thr), assume_nonzero=True)
            s_minus = ev.sign(_level_curve(branch.curve, i, -thr), assume_nonzero=True)
            if s_plus == 0 or s_minus == 0:
                raise BranchError("piece midpoint fell on a level set")
            v_minus_thr = -s_plus * sfy  # sign of f^(i)/i! - thr
            v_plus_thr = -s_minus * sfy  # sign of f^(i)/i! + thr
            flags.append("small" if (v_minus_thr < 0 and v_plus_thr > 0) else "large")
        pieces.append(Piece(plo, phi, tuple(flags), (), lcut, rcut))

    # assign every integer abscissa of the domain to exactly one piece
    assigned: dict[int, list[int]] = {idx: [] for idx in range(len(pieces))}
    for k in range(ceil(lo), floor(hi) + 1):
        idx = 0
        for j, cut in enumerate(cuts):
            side = _assign_side(cut, k)
            if side <= 0:
                idx = j
                break
            idx = j + 1
        assigned[idx].append(k)
    for idx, piece in enumerate(pieces):
        piece.integer_abscissas = tuple(assigned[idx])
    return IntervalPartition((lo, hi), pieces, thresholds)


def large_interval_check(
    piece: Piece, k: int, x_bound: Fraction | int, delta: Fraction | int
) -> bool:
    """Length test |piece| <= 2/delta for a piece whose flags are small below
    level k and large at k (the hypothesis pattern is the caller's duty)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    return piece.length() <= 2 / delta


# -- box decomposition ---------------------------------------------------------


class GraphDecomposition(NamedTuple):
    branches: list[AlgebraicBranch]
    direct_points: list[LatticePoint]


def _roots_in_box(poly: UniPoly, n_box: int) -> list[RootInterval]:
    if poly.is_zero() or poly.degree < 1:
        return []
    return isolate_real_roots(poly, Fraction(0), Fraction(n_box))


def _root_in_closed_range(r: RootInterval, lo: Fraction, hi: Fraction) -> tuple[bool, RootInterval]:
    """Decide whether the isolated root lies in [lo, hi], refining as needed."""
    p = r.polynomial
    for _ in range(_REFINE_DEPTH):
        if r.is_exact():
            return (lo <= r.lo <= hi), r
        if lo <= r.lo and r.hi <= hi:
            return True, r
        if r.hi < lo or r.lo > hi:
            return False, r
        for edge in (lo, hi):
            if r.lo <= edge <= r.hi and p.evaluate(edge) == 0:
                return True, RootInterval(edge, edge, p)
        r = refine_root(r, r.width / 4)
    raise BranchError("range test exceeded the refinement depth limit")


def _tracked_sign_at_root(
    u: UniPoly, r: RootInterval, v: UniPoly, assume_nonzero: bool = False
) -> tuple[int, RootInterval]:
    """Exact sign of v at the root of u isolated by r, plus the refined bracket.

    Zero is decided through the gcd (any common root inside the bracket must
    be the isolated one); a nonzero sign is then certified by shrinking the
    bracket until the integer interval enclosure of v excludes zero.
    """
    if v.is_zero():
        return 0, r
    if r.is_exact():
        val = v.evaluate(r.lo)
        return (val > 0) - (val < 0), r
    if not assume_nonzero and v.degree >= 1:
        g = poly_gcd(u, v)
        if g.degree >= 1 and count_real_roots(g, r.lo, r.hi) > 0:
            return 0, r
    coeffs = _primitive_int_coeffs(v)
    lo, hi = r.lo, r.hi
    s_lo = u.evaluate(lo)
    for _ in range(_REFINE_DEPTH):
        s = _hull_sign(coeffs, lo, hi)
        if s is not None:
            return s, RootInterval(lo, hi, r.polynomial)
        mid = (lo + hi) / 2
        um = u.evaluate(mid)
        if um == 0:
            exact = RootInterval(mid, mid, r.polynomial)
            val = v.evaluate(mid)
            return (val > 0) - (val < 0), exact
        if (s_lo > 0) != (um > 0):
            hi = mid
        else:
            lo, s_lo = mid, um
    raise BranchError("sign refinement exceeded the depth limit")


def _sign_at_isolated_root(u: UniPoly, r: RootInterval, v: UniPoly) -> int:
    return _tracked_sign_at_root(u, r, v)[0]


def _frame_cut_polynomials(curve: BiPoly) -> tuple[list[UniPoly], bool]:
    """Univariate polynomials in x whose roots delimit the frame cells.

    Returns (polynomials, slope_locus_degenerate): the latter is set when
    F_x = +-F_y identically, in which case the whole frame sits on the
    boundary slope and is kept in this orientation.
    """
    out: list[UniPoly] = []
    fy = partial(curve, "y")
    fx = partial(curve, "x")

    def eliminate(p: BiPoly) -> None:
        if p.is_zero():
            return
        if p.degree_y() >= 1:
            res = resultant_eliminating_y(curve, p)
            if res.is_zero():
                raise BranchError("unexpected common component with a derivative locus")
            out.append(res)
        elif p.degree_x() >= 1:
            out.append(p.as_unipoly_x())

    eliminate(fy)
    eliminate(fx)
    degenerate = False
    for s in (fx - fy, fx + fy):
        if s.is_zero():
            degenerate = True
        else:
            eliminate(s)
    lead = curve.y_coefficients()[-1]
    if lead.degree >= 1:
        out.append(lead)
    return out, degenerate


def _decompose_frame(
    curve: BiPoly, n_box: int, swapped: bool
) -> tuple[list[AlgebraicBranch], list[LatticePoint]]:
    """Branches and critical-abscissa integer points for one orientation."""
    if curve.degree_y() < 1:
        return [], []
    polys, slope_degenerate = _frame_cut_polynomials(curve)
    if slope_degenerate and swapped:
        # the slope is identically +-1: the unswapped frame alone covers
        return [], []
    for edge_val in (0, n_box):
        e = curve.at_y(edge_val)
        if e.is_zero():
            raise BranchError("curve contains a horizontal box edge; input is reducible")
        if e.degree >= 1:
            polys.append(e)
    cuts: list[RootInterval] = []
    for p in polys:
        cuts.extend(_roots_in_box(p, n_box))
    cuts = refine_disjoint(cuts, Fraction(1, 4)) if cuts else []

    # an exactly-rational critical abscissa has a width-zero bracket; widen it
    # so neighbouring cells stay strictly clear of the critical point itself
    blocked: list[tuple[Fraction, Fraction]] = []
    for idx, cut in enumerate(cuts):
        if cut.is_exact():
            w = Fraction(1, 4)
            if idx > 0:
                w = min(w, (cut.lo - cuts[idx - 1].hi) / 4)
            if idx + 1 < len(cuts):
                w = min(w, (cuts[idx + 1].lo - cut.hi) / 4)
            blocked.append((cut.lo - w, cut.hi + w))
        else:
            blocked.append((cut.lo, cut.hi))

    # integer columns excluded from the cells are enumerated directly
    direct: list[LatticePoint] = []
    seen: set[int] = set()
    for blo, bhi in blocked:
        for k in range(ceil(max(blo, Fraction(0))), floor(min(bhi, Fraction(n_box))) + 1):
            if k in seen:
                continue
            seen.add(k)
            u = curve.at_x(k)
            if u.is_zero():
                raise BranchError("curve contains a vertical line; input is reducible")
            if u.degree >= 1:
                for yv in integer_roots(u):
                    if 0 <= yv <= n_box:
                        direct.append(LatticePoint(k, yv))

    cells: list[tuple[Fraction, Fraction]] = []
    prev = Fraction(0)
    for blo, bhi in blocked:
        left = min(max(blo, Fraction(0)), Fraction(n_box))
        if left > prev:
            cells.append((prev, left))
        prev = max(prev, min(max(bhi, Fraction(0)), Fraction(n_box)))
    if prev < n_box:
        cells.append((prev, Fraction(n_box)))

    fx = partial(curve, "x")
    fy = partial(curve, "y")
    regime_poly = fx * fx - fy * fy
    branches: list[AlgebraicBranch] = []
    for clo, chi in cells:
        sample = (clo + chi) / 2
        u = curve.at_x(sample)
        if u.is_zero():
            raise BranchError("curve contains a vertical line; input is reducible")
        if u.degree < 1:
            continue
        roots = _isolate_all(u)
        for j, r in enumerate(roots):
            inside, r2 = _root_in_closed_range(r, Fraction(0), Fraction(n_box))
            if not inside:
                continue
            if not slope_degenerate:
                s = _sign_at_isolated_root(u, r2, regime_poly.at_x(sample))
                if s > 0:
                    continue  # the transposed frame covers this piece
                if s == 0:
                    raise BranchError("slope-balance locus met a cell interior")
            branches.append(
                AlgebraicBranch(
                    curve=curve,
                    seed_x=sample,
                    seed_lo=r2.lo,
                    seed_hi=r2.hi,
                    root_index=j,
                    root_count=len(roots),
                    domain=(clo, chi),
                    swapped=swapped,
                )
            )
    return branches, direct


def graph_decompose(curve: BiPoly, n_box: int) -> GraphDecomposition:
    """Cover the curve's integer points in [0, n_box]^2 by oriented branches.

    Each branch is oriented so the implicit derivative satisfies |f'| <= 1;
    integer points at critical abscissas (singular, vertical, slope +-1,
    box-exit and leading-coefficient loci) are returned separately for
    direct counting.
    """
    g = ingestion_check(curve)
    branches: list[AlgebraicBranch] = []
    direct: set[LatticePoint] = set()
    for frame, swapped in ((g, False), (g.swap_xy(), True)):
        br, zone = _decompose_frame(frame, n_box, swapped)
        branches.extend(br)
        for p in zone:
            direct.add(LatticePoint(p.y, p.x) if swapped else p)
    branches.sort(key=lambda b: (b.swapped, b.domain[0], b.root_index))
    return GraphDecomposition(branches, sorted(direct))
