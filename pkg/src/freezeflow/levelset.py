"""Exact level-set solution of the coupled transport system with freezing.

The system

    v_t = -v_x 1{v > w},   w_t = w_x 1{v > w},   v >= w,

admits a closed-form solution through the annihilation dynamics of level
sets: the sublevel set {v(.,0) <= b} translates right at speed 1, the
superlevel set {w(.,0) >= b} translates left at speed 1, and wherever the
two meet they erode at equal rates.  A point x of the sublevel set survives
until time (alpha_v(b,x) - x) / 2, where alpha_v is the first position at
which the running integral of

    K(z) = 1{v(z,0) <= b} - 1{w(z,0) >= b}

(plus boundary indicators on a segment domain) dips strictly below zero.
The solution values are recovered by monotone inversion in b:

    v(x,t) = inf{b : x in A(v,b,t)},     w(x,t) = sup{b : x in A(w,b,t)}.

For piecewise-linear data everything here is computed exactly: K is
piecewise constant, its antiderivative G is piecewise linear with slopes in
{-1, 0, 1}, and survival thresholds are solved segment by segment in closed
form.  Only the final inversion in b uses bisection, with a user-set
tolerance.

Empty-set convention: if the running integral never goes negative the point
is never annihilated, so alpha_v returns +inf (alpha_w returns -inf) and the
survival condition holds for all times t.  This is the operational reading
of the annihilation dynamics; it keeps never-matched points moving forever.
"""

from __future__ import annotations

import math
import os
from bisect import bisect_right
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .intervals import IntervalUnion
from .problem import ProblemSpec, PiecewiseLinear, validate

INF = math.inf

_MAX_BISECT = 60
_CACHE_CAP = 400_000


# ---------------------------------------------------------------------------
# Extended level sets and the piecewise-constant integrand
# ---------------------------------------------------------------------------


def _merge_sorted(pairs: list) -> list:
    out: list = []
    for lo, hi in pairs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def extended_level_sets(spec: ProblemSpec, b: float) -> Tuple[list, list]:
    """Time-0 sublevel set of v0 and superlevel set of w0, with boundary tails.

    On a segment domain the sets are extended by (-inf, a1] (sublevel side)
    and [a2, +inf) (superlevel side); this encodes the boundary conditions as
    permanent feeder tails and makes the whole-line formulas apply verbatim.
    """
    if spec.domain.is_segment:
        a1, a2 = spec.domain.a1, spec.domain.a2
        blue = [(-INF, a1)] + spec.v0.sublevel_intervals(b, domain=(a1, a2))
        red = spec.w0.superlevel_intervals(b, domain=(a1, a2)) + [(a2, INF)]
        return _merge_sorted(blue), _merge_sorted(red)
    # level-interval lists come back sorted and merged already
    return spec.v0.sublevel_intervals(b), spec.w0.superlevel_intervals(b)


def _k_regions(blue: Sequence[Tuple[float, float]], red: Sequence[Tuple[float, float]]):
    """Nodes and region values of K = 1_blue - 1_red.

    Returns (nodes, kvals): nodes is the sorted list of finite endpoints and
    kvals[i] is K on the open region between nodes[i-1] and nodes[i]
    (kvals[0] is the region left of all nodes, kvals[-1] right of all).
    Zero-length intervals carry no measure and do not affect K.
    """
    ends = set()
    for lo, hi in blue:
        if math.isfinite(lo):
            ends.add(lo)
        if math.isfinite(hi):
            ends.add(hi)
    for lo, hi in red:
        if math.isfinite(lo):
            ends.add(lo)
        if math.isfinite(hi):
            ends.add(hi)
    nodes = sorted(ends)
    index_of = {x: i for i, x in enumerate(nodes)}
    kvals = [0] * (len(nodes) + 1)
    for intervals, delta in ((blue, 1), (red, -1)):
        for lo, hi in intervals:
            if hi - lo <= 0.0:
                continue
            il = -1 if lo == -INF else index_of[lo]
            ih = len(nodes) if hi == INF else index_of[hi]
            for r in range(il + 1, ih + 1):
                kvals[r] += delta
    return nodes, kvals


def _alpha_scan(nodes, kvals, x: float) -> float:
    """First y >= x where the running integral of K from x dips below zero."""
    g = 0.0
    pos = x
    idx = bisect_right(nodes, x)
    while True:
        seg_end = nodes[idx] if idx < len(nodes) else INF
        k = kvals[idx]
        length = seg_end - pos
        if k < 0:
            if g < length:
                return pos + g
            g -= length
        elif k > 0:
            if length == INF:
                return INF
            g += length
        if seg_end == INF:
            return INF
        pos = seg_end
        idx += 1


def alpha_v(spec: ProblemSpec, b: float, x: float) -> float:
    """Annihilation partner bound for a sublevel point: inf over y >= x of
    the first strict sign change of the running indicator integral.
    Returns +inf when the point is never matched."""
    blue, red = extended_level_sets(spec, b)
    nodes, kvals = _k_regions(blue, red)
    return _alpha_scan(nodes, kvals, x)


def alpha_w(spec: ProblemSpec, b: float, x: float) -> float:
    """Mirror image of alpha_v: sup over y <= x of the first strictly
    positive running integral, -inf when never positive.

    Computed by reflecting space: with K~(u) = -K(-u) the mirrored scan for
    a strict dip below zero finds exactly the reflected matching point.
    """
    blue, red = extended_level_sets(spec, b)
    nodes, kvals = _k_regions(blue, red)
    nodes_r = [-n for n in reversed(nodes)]
    kvals_r = [-k for k in reversed(kvals)]
    return -_alpha_scan(nodes_r, kvals_r, -x)


# ---------------------------------------------------------------------------
# Level slices: survival structure of one level set at one value b
# ---------------------------------------------------------------------------


class _LevelSlice:
    """Survival structure of the (right-moving) sublevel side at a fixed b.

    For each maximal interval [p, q] of the moving set, survival time as a
    function of the starting point x is t_max(x) = (alpha(x) - x) / 2, a
    decreasing piecewise-linear function of x.  The pieces are computed once
    by walking the integrand profile to the right of q; queries are then
    O(log n).  The left-moving superlevel side reuses this via reflection.
    """

    __slots__ = ("components", "comp_los")

    def __init__(self, blue, nodes, kvals):
        self.components = []
        for (p, q) in blue:
            self.components.append(_component_structure(nodes, kvals, p, q))
        self.comp_los = [c[0] for c in self.components]

    def membership(self, x0: float, t: float) -> bool:
        """Is the point starting at x0 still alive (untransported label) at t?

        Ties t == t_max use the closed convention of the set formulas; they
        are a measure-zero family in b except for queries at an exact segment
        endpoint, which the field evaluator nudges into the interior.
        """
        i = bisect_right(self.comp_los, x0) - 1
        if i < 0:
            return False
        p, q, pieces, c_end = self.components[i]
        if x0 > q:
            return False
        if q == INF or t <= 0.0:
            return True
        c = x0 - q
        if c <= c_end:
            return True
        # pieces are (c_hi, c_lo, y_base) with c_hi descending from 0
        for c_hi, c_lo, y_base in pieces:
            if c > c_lo:
                t_max = (y_base + c_hi - c - x0) * 0.5
                return t <= t_max
        return False

    def survivors(self, t: float) -> List[Tuple[float, float]]:
        """Pre-transport surviving sub-intervals [p, x*] per component."""
        if t <= 0.0:
            return [(p, q) for (p, q, _, _) in self.components]
        out = []
        for p, q, pieces, c_end in self.components:
            if q == INF:
                out.append((p, q))
                continue
            cutoff = _component_cutoff(p, q, pieces, c_end, t)
            if cutoff is not None:
                out.append((p, cutoff))
        return out


def _component_structure(nodes, kvals, p, q):
    """Alpha pieces for one component [p, q] of the moving set.

    Levels are parameterized by c = x - q in [c_floor, 0]; piece
    (c_hi, c_lo, y_base) encodes alpha(c) = y_base + (c_hi - c) for
    c in (c_lo, c_hi].  Levels c <= c_end are never annihilated.
    """
    if q == INF:
        return (p, q, (), -INF)
    c_floor = p - q  # -inf for a lower-tail component
    pieces = []
    mcur = 0.0
    gs = 0.0
    pos = q
    idx = bisect_right(nodes, q)
    while True:
        seg_end = nodes[idx] if idx < len(nodes) else INF
        k = kvals[idx]
        length = seg_end - pos
        if k < 0:
            lo_level = gs - length  # -inf on an infinite descent
            hi_level = mcur if mcur < gs else gs
            if hi_level > lo_level:
                y_base = pos + (gs - hi_level)
                pieces.append((hi_level, lo_level, y_base))
            if lo_level < mcur:
                mcur = lo_level
            if mcur < c_floor or length == INF:
                break
            gs -= length
        elif k > 0:
            if length == INF:
                break
            gs += length
        else:
            if length == INF:
                break
        pos = seg_end
        idx += 1
    return (p, q, tuple(pieces), mcur)


def _component_cutoff(p, q, pieces, c_end, t):
    """Largest surviving label x* in [p, q] at time t, or None if none."""
    prev_c_lo = 0.0
    first = True
    for c_hi, c_lo, y_base in pieces:
        t_top = (y_base - q - c_hi) * 0.5          # t_max at c = c_hi (x = q + c_hi)
        t_bot = (y_base + c_hi - q - 2.0 * c_lo) * 0.5  # t_max limit at c = c_lo
        if first and t <= t_top:
            return q
        if not first and t <= t_top:
            # t falls in the upward jump between the previous piece and this one
            x_star = q + prev_c_lo
            return x_star if (p == -INF or x_star >= p) else None
        if t <= t_bot:
            c_star = (y_base + c_hi - q) * 0.5 - t
            x_star = q + c_star
            return x_star if (p == -INF or x_star >= p) else None
        prev_c_lo = c_lo
        first = False
    # below all pieces only the immortal levels c <= c_end remain
    if c_end == -INF:
        return None
    x_star = q + c_end
    if p == -INF or x_star >= p:
        return x_star
    return None


class _LevelPair:
    """Both survival slices at one level b, sharing the integrand regions.

    The superlevel side is the mirror image of the sublevel side: with
    K~(u) = -K(-u) the left-moving set becomes a right-moving one, so a
    single slice implementation serves both after reflection.
    """

    __slots__ = ("blue", "red", "nodes", "kvals", "_v", "_w")

    def __init__(self, spec: ProblemSpec, b: float):
        self.blue, self.red = extended_level_sets(spec, b)
        self.nodes, self.kvals = _k_regions(self.blue, self.red)
        self._v: Optional[_LevelSlice] = None
        self._w: Optional[_LevelSlice] = None

    def vslice(self) -> _LevelSlice:
        if self._v is None:
            self._v = _LevelSlice(self.blue, self.nodes, self.kvals)
        return self._v

    def wslice(self) -> _LevelSlice:
        if self._w is None:
            blue_r = [(-hi, -lo) for lo, hi in reversed(self.red)]
            nodes_r = [-n for n in reversed(self.nodes)]
            kvals_r = [-k for k in reversed(self.kvals)]
            self._w = _LevelSlice(blue_r, nodes_r, kvals_r)
        return self._w


def _v_slice(spec: ProblemSpec, b: float) -> _LevelSlice:
    return _LevelPair(spec, b).vslice()


def _w_slice(spec: ProblemSpec, b: float) -> _LevelSlice:
    return _LevelPair(spec, b).wslice()


def sublevel_set(spec: ProblemSpec, b: float, t: float) -> IntervalUnion:
    """A(v,b,t): surviving sublevel points transported to the right by t."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    sl = _v_slice(spec, b)
    moved = [(lo + t, hi + t) for lo, hi in sl.survivors(t)]
    out = IntervalUnion(moved)
    if spec.domain.is_segment:
        out = out.clip(spec.domain.a1, spec.domain.a2)
    return out


def superlevel_set(spec: ProblemSpec, b: float, t: float) -> IntervalUnion:
    """A(w,b,t): surviving superlevel points transported to the left by t."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    sl = _w_slice(spec, b)
    moved = IntervalUnion([(lo + t, hi + t) for lo, hi in sl.survivors(t)]).reflect()
    if spec.domain.is_segment:
        moved = moved.clip(spec.domain.a1, spec.domain.a2)
    return moved


# ---------------------------------------------------------------------------
# Localization of whole-line data
# ---------------------------------------------------------------------------


def localize(spec: ProblemSpec, b_extent: float) -> ProblemSpec:
    """Replace data outside [-b_extent, b_extent] by maximal-slope cones.

    v0 continues with slopes -lam (left) and +lam (right); w0 with +lam and
    -lam, so the gap grows linearly outward.  Inside the triangle of
    determinacy {(x,t): -b_extent + t < x < b_extent - t} the solution
    coincides with the one for the original data.
    """
    if spec.domain.is_segment:
        raise ValueError("localize applies to whole-line problems only")
    if not b_extent > 0:
        raise ValueError("b_extent must be positive")
    lam = spec.lipschitz
    b = float(b_extent)

    def clipped(f: PiecewiseLinear, left_slope, right_slope):
        xs = [x for x in f.xs if -b < x < b]
        xs = [-b] + xs + [b]
        ys = [f(x) for x in xs]
        return PiecewiseLinear(xs, ys, left_slope, right_slope)

    v0 = clipped(spec.v0, -lam, lam)
    w0 = clipped(spec.w0, lam, -lam)
    return ProblemSpec(spec.domain, v0, w0)


# ---------------------------------------------------------------------------
# Solution field
# ---------------------------------------------------------------------------


class SolutionField:
    """Query object for v(x,t), w(x,t) and level sets of one problem.

    Values are recovered by bisection in b over the monotone membership
    predicate; the absolute tolerance is ``tolerance`` scaled by the value
    range over the query's triangle of determinacy.  The object is immutable
    and all queries are pure, so concurrent reads are safe; the level-slice
    cache is a pure memoization keyed by b.

    The integrand sweep integrates the linear extension tails exactly, so no
    automatic localization is needed for far-out whole-line queries;
    ``localization_margin`` is kept for callers that pre-localize with
    ``localize`` and want a recorded margin.
    """

    def __init__(
        self,
        spec: ProblemSpec,
        tolerance: float = 1e-10,
        localization_margin: float = 1.0,
        strict: bool = True,
    ):
        if not tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not localization_margin > 0:
            raise ValueError("localization_margin must be positive")
        if strict:
            report = validate(spec)
            hard = report.errors()
            if hard:
                raise ValueError(f"inadmissible problem: {[i.message for i in hard]}")
        self.spec = spec
        self.tolerance = float(tolerance)
        self.localization_margin = float(localization_margin)
        self._cache: dict = {}

    # -- slices ----------------------------------------------------------

    def _pair(self, b: float) -> _LevelPair:
        pair = self._cache.get(b)
        if pair is None:
            if len(self._cache) > _CACHE_CAP:
                self._cache.clear()
            pair = _LevelPair(self.spec, b)
            self._cache[b] = pair
        return pair

    def member_v(self, x: float, t: float, b: float) -> bool:
        x = self._nudge(x)
        return self._pair(b).vslice().membership(x - t, t)

    def member_w(self, x: float, t: float, b: float) -> bool:
        x = self._nudge(x)
        return self._pair(b).wslice().membership(-(x + t), t)

    # -- brackets ----------------------------------------------------------

    def _bracket(self, x: float, t: float) -> Tuple[float, float]:
        dom = self.spec.domain
        lo_x, hi_x = x - t, x + t
        if dom.is_segment:
            lo_x, hi_x = max(lo_x, dom.a1), min(hi_x, dom.a2)
        v_lo, v_hi = self.spec.v0.min_max_on(lo_x, hi_x)
        w_lo, w_hi = self.spec.w0.min_max_on(lo_x, hi_x)
        return min(v_lo, w_lo), max(v_hi, w_hi)

    def _check_point(self, x: float, t: float):
        if t < 0:
            raise ValueError("t must be nonnegative")
        if not self.spec.domain.contains(x):
            raise ValueError(f"query x={x:g} outside the domain")

    def _nudge(self, x: float) -> float:
        """Move exact segment-endpoint queries a hair into the interior.

        At an exact endpoint the boundary feeder makes survival ties persist
        over a whole range of levels, which would drag the inverted value to
        a bisection bracket edge; the solution is continuous, so the nudge
        changes the value by less than the tolerance.
        """
        dom = self.spec.domain
        if not dom.is_segment:
            return x
        delta = 1e-11 * (dom.a2 - dom.a1)
        return min(max(x, dom.a1 + delta), dom.a2 - delta)

    # -- point evaluation ---------------------------------------------------

    def eval_v(self, x: float, t: float, bracket: Optional[Tuple[float, float]] = None) -> float:
        self._check_point(x, t)
        lo, hi = bracket if bracket is not None else self._bracket(x, t)
        tol = self.tolerance * max(1.0, hi - lo)
        pad = 1e-9 * (1.0 + abs(lo) + abs(hi)) + 4.0 * tol
        lo -= pad
        hi += pad
        cache = self._cache
        spec = self.spec
        x0 = self._nudge(x) - t
        for _ in range(_MAX_BISECT):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            pair = cache.get(mid)
            if pair is None:
                if len(cache) > _CACHE_CAP:
                    cache.clear()
                pair = _LevelPair(spec, mid)
                cache[mid] = pair
            if pair.vslice().membership(x0, t):
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    def eval_w(self, x: float, t: float, bracket: Optional[Tuple[float, float]] = None) -> float:
        self._check_point(x, t)
        lo, hi = bracket if bracket is not None else self._bracket(x, t)
        tol = self.tolerance * max(1.0, hi - lo)
        pad = 1e-9 * (1.0 + abs(lo) + abs(hi)) + 4.0 * tol
        lo -= pad
        hi += pad
        cache = self._cache
        spec = self.spec
        xr = -(self._nudge(x) + t)
        for _ in range(_MAX_BISECT):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            pair = cache.get(mid)
            if pair is None:
                if len(cache) > _CACHE_CAP:
                    cache.clear()
                pair = _LevelPair(spec, mid)
                cache[mid] = pair
            if pair.wslice().membership(xr, t):
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def eval_pair(self, x: float, t: float) -> Tuple[float, float]:
        br = self._bracket(x, t)
        return self.eval_v(x, t, br), self.eval_w(x, t, br)

    # -- sets --------------------------------------------------------------

    def sublevel_set(self, b: float, t: float) -> IntervalUnion:
        return sublevel_set(self.spec, b, t)

    def superlevel_set(self, b: float, t: float) -> IntervalUnion:
        return superlevel_set(self.spec, b, t)

    # -- grid evaluation -----------------------------------------------------

    def eval_grid(
        self, xs: Sequence[float], ts: Sequence[float]
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Dense evaluation; V[i][j] = v(xs[j], ts[i]), likewise W.

        Uses one shared bisection bracket across the grid so the slice cache
        is reused; output is identical to pointwise calls up to tolerance and
        independent of evaluation order.  FT_THREADS > 1 parallelizes over
        rows with a deterministic assembly.
        """
        xs = [float(x) for x in xs]
        ts = [float(t) for t in ts]
        if any(t < 0 for t in ts):
            raise ValueError("times must be nonnegative")
        if not all(self.spec.domain.contains(x) for x in xs):
            raise ValueError("grid x outside the domain")
        t_hi = max(ts) if ts else 0.0
        lo_x = min(xs) - t_hi if xs else 0.0
        hi_x = max(xs) + t_hi if xs else 0.0
        dom = self.spec.domain
        if dom.is_segment:
            lo_x, hi_x = max(lo_x, dom.a1), min(hi_x, dom.a2)
        v_lo, v_hi = self.spec.v0.min_max_on(lo_x, hi_x)
        w_lo, w_hi = self.spec.w0.min_max_on(lo_x, hi_x)
        bracket = (min(v_lo, w_lo), max(v_hi, w_hi))
        V = np.empty((len(ts), len(xs)))
        W = np.empty((len(ts), len(xs)))

        def fill_row(i: int):
            t = ts[i]
            ev, ew = self.eval_v, self.eval_w
            for j, x in enumerate(xs):
                V[i, j] = ev(x, t, bracket)
                W[i, j] = ew(x, t, bracket)

        n_threads = int(os.environ.get("FT_THREADS", "1") or "1")
        if n_threads > 1 and len(ts) > 1:
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=n_threads) as pool:
                list(pool.map(fill_row, range(len(ts))))
        else:
            for i in range(len(ts)):
                fill_row(i)
        return V, W

    # -- misc ---------------------------------------------------------------

    def zone_epsilon(self) -> float:
        lo, hi = self.spec.breakpoint_span()
        pad = max(1.0, hi - lo)
        v_lo, v_hi = self.spec.v0.min_max_on(lo - pad, hi + pad)
        w_lo, w_hi = self.spec.w0.min_max_on(lo - pad, hi + pad)
        scale = max(1.0, max(v_hi, w_hi) - min(v_lo, w_lo))
        return 10.0 * self.tolerance * scale
