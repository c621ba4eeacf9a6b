"""Morrey norms of radial piecewise-power functions on R^d.

A function is a finite list of pieces ``c * |x|^alpha`` on disjoint radial
shells ``[lo, hi)``; gaps between pieces are zero.  Every ball integral of
such a function is a sum of closed-form power antiderivatives, so ball values
are exact up to rounding.  What remains numerical is the supremum over balls:

* centered balls (``local_norm_radial``, any d): the ball value is a smooth
  function of the radius on each shell with at most one stationary point,
  which is found in closed form;
* arbitrary intervals in d = 1 (``global_norm_1d``): a grid over
  (center, radius) with golden-section refinement, plus the two asymptotic
  regimes r -> 0 at the origin and r -> inf, which are scale invariant and
  reduce to a one-variable problem over ``center / radius``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, Divergent, IncompatiblePieces, MorreyError, Unbounded
from .params import MorreyParams

INF = math.inf
# exponents this close to zero are treated as exactly scale invariant
SCALE_EPS = 1e-12


class Piece(NamedTuple):
    lo: float
    hi: float
    c: float
    alpha: float


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere in R^d (2 when d = 1)."""
    return 2.0 * math.pi ** (d / 2) / math.gamma(d / 2)


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


class PiecewisePowerFn:
    """Radial function ``x -> c_i |x|^alpha_i`` for ``|x|`` in ``[lo_i, hi_i)``."""

    __slots__ = ("pieces", "d")

    def __init__(self, pieces=(), d: int = 1):
        raw = sorted(Piece(float(lo), float(hi), float(c), float(a)) for lo, hi, c, a in pieces)
        for pc in raw:
            if not (0 <= pc.lo < pc.hi) or math.isnan(pc.hi):
                raise MorreyError(f"bad radial interval [{pc.lo}, {pc.hi})")
        for left, right in zip(raw, raw[1:]):
            if right.lo < left.hi:
                raise MorreyError(f"overlapping pieces {left} and {right}")
        merged: list[Piece] = []
        for pc in raw:
            if pc.c == 0:
                continue
            if merged and merged[-1].hi == pc.lo and merged[-1][2:] == pc[2:]:
                merged[-1] = merged[-1]._replace(hi=pc.hi)
            else:
                merged.append(pc)
        self.pieces = tuple(merged)
        self.d = int(d)

    @classmethod
    def power(cls, alpha, c=1.0, d=1, lo=0.0, hi=INF):
        return cls([(lo, hi, c, alpha)], d=d)

    def __call__(self, s: float) -> float:
        s = abs(s)
        for pc in self.pieces:
            if pc.lo <= s < pc.hi:
                return pc.c * s**pc.alpha
        return 0.0

    def is_zero(self) -> bool:
        return not self.pieces

    def breakpoints(self) -> list[float]:
        pts = {b for pc in self.pieces for b in (pc.lo, pc.hi) if b != INF}
        return sorted(pts)

    def segments(self) -> list[Piece]:
        """Partition of ``[0, inf)`` into the pieces and zero-valued gaps."""
        out, s = [], 0.0
        for pc in self.pieces:
            if pc.lo > s:
                out.append(Piece(s, pc.lo, 0.0, 0.0))
            out.append(pc)
            s = pc.hi
        if s < INF:
            out.append(Piece(s, INF, 0.0, 0.0))
        return out

    def __eq__(self, other):
        if not isinstance(other, PiecewisePowerFn):
            return NotImplemented
        return self.d == other.d and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.d, self.pieces))

    def __repr__(self):
        return f"PiecewisePowerFn({list(map(tuple, self.pieces))}, d={self.d})"

    def __mul__(self, t):
        return PiecewisePowerFn([pc._replace(c=pc.c * t) for pc in self.pieces], d=self.d)

    __rmul__ = __mul__

    def __truediv__(self, t):
        return self * (1.0 / t)

    def __neg__(self):
        return self * -1.0

    def __add__(self, other):
        return combine_fn(1.0, self, 1.0, other)

    def __sub__(self, other):
        return combine_fn(1.0, self, -1.0, other)


def combine_fn(a, u: PiecewisePowerFn, b, v: PiecewisePowerFn) -> PiecewisePowerFn:
    """``a*u + b*v`` on the common refinement of the two partitions."""
    if u.d != v.d:
        raise DimensionMismatch(f"dimensions {u.d} and {v.d} differ")
    cuts = sorted({0.0, INF, *u.breakpoints(), *v.breakpoints()})
    out = []
    for lo, hi in zip(cuts, cuts[1:]):
        pu, pv = _covering(u, lo), _covering(v, lo)
        cu = a * pu.c if pu else 0.0
        cv = b * pv.c if pv else 0.0
        if cu and cv:
            if pu.alpha != pv.alpha:
                raise IncompatiblePieces(
                    f"exponents {pu.alpha} and {pv.alpha} overlap on [{lo}, {hi})"
                )
            out.append((lo, hi, cu + cv, pu.alpha))
        elif cu:
            out.append((lo, hi, cu, pu.alpha))
        elif cv:
            out.append((lo, hi, cv, pv.alpha))
    return PiecewisePowerFn(out, d=u.d)


def _covering(fn: PiecewisePowerFn, s: float) -> Piece | None:
    for pc in fn.pieces:
        if pc.lo <= s < pc.hi:
            return pc
    return None


def scale(fn: PiecewisePowerFn, t: float, params: MorreyParams) -> PiecewisePowerFn:
    """``x -> t^(d/q) fn(t x)``; leaves every Morrey norm unchanged."""
    if t <= 0:
        raise MorreyError("scale factor must be positive")
    d = fn.d
    return PiecewisePowerFn(
        [(pc.lo / t, pc.hi / t, pc.c * t ** (d / params.q + pc.alpha), pc.alpha) for pc in fn.pieces],
        d=d,
    )


def _moment(cp: float, beta: float, lo: float, hi: float) -> float:
    """``cp * integral_lo^hi s^(beta-1) ds``."""
    if cp == 0 or lo >= hi:
        return 0.0
    if hi == INF:
        if beta >= 0 or lo == 0:
            raise Divergent(f"integral of s^{beta - 1} to infinity diverges")
        return cp * lo**beta / -beta
    if lo == 0:
        if beta <= 0:
            raise Divergent(f"integral of s^{beta - 1} at the origin diverges")
        return cp * hi**beta / beta
    if beta == 0:
        return cp * math.log(hi / lo)
    return cp * lo**beta * math.expm1(beta * math.log(hi / lo)) / beta


def piece_integral(c, alpha, p, s_lo, s_hi, d) -> float:
    """Integral of ``|c|^p |y|^(alpha p)`` over the shell ``s_lo <= |y| < s_hi`` in R^d."""
    if not 0 <= s_lo < s_hi:
        raise MorreyError(f"need 0 <= s_lo < s_hi, got [{s_lo}, {s_hi})")
    return sphere_area(d) * _moment(abs(c) ** p, alpha * p + d, s_lo, s_hi)


def _radial_moment(fn: PiecewisePowerFn, p, s0: float, s1: float, d: int) -> float:
    """``integral_s0^s1 |fn(s)|^p s^(d-1) ds`` (no sphere factor)."""
    total = 0.0
    for pc in fn.pieces:
        lo, hi = max(pc.lo, s0), min(pc.hi, s1)
        if lo < hi:
            total += _moment(abs(pc.c) ** p, pc.alpha * p + d, lo, hi)
    return total


@dataclass(frozen=True)
class IntervalBall:
    center: float
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise MorreyError("ball radius must be positive")

    def as_dict(self) -> dict:
        return {"center": self.center, "radius": self.radius}


def _interval_mass(fn: PiecewisePowerFn, p, lo: float, hi: float) -> float:
    if lo >= 0:
        return _radial_moment(fn, p, lo, hi, 1)
    if hi <= 0:
        return _radial_moment(fn, p, -hi, -lo, 1)
    return _radial_moment(fn, p, 0.0, -lo, 1) + _radial_moment(fn, p, 0.0, hi, 1)


def _check_1d(fn: PiecewisePowerFn, params: MorreyParams):
    if fn.d != 1 or params.d != 1:
        raise DimensionMismatch("interval balls need d = 1")


def ball_value_1d(fn: PiecewisePowerFn, ball: IntervalBall, params: MorreyParams) -> float:
    """``|B|^(1/q - 1/p) (integral_B |fn|^p)^(1/p)`` for ``B = (a - r, a + r)``."""
    _check_1d(fn, params)
    a, r = ball.center, ball.radius
    mass = _interval_mass(fn, params.p, a - r, a + r)
    return (2.0 * r) ** params.exponent * mass ** (1.0 / params.p)


@dataclass(frozen=True)
class NormEstimate:
    """Best ball value found.

    ``limit`` is set when the supremum is a limit (``"r->0"`` or ``"r->inf"``)
    rather than a value attained at ``witness``.
    """

    value: float
    witness: IntervalBall | float | None
    tolerance: float
    evaluations: int
    limit: str | None = None

    def as_dict(self) -> dict:
        w = self.witness
        if isinstance(w, IntervalBall):
            w = w.as_dict()
        return {
            "value": self.value,
            "witness": w,
            "tolerance": self.tolerance,
            "evaluations": self.evaluations,
            "limit": self.limit,
        }


@dataclass(frozen=True)
class OptimizerConfig:
    r_min: float = 1e-4
    r_max: float = 1e4
    r_points: int = 65
    center_offsets: tuple = (0.0, 0.5, 1.0, 2.0)
    tol: float = 1e-8
    refine_starts: int = 4
    max_rounds: int = 30
    u_max: float = 4.0
    u_points: int = 81


def _scale_exponent(alpha: float, params: MorreyParams, d: int) -> float:
    """Power of the ball value under dilation, for a pure ``|x|^alpha`` piece."""
    return d / params.q + alpha


def _check_origin(fn: PiecewisePowerFn, params: MorreyParams):
    head = fn.pieces[0]
    if head.lo == 0 and head.alpha * params.p + fn.d <= 0:
        raise Divergent(f"|x|^({head.alpha}p) is not integrable at the origin for p={params.p}")
    if head.lo == 0 and _scale_exponent(head.alpha, params, fn.d) < -SCALE_EPS:
        raise Unbounded("ball values blow up as balls shrink to the origin")
    tail = fn.pieces[-1]
    if tail.hi == INF and _scale_exponent(tail.alpha, params, fn.d) > SCALE_EPS:
        raise Unbounded("ball values grow without bound as the radius grows")
    if params.p == params.q and tail.hi == INF and tail.alpha * params.p + fn.d >= 0:
        raise Unbounded("infinite L^p mass at infinity")


def _golden_max(f, lo: float, hi: float, tol: float, max_iter: int = 200):
    """Golden-section search for a maximum of ``f`` on ``[lo, hi]``."""
    inv = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - inv * (hi - lo), lo + inv * (hi - lo)
    f1, f2 = f(x1), f(x2)
    n = 2
    while hi - lo > tol * (1.0 + abs(lo) + abs(hi)) and n < max_iter:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = f(x2)
        n += 1
    return (x1, f1, n) if f1 >= f2 else (x2, f2, n)


def _pure_power_sup(c: float, alpha: float, params: MorreyParams, opt: OptimizerConfig):
    """Sup over ``u >= 0`` of the value of ``c|y|^alpha`` on the interval ``(u-1, u+1)``.

    For a scale invariant power this is the full Morrey norm, since the value on
    ``(a - r, a + r)`` only depends on ``a / r``.
    """
    fn = PiecewisePowerFn.power(alpha, c)

    def value(u):
        return ball_value_1d(fn, IntervalBall(u, 1.0), params)

    us = np.linspace(0.0, opt.u_max, opt.u_points)
    vals = [value(float(u)) for u in us]
    i = int(np.argmax(vals))
    best_u, best = float(us[i]), vals[i]
    step = us[1] - us[0]
    u, v, n = _golden_max(value, max(0.0, best_u - step), best_u + step, opt.tol)
    if v > best:
        best_u, best = u, v
    return best, best_u, len(us) + n


def global_norm_1d(
    fn: PiecewisePowerFn, params: MorreyParams, opt: OptimizerConfig | None = None
) -> NormEstimate:
    """Morrey norm over all intervals of an even piecewise-power function on R."""
    opt = opt or OptimizerConfig()
    _check_1d(fn, params)
    if fn.is_zero():
        return NormEstimate(0.0, IntervalBall(0.0, 1.0), 0.0, 0)
    _check_origin(fn, params)
    p = params.p

    if params.p == params.q:
        # intervals only gain mass as they grow, so the norm is the L^p norm
        mass = 2.0 * _radial_moment(fn, p, 0.0, INF, 1)
        return NormEstimate(mass ** (1.0 / p), IntervalBall(0.0, opt.r_max), 0.0, 1, "r->inf")

    head, tail = fn.pieces[0], fn.pieces[-1]
    if len(fn.pieces) == 1 and head.lo == 0 and head.hi == INF:
        v, u, n = _pure_power_sup(head.c, head.alpha, params, opt)
        return NormEstimate(v, IntervalBall(u, 1.0), opt.tol, n)

    evals = 0

    def value(a, r):
        nonlocal evals
        evals += 1
        return ball_value_1d(fn, IntervalBall(abs(a), r), params)

    # (value, -r, -a) so that ties prefer the smaller radius, then center
    found: list[tuple[float, float, float, str | None]] = []

    rs = np.geomspace(opt.r_min, opt.r_max, opt.r_points)
    anchors = [0.0, *fn.breakpoints()]
    grid = []
    for r in rs:
        r = float(r)
        centers = sorted({abs(b + s * k * r) for b in anchors for k in opt.center_offsets for s in (1, -1)})
        for a in centers:
            grid.append((value(a, r), r, a))
    grid.sort(key=lambda t: (-t[0], t[1], t[2]))
    found.extend((v, r, a, None) for v, r, a in grid[:1])

    h = math.log(rs[1] / rs[0])
    starts, seen = [], set()
    for v, r, a in grid:
        if (r, a) not in seen:
            seen.add((r, a))
            starts.append((v, r, a))
        if len(starts) == opt.refine_starts:
            break
    for v, r, a in starts:
        found.append((*_refine(value, v, r, a, h, opt), None))

    for pc, lim, r in ((head, "r->0", opt.r_min), (tail, "r->inf", opt.r_max)):
        at_edge = pc.lo == 0 if lim == "r->0" else pc.hi == INF
        if at_edge and abs(_scale_exponent(pc.alpha, params, 1)) <= SCALE_EPS:
            v, u, n = _pure_power_sup(pc.c, pc.alpha, params, opt)
            evals += n
            found.append((v, r, u * r, lim))

    v, r, a, lim = max(found, key=lambda t: (t[0], -t[1], -t[2]))
    return NormEstimate(v, IntervalBall(a, r), opt.tol, evals, lim)


def _refine(value, v, r, a, h, opt: OptimizerConfig):
    """Alternating golden-section over the center and the log-radius."""
    x = math.log(r)
    for _ in range(opt.max_rounds):
        start = v
        a1, v1, _ = _golden_max(lambda t: value(t, r), max(0.0, a - r), a + r, opt.tol)
        if v1 > v:
            a, v = a1, v1
        x1, v1, _ = _golden_max(lambda t: value(a, math.exp(t)), x - h, x + h, opt.tol)
        if v1 > v:
            x, v = x1, v1
            r = math.exp(x)
        if v - start <= opt.tol * v:
            break
    return v, r, a


def local_norm_radial(fn: PiecewisePowerFn, params: MorreyParams) -> NormEstimate:
    """Supremum over balls centered at the origin, in any dimension.

    On a shell ``[lo, hi)`` carrying ``c s^alpha`` the centered value is
    ``(v_d r^d)^e (C + A r^beta / beta)^(1/p)`` with ``e = 1/q - 1/p`` and
    ``beta = alpha p + d``; its log-derivative vanishes at most once, where
    ``r^beta = -d e C beta / (A gamma)`` with ``gamma = d/q + alpha``.
    """
    if fn.d != params.d:
        raise DimensionMismatch(f"function has d={fn.d}, params have d={params.d}")
    if fn.is_zero():
        return NormEstimate(0.0, None, 0.0, 0)
    _check_origin(fn, params)
    d, p, e = fn.d, params.p, params.exponent
    vol, sig = unit_ball_volume(d), sphere_area(d)
    evals = 0

    def phi(r, mass):
        nonlocal evals
        evals += 1
        return (vol * r**d) ** e * mass ** (1.0 / p)

    found: list[tuple[float, float, str | None]] = []
    before = 0.0
    for seg in fn.segments():
        lo, hi, c, alpha = seg
        A = sig * abs(c) ** p
        beta = alpha * p + d
        gamma = _scale_exponent(alpha, params, d)

        def mass_at(r):
            return before + sig * _moment(abs(c) ** p, beta, lo, r)

        if lo > 0:
            found.append((phi(lo, before), lo, None))
        if hi < INF:
            found.append((phi(hi, mass_at(hi)), hi, None))
        if A > 0 and e != 0:
            r_star = _stationary_radius(A, beta, gamma, lo, before, d * e, p)
            if r_star is not None and lo < r_star < hi:
                found.append((phi(r_star, mass_at(r_star)), r_star, None))
        if lo == 0 and A > 0 and abs(gamma) <= SCALE_EPS:
            found.append((vol**e * (A / beta) ** (1.0 / p), 0.0, "r->0"))
        if hi == INF:
            found.append((_limit_at_infinity(A, beta, gamma, lo, before, vol, e, p), INF, "r->inf"))
        if hi < INF:
            before = mass_at(hi)

    v, r, lim = max(found, key=lambda t: (t[0], -t[1]))
    return NormEstimate(v, r, 0.0, evals, lim)


def _stationary_radius(A, beta, gamma, lo, before, de, p):
    if abs(gamma) <= SCALE_EPS:
        return None
    if beta == 0:
        c0 = before - A * math.log(lo)
        return math.exp(-(A / p + de * c0) / (de * A))
    c0 = before - (A * lo**beta / beta if lo > 0 else 0.0)
    rhs = -de * c0 * beta / (A * gamma)
    if rhs <= 0:
        return None
    return rhs ** (1.0 / beta)


def _limit_at_infinity(A, beta, gamma, lo, before, vol, e, p):
    if A == 0 or beta < 0:
        total = before + (A * lo**beta / -beta if A else 0.0)
        return 0.0 if e < 0 else total ** (1.0 / p)
    if beta == 0 or gamma < -SCALE_EPS:
        return 0.0
    return vol**e * (A / beta) ** (1.0 / p)
