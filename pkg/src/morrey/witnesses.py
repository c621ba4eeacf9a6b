"""Explicit pairs on which the three functionals reach 2, 2 and (nearly) 4."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadRange, DegenerateParams, MorreyError, ThresholdViolated
from .lattice import SparseSequence, combine
from .params import MorreyParams
from .radial import PiecewisePowerFn, combine_fn

DW_R_GRID = (0.5, 0.25, 0.1, 0.05, 0.01, 0.001)


def threshold(params: MorreyParams) -> float:
    """``2^(q / (d (q - p))) - 1``; witnesses need an even ``n`` above it."""
    if params.p == params.q:
        raise DegenerateParams("p = q has no separation threshold")
    return 2.0 ** (params.q / (params.d * (params.q - params.p))) - 1.0


def separates(n: int, params: MorreyParams) -> bool:
    """Whether ``(n+1)^(d(1/q - 1/p)) * 2^(1/p) < 1``.

    Two unit spikes ``n`` apart then have norm 1: the cube covering both is
    worth less than either spike alone.  Decided exactly for integer p, q as
    ``(n+1)^(d(q-p)) > 2^q``.
    """
    p, q, d = params.p, params.q, params.d
    if params.integer_exponents:
        return (n + 1) ** (d * (q - p)) > 2**q
    return (n + 1) ** (d * params.exponent) * 2 ** (1 / p) < 1


def minimal_even_n(params: MorreyParams) -> int:
    n = 2 * math.floor(threshold(params) / 2) + 2
    while not separates(n, params):
        n += 2
    while n > 2 and separates(n - 2, params):
        n -= 2
    return n


@dataclass(frozen=True)
class DiscreteWitness:
    n: int
    x: SparseSequence
    y: SparseSequence
    params: MorreyParams

    @property
    def threshold(self) -> float:
        return threshold(self.params)

    def annotation(self) -> dict:
        return {"n": self.n, "threshold": self.threshold}


def discrete_witness_pair(params: MorreyParams, n: int | None = None) -> DiscreteWitness:
    """Spikes at the origin and at ``(n, 0, ..., 0)``: ``x`` with signs (+, +), ``y`` with (+, -)."""
    if params.p == params.q:
        raise DegenerateParams("witness pairs need p < q")
    if n is None:
        n = minimal_even_n(params)
    elif n < 2 or n % 2:
        raise MorreyError(f"n must be a positive even integer, got {n}")
    elif not separates(n, params):
        raise ThresholdViolated(f"n={n} does not exceed the threshold {threshold(params):.6g}")
    origin = (0,) * params.d
    far = (n,) + (0,) * (params.d - 1)
    x = SparseSequence({origin: 1, far: 1}, d=params.d)
    y = SparseSequence({origin: 1, far: -1}, d=params.d)
    return DiscreteWitness(n, x, y, params)


@dataclass(frozen=True)
class ContinuousWitness:
    """``f = |x|^(-d/q)``, its restriction ``g`` to the unit ball, ``h = f - g``, ``k = 2g - f``."""

    f: PiecewisePowerFn
    g: PiecewisePowerFn
    h: PiecewisePowerFn
    k: PiecewisePowerFn
    params: MorreyParams


def continuous_witness_family(params: MorreyParams) -> ContinuousWitness:
    if params.p == params.q:
        raise DegenerateParams("witness functions need p < q")
    d = params.d
    alpha = -d / params.q
    f = PiecewisePowerFn.power(alpha, d=d)
    g = PiecewisePowerFn.power(alpha, d=d, hi=1.0)
    return ContinuousWitness(f, g, combine_fn(1, f, -1, g), combine_fn(-1, f, 2, g), params)


def _check_r(r):
    if not 0 < r < 1:
        raise BadRange(f"r must lie in (0, 1), got {r}")


def dw_couple_continuous(w: ContinuousWitness, r: float):
    _check_r(r)
    return w.f, combine_fn(1 + r, w.g, 1 - r, w.h)


def dw_couple_discrete(w: DiscreteWitness, r, variant: str = "corrected"):
    """Pair for the Dunkl-Williams functional.

    ``"stated"`` gives ``(x+y, (1+r)x + (1-r)y)``.  ``"corrected"`` gives
    ``(a+b, (1+r)a + (1-r)b)`` with the single spikes ``a = (x+y)/2`` and
    ``b = (x-y)/2``, the lattice copy of ``(f, (1+r)g + (1-r)h)``.
    """
    _check_r(r)
    if variant == "stated":
        return w.x + w.y, combine(1 + r, w.x, 1 - r, w.y)
    if variant != "corrected":
        raise MorreyError(f"unknown variant {variant!r}")
    a, b = (w.x + w.y) / 2, (w.x - w.y) / 2
    return a + b, combine(1 + r, a, 1 - r, b)


def dw_ratio(r):
    """``(4 + 2r) / (1 + r)``, which tends to 4 as r decreases to 0."""
    _check_r(r)
    return (4 + 2 * r) / (1 + r)


def exact_r(r) -> Fraction:
    """Read ``r`` as the decimal it was written as (``0.1`` -> ``1/10``)."""
    return Fraction(str(r))
