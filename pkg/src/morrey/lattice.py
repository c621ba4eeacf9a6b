"""Discrete Morrey norms of finitely supported sequences on Z^d.

The norm is a supremum over every cube ``S(m, N) = {k : |k - m|_inf <= N}``
of ``(2N+1)^(d(1/q - 1/p)) * (sum_{k in S} |x(k)|^p)^(1/p)``.  For a finitely
supported ``x`` only finitely many cubes matter:

* Let ``N0`` be the smallest radius for which one cube covers the whole
  support.  Any cube of radius ``N >= N0`` holds at most the total mass while
  its prefactor is no larger than the prefactor at ``N0``, so the covering
  cube of radius ``N0`` dominates every larger cube.
* For fixed ``N`` a cube can be slid down along each axis until its upper
  face meets a support point without losing any point it already contains.
  Hence the lexicographically smallest maximizing cube has every center
  coordinate of the form ``k_i - N`` for a support point ``k``
  (see :func:`anchored_windows`).

Exact mode (integer ``p``, ``q`` and rational entries) ranks cubes by
``(2N+1)^(d(p-q)) * S^q``, which equals ``value^(pq)`` and is rational.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType

import numpy as np

from .errors import DimensionMismatch, EmptySequence, InputTooLarge, MorreyError
from .params import MorreyParams, exact_root

Point = tuple[int, ...]

MAX_CARDINALITY = 2**63 - 1
BRUTE_FORCE_BUDGET = 20_000_000
FLOAT_TIE_RTOL = 1e-12


@dataclass(frozen=True, order=True)
class Window:
    """The cube ``S(center, radius)`` in the Chebyshev metric."""

    center: Point
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise MorreyError("window radius must be nonnegative")

    def contains(self, k: Iterable[int]) -> bool:
        return max(abs(a - b) for a, b in zip(k, self.center)) <= self.radius

    def as_dict(self) -> dict:
        return {"center": list(self.center), "radius": self.radius}


def window_cardinality(w: Window, d: int) -> int:
    n = (2 * w.radius + 1) ** d
    if n > MAX_CARDINALITY:
        raise InputTooLarge(f"window cardinality (2*{w.radius}+1)^{d} overflows")
    return n


class SparseSequence:
    """A finitely supported map ``Z^d -> R`` stored without zero entries."""

    __slots__ = ("d", "_entries", "_arr")

    def __init__(self, entries: Mapping | Iterable = (), d: int | None = None):
        items = entries.items() if isinstance(entries, Mapping) else entries
        clean: dict[Point, object] = {}
        for k, v in items:
            k = (k,) if isinstance(k, (int, np.integer)) else tuple(int(c) for c in k)
            if d is None:
                d = len(k)
            if len(k) != d:
                raise DimensionMismatch(f"point {k} does not have dimension {d}")
            if v != 0:
                clean[k] = v
        if d is None:
            raise MorreyError("dimension required for an empty sequence")
        self.d = int(d)
        self._entries = clean
        self._arr = None

    @classmethod
    def delta(cls, point, d: int | None = None, value=1) -> SparseSequence:
        return cls({point: value}, d=d)

    @classmethod
    def zero(cls, d: int) -> SparseSequence:
        return cls({}, d=d)

    @property
    def entries(self) -> Mapping[Point, object]:
        return MappingProxyType(self._entries)

    def __len__(self):
        return len(self._entries)

    def __getitem__(self, k) -> object:
        k = (k,) if isinstance(k, int) else tuple(k)
        return self._entries.get(k, 0)

    def is_zero(self) -> bool:
        return not self._entries

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Rational) for v in self._entries.values())

    def bounding_box(self) -> tuple[Point, Point]:
        if not self._entries:
            raise EmptySequence("zero sequence has no support")
        pts = np.array(list(self._entries), dtype=np.int64)
        return tuple(int(v) for v in pts.min(0)), tuple(int(v) for v in pts.max(0))

    def __eq__(self, other):
        if not isinstance(other, SparseSequence):
            return NotImplemented
        return self.d == other.d and self._entries == other._entries

    def __hash__(self):
        return hash((self.d, frozenset(self._entries.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self._entries.items()))
        return f"SparseSequence({{{body}}}, d={self.d})"

    def __neg__(self):
        return SparseSequence({k: -v for k, v in self._entries.items()}, d=self.d)

    def __mul__(self, c):
        return SparseSequence({k: c * v for k, v in self._entries.items()}, d=self.d)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Rational):
            c = Fraction(c)
        return SparseSequence({k: v / c for k, v in self._entries.items()}, d=self.d)

    def __add__(self, other):
        return combine(1, self, 1, other)

    def __sub__(self, other):
        return combine(1, self, -1, other)

    def _arrays(self):
        if self._arr is None:
            pts = np.array(list(self._entries), dtype=np.int64).reshape(-1, self.d)
            self._arr = (pts, list(self._entries.values()))
        return self._arr


def combine(a, x: SparseSequence, b, y: SparseSequence) -> SparseSequence:
    """``a*x + b*y`` in canonical sparse form."""
    if x.d != y.d:
        raise DimensionMismatch(f"dimensions {x.d} and {y.d} differ")
    out: dict[Point, object] = {k: a * v for k, v in x.entries.items()}
    for k, v in y.entries.items():
        out[k] = out.get(k, 0) + b * v
    return SparseSequence(out, d=x.d)


@dataclass(frozen=True)
class WindowValue:
    window: Window
    value: float
    exact_key: Fraction | None = None


@dataclass(frozen=True)
class NormResult:
    """Norm value with one maximizing cube.

    ``exact_key`` is ``value**(p*q)`` as a rational (exact mode only).
    """

    value: float
    window: Window | None
    exact_key: Fraction | None = None
    pq: int | None = None

    @property
    def exact(self) -> Fraction | None:
        """The norm itself as a rational, when it is one."""
        if self.exact_key is None:
            return None
        return exact_root(self.exact_key, self.pq)

    def equals_exactly(self, target) -> bool:
        if self.exact_key is None:
            raise MorreyError("not an exact-mode result")
        return self.exact_key == Fraction(target) ** self.pq


def _check_exact(x: SparseSequence, params: MorreyParams):
    if not params.integer_exponents:
        raise MorreyError("exact mode needs integer p and q")
    if not x.is_exact:
        raise MorreyError("exact mode needs rational entries")


def _prefactor(radius, params: MorreyParams):
    return (2.0 * radius + 1.0) ** (params.d * params.exponent)


def _exact_key(S: Fraction, radius: int, params: MorreyParams) -> Fraction:
    card = (2 * radius + 1) ** (params.d * (params.q - params.p))
    return Fraction(S) ** params.q / card


def window_value(x: SparseSequence, w: Window, params: MorreyParams, exact: bool = False) -> WindowValue:
    if x.d != params.d or len(w.center) != params.d:
        raise DimensionMismatch("sequence, window and params must share d")
    window_cardinality(w, params.d)
    p = params.p
    inside = [v for k, v in x.entries.items() if w.contains(k)]
    if exact:
        _check_exact(x, params)
        S = sum((Fraction(abs(v)) ** p for v in inside), Fraction(0))
        key = _exact_key(S, w.radius, params)
        return WindowValue(w, _prefactor(w.radius, params) * float(S) ** (1.0 / p), key)
    S = math.fsum(abs(float(v)) ** p for v in inside)
    return WindowValue(w, _prefactor(w.radius, params) * S ** (1.0 / p))


def covering_radius(x: SparseSequence) -> int:
    """Smallest ``N`` such that one cube of radius ``N`` covers the support."""
    pts, _ = x._arrays()
    if not len(pts):
        raise EmptySequence("zero sequence has no support")
    return (int((pts.max(0) - pts.min(0)).max()) + 1) // 2


def _full_windows(pts: np.ndarray, n0: int):
    d = pts.shape[1]
    centers, radii = [], []
    for radius in range(n0 + 1):
        offs = np.stack(np.meshgrid(*[np.arange(-radius, radius + 1)] * d, indexing="ij"), -1).reshape(-1, d)
        c = np.unique((pts[:, None, :] + offs[None, :, :]).reshape(-1, d), axis=0)
        centers.append(c)
        radii.append(np.full(len(c), radius))
    return np.concatenate(centers), np.concatenate(radii)


def _anchored_windows(pts: np.ndarray, n0: int):
    d = pts.shape[1]
    if d == 1:
        base = np.unique(pts[:, 0])[:, None]
    else:
        axes = [np.unique(pts[:, i]) for i in range(d)]
        base = np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, d)
    ns = np.arange(n0 + 1)
    centers = (base[None, :, :] - ns[:, None, None]).reshape(-1, d)
    return centers, np.repeat(ns, len(base))


def _box_windows(lo, hi, reach: int):
    axes = [np.arange(a - reach, b + reach + 1) for a, b in zip(lo, hi)]
    base = np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, len(lo))
    return np.tile(base, (reach + 1, 1)), np.repeat(np.arange(reach + 1), len(base))


def _as_windows(centers, radii) -> list[Window]:
    return [Window(tuple(int(c) for c in m), int(n)) for m, n in zip(centers, radii)]


def candidate_windows(x: SparseSequence, params: MorreyParams | None = None) -> list[Window]:
    """Every cube of radius ``<= N0`` that meets the support.

    Always contains a maximizing cube; see the module docstring.
    """
    if x.is_zero():
        raise EmptySequence("zero sequence has no candidate windows")
    pts, _ = x._arrays()
    return _as_windows(*_full_windows(pts, covering_radius(x)))


def anchored_windows(x: SparseSequence) -> list[Window]:
    """The reduced candidate set: radii ``<= N0``, center coordinates ``k_i - N``."""
    if x.is_zero():
        raise EmptySequence("zero sequence has no candidate windows")
    pts, _ = x._arrays()
    return _as_windows(*_anchored_windows(pts, covering_radius(x)))


def _first_lex(radii, centers, idx) -> int:
    """Index in ``idx`` of the lexicographically smallest ``(N, m)``."""
    if len(idx) == 1:
        return int(idx[0])
    keys = [centers[idx, i] for i in range(centers.shape[1] - 1, -1, -1)] + [radii[idx]]
    return int(idx[np.lexsort(keys)[0]])


def _maximize(x: SparseSequence, params: MorreyParams, exact: bool, centers, radii) -> NormResult:
    pts, vals = x._arrays()
    p = params.p
    inside = np.abs(centers[:, None, :] - pts[None, :, :]).max(axis=2) <= radii[:, None]
    if exact:
        weights = [Fraction(abs(v)) ** p for v in vals]
        groups, inverse = np.unique(np.column_stack([radii, inside]), axis=0, return_inverse=True)
        inverse = np.asarray(inverse).reshape(-1)
        keys = [
            _exact_key(sum((weights[j] for j in np.flatnonzero(row[1:])), Fraction(0)), int(row[0]), params)
            for row in groups
        ]
        top = max(keys)
        winners = np.flatnonzero(np.isin(inverse, [g for g, k in enumerate(keys) if k == top]))
        best = _first_lex(radii, centers, winners)
        S = sum((weights[j] for j in np.flatnonzero(inside[best])), Fraction(0))
        value = _prefactor(int(radii[best]), params) * float(S) ** (1.0 / p)
        w = Window(tuple(int(c) for c in centers[best]), int(radii[best]))
        return NormResult(value, w, top, p * params.q)
    weights = np.abs(np.asarray(vals, dtype=float)) ** p
    values = (2.0 * radii + 1.0) ** (params.d * params.exponent) * (inside @ weights) ** (1.0 / p)
    top = values.max()
    best = _first_lex(radii, centers, np.flatnonzero(values >= top * (1.0 - FLOAT_TIE_RTOL)))
    return NormResult(float(values[best]), Window(tuple(int(c) for c in centers[best]), int(radii[best])))


def _zero_result(params, exact):
    if exact:
        return NormResult(0.0, None, Fraction(0), params.p * params.q)
    return NormResult(0.0, None)


def _prepare(x: SparseSequence, params: MorreyParams, exact: bool) -> bool:
    if x.d != params.d:
        raise DimensionMismatch(f"sequence has d={x.d}, params have d={params.d}")
    if exact:
        _check_exact(x, params)
    return not x.is_zero()


def discrete_norm(x: SparseSequence, params: MorreyParams, exact: bool = False) -> NormResult:
    """The discrete Morrey norm of ``x`` and a maximizing cube.

    Ties go to the lexicographically smallest ``(N, m)``; in float mode values
    within ``1e-12`` relative count as tied.
    """
    if not _prepare(x, params, exact):
        return _zero_result(params, exact)
    pts, _ = x._arrays()
    return _maximize(x, params, exact, *_anchored_windows(pts, covering_radius(x)))


def discrete_norm_full(x: SparseSequence, params: MorreyParams, exact: bool = False) -> NormResult:
    """Same maximum taken over the unreduced :func:`candidate_windows` set."""
    if not _prepare(x, params, exact):
        return _zero_result(params, exact)
    pts, _ = x._arrays()
    return _maximize(x, params, exact, *_full_windows(pts, covering_radius(x)))


def brute_force_norm(
    x: SparseSequence,
    params: MorreyParams,
    n_max: int,
    exact: bool = False,
    budget: int = BRUTE_FORCE_BUDGET,
) -> NormResult:
    """Exhaustive maximum over every cube with ``N <= n_max`` centred within
    Chebyshev distance ``n_max`` of the support box.  Test oracle only."""
    if not _prepare(x, params, exact):
        return _zero_result(params, exact)
    if n_max < covering_radius(x):
        raise MorreyError(f"n_max={n_max} is below the covering radius {covering_radius(x)}")
    lo, hi = x.bounding_box()
    windows = math.prod(b - a + 2 * n_max + 1 for a, b in zip(lo, hi)) * (n_max + 1)
    if windows * len(x) > budget:
        raise InputTooLarge(f"brute force would scan {windows} windows")
    return _maximize(x, params, exact, *_box_windows(lo, hi, n_max))


def lp_norm(x: SparseSequence, p) -> float:
    return math.fsum(abs(float(v)) ** p for v in x.entries.values()) ** (1.0 / p)
