"""Von Neumann-Jordan, James and Dunkl-Williams functionals on vector pairs.

The functionals are evaluated through a *space handle* that knows how to
take norms of its vectors: finitely supported sequences under the discrete
Morrey norm, or radial piecewise-power functions under the global (d = 1) or
centered-ball Morrey norm.  ``search_lower_bound`` runs a seeded random
search over sparse pairs and reports the best value found, a lower bound for
the corresponding constant.
"""
from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import serialize
from .errors import BothZero, EqualVectors, MorreyError, ZeroVector
from .lattice import SparseSequence, discrete_norm
from .params import MorreyParams, format_scalar
from .radial import OptimizerConfig, PiecewisePowerFn, global_norm_1d, local_norm_radial

FUNCTIONALS = ("nj", "james", "dw")
UPPER_BOUNDS = {"nj": 2, "james": 2, "dw": 4}
SEARCH_CHUNKS = 8
CLIMB_SWEEPS = 4
PALETTE = (1.0, -1.0, 2.0, -2.0, 0.5, -0.5)


class DiscreteSpace:
    kind = "discrete"
    envelope_tol = 1e-9

    def __init__(self, params: MorreyParams, exact: bool = False):
        self.params = params
        self.exact = exact

    def norm(self, x: SparseSequence):
        """Norm as a ``Fraction`` when exact and rational, else a float."""
        exact = self.exact and self.params.integer_exponents and x.is_exact
        res = discrete_norm(x, self.params, exact=exact)
        if exact:
            r = res.exact
            if r is not None:
                return r
        return res.value

    def norm_tolerance(self, x) -> float:
        return 0.0

    def check(self, x):
        if not isinstance(x, SparseSequence) or x.d != self.params.d:
            raise MorreyError(f"expected a sequence on Z^{self.params.d}")

    def describe(self) -> dict:
        return {"kind": self.kind, **self.params.as_dict(), "exact": self.exact}


class Continuous1DSpace:
    kind = "continuous1d"
    envelope_tol = 1e-4

    def __init__(self, params: MorreyParams, opt: OptimizerConfig | None = None):
        if params.d != 1:
            raise MorreyError("the global continuous norm is only available for d = 1")
        self.params = params
        self.opt = opt or OptimizerConfig()

    def norm(self, f: PiecewisePowerFn) -> float:
        return global_norm_1d(f, self.params, self.opt).value

    def norm_tolerance(self, f) -> float:
        return 0.0 if f.is_zero() else self.opt.tol

    def check(self, f):
        if not isinstance(f, PiecewisePowerFn) or f.d != 1:
            raise MorreyError("expected a radial function on R")

    def describe(self) -> dict:
        return {"kind": self.kind, **self.params.as_dict(), "tol": self.opt.tol}


class LocalRadialSpace:
    kind = "local_radial"
    envelope_tol = 1e-4

    def __init__(self, params: MorreyParams):
        self.params = params

    def norm(self, f: PiecewisePowerFn) -> float:
        return local_norm_radial(f, self.params).value

    def norm_tolerance(self, f) -> float:
        return 0.0

    def check(self, f):
        if not isinstance(f, PiecewisePowerFn) or f.d != self.params.d:
            raise MorreyError(f"expected a radial function on R^{self.params.d}")

    def describe(self) -> dict:
        return {"kind": self.kind, **self.params.as_dict()}


@dataclass
class ConstantReport:
    functional: str
    value: float | Fraction
    pair: tuple
    trace: dict
    tolerance: float
    seed: int | None = None
    budget: int | None = None
    evaluations: int | None = None

    def to_json(self) -> dict:
        return {
            "schema": "1",
            "functional": self.functional,
            "value": float(self.value),
            "exact": format_scalar(self.value) if isinstance(self.value, Fraction) else None,
            "tolerance": self.tolerance,
            "pair": [serialize.vector_to_json(v) for v in self.pair],
            "trace": {k: float(v) for k, v in self.trace.items()},
            "seed": self.seed,
            "budget": self.budget,
        }


def _nj(x, y, space):
    space.check(x)
    space.check(y)
    if x.is_zero() and y.is_zero():
        raise BothZero("both vectors are zero")
    trace = {"|x|": space.norm(x), "|y|": space.norm(y), "|x+y|": space.norm(x + y), "|x-y|": space.norm(x - y)}
    value = (trace["|x+y|"] ** 2 + trace["|x-y|"] ** 2) / (2 * (trace["|x|"] ** 2 + trace["|y|"] ** 2))
    tol = sum(space.norm_tolerance(v) for v in (x, y, x + y, x - y))
    return value, trace, tol


def _james(x, y, space):
    space.check(x)
    space.check(y)
    if x.is_zero() or y.is_zero():
        raise ZeroVector("James functional needs nonzero vectors")
    nx, ny = space.norm(x), space.norm(y)
    xh, yh = x / nx, y / ny
    trace = {"|x|": nx, "|y|": ny, "|x^+y^|": space.norm(xh + yh), "|x^-y^|": space.norm(xh - yh)}
    value = min(trace["|x^+y^|"], trace["|x^-y^|"])
    tol = sum(space.norm_tolerance(v) for v in (x, y, xh + yh, xh - yh))
    return value, trace, tol


def _dw(x, y, space):
    space.check(x)
    space.check(y)
    if x.is_zero() or y.is_zero():
        raise ZeroVector("Dunkl-Williams functional needs nonzero vectors")
    if x == y:
        raise EqualVectors("Dunkl-Williams functional needs x != y")
    nx, ny = space.norm(x), space.norm(y)
    unit_diff = x / nx - y / ny
    trace = {"|x|": nx, "|y|": ny, "|x-y|": space.norm(x - y), "|x^-y^|": space.norm(unit_diff)}
    value = (nx + ny) / trace["|x-y|"] * trace["|x^-y^|"]
    tol = sum(space.norm_tolerance(v) for v in (x, y, x - y, unit_diff))
    return value, trace, tol


_EVALUATORS = {"nj": _nj, "james": _james, "dw": _dw}


def nj_functional(x, y, space):
    """``(|x+y|^2 + |x-y|^2) / (2 (|x|^2 + |y|^2))``."""
    return _nj(x, y, space)[0]


def james_functional(x, y, space):
    """``min(|x^ + y^|, |x^ - y^|)`` for the unit vectors ``x^``, ``y^``."""
    return _james(x, y, space)[0]


def dw_functional(x, y, space):
    return _dw(x, y, space)[0]


def evaluate(functional: str, x, y, space) -> ConstantReport:
    value, trace, tol = _EVALUATORS[_check_functional(functional)](x, y, space)
    return ConstantReport(functional, value, (x, y), trace, tol)


def _check_functional(name: str) -> str:
    name = name.lower()
    if name not in FUNCTIONALS:
        raise MorreyError(f"unknown functional {name!r}; choose from {FUNCTIONALS}")
    return name


def assert_envelopes(report: ConstantReport, space) -> bool:
    """False when a value exceeds the bound every Banach space satisfies."""
    bound = UPPER_BOUNDS[report.functional]
    return float(report.value) <= bound + space.envelope_tol


def lebesgue_nj(p: float) -> float:
    return max(2 ** (2 / p - 1), 2 ** (1 - 2 / p))


def lebesgue_james(p: float) -> float:
    return max(2 ** (1 / p), 2 ** (1 - 1 / p))


# ---------------------------------------------------------------- search


def _random_entry(rng):
    if rng.random() < 0.5:
        return PALETTE[rng.integers(len(PALETTE))]
    return float(rng.normal())


def _random_vector(rng, d: int, box: int) -> SparseSequence:
    size = int(rng.integers(1, 7))
    pts = rng.integers(0, box, size=(size, d))
    return SparseSequence({tuple(int(c) for c in k): _random_entry(rng) for k in pts}, d=d)


def _random_pair(rng, d: int, box: int) -> list[SparseSequence]:
    """Independent vectors, or a shared support with random sign changes."""
    if rng.random() < 0.5:
        return [_random_vector(rng, d, box), _random_vector(rng, d, box)]
    size = int(rng.integers(1, 4))
    pts = [tuple(int(c) for c in k) for k in rng.integers(0, 3 * box, size=(size, d))]
    x = {k: _random_entry(rng) for k in pts}
    y = {k: (v if rng.random() < 0.5 else _random_entry(rng)) * rng.choice([-1.0, 1.0]) for k, v in x.items()}
    return [SparseSequence(x, d=d), SparseSequence(y, d=d)]


def _proposals(rng, v):
    if v:
        return [-v, 0.0, v + float(rng.normal(scale=0.5)), _random_entry(rng)]
    return [_random_entry(rng), -_random_entry(rng)]


class _CachedSpace(DiscreteSpace):
    def __init__(self, params):
        super().__init__(params, exact=False)
        self._cache = {}

    def norm(self, x):
        v = self._cache.get(x)
        if v is None:
            if len(self._cache) > 4096:
                self._cache.clear()
            v = self._cache[x] = super().norm(x)
        return v


def _search_chunk(args):
    params, functional, budget, seed, index = args
    rng = np.random.default_rng([seed, index])
    space = _CachedSpace(params)
    evaluate_ = _EVALUATORS[functional]
    box = {1: 6, 2: 4}.get(params.d, 3)
    bound = UPPER_BOUNDS[functional]
    evals = 0
    best = (-math.inf, None, None)

    def score(x, y):
        nonlocal evals
        evals += 1
        try:
            return evaluate_(x, y, space)[0]
        except MorreyError:
            return -math.inf

    while evals < budget and best[0] < bound - 1e-12:
        pair = _random_pair(rng, params.d, box)
        val = score(*pair)
        for _ in range(CLIMB_SWEEPS):
            improved = False
            sites = sorted(set(pair[0].entries) | set(pair[1].entries))
            for which, k in itertools.product((0, 1), sites):
                for new in _proposals(rng, pair[which][k]):
                    if evals >= budget:
                        break
                    trial = dict(pair[which].entries)
                    trial[k] = new
                    cand = list(pair)
                    cand[which] = SparseSequence(trial, d=params.d)
                    cv = score(*cand)
                    if cv > val:
                        pair, val, improved = cand, cv, True
                        break
            if not improved or evals >= budget:
                break
        if val > best[0] or (val == best[0] and _encode(pair) < _encode(best[1])):
            best = (val, pair, None)
    return best[0], best[1], evals


def _encode(pair) -> str:
    return json.dumps([serialize.vector_to_json(v) for v in pair], sort_keys=True)


def thread_count() -> int:
    env = os.environ.get("MORREY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def search_lower_bound(space, functional: str, budget: int, seed: int = 0, workers: int | None = None) -> ConstantReport:
    """Seeded multi-start hill climbing over sparse pairs.

    The budget is split into a fixed number of chunks with their own
    ``(seed, chunk)`` generators, so the result does not depend on how many
    workers run them.  A chunk stops early once it attains the universal upper
    bound of the functional, since nothing can exceed it.
    """
    functional = _check_functional(functional)
    if not isinstance(space, DiscreteSpace):
        raise MorreyError("search runs over sparse sequences; use a discrete space")
    if budget < 1:
        raise MorreyError("budget must be at least 1")
    chunks = min(SEARCH_CHUNKS, budget)
    shares = [budget // chunks + (i < budget % chunks) for i in range(chunks)]
    jobs = [(space.params, functional, shares[i], seed, i) for i in range(chunks)]
    workers = min(workers or thread_count(), chunks)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_search_chunk, jobs))
    else:
        results = [_search_chunk(job) for job in jobs]
    results = [r for r in results if r[1] is not None]
    if not results:
        raise MorreyError("no admissible pair found within the budget")
    value = max(r[0] for r in results)
    pair = min((r[1] for r in results if r[0] == value), key=_encode)
    report = evaluate(functional, pair[0], pair[1], space)
    report.seed, report.budget = seed, budget
    report.evaluations = sum(r[2] for r in results)
    return report
