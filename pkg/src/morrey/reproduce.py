"""Self-contained pass/fail reports for the witness constructions and their DW curves."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import (
    Continuous1DSpace,
    DiscreteSpace,
    LocalRadialSpace,
    dw_functional,
    james_functional,
    nj_functional,
)
from .params import MorreyParams, format_scalar
from .radial import IntervalBall, OptimizerConfig, PiecewisePowerFn, ball_value_1d, scale
from .witnesses import (
    DW_R_GRID,
    continuous_witness_family,
    discrete_witness_pair,
    dw_couple_continuous,
    dw_couple_discrete,
    dw_ratio,
    exact_r,
    separates,
)

THM1_R_GRID = (0.5, 0.1, 0.01)
FLOAT_TOL = 1e-12
NORM_TOL = 1e-6
FUNCTIONAL_TOL = 1e-5
DW_CONT_TOL = 1e-4
LOCAL_TOL = 1e-8
SCALING_TOL = 1e-13


@dataclass
class Check:
    name: str
    value: object
    expected: object
    tolerance: float
    mode: str = "rel"
    gate: bool = True
    passed: bool = field(init=False)

    def __post_init__(self):
        if self.mode == "exact":
            self.passed = self.value == self.expected
        elif self.mode == "bool":
            self.passed = bool(self.value)
        else:
            scale_ = abs(float(self.expected)) if self.mode == "rel" else 1.0
            self.passed = abs(float(self.value) - float(self.expected)) <= self.tolerance * scale_

    def to_json(self) -> dict:
        def num(v):
            if isinstance(v, bool) or v is None:
                return v
            return float(v)

        return {
            "name": self.name,
            "value": num(self.value),
            "expected": num(self.expected),
            "exact_value": format_scalar(self.value) if isinstance(self.value, Fraction) else None,
            "tolerance": self.tolerance,
            "mode": self.mode,
            "gate": self.gate,
            "passed": self.passed,
        }


@dataclass
class ReproductionReport:
    theorem: str
    params: dict
    settings: dict
    checks: list[Check]
    norms: dict = field(default_factory=dict)
    functionals: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gate)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.gate and not c.passed]

    def to_json(self) -> dict:
        return {
            "schema": "1",
            "theorem": self.theorem,
            "params": self.params,
            "settings": self.settings,
            "passed": self.passed,
            "notes": self.notes,
            "norms": {k: float(v) for k, v in self.norms.items()},
            "functionals": {k: float(v) for k, v in self.functionals.items()},
            "checks": [c.to_json() for c in self.checks],
        }


def _rs(rs, exact: bool):
    return [exact_r(r) if exact else float(r) for r in rs]


def _discrete_dw_checks(w, space, rs, exact, functionals):
    checks = []
    tol, mode = (0.0, "exact") if exact else (FLOAT_TOL, "rel")
    curve = []
    for r in _rs(rs, exact):
        u, v = dw_couple_discrete(w, r, "corrected")
        val = dw_functional(u, v, space)
        curve.append(val)
        functionals[f"dw_corrected(r={float(r):g})"] = val
        checks.append(Check(f"DW corrected couple = (4+2r)/(1+r) at r={float(r):g}", val, dw_ratio(r), tol, mode))
        u, v = dw_couple_discrete(w, r, "stated")
        val = dw_functional(u, v, space)
        functionals[f"dw_stated(r={float(r):g})"] = val
        checks.append(Check(f"DW stated couple (informational) at r={float(r):g}", val, 2, tol, mode, gate=False))
    order = np.argsort([-float(r) for r in rs])
    ordered = [float(curve[i]) for i in order]
    checks.append(Check("DW curve increases as r decreases", all(a < b for a, b in zip(ordered, ordered[1:])), True, 0.0, "bool"))
    return checks


def reproduce_thm2(params: MorreyParams, exact: bool = False, rs=DW_R_GRID, n: int | None = None) -> ReproductionReport:
    """Spike witnesses on Z^d: unit norms, sum and difference of norm 2, NJ = James = 2."""
    w = discrete_witness_pair(params, n)
    space = DiscreteSpace(params, exact=exact)
    tol, mode = (0.0, "exact") if exact else (FLOAT_TOL, "rel")
    norms = {
        "|x|": space.norm(w.x),
        "|y|": space.norm(w.y),
        "|x+y|": space.norm(w.x + w.y),
        "|x-y|": space.norm(w.x - w.y),
    }
    functionals = {"nj": nj_functional(w.x, w.y, space), "james": james_functional(w.x, w.y, space)}
    checks = [
        Check(f"n={w.n} exceeds threshold {w.threshold:.6g}", separates(w.n, params), True, 0.0, "bool"),
        Check("|x| = 1", norms["|x|"], 1, tol, mode),
        Check("|y| = 1", norms["|y|"], 1, tol, mode),
        Check("|x+y| = 2", norms["|x+y|"], 2, tol, mode),
        Check("|x-y| = 2", norms["|x-y|"], 2, tol, mode),
        Check("NJ(x, y) = 2", functionals["nj"], 2, tol, mode),
        Check("James(x, y) = 2", functionals["james"], 2, tol, mode),
    ]
    checks += _discrete_dw_checks(w, space, rs, exact, functionals)
    return ReproductionReport(
        "thm2",
        params.as_dict(),
        {"exact": exact, "n": w.n, "threshold": w.threshold, "r": [float(r) for r in rs]},
        checks,
        norms,
        functionals,
        ["The stated DW couple (x+y, (1+r)x+(1-r)y) is reported for reference only."],
    )


def _chain_checks(space, w, rs, tol_norm, tol_fun, tol_dw):
    nf = space.norm(w.f)
    norms = {
        "|f|": nf,
        "|g|": space.norm(w.g),
        "|h|": space.norm(w.h),
        "|k|": space.norm(w.k),
        "|f+k|": space.norm(w.f + w.k),
        "|f-k|": space.norm(w.f - w.k),
    }
    checks = [
        Check("|f| finite and positive", 0 < nf < math.inf, True, 0.0, "bool"),
        Check("|g| = |f|", norms["|g|"], nf, tol_norm),
        Check("|h| = |f|", norms["|h|"], nf, tol_norm),
        Check("|k| = |f|", norms["|k|"], nf, tol_norm),
        Check("|f+k| = 2|g|", norms["|f+k|"], 2 * norms["|g|"], tol_norm),
        Check("|f-k| = 2|h|", norms["|f-k|"], 2 * norms["|h|"], tol_norm),
    ]
    functionals = {"nj": nj_functional(w.f, w.k, space), "james": james_functional(w.f, w.k, space)}
    checks.append(Check("NJ(f, k) = 2", functionals["nj"], 2, tol_fun, "abs"))
    checks.append(Check("James(f, k) = 2", functionals["james"], 2, tol_fun, "abs"))
    for r in rs:
        val = dw_functional(*dw_couple_continuous(w, r), space)
        functionals[f"dw(r={r:g})"] = val
        checks.append(Check(f"DW couple = (4+2r)/(1+r) at r={r:g}", val, dw_ratio(r), tol_dw, "abs"))
    return checks, norms, functionals


def random_radial_fn(rng, params: MorreyParams) -> PiecewisePowerFn:
    cuts = np.sort(rng.uniform(0.1, 5.0, size=int(rng.integers(0, 3))))
    edges = [0.0, *map(float, cuts), math.inf]
    pieces = []
    for lo, hi in zip(edges, edges[1:]):
        if rng.random() < 0.2 and lo > 0:
            continue
        alpha = float(rng.uniform(-0.9 / params.p, 1.5))
        c = float(rng.choice([-1, 1]) * rng.uniform(0.2, 3.0))
        pieces.append((lo, hi, c, alpha))
    return PiecewisePowerFn(pieces, d=1)


def scaling_defects(params: MorreyParams, count: int = 100, seed: int = 0) -> list[float]:
    """Relative gaps between ``value(scale(fn, t), (a, r))`` and ``value(fn, (ta, tr))``."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        fn = random_radial_fn(rng, params)
        t = float(np.exp(rng.uniform(np.log(0.1), np.log(10.0))))
        a, r = float(rng.uniform(-5, 5)), float(rng.uniform(0.05, 5))
        lhs = ball_value_1d(scale(fn, t, params), IntervalBall(a, r), params)
        rhs = ball_value_1d(fn, IntervalBall(t * a, t * r), params)
        out.append(abs(lhs - rhs) / max(abs(rhs), 1e-300))
    return out


def reproduce_thm1(p, q, tol: float = NORM_TOL, rs=THM1_R_GRID, seed: int = 0) -> ReproductionReport:
    """Power-function witnesses on R (d = 1) under the global Morrey norm."""
    params = MorreyParams(p, q, 1)
    opt = OptimizerConfig(tol=min(1e-8, tol))
    space = Continuous1DSpace(params, opt)
    w = continuous_witness_family(params)
    checks, norms, functionals = _chain_checks(space, w, rs, tol, FUNCTIONAL_TOL, DW_CONT_TOL)
    defects = scaling_defects(params, seed=seed)
    checks.append(Check("scaling equivariance on 100 random (fn, t, ball)", max(defects), 0.0, SCALING_TOL, "abs"))
    return ReproductionReport(
        "thm1",
        params.as_dict(),
        {"tol": tol, "optimizer_tol": opt.tol, "r": list(rs), "seed": seed},
        checks,
        norms,
        functionals,
        [
            "Global norms are computed for d = 1 only; other dimensions are covered by local-remark.",
        ],
    )


def reproduce_local_remark(params: MorreyParams, rs=THM1_R_GRID) -> ReproductionReport:
    """Same witnesses in any dimension, norms over balls centered at the origin."""
    space = LocalRadialSpace(params)
    w = continuous_witness_family(params)
    checks, norms, functionals = _chain_checks(space, w, rs, LOCAL_TOL, LOCAL_TOL, LOCAL_TOL)
    return ReproductionReport("local-remark", params.as_dict(), {"tol": LOCAL_TOL, "r": list(rs)}, checks, norms, functionals)


def reproduce_dw_curve(kind: str, params: MorreyParams, rs=DW_R_GRID, exact: bool = False) -> ReproductionReport:
    """DW functional against ``(4+2r)/(1+r)`` along a grid of r."""
    functionals = {}
    if kind == "discrete":
        w = discrete_witness_pair(params)
        checks = _discrete_dw_checks(w, DiscreteSpace(params, exact=exact), rs, exact, functionals)
    elif kind == "continuous":
        w = continuous_witness_family(params)
        space = Continuous1DSpace(params) if params.d == 1 else LocalRadialSpace(params)
        checks = []
        for r in rs:
            val = dw_functional(*dw_couple_continuous(w, float(r)), space)
            functionals[f"dw(r={float(r):g})"] = val
            checks.append(Check(f"DW couple = (4+2r)/(1+r) at r={float(r):g}", val, dw_ratio(float(r)), DW_CONT_TOL, "abs"))
    else:
        raise ValueError(f"unknown space kind {kind!r}")
    vals = [float(v) for k, v in functionals.items() if not k.startswith("dw_stated")]
    return ReproductionReport(
        "dw-curve",
        params.as_dict(),
        {"space": kind, "exact": exact, "r": [float(r) for r in rs], "sup_estimate": max(vals)},
        checks,
        functionals=functionals,
    )
