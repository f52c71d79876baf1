"""Numerical ribbonlength minimisation over vertex placements.

The search space is polygons modulo similarity: ``v_1`` is pinned at the
origin, ``v_2`` at ``(1, 0)`` and the remaining ``2n - 4`` coordinates are
free; every candidate is rescaled to the configured perimeter before it is
scored.  Configurations that self-intersect or fold back on themselves score
``+inf``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import FoldPattern, pattern_folds
from .diagram import (DEFAULT_TOL, FoldingInfo, KnotDiagram, diagram_length,
                      validate_diagram)
from .errors import InfeasibleError, RibbonError
from .ribbon import max_width

ALPHA, GAMMA, RHO, SIGMA = 1.0, 2.0, 0.5, 0.5


@dataclass(frozen=True)
class OptimizationConfig:
    n: int = 3
    folds: object = FoldPattern.ALL_SAME
    perimeter: float = 3.0
    restarts: int = 20
    max_iters: int = 5000
    simplex_tol: float = 1e-6
    width_tol: float = DEFAULT_TOL
    rng_seed: int = 0
    # widths sampled per max_width call when checking the allowed set is an interval
    grid: int = 20
    workers: int = 1

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n must be at least 3")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if not (self.simplex_tol > 0 and self.width_tol > 0 and self.perimeter > 0):
            raise ValueError("tolerances and perimeter must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "OptimizationConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        f = out["folds"]
        if isinstance(f, FoldPattern):
            out["folds"] = f.value
        elif isinstance(f, FoldingInfo):
            out["folds"] = [t.value for t in f]
        return out


@dataclass
class OptimizationResult:
    best_diagram: KnotDiagram
    best_value: float
    trace: list[tuple[float, float]]
    converged: bool
    restarts_summary: list[float] = field(default_factory=list)
    best_restart: int = 0

    def to_dict(self) -> dict:
        from .diagram import diagram_to_dict
        return {
            "best_value": self.best_value,
            "converged": self.converged,
            "best_restart": self.best_restart,
            "restarts_summary": self.restarts_summary,
            "trace": [list(t) for t in self.trace],
            "best_diagram": diagram_to_dict(self.best_diagram),
        }


def normalize_perimeter(d: KnotDiagram, P: float) -> KnotDiagram:
    if not P > 0:
        raise ValueError("perimeter must be positive")
    L = diagram_length(d)
    if L == P:
        return d
    return d.scaled(P / L)


def _diagram_from_params(x, folds: FoldingInfo, P: float) -> KnotDiagram:
    verts = [(0.0, 0.0), (1.0, 0.0)]
    verts += [(float(x[2 * k]), float(x[2 * k + 1])) for k in range(len(x) // 2)]
    d = KnotDiagram(tuple(verts), folds)
    return normalize_perimeter(d, P)


def _objective(x, cfg: OptimizationConfig, folds: FoldingInfo) -> tuple[float, Optional[KnotDiagram]]:
    try:
        d = _diagram_from_params(x, folds, cfg.perimeter)
    except (ZeroDivisionError, ValueError):
        return math.inf, None
    rep = validate_diagram(d)
    if not rep.ok:
        return math.inf, None
    try:
        w = max_width(d, cfg.width_tol, cfg.grid)
    except RibbonError:
        return math.inf, None
    return diagram_length(d) / w, d


def _random_start(rng: np.random.Generator, n: int) -> np.ndarray:
    # star-shaped polygon, then the similarity taking v1 -> 0, v2 -> (1, 0)
    angles = np.sort(rng.uniform(0.0, 2 * np.pi, n))
    radii = rng.uniform(0.5, 1.0, n)
    pts = radii[:, None] * np.column_stack([np.cos(angles), np.sin(angles)])
    z = pts[:, 0] + 1j * pts[:, 1]
    z = (z - z[0]) / (z[1] - z[0])
    rest = z[2:]
    return np.column_stack([rest.real, rest.imag]).ravel()


def _diameter(simplex) -> float:
    best = 0.0
    for i in range(len(simplex)):
        for j in range(i + 1, len(simplex)):
            best = max(best, float(np.max(np.abs(simplex[i] - simplex[j]))))
    return best


def nelder_mead(f, x0: np.ndarray, step: np.ndarray, max_iters: int, tol: float):
    """Plain Nelder-Mead with coefficients (1, 2, 0.5, 0.5).

    Returns ``(x_best, f_best, trace, converged)`` where the trace holds the
    best value and the simplex diameter after each iteration.
    """
    dim = len(x0)
    simplex = [x0.copy()]
    for i in range(dim):
        x = x0.copy()
        x[i] += step[i]
        simplex.append(x)
    values = [f(x) for x in simplex]
    trace = []
    converged = False
    for _ in range(max_iters):
        order = sorted(range(dim + 1), key=lambda k: (values[k], k))
        simplex = [simplex[k] for k in order]
        values = [values[k] for k in order]
        diam = _diameter(simplex)
        trace.append((values[0], diam))
        if diam < tol and math.isfinite(values[0]):
            converged = True
            break
        centroid = sum(simplex[:-1]) / dim
        worst = simplex[-1]
        xr = centroid + ALPHA * (centroid - worst)
        fr = f(xr)
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[0]:
            xe = centroid + GAMMA * (xr - centroid)
            fe = f(xe)
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            xc = centroid + RHO * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], values[-1] = xc, fc
                continue
        else:
            xc = centroid + RHO * (worst - centroid)
            fc = f(xc)
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
                continue
        best = simplex[0]
        for k in range(1, dim + 1):
            simplex[k] = best + SIGMA * (simplex[k] - best)
            values[k] = f(simplex[k])
    k = min(range(dim + 1), key=lambda k: (values[k], k))
    return simplex[k], values[k], trace, converged


def _run_restart(cfg: OptimizationConfig, seed_seq: np.random.SeedSequence):
    folds = pattern_folds(cfg.n, cfg.folds)
    rng = np.random.default_rng(seed_seq)

    def f(x):
        return _objective(x, cfg, folds)[0]

    for _ in range(100):
        x0 = _random_start(rng, cfg.n)
        if math.isfinite(f(x0)):
            break
    else:
        return None
    step = rng.uniform(0.05, 0.2, len(x0)) * rng.choice([-1.0, 1.0], len(x0))
    x, fx, trace, converged = nelder_mead(f, x0, step, cfg.max_iters, cfg.simplex_tol)
    return x, fx, trace, converged


def minimize_ribbonlength(cfg: OptimizationConfig) -> OptimizationResult:
    folds = pattern_folds(cfg.n, cfg.folds)
    seeds = np.random.SeedSequence(cfg.rng_seed).spawn(cfg.restarts)
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            runs = list(pool.map(_run_restart, [cfg] * cfg.restarts, seeds))
    else:
        runs = [_run_restart(cfg, s) for s in seeds]
    finals = [r[1] if r is not None else math.inf for r in runs]
    if not any(math.isfinite(v) for v in finals):
        raise InfeasibleError("no feasible configuration found")
    best = min(range(len(runs)), key=lambda k: (finals[k], k))
    x, fx, trace, converged = runs[best]
    value, d = _objective(x, cfg, folds)
    d = KnotDiagram(d.vertices, d.folds, (), None, f"optimized-{cfg.n}")
    return OptimizationResult(d, value, trace, converged, finals, best)


def similarity_distance(a: KnotDiagram, b: KnotDiagram) -> float:
    """Largest vertex displacement between ``a`` and ``b`` after the best
    rotation/reflection/translation and cyclic relabelling (no scaling)."""
    if a.n != b.n:
        raise ValueError("diagrams have different vertex counts")
    A = np.array(a.vertices)
    A = A - A.mean(axis=0)
    B0 = np.array(b.vertices)
    best = math.inf
    for order in (B0, B0[::-1]):
        for shift in range(b.n):
            B = np.roll(order, shift, axis=0)
            B = B - B.mean(axis=0)
            for flip in (1.0, -1.0):
                Bf = B * np.array([1.0, flip])
                # optimal rotation of Bf onto A
                c = np.sum(A[:, 0] * Bf[:, 0] + A[:, 1] * Bf[:, 1])
                s = np.sum(Bf[:, 0] * A[:, 1] - Bf[:, 1] * A[:, 0])
                t = math.atan2(s, c)
                R = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
                diff = A - Bf @ R.T
                best = min(best, float(np.max(np.hypot(diff[:, 0], diff[:, 1]))))
    return best
