"""Numerical search for symmetric hexagonal solutions and their classification.

The search variable is the vector of the 13 independent components.  The
cost is the purity excess of the normalized ``{0,1,2}`` marginal,

    cost(x) = Tr(rho^2) / Tr(rho)^2 - 1/8 = || rho / Tr(rho) - I/8 ||_F^2,

evaluated in the second form to avoid cancellation near zero.  The cost is
scale invariant, so its gradient is tangent to the unit sphere and plain
BFGS never drifts toward the zero tensor.
"""
from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq, minimize

from .catalog.hexagon import (
    A_MAX_TYPE1,
    HEXAGON_COMPONENTS,
    SQRT2,
    branch_differences,
    hexagon_from_components,
    hexagon_table,
    hexagonal_record,
    hexagonal_type1,
    type1_ds013,
)
from .catalog.records import SolutionRecord
from .entanglement import PROFILE_KEYS
from .haar import make_rng
from .symmetry import constraint_equations, hexagon_full

__all__ = [
    "SolveOptions",
    "HexagonalCost",
    "solve_hexagonal",
    "polish",
    "classify",
    "type1_profile_distance",
    "scan_fig3",
    "write_scan_csv",
    "SCAN_COLUMNS",
]


@dataclass(frozen=True)
class SolveOptions:
    seed: int = 1
    max_restarts: int = 200
    max_iterations: int = 2000
    cost_threshold: float = 1e-18
    polish: bool = True
    classification_tol: float = 1e-6
    dedup_tol: float = 1e-6
    workers: int = 1

    def __post_init__(self):
        for name in ("cost_threshold", "classification_tol", "dedup_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_restarts < 0 or self.max_iterations < 1 or self.workers < 1:
            raise ValueError("counts of restarts, iterations or workers must be positive")


def _component_positions() -> list:
    """Orbit-table column of each of a1..a13."""
    table = hexagon_table()
    return [table.position((s0,) + tuple(int(c) for c in b)) for s0, b in HEXAGON_COMPONENTS]


class HexagonalCost:
    """Cost and analytic gradient over the 13 hexagonal components."""

    def __init__(self):
        # columns ordered as a1..a13
        E = hexagon_table().expansion_matrix()[:, _component_positions()]
        E = E.reshape((2,) * 7 + (13,))
        # legs 0,1,2 are the leading axes already
        self.basis = E.reshape(8, 16, 13)

    def matrix(self, x):
        return np.einsum("abr,r->ab", self.basis, x)

    def cost(self, x) -> float:
        V = self.matrix(x)
        rho = V @ V.T
        n = np.trace(rho)
        return float(np.sum((rho / n - np.eye(8) / 8) ** 2))

    def purity_form(self, x) -> float:
        """Same quantity as :meth:`cost`, written as purity minus 1/8."""
        V = self.matrix(x)
        rho = V @ V.T
        return float(np.sum(rho * rho) / np.trace(rho) ** 2 - 1 / 8)

    def value_and_grad(self, x):
        V = self.matrix(x)
        rho = V @ V.T
        n = np.trace(rho)
        p = np.sum(rho * rho)
        dp = 4 * np.einsum("ab,bc,acr->r", rho, V, self.basis)
        dn = 2 * np.einsum("ab,abr->r", V, self.basis)
        val = np.sum((rho / n - np.eye(8) / 8) ** 2)
        grad = dp / n**2 - 2 * p * dn / n**3
        return float(val), grad


def _normalize(values) -> np.ndarray:
    """Scale components so the expanded tensor has unit norm."""
    v = np.asarray(values, dtype=float)
    return v / np.sqrt(hexagon_from_components(v).norm2())


_SYSTEM = None


def _system():
    global _SYSTEM
    if _SYSTEM is None:
        _SYSTEM = constraint_equations(hexagon_full(), (0, 1, 2))[1]
    return _SYSTEM


def _to_table(values):
    out = np.zeros(13)
    out[_component_positions()] = values
    return out


def _from_table(x):
    return np.asarray(x)[_component_positions()]


def polish(values, steps: int = 8) -> np.ndarray:
    """Gauss-Newton on the distinct constraint residuals; returns unit-norm components."""
    sys_ = _system()
    x = _to_table(_normalize(values) * np.sqrt(8.0))
    for _ in range(steps):
        r = sys_(x)
        if np.max(np.abs(r)) < 1e-16:
            break
        dx = np.linalg.lstsq(sys_.jacobian(x), -r, rcond=None)[0]
        x = x + dx
    return _normalize(_from_table(x))


def type1_profile_distance(profile) -> float:
    """Distance from a profile to the nearest Type I profile.

    Candidate parameters solve the closed-form ``{0,1,3}`` delta; the result
    is the smallest max-abs difference over all five deltas.
    """
    target = profile.ds013
    grid = np.linspace(1e-9, A_MAX_TYPE1 - 1e-9, 4001)
    vals = type1_ds013(grid) - target
    best = np.inf
    roots = []
    for i in np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:])):
        roots.append(brentq(lambda a: type1_ds013(a) - target, grid[i], grid[i + 1], xtol=1e-15))
    # a tangential touch at the maximum has no sign change
    i = int(np.argmin(np.abs(vals)))
    roots.append(grid[i])
    ref = np.array(profile.as_tuple())
    for a in roots:
        for branch in ("minus", "plus"):
            other = np.array(hexagonal_type1(a, branch=branch).entropy_profile.as_tuple())
            best = min(best, float(np.max(np.abs(other - ref))))
    return best


def classify(rec: SolutionRecord, tol: float = 1e-6) -> str:
    """Family tag of a hexagonal solution.

    Type I needs the four branch differences and an entropy profile on the
    Type I curve; Type III the modulus equalities; Type II the quadratic
    relation between the first four components.  Checked in the order
    I, III, II.  Solutions with the Type I differences but an off-curve
    profile are tagged ``Isolated``; anything else ``Unclassified``.
    """
    a = _normalize(rec.components)
    d21, d56, d78, d43 = branch_differences(a)
    s = 1 / (8 * SQRT2)
    branch_ok = (
        abs(abs(d21) - s) <= tol
        and abs(d56 - d21) <= tol
        and abs(d78 - d21) <= tol
        and abs(abs(d43) - 2 * s) <= tol
    )
    profile = rec.entropy_profile
    if profile is None or abs(profile.norm - 1) > 1e-9:
        profile = hexagonal_record("Custom", {}, a).entropy_profile
    if branch_ok:
        if type1_profile_distance(profile) <= tol:
            return "HexTypeI"
    A = np.abs(a)
    if (
        abs(A[0] - A[9]) <= tol
        and abs(A[1] - A[8]) <= tol
        and abs(A[2] - A[3]) <= tol
        and abs(A[2] - A[11]) <= tol
    ):
        return "HexTypeIII"
    if abs((a[0] - a[1]) ** 2 + 3 * (a[2] - a[3]) ** 2 - 1 / 8) <= tol:
        return "HexTypeII"
    return "Isolated" if branch_ok else "Unclassified"


def _restart(seed: int, restart: int, opts: SolveOptions, cost: HexagonalCost):
    rng = make_rng(seed, restart)
    x0 = _normalize(rng.uniform(-1.0, 1.0, 13))
    res = minimize(
        cost.value_and_grad,
        x0,
        jac=True,
        method="BFGS",
        options={"gtol": 1e-14, "maxiter": opts.max_iterations},
    )
    x = _normalize(res.x)
    if opts.polish:
        x = polish(x)
    return restart, x, cost.cost(x), int(res.nit)


def _run_chunk(args):
    seed, restarts, opts = args
    cost = HexagonalCost()
    return [_restart(seed, r, opts, cost) for r in restarts]


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("GRT_THREADS", "0")) or os.cpu_count() or 1)
    except ValueError:
        return 1


def _canonical_sign(x):
    """Fix the global sign so the first sizeable component is positive."""
    i = int(np.flatnonzero(np.abs(x) > 1e-8)[0])
    return x if x[i] > 0 else -x


def solve_hexagonal(opts: SolveOptions = SolveOptions(), return_all: bool = False):
    """Random-restart search for solutions of the ``{0,1,2}`` constraint.

    Every restart draws 13 components uniformly from ``[-1, 1]`` with its
    own PCG64 substream, so results do not depend on the worker count.
    Accepted solutions are deduplicated up to global sign and sorted by
    ``(cost, components)``.

    Returns the list of :class:`SolutionRecord`; with ``return_all`` also a
    list of ``(restart, cost, iterations)`` for every restart.
    """
    workers = min(opts.workers, _thread_cap())
    restarts = list(range(opts.max_restarts))
    if workers > 1 and len(restarts) > 1:
        chunks = [restarts[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_run_chunk, [(opts.seed, c, opts) for c in chunks])
            results = [r for part in parts for r in part]
    else:
        results = _run_chunk((opts.seed, restarts, opts))
    results.sort(key=lambda r: r[0])
    accepted = []
    for restart, x, c, _ in results:
        if c < opts.cost_threshold:
            accepted.append((c, tuple(_canonical_sign(x)), restart))
    accepted.sort()
    unique = []
    for c, x, restart in accepted:
        x = np.array(x)
        if any(np.max(np.abs(x - u)) <= opts.dedup_tol for _, u, _ in unique):
            continue
        unique.append((c, x, restart))
    records = []
    for c, x, restart in unique:
        rec = hexagonal_record("Custom", {"seed": opts.seed, "restart": restart}, x, cost=c)
        records.append(replace(rec, family=classify(rec, opts.classification_tol)))
    if return_all:
        return records, [(r, c, it) for r, _, c, it in results]
    return records


SCAN_COLUMNS = (
    ["seed", "restart", "cost"]
    + list(PROFILE_KEYS)
    + ["type"]
    + [f"a_{k}" for k in range(1, 14)]
)


def scan_fig3(opts: SolveOptions = SolveOptions()) -> list:
    """One row per accepted solution, columns :data:`SCAN_COLUMNS`."""
    rows = []
    for rec in solve_hexagonal(opts):
        p = rec.entropy_profile
        rows.append(
            [opts.seed, rec.params["restart"], rec.cost]
            + list(p.as_tuple())
            + [rec.family]
            + [float(v) for v in rec.components]
        )
    return rows


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.15e}"
    return str(v)


def write_scan_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SCAN_COLUMNS)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
