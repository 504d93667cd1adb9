"""Isometry checks for the frame tensor woven from dual-unitary gates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..catalog.dualunitary import dual_unitary, frame_gate_count, frame_tensor, reshuffle_defect
from ..constraints import ConstraintGraph, ConstraintReport, check_graph_constrained, check_subsets
from ..catalog.states import wheel_graph_state
from ..errors import ParameterError
from ..haar import haar_unitary
from ..tensor import DenseTensor

__all__ = ["FrameReport", "verify_frame", "random_frame_gates", "neighbor_pairs", "non_neighbor_pairs", "verify_wheel", "build_and_verify"]


def neighbor_pairs(n: int) -> list:
    return [tuple(sorted((j, j % n + 1))) for j in range(1, n + 1)]


def non_neighbor_pairs(n: int) -> list:
    near = set(neighbor_pairs(n))
    return [p for p in itertools.combinations(range(1, n + 1), 2) if p not in near]


@dataclass
class FrameReport:
    n: int
    neighbors: ConstraintReport
    non_neighbors: ConstraintReport

    @property
    def neighbors_pass(self) -> bool:
        return self.neighbors.passed

    @property
    def non_neighbor_failures(self) -> list:
        return self.non_neighbors.failures()

    @property
    def passed(self) -> bool:
        """Neighbor isometries hold and at least one non-neighbor pair breaks."""
        return self.neighbors_pass and bool(self.non_neighbor_failures)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pass": self.passed,
            "neighbors": self.neighbors.to_dict(),
            "non_neighbors": self.non_neighbors.to_dict(),
        }


def verify_frame(F: DenseTensor, n: int, tol: float = 1e-10) -> FrameReport:
    """Check every cyclic neighbor pair and every non-neighbor pair of legs ``1..n``.

    Non-neighbor pairs are all checked (there are ``n(n-3)/2`` of them),
    so the report records exactly which ones pass.
    """
    if sorted(F.labels) != list(range(1, n + 1)):
        raise ParameterError(f"frame legs must be 1..{n}")
    if n < 4:
        raise ParameterError("the frame needs n >= 4")
    near = check_subsets(F, neighbor_pairs(n), tol)
    # checked one by one: a passing pair must not hide the others
    far = ConstraintReport([check_subsets(F, [p], tol).checks[0] for p in non_neighbor_pairs(n)])
    return FrameReport(n, near, far)


def random_frame_gates(n: int, J: float, rng: np.random.Generator) -> list:
    """Dual-unitary gates with Haar-random single-qubit dressing.

    Raises if a drawn gate happens to be unitary under the remaining
    reshuffling as well, since such gates would not break any isometry.
    """
    gates = []
    for _ in range(frame_gate_count(n)):
        g = dual_unitary(J, [haar_unitary(2, rng) for _ in range(4)])
        if reshuffle_defect(g) < 1e-6:
            raise ParameterError("drawn gate is 2-unitary; choose another coupling")
        gates.append(g)
    return gates


def verify_wheel(n: int, tol: float = 1e-10) -> ConstraintReport:
    """Wheel-graph check of the wheel graph state with ``n`` rim qubits."""
    return check_graph_constrained(wheel_graph_state(n), ConstraintGraph.wheel(n), tol)


def build_and_verify(n: int, gates, tol: float = 1e-10) -> FrameReport:
    return verify_frame(frame_tensor(n, gates), n, tol)
