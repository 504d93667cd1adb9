"""Solution records shared by catalog constructors and the solver."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..entanglement import EntropyProfile
from ..tensor import DenseTensor

__all__ = ["SolutionRecord", "FAMILIES"]

FAMILIES = (
    "PentaAME",
    "PentaIsolated",
    "HexTypeI",
    "HexTypeII",
    "HexTypeIII",
    "HexP2A",
    "HexP2B",
    "Isolated",
    "Unclassified",
    "Custom",
)


@dataclass(frozen=True, eq=False)
class SolutionRecord:
    """A tensor together with its independent components and diagnostics.

    ``components`` follows the conventional component order of the tile
    shape (``a1..a13`` for hexagons, the eight pentagon representatives).
    """

    family: str
    params: dict
    components: np.ndarray
    tensor: DenseTensor
    entropy_profile: EntropyProfile | None = None
    cost: float | None = None
    extra: dict = field(default_factory=dict)

    def component(self, k: int) -> float:
        """Component ``a_k`` with 1-based ``k``."""
        return float(np.real(self.components[k - 1]))
