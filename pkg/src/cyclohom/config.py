"""Run-time knobs shared by the computational modules."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class StabilizationPolicy:
    """How long a tower must look constant before a dimension is reported.

    ``steps`` consecutive stages must be linked by isomorphisms.  With
    ``lookahead`` L > 0 the test is applied to the images of H(stage s) in
    H(stage s + L) instead of to the raw stage homologies; this discards
    classes that are born at the top of a stage and die a few stages later.
    """
    steps: int = 3
    max_stages: int = 16
    lookahead: int = 0

    def __post_init__(self):
        if self.steps < 1 or self.max_stages < 1 or self.lookahead < 0:
            raise ValueError("steps and max_stages must be positive, lookahead non-negative")

    def with_max_stages(self, n: int) -> "StabilizationPolicy":
        return replace(self, max_stages=n)


@dataclass(frozen=True)
class Budget:
    """Upper bounds on the size of materialized objects."""
    max_cell_dim: int = 200_000
    max_generators: int = 20_000


DEFAULT_BUDGET = Budget()


def thread_count(flag: int | None = None) -> int:
    if flag is not None:
        return max(1, int(flag))
    env = os.environ.get("CYCLOHOM_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1
