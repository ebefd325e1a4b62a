"""Discrete pinned-balls sorting dynamics.

Motionless balls on sites 1..n carry pseudo-velocities; a randomly chosen
adjacent pair reorders its velocities (min left, max right), the elastic
collision rule for equal masses.  The multiset of velocities is invariant,
so sum and sum of squares (discrete momentum and energy) are conserved
exactly, and the sorted configuration is absorbing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class BallState:
    velocities: Tuple[float, ...]
    t: int = 0
    rng_seed: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.velocities)

    def is_sorted(self) -> bool:
        return all(a <= b for a, b in zip(self.velocities, self.velocities[1:]))


def collide(state: BallState, x: int) -> BallState:
    """Order the pair at sites (x, x+1), 1-based."""
    if not 1 <= x <= state.n - 1:
        raise IndexError(f"pair index {x} out of range 1..{state.n - 1}")
    v = list(state.velocities)
    a, b = v[x - 1], v[x]
    v[x - 1], v[x] = min(a, b), max(a, b)
    return BallState(tuple(v), state.t + 1, state.rng_seed)


def run(
    state: BallState,
    steps: int,
    rng: Optional[np.random.Generator] = None,
    stride: int = 1,
) -> Tuple[BallState, List[Tuple[int, Tuple[float, ...]]]]:
    """Apply ``steps`` collisions at uniformly random adjacent pairs.

    Returns the final state and snapshots (t, velocities) every ``stride``
    steps (the initial state is always included).  Deterministic for a fixed
    rng seed.
    """
    if rng is None:
        rng = np.random.default_rng(state.rng_seed)
    v = np.array(state.velocities, dtype=float)
    t = state.t
    snaps: List[Tuple[int, Tuple[float, ...]]] = [(t, tuple(v))]
    if steps > 0:
        picks = rng.integers(0, state.n - 1, size=steps)
        for k, i in enumerate(picks):
            a, b = v[i], v[i + 1]
            if a > b:
                v[i], v[i + 1] = b, a
            t += 1
            if (k + 1) % stride == 0:
                snaps.append((t, tuple(v)))
    if snaps[-1][0] != t:
        snaps.append((t, tuple(v)))
    return BallState(tuple(v), t, state.rng_seed), snaps
