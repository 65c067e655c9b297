"""
Synthetic closed-loop pair generator.
"""

from enum import Enum
from typing import Optional

import numpy as np

from whtrim.jsr import ClosedLoopPair
from whtrim.linalg import spectral_radius

MAX_GENERATED_DIM = 10
MAX_TARGET_SR = 1.1


class MissStrategy(str, Enum):
    """What the actuator does when a job misses its deadline."""

    HOLD = "hold"  # keep the previous control signal
    ZERO = "zero"  # kill the job, actuate zero


class PairGenerator:
    """
    Deterministic pseudo-random closed-loop pair generator.

    The last state coordinate plays the role of the held control input.
    """

    def __init__(
        self,
        dim: int = 2,
        target_sr: float = 0.8,
        strategy: MissStrategy = MissStrategy.HOLD,
    ):
        """
        Initialize generator with options.

        Args:
            dim: Plant state dimension (1..10)
            target_sr: Spectral radius of the generated phi_hit, in (0, 1.1)
            strategy: Miss-handling strategy encoded in phi_miss
        """
        if not 1 <= dim <= MAX_GENERATED_DIM:
            raise ValueError(f"dim must be in [1, {MAX_GENERATED_DIM}], got {dim}")
        if not 0.0 < target_sr < MAX_TARGET_SR:
            raise ValueError(f"target_sr must be in (0, {MAX_TARGET_SR}), got {target_sr}")
        self.dim = dim
        self.target_sr = target_sr
        self.strategy = MissStrategy(strategy)

    def generate(self, seed: int, name: Optional[str] = None) -> ClosedLoopPair:
        """
        Generate a pair from a seed.

        Returns:
            ClosedLoopPair with sr(phi_hit) equal to target_sr
        """
        rng = np.random.default_rng(seed)
        raw = rng.standard_normal((self.dim, self.dim))
        rho = spectral_radius(raw)
        while rho == 0.0:
            raw = rng.standard_normal((self.dim, self.dim))
            rho = spectral_radius(raw)
        phi_hit = raw * (self.target_sr / rho)

        phi_miss = phi_hit.copy()
        phi_miss[-1, :] = 0.0
        if self.strategy == MissStrategy.HOLD:
            phi_miss[-1, -1] = 1.0

        label = name or f"gen-s{seed}-d{self.dim}-{self.strategy.value}"
        return ClosedLoopPair(label, phi_hit, phi_miss)


def generate_pair(
    seed: int,
    dim: int = 2,
    target_sr: float = 0.8,
    strategy: MissStrategy = MissStrategy.HOLD,
    name: Optional[str] = None,
) -> ClosedLoopPair:
    """Generate a synthetic pair (convenience wrapper around PairGenerator)."""
    return PairGenerator(dim, target_sr, strategy).generate(seed, name)
