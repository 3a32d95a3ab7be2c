"""Composite Markov chain sampling: parallel BFACF chains with replica swaps.

Chains run at strictly increasing fugacities; every swap_interval attempted
moves per chain, one adjacent pair (round-robin) attempts a configuration
swap with the Metropolis ratio (z_hi/z_lo)^(len_lo - len_hi). Conformations
are emitted from chain 0 every sample_interval attempted moves after
burn_in. Streams are bit-reproducible from (seed polygon, params).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .bfacf import BfacfChain
from .polygon import LatticePolygon

Z_CRITICAL = 0.2134  # growth-constant reciprocal for cubic-lattice polygons


class LengthCapExceeded(Warning):
    """Diagnostic: proposals beyond max_length were rejected (chain rolled back)."""


def default_fugacities(n_chains: int = 5, z_max: float = 0.2115,
                       z_min: float = 0.2000) -> tuple[float, ...]:
    """Geometrically spaced fugacities strictly below the critical point."""
    if n_chains == 1:
        return (z_max,)
    ratio = (z_max / z_min) ** (1.0 / (n_chains - 1))
    return tuple(z_min * ratio ** k for k in range(n_chains))


@dataclass(frozen=True)
class ChainParams:
    fugacities: tuple = field(default_factory=default_fugacities)
    swap_interval: int = 1000
    sample_interval: int = 10000
    burn_in: int = 1000000
    max_length: int = 1000
    rng_seed: int = 1

    @property
    def n_chains(self) -> int:
        return len(self.fugacities)

    def __post_init__(self):
        zs = self.fugacities
        if len(zs) < 1 or any(z <= 0 for z in zs):
            raise ValueError("need at least one positive fugacity")
        if any(b <= a for a, b in zip(zs, zs[1:])):
            raise ValueError("fugacities must be strictly increasing")
        if self.swap_interval < 1 or self.sample_interval < 1 or self.burn_in < 0:
            raise ValueError("intervals must be positive")

    def as_dict(self) -> dict:
        return {
            "fugacities": ",".join(f"{z:.6f}" for z in self.fugacities),
            "swap_interval": self.swap_interval,
            "sample_interval": self.sample_interval,
            "burn_in": self.burn_in,
            "max_length": self.max_length,
            "rng_seed": self.rng_seed,
        }


def _mix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


class CmcSampler:
    """Driver object; use cmc_sample() for the plain generator interface."""

    def __init__(self, seed_poly: LatticePolygon, params: ChainParams):
        if params.max_length < seed_poly.length:
            raise ValueError("max_length below seed length")
        self.params = params
        self.chains = [BfacfChain(seed_poly, z, seed=_mix64(params.rng_seed + 7919 * k),
                                  max_length=params.max_length)
                       for k, z in enumerate(params.fugacities)]
        self.swap_rng = np.random.Generator(np.random.PCG64(_mix64(params.rng_seed)))
        self.swap_attempts = 0
        self.swap_accepts = 0
        self.cap_hits = 0

    def _swap_pass(self) -> None:
        n = len(self.chains)
        if n < 2:
            return
        pair = self.swap_attempts % (n - 1)
        self.swap_attempts += 1
        lo, hi = self.chains[pair], self.chains[pair + 1]
        ratio = (hi.fugacity / lo.fugacity) ** (lo.n - hi.n)
        if ratio >= 1.0 or self.swap_rng.random() < ratio:
            lo.swap_state_with(hi)
            self.swap_accepts += 1

    def advance(self, moves: int) -> None:
        """Advance every chain `moves` attempted moves with swap passes."""
        step = self.params.swap_interval
        done = 0
        while done < moves:
            chunk = min(step, moves - done)
            for ch in self.chains:
                ch.run(chunk)
            done += chunk
            if done % step == 0:
                self._swap_pass()
        self.cap_hits = int(sum(ch.counters[3] for ch in self.chains))

    def sample_stream(self) -> Iterator[LatticePolygon]:
        self.advance(self.params.burn_in)
        while True:
            self.advance(self.params.sample_interval)
            yield self.chains[0].polygon()


def cmc_sample(seed_poly: LatticePolygon, params: ChainParams) -> Iterator[LatticePolygon]:
    """Yield chain-0 conformations every sample_interval moves after burn_in."""
    return CmcSampler(seed_poly, params).sample_stream()
