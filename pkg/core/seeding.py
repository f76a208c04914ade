"""
Seed handling: one 64-bit seed per experiment, split into independent
streams with numpy's SeedSequence so results do not depend on scheduling.
"""

from typing import List

import numpy as np


def spawn_generators(seed: int, n_streams: int) -> List[np.random.Generator]:
    """Split a single seed into n independent generators, in a fixed order"""
    children = np.random.SeedSequence(seed).spawn(n_streams)
    return [np.random.default_rng(child) for child in children]


def stream(seed: int, index: int) -> np.random.Generator:
    """The index-th stream derived from seed"""
    return spawn_generators(seed, index + 1)[index]


def derive_seed(rng: np.random.Generator) -> int:
    """Draw a fresh 63-bit seed from a generator (for seed-taking samplers)"""
    return int(rng.integers(0, 2**63 - 1))
