"""Synthetic test signals with known scaling behaviour."""
import numpy as np


def binomial_cascade(n_levels: int = 13, p: float = 0.6) -> np.ndarray:
    """Deterministic binomial multiplicative cascade of length 2**n_levels.

    Sample k (0-based) is p**b * (1 - p)**(n_levels - b), with b the number of
    ones in the binary expansion of k.
    """
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    k = np.arange(2**n_levels)
    ones = np.zeros(k.size, dtype=int)
    for bit in range(n_levels):
        ones += (k >> bit) & 1
    return p**ones * (1.0 - p) ** (n_levels - ones)


def white_noise(n: int, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).standard_normal(n)


def sine(n: int, step: float = 0.1) -> np.ndarray:
    return np.sin(step * np.arange(n))
