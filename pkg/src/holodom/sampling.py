"""Seeded complex sampling helpers shared by verify routines and the CLI."""

from __future__ import annotations

import numpy as np


def rng_from_seed(seed):
    return np.random.default_rng(seed)


def sample_disk(rng, n, center=0j, radius=3.0, avoid=(), min_dist=0.0):
    """n points uniform in the disk, redrawn while within min_dist of `avoid`."""
    out = []
    center = complex(center)
    avoid = [complex(a) for a in avoid]
    while len(out) < n:
        r = radius * np.sqrt(rng.uniform())
        theta = rng.uniform(0.0, 2.0 * np.pi)
        z = center + r * np.exp(1j * theta)
        if any(abs(z - a) < min_dist for a in avoid):
            continue
        out.append(complex(z))
    return out


def sample_annulus(rng, n, center=0j, inner=0.5, outer=2.0):
    out = []
    center = complex(center)
    while len(out) < n:
        r = np.sqrt(rng.uniform(inner ** 2, outer ** 2))
        theta = rng.uniform(0.0, 2.0 * np.pi)
        out.append(complex(center + r * np.exp(1j * theta)))
    return out
