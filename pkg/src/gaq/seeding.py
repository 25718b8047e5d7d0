"""Reproducible sub-stream derivation.

Every random quantity in the package flows from one 64-bit seed through
``numpy.random.SeedSequence`` spawn keys, so distinct roles (candidate
draws, noise realizations, retries, grid cells) get independent streams
that are stable across runs and versions. The bit generator is PCG64
(``numpy.random.default_rng``); both the generator family and this
derivation scheme are part of the reproducibility contract.
"""

from __future__ import annotations

import numpy as np


def substream(seed, *key):
    """Generator for the sub-stream identified by ``key`` under ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))


def derive_seed(seed, *key):
    """Collapse a sub-stream identity to a plain integer seed."""
    seq = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(seq.generate_state(1, dtype=np.uint64)[0])
