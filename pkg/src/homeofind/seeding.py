"""Splittable seed derivation.

Trial- and attempt-level RNGs are seeded by mixing the master seed with the
coordinates of the job, so independent jobs need no coordination and reruns
are reproducible.  The mixer is splitmix64 applied to a linear combination of
the parts.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


def derive_seed(master: int, *parts: int) -> int:
    """A 64-bit seed determined by (master, *parts)."""
    acc = _splitmix64(master & _MASK)
    for p in parts:
        acc = _splitmix64(acc ^ _splitmix64(p & _MASK))
    return acc
