"""splitmix64 generator shared by both kernel backends.

Tree building draws per-node feature subsets inside the kernel, so both
backends implement the identical integer recurrence; everything is exact
64-bit arithmetic and therefore backend-independent.
"""

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64_next(state: int) -> tuple[int, int]:
    """Advance one step; returns (new_state, output). State is a uint64."""
    state = (state + _GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    z = z ^ (z >> 31)
    return state, z
