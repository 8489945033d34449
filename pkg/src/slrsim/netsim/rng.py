"""Counter-based deterministic randomness for the simulator.

Every stochastic quantity in a run (shadow-fading draws, backoff slots,
deactivation sampling seeds) is a pure function of the run seed and the
identifiers involved (packet, transmitter, receiver, ...), computed via
splitmix64-style hashing. This makes reports bit-identical across
reruns and processes, independent of evaluation order, and it keeps a
given link-use's draw stable when unrelated parts of a scenario change
(which is what makes the width-monotonicity delivery property exact).
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_H0 = 0x243F6A8885A308D3

# Stream salts; distinct constants so streams never collide.
SALT_DEACTIVATE = 0xD0
SALT_SHADOW = 0x5A
SALT_BACKOFF = 0xB0
SALT_FLOOD = 0xF1
SALT_DATA = 0xDA
SALT_PAIRS = 0x9A
SALT_FIELD = 0xFE
SALT_IDS = 0x1D


def mix64(x: int) -> int:
    """splitmix64 output function (one full step from state x)."""
    x = (x + _GAMMA) & _MASK
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK
    return x ^ (x >> 31)


def key_hash(*parts: int) -> int:
    """Collapse integer identifiers into one well-mixed 64-bit value."""
    h = _H0
    for p in parts:
        h = mix64(h ^ mix64(p & _MASK))
    return h


def derive_seed(*parts: int) -> int:
    """A child seed for stdlib/numpy generators, from integer parts."""
    return key_hash(*parts)


def uniform01(*parts: int) -> float:
    """Deterministic uniform draw in (0, 1) keyed by the parts."""
    return ((key_hash(*parts) >> 11) + 0.5) * 2.0**-53


def normal(sigma: float, *parts: int) -> float:
    """Deterministic Normal(0, sigma) draw keyed by the parts."""
    u1 = uniform01(*parts, 1)
    u2 = uniform01(*parts, 2)
    return sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def randint(n: int, *parts: int) -> int:
    """Deterministic integer in [0, n) keyed by the parts."""
    return key_hash(*parts) % n


# Vectorized variants. numpy uint64 arithmetic wraps modulo 2**64, which
# is exactly the splitmix64 semantics.

def _mix64_np(x: np.ndarray) -> np.ndarray:
    x = x + np.uint64(_GAMMA)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(_MIX1)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(_MIX2)
    return x ^ (x >> np.uint64(31))


def key_hash_np(prefix: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized key_hash(prefix_parts..., a, b) with broadcasting.

    ``prefix`` is the scalar hash state after absorbing the leading
    parts (compute it with key_hash); ``a`` and ``b`` broadcast against
    each other (e.g. transmitter column, receiver row).
    """
    with np.errstate(over="ignore"):
        h = np.uint64(prefix) ^ _mix64_np(a.astype(np.uint64))
        h = _mix64_np(h)
        h = h ^ _mix64_np(b.astype(np.uint64))
        return _mix64_np(h)


def uniform01_np(h: np.ndarray) -> np.ndarray:
    return ((h >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def normal_np(sigma: float, prefix: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized Normal(0, sigma) keyed per broadcast (a, b) element."""
    base = key_hash_np(prefix, a, b)
    with np.errstate(over="ignore"):
        u1 = uniform01_np(_mix64_np(base ^ np.uint64(1)))
        u2 = uniform01_np(_mix64_np(base ^ np.uint64(2)))
    return sigma * np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
