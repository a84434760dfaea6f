"""Walsh-Hadamard spectra, bentness and the dual bent function.

W_f(u) = sum_x (-1)^(f(x) + u.x) with the same point/index convention as
the rest of the package.  Spectra are exact 32-bit integers (|W| <= 2^m);
no floating point is involved anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .core import BoolFun
from .reldeg import tt_bit_array


@dataclass(frozen=True)
class WalshSpectrum:
    m: int
    values: np.ndarray  # int32, length 2^m

    def __post_init__(self):
        self.values.flags.writeable = False

    def __getitem__(self, u: int) -> int:
        return int(self.values[u])

    def multiplicities(self) -> dict[int, int]:
        """Value -> multiplicity summary of the spectrum."""
        vals, counts = np.unique(self.values, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}


def walsh_transform(f: BoolFun) -> WalshSpectrum:
    """Exact spectrum by the fast butterfly, O(m 2^m) integer operations."""
    v = 1 - 2 * tt_bit_array(f).astype(np.int32)
    n = v.size
    h = 1
    while h < n:
        vv = v.reshape(-1, 2, h)
        top = vv[:, 0, :].copy()
        vv[:, 0, :] += vv[:, 1, :]
        vv[:, 1, :] = top - vv[:, 1, :]
        h *= 2
    return WalshSpectrum(f.m, v)


def is_bent(f: BoolFun) -> bool:
    """True iff every |W_f(u)| equals 2^(m/2); only defined for even m."""
    if f.m % 2:
        raise ValueError(f"bentness needs an even variable count, got m={f.m}")
    target = 1 << (f.m // 2)
    return bool(np.all(np.abs(walsh_transform(f).values) == target))


def dual_bent(f: BoolFun) -> BoolFun:
    """The bent function read off the spectrum signs: (-1)^dual(u) = W_f(u)/2^(m/2)."""
    if f.m % 2:
        raise ValueError(f"bentness needs an even variable count, got m={f.m}")
    target = 1 << (f.m // 2)
    spec = walsh_transform(f)
    if not np.all(np.abs(spec.values) == target):
        raise ValueError("dual_bent requires a bent input")
    bits = (spec.values == -target).astype(np.uint8)
    table = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return BoolFun(f.m, table)


def random_mm_bent(m: int, seed: int) -> BoolFun:
    """Random Maiorana-McFarland bent function x.pi(y) + g(y) (test scaffolding).

    x is the first m/2 variables, y the last m/2; pi is a uniform random
    permutation of F_2^(m/2) and g a uniform random function, both drawn
    from random.Random(seed).
    """
    if m % 2 or m < 2:
        raise ValueError(f"Maiorana-McFarland construction needs even m >= 2, got {m}")
    h = m // 2
    rng = random.Random(seed)
    pi = list(range(1 << h))
    rng.shuffle(pi)
    g = rng.getrandbits(1 << h)
    x = np.arange(1 << h, dtype=np.uint32)
    blocks = []
    for y in range(1 << h):
        block = (np.bitwise_count(x & np.uint32(pi[y])) & 1).astype(np.uint8)
        if (g >> y) & 1:
            block ^= 1
        blocks.append(block)
    bits = np.concatenate(blocks)
    table = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return BoolFun(m, table)
