"""Linear subspaces and affine flats of F_2^m, and precomputed flat tables.

Canonical form: a subspace is stored as the reduced row echelon basis of
its span, where the pivot of a vector is its most significant set bit,
rows are listed with strictly increasing pivots, and every pivot bit
occurs in exactly one row.  This makes the basis a unique representative
of the subspace, and the coset representative of a point the unique
member of its coset that is zero in all pivot coordinates.

Enumeration walks pivot-position combinations in lexicographic order and,
inside each combination, assigns the free entries by binary counting
(row-major, lowest position first).  The flat-table builder reproduces
exactly the same order with vectorised numpy blocks.
"""

from __future__ import annotations

import itertools
import struct
from functools import lru_cache

import numpy as np

from .core import MAX_VARS

ENUMERATION_CAP = 1 << 26
_UINT64_MAX = (1 << 64) - 1

_MAGIC = b"BFLT"
_VERSION = 1


def gaussian_binomial(m: int, r: int) -> int:
    """Number of r-dimensional subspaces of F_2^m (exact, 64-bit guarded).

    Computed by the product formula prod_{i} (2^m - 2^i) / (2^r - 2^i);
    running the factors from i = r-1 down to 0 keeps every intermediate
    division exact.
    """
    if not (isinstance(m, int) and isinstance(r, int) and 0 <= r <= m <= MAX_VARS):
        raise ValueError(f"need 0 <= r <= m <= {MAX_VARS}, got m={m}, r={r}")
    value = 1
    for i in range(r - 1, -1, -1):
        num = value * ((1 << m) - (1 << i))
        den = (1 << r) - (1 << i)
        value, rem = divmod(num, den)
        if rem:  # cannot happen: partial products are Gaussian binomials
            raise ArithmeticError(f"inexact division in gaussian_binomial({m},{r})")
    if value > _UINT64_MAX:
        raise OverflowError(f"gaussian_binomial({m},{r}) exceeds 64-bit range")
    return value


def _rref(m: int, vectors) -> tuple[int, ...]:
    """Reduced row echelon span basis, pivots (msb) strictly increasing."""
    full = (1 << m) - 1
    pivots: dict[int, int] = {}
    for v in vectors:
        v = int(v)
        if v < 0 or v > full:
            raise ValueError(f"vector {v} out of range for m={m}")
        for q in sorted(pivots, reverse=True):
            if (v >> q) & 1:
                v ^= pivots[q]
        if v == 0:
            continue
        p = v.bit_length() - 1
        for q in list(pivots):
            if (pivots[q] >> p) & 1:
                pivots[q] ^= v
        pivots[p] = v
    return tuple(pivots[p] for p in sorted(pivots))


class LinearSubspace:
    """An r-dimensional linear subspace of F_2^m in canonical RREF basis."""

    __slots__ = ("m", "basis")

    def __init__(self, m: int, vectors, _canonical: bool = False):
        if not 1 <= m <= MAX_VARS:
            raise ValueError(f"m must be in 1..{MAX_VARS}")
        self.m = m
        self.basis = tuple(int(v) for v in vectors) if _canonical else _rref(m, vectors)

    @property
    def r(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(v.bit_length() - 1 for v in self.basis)

    def reduce(self, v: int) -> int:
        """Canonical coset representative of v: clear every pivot coordinate."""
        v = int(v)
        for row in reversed(self.basis):
            if (v >> (row.bit_length() - 1)) & 1:
                v ^= row
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def points(self) -> list[int]:
        """The 2^r points of the subspace; point j = xor of basis[i] over bits i of j."""
        pts = [0]
        for b in self.basis:
            pts += [p ^ b for p in pts]
        return pts

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearSubspace)
                and self.m == other.m and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.m, self.basis))

    def __repr__(self) -> str:
        vecs = ",".join(format(v, "0%db" % self.m) for v in self.basis)
        return f"LinearSubspace(m={self.m}, basis=[{vecs}])"


class AffineFlat:
    """A coset rep + V; the stored representative is reduced modulo V."""

    __slots__ = ("subspace", "rep")

    def __init__(self, subspace: LinearSubspace, rep: int):
        self.subspace = subspace
        self.rep = subspace.reduce(rep)

    @property
    def m(self) -> int:
        return self.subspace.m

    @property
    def r(self) -> int:
        return self.subspace.r

    def points(self) -> list[int]:
        return [self.rep ^ p for p in self.subspace.points()]

    def __contains__(self, v: int) -> bool:
        return self.subspace.reduce(v) == self.rep

    def __eq__(self, other) -> bool:
        return (isinstance(other, AffineFlat)
                and self.subspace == other.subspace and self.rep == other.rep)

    def __hash__(self) -> int:
        return hash((self.subspace, self.rep))

    def __repr__(self) -> str:
        return f"AffineFlat(rep={self.rep:#x}, subspace={self.subspace!r})"


@lru_cache(maxsize=None)
def _pivot_blocks(m: int, r: int):
    """Per pivot combination: (pivots, free slots in canonical order)."""
    blocks = []
    for pivots in itertools.combinations(range(m), r):
        pset = set(pivots)
        slots = [(i, pos) for i, p in enumerate(pivots) for pos in range(p) if pos not in pset]
        blocks.append((pivots, tuple(slots)))
    return tuple(blocks)


def enumerate_subspaces(m: int, r: int, cap: int = ENUMERATION_CAP):
    """Yield every r-dimensional subspace of F_2^m once, in canonical order."""
    total = gaussian_binomial(m, r)
    if total > cap:
        raise ValueError(f"enumeration of {total} subspaces exceeds cap {cap}")

    def gen():
        for pivots, slots in _pivot_blocks(m, r):
            base = [1 << p for p in pivots]
            for cnt in range(1 << len(slots)):
                rows = base.copy()
                for t, (row, pos) in enumerate(slots):
                    if (cnt >> t) & 1:
                        rows[row] |= 1 << pos
                yield LinearSubspace(m, tuple(rows), _canonical=True)

    return gen()


def cosets(space: LinearSubspace) -> list[AffineFlat]:
    """The 2^(m-r) cosets of V, reps enumerated over the non-pivot positions."""
    npos = [q for q in range(space.m) if q not in set(space.pivots)]
    flats = []
    for cnt in range(1 << len(npos)):
        rep = 0
        for t, q in enumerate(npos):
            if (cnt >> t) & 1:
                rep |= 1 << q
        flats.append(AffineFlat(space, rep))
    return flats


def flat_points(flat: AffineFlat) -> list[int]:
    """Ordered points of the flat: point j = rep xor (basis combination j)."""
    return flat.points()


class FlatTable:
    """All r-spaces of F_2^m with their points and coset representatives.

    Arrays (read-only):
      basis  -- (n_spaces, r) uint32, canonical RREF rows per space
      reps   -- (n_spaces, 2^(m-r)) uint32, reduced coset representatives
      points -- (n_spaces, 2^r) uint32, points of each subspace itself

    The flat (s, c) has point list points[s] ^ reps[s, c].
    """

    __slots__ = ("m", "r", "basis", "reps", "points")

    def __init__(self, m: int, r: int, basis: np.ndarray, reps: np.ndarray):
        self.m = m
        self.r = r
        self.basis = basis
        self.reps = reps
        self.points = _space_points(basis, r)
        for arr in (self.basis, self.reps, self.points):
            arr.flags.writeable = False

    @property
    def n_spaces(self) -> int:
        return self.basis.shape[0]

    @property
    def cosets_per_space(self) -> int:
        return self.reps.shape[1]

    @property
    def n_flats(self) -> int:
        return self.n_spaces * self.cosets_per_space

    def space(self, s: int) -> LinearSubspace:
        return LinearSubspace(self.m, [int(v) for v in self.basis[s]], _canonical=True)

    def flat(self, s: int, c: int) -> AffineFlat:
        return AffineFlat(self.space(s), int(self.reps[s, c]))

    def flat_point_array(self) -> np.ndarray:
        """(n_flats, 2^r) uint32 point matrix, flats in canonical order."""
        pts = self.points[:, None, :] ^ self.reps[:, :, None]
        return pts.reshape(self.n_flats, 1 << self.r)

    def __repr__(self) -> str:
        return (f"FlatTable(m={self.m}, r={self.r}, spaces={self.n_spaces}, "
                f"cosets={self.cosets_per_space})")


def _space_points(basis: np.ndarray, r: int) -> np.ndarray:
    n_spaces = basis.shape[0]
    pts = np.zeros((n_spaces, 1 << r), np.uint32)
    jidx = np.arange(1 << r)
    for i in range(r):
        sel = ((jidx >> i) & 1).astype(bool)
        pts[:, sel] ^= basis[:, i][:, None]
    return pts


def build_flat_table(m: int, r: int, cap: int = ENUMERATION_CAP) -> FlatTable:
    """Materialise the full table of r-spaces; order matches enumerate_subspaces."""
    total = gaussian_binomial(m, r)
    if total > cap:
        raise ValueError(f"table of {total} subspaces exceeds cap {cap}")
    n_cos = 1 << (m - r)

    basis_blocks, rep_blocks = [], []
    for pivots, slots in _pivot_blocks(m, r):
        nf = len(slots)
        cnt = np.arange(1 << nf, dtype=np.uint32)
        rows = np.empty((1 << nf, r), np.uint32)
        for i, p in enumerate(pivots):
            acc = np.full(1 << nf, 1 << p, np.uint32)
            for t, (row, pos) in enumerate(slots):
                if row == i:
                    acc |= ((cnt >> t) & 1).astype(np.uint32) << np.uint32(pos)
            rows[:, i] = acc
        npos = [q for q in range(m) if q not in set(pivots)]
        ccnt = np.arange(n_cos, dtype=np.uint32)
        reps = np.zeros(n_cos, np.uint32)
        for t, q in enumerate(npos):
            reps |= ((ccnt >> t) & 1).astype(np.uint32) << np.uint32(q)
        basis_blocks.append(rows)
        rep_blocks.append(np.broadcast_to(reps, (1 << nf, n_cos)))

    basis = np.vstack(basis_blocks)
    reps = np.vstack(rep_blocks)
    assert basis.shape[0] == total
    return FlatTable(m, r, np.ascontiguousarray(basis), np.ascontiguousarray(reps))


def save_flat_table(table: FlatTable, path) -> None:
    """Write the BFLT binary format (basis rows and coset reps; points are derived)."""
    header = _MAGIC + struct.pack("<IIIQ", _VERSION, table.m, table.r, table.n_spaces)
    body = np.hstack([table.basis, table.reps]).astype("<u4")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(body.tobytes())


def load_flat_table(path) -> FlatTable:
    """Read a BFLT file, verifying magic, version and counts."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 24 or raw[:4] != _MAGIC:
        raise ValueError(f"{path}: not a flat-table file (bad magic)")
    version, m, r, count = struct.unpack("<IIIQ", raw[4:24])
    if version != _VERSION:
        raise ValueError(f"{path}: unsupported flat-table version {version}")
    if not (1 <= m <= MAX_VARS and 0 <= r <= m):
        raise ValueError(f"{path}: invalid dimensions m={m}, r={r}")
    if count != gaussian_binomial(m, r):
        raise ValueError(
            f"{path}: space count {count} does not match gaussian_binomial({m},{r})"
        )
    n_cos = 1 << (m - r)
    expected = 24 + count * (r + n_cos) * 4
    if len(raw) != expected:
        raise ValueError(f"{path}: truncated or oversized file "
                         f"({len(raw)} bytes, expected {expected})")
    body = np.frombuffer(raw[24:], dtype="<u4").reshape(count, r + n_cos)
    basis = np.ascontiguousarray(body[:, :r]).astype(np.uint32)
    reps = np.ascontiguousarray(body[:, r:]).astype(np.uint32)
    if count and reps[0, 0] != 0:
        raise ValueError(f"{path}: corrupt table (first coset representative not 0)")
    return FlatTable(m, r, basis, reps)
