"""Boolean functions on F_2^m: truth tables, ANF, degree and the affine action.

Conventions shared by every module in this package:

* A point x = (x_1, ..., x_m) is identified with the integer
  sum_j x_j * 2^(j-1), i.e. x_1 is the least significant bit.
* A truth table is a 2^m-bit integer whose bit i is f(point i).
* An ANF coefficient vector is a 2^m-bit integer whose bit at
  mask(S) = sum_{s in S} 2^(s-1) is the coefficient a_S of the
  monomial prod_{s in S} x_s.

Points and monomial masks share one bijection, so the conversion between
truth table and ANF is a single in-place butterfly (the binary Moebius
transform, which is its own inverse over F_2).

All values are immutable after construction and all operations are pure
functions; everything here is safe to share across threads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

MAX_VARS = 16


def _check_m(m: int) -> None:
    if not isinstance(m, int) or not 1 <= m <= MAX_VARS:
        raise ValueError(f"variable count must be an integer in 1..{MAX_VARS}, got {m!r}")


def _iter_bits(v: int):
    """Yield the indices of the set bits of v, lowest first."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


@lru_cache(maxsize=None)
def _butterfly_masks(m: int) -> tuple[int, ...]:
    # mask k selects the positions whose k-th index bit is clear;
    # built as the (2^step ones, 2^step zeros) pattern repeated across 2^m bits.
    n = 1 << m
    masks = []
    for k in range(m):
        step = 1 << k
        unit = (1 << step) - 1
        repeat = ((1 << n) - 1) // ((1 << (2 * step)) - 1)
        masks.append(unit * repeat)
    return tuple(masks)


def _subset_xor_transform(bits: int, m: int) -> int:
    """Binary Moebius/zeta transform of a 2^m-bit vector (self-inverse)."""
    for k, mask in enumerate(_butterfly_masks(m)):
        bits ^= (bits & mask) << (1 << k)
    return bits


class BoolFun:
    """Truth table of f: F_2^m -> F_2, stored as a 2^m-bit integer."""

    __slots__ = ("m", "table", "_anf")

    def __init__(self, m: int, table: int):
        _check_m(m)
        table = int(table)
        if table < 0 or table >> (1 << m):
            raise ValueError(f"truth table does not fit in 2^{m} bits")
        self.m = m
        self.table = table
        self._anf = None

    @property
    def size(self) -> int:
        return 1 << self.m

    def __call__(self, x: int) -> int:
        if not 0 <= x < self.size:
            raise ValueError(f"point index {x} out of range for m={self.m}")
        return (self.table >> x) & 1

    def weight(self) -> int:
        return self.table.bit_count()

    def anf(self) -> "Anf":
        if self._anf is None:
            self._anf = truth_table_to_anf(self)
        return self._anf

    def degree(self) -> int:
        return degree(self)

    def to_hex(self) -> str:
        """Hex truth table: byte j holds bits 8j..8j+7, bit 8j least significant."""
        nbytes = (self.size + 7) // 8
        return self.table.to_bytes(nbytes, "little").hex()

    @classmethod
    def from_hex(cls, text: str, m: int) -> "BoolFun":
        _check_m(m)
        text = text.strip()
        nbytes = ((1 << m) + 7) // 8
        if len(text) != 2 * nbytes:
            raise ValueError(
                f"hex truth table for m={m} needs exactly {2 * nbytes} digits, got {len(text)}"
            )
        try:
            raw = bytes.fromhex(text)
        except ValueError:
            raise ValueError(f"invalid hex truth table {text!r}") from None
        table = int.from_bytes(raw, "little")
        if table >> (1 << m):
            raise ValueError("hex truth table has stray bits beyond 2^m")
        return cls(m, table)

    def __add__(self, other: "BoolFun") -> "BoolFun":
        if not isinstance(other, BoolFun):
            return NotImplemented
        if other.m != self.m:
            raise ValueError("cannot add functions on different variable counts")
        return BoolFun(self.m, self.table ^ other.table)

    __xor__ = __add__

    def __eq__(self, other) -> bool:
        return isinstance(other, BoolFun) and self.m == other.m and self.table == other.table

    def __hash__(self) -> int:
        return hash((self.m, self.table))

    def __repr__(self) -> str:
        return f"BoolFun(m={self.m}, hex={self.to_hex()!r})"


class Anf:
    """Algebraic normal form: 2^m-bit coefficient vector indexed by monomial mask."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: int):
        _check_m(m)
        coeffs = int(coeffs)
        if coeffs < 0 or coeffs >> (1 << m):
            raise ValueError(f"coefficient vector does not fit in 2^{m} bits")
        self.m = m
        self.coeffs = coeffs

    def monomials(self):
        """Masks of the monomials with coefficient 1, in increasing mask order."""
        return _iter_bits(self.coeffs)

    def degree(self) -> int:
        if self.coeffs == 0:
            return 0
        return max(mask.bit_count() for mask in self.monomials())

    def __eq__(self, other) -> bool:
        return isinstance(other, Anf) and self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.m, self.coeffs, "anf"))

    def __repr__(self) -> str:
        return f"Anf(m={self.m}, {format_anf(self)!r})"


@dataclass(frozen=True)
class DegreeBand:
    """Functions whose monomial sizes all lie in [s, t]; empty band (s > t) is {0}."""

    s: int
    t: int

    def __post_init__(self):
        if self.s < 0 or self.t < 0:
            raise ValueError("band bounds must be non-negative")

    @property
    def is_zero_only(self) -> bool:
        return self.s > self.t


def anf_to_truth_table(a: Anf) -> BoolFun:
    """Evaluate an ANF everywhere: f(x) = xor of a_S over S contained in supp(x)."""
    return BoolFun(a.m, _subset_xor_transform(a.coeffs, a.m))


def truth_table_to_anf(f: BoolFun) -> Anf:
    """Inverse of anf_to_truth_table (the transform is an involution)."""
    return Anf(f.m, _subset_xor_transform(f.table, f.m))


def degree(f: BoolFun) -> int:
    """Maximal monomial size in the ANF; 0 for both constants."""
    return f.anf().degree()


def valuation(f: BoolFun) -> int:
    """Minimal monomial size in the ANF; undefined for the zero function."""
    coeffs = f.anf().coeffs
    if coeffs == 0:
        raise ValueError("valuation undefined for null function")
    return min(mask.bit_count() for mask in _iter_bits(coeffs))


def parse_anf(text: str, m: int) -> Anf:
    """Parse an ANF expression such as "x1*x3 + x2*x4 + x5".

    Terms are joined by '+'; a term is '1', '0', or 'x<i>' factors joined
    by '*' with 1 <= i <= m.  Whitespace is ignored and identical terms
    cancel in pairs (coefficients live in F_2).  Malformed input raises
    ValueError naming the 0-based character position.
    """
    _check_m(m)
    tokens = []  # (kind, value, position)
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+*":
            tokens.append((ch, ch, i))
            i += 1
        elif ch in "01":
            tokens.append(("const", int(ch), i))
            i += 1
        elif ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ValueError(f"expected variable index after 'x' at position {i}")
            idx = int(text[i + 1 : j])
            if not 1 <= idx <= m:
                raise ValueError(f"variable x{idx} out of range 1..{m} at position {i}")
            tokens.append(("var", idx, i))
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r} at position {i}")

    if not tokens:
        raise ValueError("empty ANF expression")

    # split token list on '+' into terms
    terms, current = [], []
    last_pos = 0
    for kind, value, pos in tokens:
        if kind == "+":
            if not current:
                raise ValueError(f"empty term before '+' at position {pos}")
            terms.append(current)
            current = []
        else:
            current.append((kind, value, pos))
        last_pos = pos
    if not current:
        raise ValueError(f"empty term at position {last_pos}")
    terms.append(current)

    coeffs = 0
    for term in terms:
        if term[0][0] == "const":
            if len(term) > 1:
                raise ValueError(
                    f"constant term cannot carry factors at position {term[1][2]}"
                )
            if term[0][1] == 1:
                coeffs ^= 1  # mask 0 = empty monomial
            continue
        mask = 0
        expect_var = True
        for kind, value, pos in term:
            if expect_var:
                if kind != "var":
                    raise ValueError(f"expected variable at position {pos}")
                mask |= 1 << (value - 1)
            else:
                if kind != "*":
                    raise ValueError(f"expected '*' or '+' at position {pos}")
            expect_var = not expect_var
        if expect_var:
            raise ValueError(f"dangling '*' at position {term[-1][2]}")
        coeffs ^= 1 << mask
    return Anf(m, coeffs)


def format_anf(a: Anf) -> str:
    """Canonical text form: terms in decreasing degree, ties in increasing mask order."""
    if a.coeffs == 0:
        return "0"
    masks = sorted(a.monomials(), key=lambda s: (-s.bit_count(), s))
    parts = []
    for mask in masks:
        if mask == 0:
            parts.append("1")
        else:
            parts.append("*".join(f"x{j + 1}" for j in _iter_bits(mask)))
    return " + ".join(parts)


def band_masks(m: int, band: DegreeBand) -> list[int]:
    """All monomial masks of size within the band, in increasing mask order."""
    _check_m(m)
    return [s for s in range(1 << m) if band.s <= s.bit_count() <= band.t]


def random_in_band(m: int, band: DegreeBand, rng_seed: int) -> BoolFun:
    """Uniform random function whose monomials all have size in [band.s, band.t].

    Deterministic for a fixed seed: each admissible coefficient is an
    independent fair bit of random.Random(rng_seed).
    """
    masks = band_masks(m, band)
    coeffs = 0
    if masks:
        bits = random.Random(rng_seed).getrandbits(len(masks))
        for i, s in enumerate(masks):
            if (bits >> i) & 1:
                coeffs |= 1 << s
    return anf_to_truth_table(Anf(m, coeffs))


# ---------------------------------------------------------------------------
# affine action


def _gf2_rank(vectors) -> int:
    pivots = {}
    rank = 0
    for v in vectors:
        v = int(v)
        while v:
            p = v.bit_length() - 1
            if p in pivots:
                v ^= pivots[p]
            else:
                pivots[p] = v
                rank += 1
                break
    return rank


class AffineTransform:
    """Extended affine substitution f |-> f(Ax + b) + c.x + d.

    The matrix A is stored column-wise: columns[j] is the image of the
    j-th unit vector, as an integer in the point encoding.  A must be
    invertible over F_2.
    """

    __slots__ = ("m", "columns", "translation", "output_mask", "output_const")

    def __init__(self, m: int, columns, translation: int = 0,
                 output_mask: int = 0, output_const: int = 0):
        _check_m(m)
        columns = tuple(int(c) for c in columns)
        if len(columns) != m:
            raise ValueError(f"need {m} matrix columns, got {len(columns)}")
        full = (1 << m) - 1
        if any(c < 0 or c > full for c in columns):
            raise ValueError("matrix column out of range")
        if _gf2_rank(columns) != m:
            raise ValueError("singular matrix")
        if not 0 <= translation <= full or not 0 <= output_mask <= full:
            raise ValueError("translation/output vector out of range")
        self.m = m
        self.columns = columns
        self.translation = int(translation)
        self.output_mask = int(output_mask)
        self.output_const = int(output_const) & 1

    @classmethod
    def identity(cls, m: int) -> "AffineTransform":
        return cls(m, [1 << j for j in range(m)])

    @classmethod
    def random(cls, m: int, rng: random.Random, extended: bool = True) -> "AffineTransform":
        """Uniform random transform (rejection-sampled invertible matrix)."""
        full = (1 << m) - 1
        while True:
            cols = [rng.getrandbits(m) for _ in range(m)]
            if _gf2_rank(cols) == m:
                break
        b = rng.getrandbits(m) & full
        c = rng.getrandbits(m) & full if extended else 0
        d = rng.getrandbits(1) if extended else 0
        return cls(m, cols, b, c, d)

    def point_image(self, x: int) -> int:
        """A x + b for a point index x."""
        y = self.translation
        for j in _iter_bits(x):
            y ^= self.columns[j]
        return y

    @classmethod
    def compose(cls, outer: "AffineTransform", inner: "AffineTransform") -> "AffineTransform":
        """Transform equivalent to applying `inner` first, then `outer`.

        apply_affine(apply_affine(f, inner), outer)
          == apply_affine(f, compose(outer, inner)).
        """
        if outer.m != inner.m:
            raise ValueError("cannot compose transforms on different variable counts")
        a1, b1, c1, d1 = inner.columns, inner.translation, inner.output_mask, inner.output_const
        a2, b2, c2, d2 = outer.columns, outer.translation, outer.output_mask, outer.output_const
        # point map of the composite is x |-> A1 (A2 x + b2) + b1
        cols = []
        for j in range(inner.m):
            y = 0
            for i in _iter_bits(a2[j]):
                y ^= a1[i]
            cols.append(y)
        b = inner.point_image(b2)
        # output part: c1.(A2 x + b2) + d1 + c2.x + d2
        c = c2
        for j in range(inner.m):
            if (c1 & a2[j]).bit_count() & 1:
                c ^= 1 << j
        d = ((c1 & b2).bit_count() & 1) ^ d1 ^ d2
        return cls(inner.m, cols, b, c, d)

    def __repr__(self) -> str:
        return (f"AffineTransform(m={self.m}, columns={self.columns}, "
                f"b={self.translation}, c={self.output_mask}, d={self.output_const})")


def apply_affine(f: BoolFun, g: AffineTransform) -> BoolFun:
    """Return x |-> f(Ax + b) + c.x + d."""
    if g.m != f.m:
        raise ValueError("transform and function have different variable counts")
    table = 0
    for x in range(f.size):
        bit = (f.table >> g.point_image(x)) & 1
        bit ^= (g.output_mask & x).bit_count() & 1
        bit ^= g.output_const
        table |= bit << x
    return BoolFun(f.m, table)


def permute_variables(f: BoolFun, perm) -> BoolFun:
    """Rename variable i to perm[i-1]; perm must be a permutation of 1..m.

    Used when ingesting function files written under a different variable
    order.
    """
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, f.m + 1)):
        raise ValueError(f"permutation must reorder 1..{f.m}, got {perm}")
    table = 0
    for x in range(f.size):
        y = 0
        for j in range(f.m):
            if (x >> j) & 1:
                y |= 1 << (perm[j] - 1)
        table |= ((f.table >> x) & 1) << y
    return BoolFun(f.m, table)
