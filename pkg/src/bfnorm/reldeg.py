"""Restriction to flats, relative degree, r-degree and normality verdicts.

The restriction of f to a flat a+V is the function on r variables whose
truth table gathers f over the flat's canonical point order.  Normality
at dimension r = ceil(m/2) is decided two ways:

* classify_normality_naive scans every r-flat for the minimum restriction
  degree (the definition, and the oracle for everything else);
* classify_normality_paired scans the (r-1)-spaces for pairs of cosets on
  which f is constant -- equal constants merge into a constant r-flat,
  distinct constants into a degree-1 one.  The two classifiers agree on
  every input.

Both classifiers report the first witness in canonical table order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import BoolFun, degree
from .subspace import AffineFlat, FlatTable, LinearSubspace, build_flat_table

NORMAL = "Normal"
WEAKLY_NORMAL = "WeaklyNormal"
ABNORMAL = "Abnormal"

# windows wider than this cannot be packed into an int64 by the kernels
_KERNEL_MAX_POINTS = 32


@dataclass(frozen=True)
class NormalityReport:
    """Verdict of a normality scan at dimension r_used = ceil(m/2)."""

    status: str
    r_used: int
    witness: AffineFlat | None
    witness_degree: int | None
    min_rel_degree: int

    def __str__(self) -> str:
        out = f"{self.status} (min deg over {self.r_used}-flats = {self.min_rel_degree})"
        if self.witness is not None:
            out += f" witness rep={self.witness.rep:#x}"
        return out


@dataclass
class RelDegDistribution:
    """Histogram of r-degrees: counts[r][d] functions with deg_r = d."""

    m: int
    counts: dict[int, list[int]]
    processed: int = 0

    @classmethod
    def empty(cls, m: int, dims) -> "RelDegDistribution":
        return cls(m, {r: [0] * (r + 1) for r in dims})

    def add(self, r: int, d: int) -> None:
        self.counts[r][d] += 1

    def row(self, r: int) -> list[int]:
        return list(self.counts[r])


def normality_dimension(m: int) -> int:
    return (m + 1) // 2


def tt_bit_array(f: BoolFun) -> np.ndarray:
    """Truth table as a uint8 array, one byte per point."""
    raw = f.table.to_bytes((f.size + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, np.uint8), bitorder="little")[: f.size]


def restrict(f: BoolFun, flat: AffineFlat) -> BoolFun:
    """Restriction of f to the flat, as a function of the flat's r coordinates.

    A 0-dimensional flat yields the constant f(rep) extended to one
    variable, since a function carrier needs at least one input.
    """
    if flat.m != f.m:
        raise ValueError(f"flat lives in m={flat.m} but function has m={f.m}")
    table = 0
    for j, p in enumerate(flat.points()):
        table |= ((f.table >> p) & 1) << j
    if flat.r == 0:
        return BoolFun(1, 0b11 if table else 0b00)
    return BoolFun(flat.r, table)


def rel_degree(f: BoolFun, flat: AffineFlat) -> int:
    """Degree of the restriction; 0 when the restriction is constant."""
    return degree(restrict(f, flat))


def _check_table(f: BoolFun, table: FlatTable, r: int) -> None:
    if table.m != f.m or table.r != r:
        raise ValueError(
            f"flat table is ({table.m},{table.r}) but ({f.m},{r}) is required"
        )


def _use_kernel(table: FlatTable) -> bool:
    return _kernels.HAVE_NUMBA and (1 << table.r) <= _KERNEL_MAX_POINTS


def _min_scan_reference(f: BoolFun, table: FlatTable):
    """Pure-Python twin of _kernels.min_rel_degree_scan (any r)."""
    best, ws, wc = 1000, -1, -1
    for s in range(table.n_spaces):
        for c in range(table.cosets_per_space):
            d = rel_degree(f, table.flat(s, c))
            if d == 0:
                return 0, s, c
            if d < best:
                best = d
                ws, wc = s, c
    if best > 1:
        ws, wc = -1, -1
    return best, ws, wc


def r_degree(f: BoolFun, r: int, table: FlatTable) -> int:
    """Minimum restriction degree over every r-flat (exact; exits early at 0)."""
    _check_table(f, table, r)
    if _use_kernel(table):
        mob, high2, popj, full = _kernels.window_constants(table.r)
        best, _, _ = _kernels.min_rel_degree_scan(
            tt_bit_array(f), table.points, table.reps, mob, high2, popj, full)
        return int(best)
    best, _, _ = _min_scan_reference(f, table)
    return best


def classify_normality_naive(f: BoolFun, table_r: FlatTable) -> NormalityReport:
    """Three-way normality verdict by direct minimisation over all r-flats."""
    r = normality_dimension(f.m)
    _check_table(f, table_r, r)
    if _use_kernel(table_r):
        mob, high2, popj, full = _kernels.window_constants(table_r.r)
        best, ws, wc = _kernels.min_rel_degree_scan(
            tt_bit_array(f), table_r.points, table_r.reps, mob, high2, popj, full)
        best, ws, wc = int(best), int(ws), int(wc)
    else:
        best, ws, wc = _min_scan_reference(f, table_r)
    witness = table_r.flat(ws, wc) if ws >= 0 else None
    return _report_from_min(best, r, witness)


def _report_from_min(best: int, r: int, witness: AffineFlat | None) -> NormalityReport:
    if best == 0:
        return NormalityReport(NORMAL, r, witness, 0, 0)
    if best == 1:
        return NormalityReport(WEAKLY_NORMAL, r, witness, 1, 1)
    return NormalityReport(ABNORMAL, r, None, None, best)


def _paired_scan_reference(f: BoolFun, table: FlatTable):
    """Pure-Python twin of _kernels.paired_coset_scan."""
    full = (1 << (1 << table.r)) - 1
    weak = None
    for s in range(table.n_spaces):
        vpts = [int(p) for p in table.points[s]]
        first0 = first1 = -1
        for c in range(table.cosets_per_space):
            rep = int(table.reps[s, c])
            w = 0
            for j, p in enumerate(vpts):
                w |= ((f.table >> (p ^ rep)) & 1) << j
            if w == 0:
                if first0 >= 0:
                    return 0, s, first0, c
                first0 = c
            elif w == full:
                if first1 >= 0:
                    return 0, s, first1, c
                first1 = c
        if weak is None and first0 >= 0 and first1 >= 0:
            weak = (s, min(first0, first1), max(first0, first1))
    if weak is not None:
        return (1,) + weak
    return 2, -1, -1, -1


def classify_normality_paired(f: BoolFun, table_rm1: FlatTable,
                              table_r: FlatTable | None = None) -> NormalityReport:
    """Normality verdict via constant coset pairs over the (r-1)-space table.

    Produces exactly the same status as classify_normality_naive.  When the
    verdict is Abnormal the exact minimum is recomputed over an r-table
    (built on the fly unless table_r is supplied).
    """
    r = normality_dimension(f.m)
    if table_rm1.m != f.m or table_rm1.r != r - 1:
        raise ValueError(
            f"paired scan needs the ({f.m},{r - 1}) table, got ({table_rm1.m},{table_rm1.r})"
        )
    if _use_kernel(table_rm1):
        _, _, _, full = _kernels.window_constants(table_rm1.r)
        verdict, s, ca, cb = _kernels.paired_coset_scan(
            tt_bit_array(f), table_rm1.points, table_rm1.reps, full)
        verdict, s, ca, cb = int(verdict), int(s), int(ca), int(cb)
    else:
        verdict, s, ca, cb = _paired_scan_reference(f, table_rm1)

    if verdict == 2:
        if table_r is None:
            table_r = build_flat_table(f.m, r)
        best = r_degree(f, r, table_r)
        return NormalityReport(ABNORMAL, r, None, None, best)

    space = table_rm1.space(s)
    rep_a = int(table_rm1.reps[s, ca])
    rep_b = int(table_rm1.reps[s, cb])
    merged = LinearSubspace(f.m, space.basis + (rep_a ^ rep_b,))
    witness = AffineFlat(merged, rep_a)
    wdeg = rel_degree(f, witness)
    if wdeg != verdict:
        raise AssertionError(
            f"paired witness flat has restriction degree {wdeg}, expected {verdict}"
        )
    status = NORMAL if verdict == 0 else WEAKLY_NORMAL
    return NormalityReport(status, r, witness, wdeg, verdict)


def report_record(input_id, f: BoolFun, report: NormalityReport) -> dict:
    """JSON-ready batch record: id, m, degree, status, minimum, witness in hex."""
    witness = None
    if report.witness is not None:
        witness = {"basis": [hex(v) for v in report.witness.subspace.basis],
                   "rep": hex(report.witness.rep)}
    return {
        "id": input_id,
        "m": f.m,
        "degree": degree(f),
        "status": report.status,
        "min_rel_degree": report.min_rel_degree,
        "witness": witness,
    }


def distribution(functions, dims, tables: dict[int, FlatTable]) -> RelDegDistribution:
    """Histogram of deg_r over a stream of functions, for each r in dims."""
    dims = sorted(set(int(r) for r in dims))
    for r in dims:
        if r not in tables:
            raise ValueError(f"no flat table supplied for r={r}")
    m = tables[dims[0]].m if dims else 0
    dist = RelDegDistribution.empty(m, dims)
    for f in functions:
        if dims and f.m != m:
            raise ValueError(f"mixed variable counts: function has m={f.m}, tables m={m}")
        for r in dims:
            dist.add(r, r_degree(f, r, tables[r]))
        dist.processed += 1
    return dist
