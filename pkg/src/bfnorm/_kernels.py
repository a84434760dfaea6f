"""Numba hot loops for flat scans.

Every kernel works on a truth table given either as a uint8 bit array
(one byte per point) or, for m = 5, as a plain 32-bit integer kept in a
register.  Restriction windows are packed into int64 words, so these
kernels only accept tables with 2^r <= 32 points per flat; the wrappers
in reldeg fall back to the pure-Python reference implementation for
larger windows or when numba is unavailable.
"""

from functools import lru_cache

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def deco(fn):
            return fn

        return deco


@lru_cache(maxsize=None)
def window_constants(r: int):
    """Butterfly masks, degree>=2 monomial mask, popcounts and full mask for 2^r-bit windows."""
    n = 1 << r
    masks = []
    for k in range(r):
        step = 1 << k
        mask = 0
        for start in range(0, n, 2 * step):
            mask |= ((1 << step) - 1) << start
        masks.append(mask)
    high2 = 0
    for j in range(n):
        if j.bit_count() >= 2:
            high2 |= 1 << j
    popj = np.array([j.bit_count() for j in range(n)], np.int64)
    mob = np.array(masks, np.int64)
    popj.flags.writeable = False
    mob.flags.writeable = False
    return mob, np.int64(high2), popj, np.int64((1 << n) - 1)


@njit(cache=True, nogil=True)
def min_rel_degree_scan(tt_bits, vpoints, reps, mob_masks, high2, popj, full):
    """Exact min restriction degree over all flats of a table.

    Returns (best, witness_space, witness_coset); the witness is the first
    flat in table order attaining the final minimum when that minimum is
    <= 1, else (-1, -1).  Exits as soon as a constant restriction is seen.
    """
    n_spaces, n_pts = vpoints.shape
    n_cos = reps.shape[1]
    n_masks = mob_masks.shape[0]
    best = 1000
    ws = -1
    wc = -1
    for s in range(n_spaces):
        for c in range(n_cos):
            rep = reps[s, c]
            w = 0
            for j in range(n_pts):
                w |= int(tt_bits[vpoints[s, j] ^ rep]) << j
            if w == 0 or w == full:
                return 0, s, c
            if best > 1:
                a = w
                for k in range(n_masks):
                    a ^= (a & mob_masks[k]) << (1 << k)
                if (a & high2) == 0:
                    best = 1
                    ws = s
                    wc = c
                elif best > 2:
                    d = 0
                    for j in range(n_pts):
                        if ((a >> j) & 1) != 0 and popj[j] > d:
                            d = popj[j]
                    if d < best:
                        best = d
    if best > 1:
        ws = -1
        wc = -1
    return best, ws, wc


@njit(cache=True, nogil=True)
def paired_coset_scan(tt_bits, vpoints, reps, full):
    """Constant-coset pairing over an (r-1)-space table.

    Returns (verdict, space, coset_a, coset_b) with verdict 0 = constant
    pair of equal values (normal), 1 = constant pair of distinct values
    (weakly normal), 2 = no constant pair.  Early exit is taken only on
    verdict 0; the distinct-value witness is the first one in table order.
    """
    n_spaces, n_pts = vpoints.shape
    n_cos = reps.shape[1]
    weak_s = -1
    weak_a = -1
    weak_b = -1
    for s in range(n_spaces):
        first0 = -1
        first1 = -1
        for c in range(n_cos):
            rep = reps[s, c]
            w = 0
            for j in range(n_pts):
                w |= int(tt_bits[vpoints[s, j] ^ rep]) << j
            if w == 0:
                if first0 >= 0:
                    return 0, s, first0, c
                first0 = c
            elif w == full:
                if first1 >= 0:
                    return 0, s, first1, c
                first1 = c
        if weak_s < 0 and first0 >= 0 and first1 >= 0:
            weak_s = s
            if first0 < first1:
                weak_a, weak_b = first0, first1
            else:
                weak_a, weak_b = first1, first0
    if weak_s >= 0:
        return 1, weak_s, weak_a, weak_b
    return 2, -1, -1, -1


@njit(cache=True, nogil=True)
def m5_exhaustive_scan(mono_tt, mono_size, flats3, flats2, cand_cap):
    """Gray-code walk over all 2^26 ANFs with monomial sizes in 2..5 (m = 5).

    For each function: scan the 620 3-flats until a restriction of degree
    <= 1 is found (recording whether the first hit was constant or affine),
    and scan the 1240 2-flats until a constant restriction is found.
    Functions for which a scan completes with no hit are counted and their
    ANF slot masks collected for re-verification.

    Returns (counts, first_const3, first_affine3, no_hit3, no_hit2,
    cand3, cand2), all indexed by the function's degree 0..5.
    """
    n_mono = mono_tt.shape[0]
    n_fun = 1 << n_mono
    nf3 = flats3.shape[0]
    nf2 = flats2.shape[0]
    counts = np.zeros(6, np.int64)
    first_const3 = np.zeros(6, np.int64)
    first_affine3 = np.zeros(6, np.int64)
    no_hit3 = np.zeros(6, np.int64)
    no_hit2 = np.zeros(6, np.int64)
    cand3 = np.zeros(cand_cap, np.int64)
    cand2 = np.zeros(cand_cap, np.int64)
    n3 = 0
    n2 = 0
    sizecnt = np.zeros(6, np.int64)
    tt = 0
    anf = 0
    k = 0
    for i in range(n_fun):
        if i > 0:
            b = 0
            ii = i
            while ii & 1 == 0:
                ii >>= 1
                b += 1
            anf ^= 1 << b
            tt ^= mono_tt[b]
            s = mono_size[b]
            if (anf >> b) & 1:
                sizecnt[s] += 1
            else:
                sizecnt[s] -= 1
            k = 0
            for s2 in range(5, 1, -1):
                if sizecnt[s2] > 0:
                    k = s2
                    break
        counts[k] += 1

        hit = -1
        for t in range(nf3):
            w = (tt >> flats3[t, 0]) & 1
            w |= ((tt >> flats3[t, 1]) & 1) << 1
            w |= ((tt >> flats3[t, 2]) & 1) << 2
            w |= ((tt >> flats3[t, 3]) & 1) << 3
            w |= ((tt >> flats3[t, 4]) & 1) << 4
            w |= ((tt >> flats3[t, 5]) & 1) << 5
            w |= ((tt >> flats3[t, 6]) & 1) << 6
            w |= ((tt >> flats3[t, 7]) & 1) << 7
            if w == 0 or w == 0xFF:
                hit = 0
                break
            a = w
            a ^= (a & 0x55) << 1
            a ^= (a & 0x33) << 2
            a ^= (a & 0x0F) << 4
            if (a & 0xE8) == 0:
                hit = 1
                break
        if hit == 0:
            first_const3[k] += 1
        elif hit == 1:
            first_affine3[k] += 1
        else:
            no_hit3[k] += 1
            if n3 < cand_cap:
                cand3[n3] = anf
                n3 += 1

        ok2 = False
        for t in range(nf2):
            w = (tt >> flats2[t, 0]) & 1
            w |= ((tt >> flats2[t, 1]) & 1) << 1
            w |= ((tt >> flats2[t, 2]) & 1) << 2
            w |= ((tt >> flats2[t, 3]) & 1) << 3
            if w == 0 or w == 0xF:
                ok2 = True
                break
        if not ok2:
            no_hit2[k] += 1
            if n2 < cand_cap:
                cand2[n2] = anf
                n2 += 1

    return (counts, first_const3, first_affine3, no_hit3, no_hit2,
            cand3[:n3], cand2[:n2])
