import random

import pytest

import bfnorm as bf
from bfnorm.catalog import DUBUC_ANF_TEXT, SEXTIC_M7_ANF_TEXT, dubuc_function, sextic_m7


def test_anf_to_truth_table_examples():
    # f = x1 on one variable: f(0)=0, f(1)=1
    f = bf.anf_to_truth_table(bf.Anf(1, 1 << 1))
    assert f.table == 0b10
    # null function
    assert bf.anf_to_truth_table(bf.Anf(2, 0)).table == 0
    # single monomial x1*x2: true only at (1,1)
    f = bf.anf_to_truth_table(bf.Anf(2, 1 << 0b11))
    assert f.table == 0b1000


def test_truth_table_to_anf_examples():
    a = bf.truth_table_to_anf(bf.BoolFun(1, 0b10))
    assert a.coeffs == 1 << 1
    # constant one on 3 variables: only the empty monomial
    a = bf.truth_table_to_anf(bf.BoolFun(3, (1 << 8) - 1))
    assert a.coeffs == 1


def test_mobius_involution_many():
    rng = random.Random(0xC0FFEE)
    for _ in range(1000):
        m = rng.randrange(1, 11)
        a = bf.Anf(m, rng.getrandbits(1 << m))
        f = bf.anf_to_truth_table(a)
        assert bf.truth_table_to_anf(f) == a


def test_evaluation_consistency():
    rng = random.Random(5)
    for _ in range(50):
        m = rng.randrange(1, 8)
        a = bf.Anf(m, rng.getrandbits(1 << m))
        f = bf.anf_to_truth_table(a)
        for x in range(1 << m):
            expected = 0
            for mask in a.monomials():
                if x & mask == mask:
                    expected ^= 1
            assert f(x) == expected


def test_degree():
    assert bf.degree(bf.BoolFun(4, 0)) == 0
    assert bf.degree(bf.BoolFun(3, (1 << 8) - 1)) == 0  # constant one
    assert bf.degree(dubuc_function()) == 6
    assert bf.degree(sextic_m7()) == 6


def test_degree_additivity_bound():
    rng = random.Random(11)
    for _ in range(300):
        m = rng.randrange(1, 9)
        f = bf.BoolFun(m, rng.getrandbits(1 << m))
        g = bf.BoolFun(m, rng.getrandbits(1 << m))
        assert bf.degree(f + g) <= max(bf.degree(f), bf.degree(g))


def test_valuation():
    f = bf.anf_to_truth_table(bf.parse_anf("x1*x2 + x1*x2*x3", 3))
    assert bf.valuation(f) == 2
    assert bf.valuation(bf.anf_to_truth_table(bf.parse_anf("1 + x1", 1))) == 0
    assert bf.valuation(sextic_m7()) == 5
    with pytest.raises(ValueError, match="valuation undefined for null function"):
        bf.valuation(bf.BoolFun(3, 0))


def test_parse_anf_examples():
    a = bf.parse_anf("x1*x3 + x2*x4 + x5", 5)
    assert a.coeffs == (1 << 0b00101) | (1 << 0b01010) | (1 << 0b10000)
    assert bf.parse_anf("x1 + x1", 1).coeffs == 0
    assert bf.parse_anf("0", 4).coeffs == 0
    assert bf.parse_anf("1", 4).coeffs == 1
    assert bf.parse_anf(" x2 ", 2).coeffs == 1 << 2


@pytest.mark.parametrize("text", ["x9", "x0", "x", "1*x2", "x1**x2", "+x1", "x1+",
                                  "x1 x2", "y1", ""])
def test_parse_anf_rejects(text):
    with pytest.raises(ValueError):
        bf.parse_anf(text, 8)


def test_parse_anf_error_positions():
    with pytest.raises(ValueError, match="position 3"):
        bf.parse_anf("x1+x9", 8)
    with pytest.raises(ValueError, match="position 0"):
        bf.parse_anf("q", 4)


def test_format_anf_canonical_order():
    # decreasing degree first, then increasing mask among equal degrees
    a = bf.parse_anf("x1*x4 + x2*x3 + 1 + x3", 4)
    assert bf.format_anf(a) == "x2*x3 + x1*x4 + x3 + 1"
    assert bf.format_anf(bf.Anf(4, 0)) == "0"


def test_parse_format_roundtrip():
    rng = random.Random(77)
    for _ in range(1000):
        m = rng.randrange(1, 9)
        a = bf.Anf(m, rng.getrandbits(1 << m))
        assert bf.parse_anf(bf.format_anf(a), m) == a
    # Dubuc's function survives the text form
    assert bf.parse_anf(bf.format_anf(bf.parse_anf(DUBUC_ANF_TEXT, 8)), 8) == \
        bf.parse_anf(DUBUC_ANF_TEXT, 8)
    assert bf.parse_anf(SEXTIC_M7_ANF_TEXT, 7).coeffs.bit_count() == 4


def test_random_in_band():
    band = bf.DegreeBand(1, 1)
    f = bf.random_in_band(6, band, 123)
    assert all(mask.bit_count() == 1 for mask in f.anf().monomials())
    # empty band is the zero function
    assert bf.random_in_band(5, bf.DegreeBand(5, 4), 1).table == 0
    # determinism
    assert bf.random_in_band(8, bf.DegreeBand(2, 5), 42) == \
        bf.random_in_band(8, bf.DegreeBand(2, 5), 42)
    assert bf.random_in_band(8, bf.DegreeBand(2, 5), 42) != \
        bf.random_in_band(8, bf.DegreeBand(2, 5), 43)


def test_band_membership_random():
    rng = random.Random(9)
    for _ in range(100):
        m = rng.randrange(2, 9)
        s = rng.randrange(0, m + 1)
        t = rng.randrange(s, m + 1)
        f = bf.random_in_band(m, bf.DegreeBand(s, t), rng.getrandbits(32))
        for mask in f.anf().monomials():
            assert s <= mask.bit_count() <= t


def test_apply_affine_identity():
    rng = random.Random(2)
    f = bf.BoolFun(6, rng.getrandbits(64))
    assert bf.apply_affine(f, bf.AffineTransform.identity(6)) == f


def test_apply_affine_degree_invariance():
    rng = random.Random(21)
    done = 0
    while done < 100:
        m = rng.randrange(3, 9)
        f = bf.BoolFun(m, rng.getrandbits(1 << m))
        if bf.degree(f) < 2:
            continue
        g = bf.AffineTransform.random(m, rng)
        assert bf.degree(bf.apply_affine(f, g)) == bf.degree(f)
        done += 1


def test_affine_group_action():
    rng = random.Random(31)
    for _ in range(100):
        m = rng.randrange(2, 7)
        f = bf.BoolFun(m, rng.getrandbits(1 << m))
        g1 = bf.AffineTransform.random(m, rng)
        g2 = bf.AffineTransform.random(m, rng)
        assert bf.apply_affine(bf.apply_affine(f, g1), g2) == \
            bf.apply_affine(f, bf.AffineTransform.compose(g2, g1))


def test_singular_matrix_rejected():
    with pytest.raises(ValueError, match="singular"):
        bf.AffineTransform(3, [1, 2, 3])  # e1+e2 = third column
    with pytest.raises(ValueError, match="singular"):
        bf.AffineTransform(2, [0, 1])


def test_permute_variables():
    f = bf.anf_to_truth_table(bf.parse_anf("x1*x2 + x3", 3))
    g = bf.permute_variables(f, (2, 3, 1))  # x1->x2, x2->x3, x3->x1
    assert g == bf.anf_to_truth_table(bf.parse_anf("x2*x3 + x1", 3))
    with pytest.raises(ValueError):
        bf.permute_variables(f, (1, 1, 2))


def test_hex_roundtrip():
    assert bf.anf_to_truth_table(bf.parse_anf("x1*x2", 2)).to_hex() == "08"
    rng = random.Random(8)
    for m in range(1, 11):
        f = bf.BoolFun(m, rng.getrandbits(1 << m))
        assert bf.BoolFun.from_hex(f.to_hex(), m) == f
    with pytest.raises(ValueError):
        bf.BoolFun.from_hex("080", 2)  # wrong digit count
    with pytest.raises(ValueError, match="stray bits"):
        bf.BoolFun.from_hex("10", 1)  # bit above 2^m
    with pytest.raises(ValueError):
        bf.BoolFun.from_hex("zz", 2)


def test_boolfun_validation():
    with pytest.raises(ValueError):
        bf.BoolFun(0, 0)
    with pytest.raises(ValueError):
        bf.BoolFun(17, 0)
    with pytest.raises(ValueError):
        bf.BoolFun(2, 1 << 16)
    with pytest.raises(ValueError):
        bf.BoolFun(2, -1)
