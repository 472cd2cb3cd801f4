"""Pairing properties and the operation counter's semantics."""

import random

from epochsig.groups import ORDER
from epochsig.groups.curves import G1_GEN, G2_GEN, g1_mul_gen, g1_neg, g2_mul_gen
from epochsig.groups.fields import FP12_ONE, fp12_mul, fp12_sqr
from epochsig.groups.pairing import (
    cyclo_exp,
    cyclo_sqr,
    gt_is_unitary,
    multi_pairing_is_one,
    pair_points,
    pairing_counter_peek,
    pairing_counter_read_reset,
    pairing_product_equals,
)

rnd = random.Random(777)


def test_bilinearity():
    for _ in range(4):
        a = rnd.randrange(1, ORDER)
        b = rnd.randrange(1, ORDER)
        lhs = pair_points(g1_mul_gen(a), g2_mul_gen(b))
        rhs = cyclo_exp(pair_points(G1_GEN, G2_GEN), a * b % ORDER)
        assert lhs == rhs


def test_non_degenerate_and_order_r():
    z = pair_points(G1_GEN, G2_GEN)
    assert z != FP12_ONE
    assert gt_is_unitary(z)
    assert cyclo_exp(z, ORDER) == FP12_ONE


def test_pairing_moves_scalars_between_slots():
    k = rnd.randrange(2, ORDER)
    assert pair_points(g1_mul_gen(k), G2_GEN) == pair_points(G1_GEN, g2_mul_gen(k))


def test_pairing_product_equals():
    # e(aP, Q) == e(P, aQ) expressed as a two-pair product check
    a = rnd.randrange(2, ORDER)
    assert pairing_product_equals(g1_mul_gen(a), G2_GEN, G1_GEN, g2_mul_gen(a))
    assert not pairing_product_equals(g1_mul_gen(a + 1), G2_GEN, G1_GEN, g2_mul_gen(a))


def test_multi_pairing_cancellation():
    p = g1_mul_gen(rnd.randrange(2, ORDER))
    q = g2_mul_gen(rnd.randrange(2, ORDER))
    assert multi_pairing_is_one([(p, q), (g1_neg(p), q)])
    assert not multi_pairing_is_one([(p, q), (p, q)])
    assert multi_pairing_is_one([])
    # identity slots contribute nothing
    assert multi_pairing_is_one([(None, q), (p, None), (p, q), (g1_neg(p), q)])


def test_cyclotomic_square_matches_generic_on_unitary():
    z = pair_points(g1_mul_gen(rnd.randrange(1, ORDER)), G2_GEN)
    for _ in range(20):
        assert cyclo_sqr(z) == fp12_sqr(z)
        z = fp12_mul(fp12_sqr(z), z)


def test_counter_semantics():
    pairing_counter_read_reset()
    pair_points(G1_GEN, G2_GEN)
    assert pairing_counter_peek() == 1
    pairing_product_equals(G1_GEN, G2_GEN, G1_GEN, G2_GEN)
    assert pairing_counter_peek() == 3
    p, q = g1_mul_gen(5), g2_mul_gen(7)
    multi_pairing_is_one([(p, q), (g1_neg(p), q), (p, q)])
    assert pairing_counter_peek() == 6
    assert pairing_counter_read_reset() == 6
    assert pairing_counter_peek() == 0
