"""The synchronized scheme: signing discipline, verification reasons,
aggregation rules, and the constant pairing budget."""

import pytest

from epochsig.groups import G1Element, pairing_counter_read_reset
from epochsig.sas import (
    AggregationError,
    PeriodReuseError,
    SasSignature,
    SignerState,
    sas_aggregate,
    sas_aggregate_verify,
    sas_aggregate_verify_with_reason,
    sas_correctness_check,
    sas_keygen,
    sas_setup,
    sas_sign,
    sas_verify,
    sas_verify_with_reason,
)


@pytest.fixture(scope="module")
def params(ctx):
    import random

    return sas_setup(ctx, 32, random.Random(99))


def _signed_batch(params, rng, ell, t=5):
    entries = []
    for i in range(ell):
        sk, pk = sas_keygen(params, rng)
        msg = b"batch-%d" % i
        entries.append((pk, msg, sas_sign(params, sk, t, msg)))
    return entries


def test_sign_verify_roundtrip(params, rng):
    sk, pk = sas_keygen(params, rng)
    for t in (1, 2, 17, params.max_periods):
        sig = sas_sign(params, sk, t, b"hello")
        assert sig.t == t
        assert sas_verify(params, pk, b"hello", sig)
        assert not sas_verify(params, pk, b"other", sig)


def test_signing_is_deterministic(params, rng):
    sk, pk = sas_keygen(params, rng)
    a = sas_sign(params, sk, 3, b"msg")
    b = sas_sign(params, sk, 3, b"msg")
    assert a.B == b.B and a.t == b.t
    assert sas_sign(params, sk, 4, b"msg").B != a.B
    assert sas_sign(params, sk, 3, b"msh").B != a.B


def test_sign_rejects_out_of_range_period(params, rng):
    sk, _ = sas_keygen(params, rng)
    for t in (0, -1, params.max_periods + 1):
        with pytest.raises(ValueError):
            sas_sign(params, sk, t, b"m")


def test_verify_reasons(params, rng):
    sk, pk = sas_keygen(params, rng)
    sig = sas_sign(params, sk, 7, b"m")
    assert sas_verify_with_reason(params, pk, b"m", sig) == (True, "accept")
    assert sas_verify_with_reason(params, pk, b"x", sig) == (False, "pairing-mismatch")
    # an honest period-8 signature relabeled as period 8 from a period-7
    # one must not verify: the period is bound into both hashes
    relabeled = SasSignature(sig.B, 8)
    assert sas_verify_with_reason(params, pk, b"m", relabeled) == (False, "pairing-mismatch")
    out = SasSignature(sig.B, params.max_periods + 1)
    assert sas_verify_with_reason(params, pk, b"m", out) == (False, "period-out-of-range")


def test_verify_costs_two_pairings(params, rng):
    sk, pk = sas_keygen(params, rng)
    sig = sas_sign(params, sk, 7, b"m")
    pairing_counter_read_reset()
    assert sas_verify(params, pk, b"m", sig)
    assert pairing_counter_read_reset() == 2


def test_aggregate_verify_costs_two_pairings_at_any_size(params, rng):
    for ell in (1, 7):
        entries = _signed_batch(params, rng, ell)
        agg = sas_aggregate(params, entries)
        pairs = [(pk, msg) for pk, msg, _ in entries]
        pairing_counter_read_reset()
        assert sas_aggregate_verify(params, pairs, agg)
        assert pairing_counter_read_reset() == 2


def test_aggregate_rejections(params, rng):
    with pytest.raises(AggregationError) as e:
        sas_aggregate(params, [])
    assert e.value.reason == "empty-entry-list"

    entries = _signed_batch(params, rng, 2)
    sk, pk = sas_keygen(params, rng)
    other = (pk, b"late", sas_sign(params, sk, 6, b"late"))
    with pytest.raises(AggregationError) as e:
        sas_aggregate(params, entries + [other])
    assert e.value.reason == "period-mismatch"

    dup = entries + [entries[0]]
    with pytest.raises(AggregationError) as e:
        sas_aggregate(params, dup)
    assert e.value.reason == "duplicate-pk"

    broken = list(entries)
    broken[1] = (broken[1][0], broken[1][1], SasSignature(broken[1][2].B * params.ctx.g1, 5))
    with pytest.raises(AggregationError) as e:
        sas_aggregate(params, broken)
    assert e.value.reason == "invalid-member-signature"
    # without the member check the bad entry slips into the aggregate,
    # and aggregate verification is what catches it
    agg = sas_aggregate(params, broken, check_members=False)
    assert not sas_aggregate_verify(params, [(pk, m) for pk, m, _ in broken], agg)


def test_aggregate_verify_reasons(params, rng):
    entries = _signed_batch(params, rng, 3)
    agg = sas_aggregate(params, entries)
    pairs = [(pk, msg) for pk, msg, _ in entries]
    assert sas_aggregate_verify_with_reason(params, pairs, agg) == (True, "accept")
    assert sas_aggregate_verify_with_reason(params, [], agg) == (False, "empty-entry-list")
    assert sas_aggregate_verify_with_reason(params, pairs, SasSignature(agg.B, 0)) == (
        False,
        "period-out-of-range",
    )
    assert sas_aggregate_verify_with_reason(params, pairs + pairs[:1], agg) == (
        False,
        "duplicate-pk",
    )
    tampered = SasSignature(agg.B * params.ctx.g1, agg.t)
    assert sas_aggregate_verify_with_reason(params, pairs, tampered) == (
        False,
        "pairing-mismatch",
    )
    # dropping a member breaks the product
    assert not sas_aggregate_verify(params, pairs[:-1], agg)
    # so does swapping one message
    swapped = pairs[:-1] + [(pairs[-1][0], b"something else")]
    assert not sas_aggregate_verify(params, swapped, agg)


def test_signer_state_blocks_period_reuse(params, rng):
    sk, pk = sas_keygen(params, rng)
    signer = SignerState(sk)
    sig5 = signer.sign(params, 5, b"five")
    assert sas_verify(params, pk, b"five", sig5)
    with pytest.raises(PeriodReuseError):
        signer.sign(params, 5, b"five again")
    with pytest.raises(PeriodReuseError):
        signer.sign(params, 3, b"backwards")
    assert signer.sign(params, 6, b"six").t == 6
    assert signer.last_period == 6
    # resuming from a stored mark keeps the discipline
    resumed = SignerState(sk, last_period=10)
    with pytest.raises(PeriodReuseError):
        resumed.sign(params, 10, b"m")
    assert resumed.sign(params, 11, b"m").t == 11


def test_period_hash_is_cached(params):
    assert params.h1(9) is params.h1(9)


def test_signature_isolated_between_parameter_sets(ctx, rng):
    p1 = sas_setup(ctx, 32, rng)
    p2 = sas_setup(ctx, 32, rng)
    sk, pk = sas_keygen(p1, rng)
    sig = sas_sign(p1, sk, 3, b"m")
    assert sas_verify(p1, pk, b"m", sig)
    assert not sas_verify(p2, pk, b"m", sig)


def test_correctness_check_helper(params, rng):
    assert sas_correctness_check(params, 3, 9, rng)
