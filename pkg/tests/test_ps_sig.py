"""The randomizable two-element signature underneath everything."""

import pytest

from epochsig.groups import G1Element, Scalar, pairing_counter_read_reset, random_scalar
from epochsig.ps_sig import (
    PsSignature,
    ps_keygen,
    ps_randomize,
    ps_sign,
    ps_verify,
    vector_check,
    vector_records,
)


def test_sign_verify_roundtrip(ctx, rng):
    for _ in range(60):
        sk, pk = ps_keygen(ctx, rng)
        m = random_scalar(ctx, rng)
        sig = ps_sign(ctx, sk, m, rng)
        assert ps_verify(ctx, pk, m, sig)
        assert not ps_verify(ctx, pk, m + Scalar(1), sig)


def test_verify_costs_two_pairings(ctx, rng):
    sk, pk = ps_keygen(ctx, rng)
    m = random_scalar(ctx, rng)
    sig = ps_sign(ctx, sk, m, rng)
    pairing_counter_read_reset()
    ps_verify(ctx, pk, m, sig)
    assert pairing_counter_read_reset() == 2


def test_randomization_produces_fresh_valid_signature(ctx, rng):
    sk, pk = ps_keygen(ctx, rng)
    m = random_scalar(ctx, rng)
    sig = ps_sign(ctx, sk, m, rng)
    sig2 = ps_randomize(ctx, sig, rng)
    assert sig2.A != sig.A and sig2.B != sig.B
    assert ps_verify(ctx, pk, m, sig2)
    # chains of refreshes stay valid
    sig3 = ps_randomize(ctx, ps_randomize(ctx, sig2, rng), rng)
    assert ps_verify(ctx, pk, m, sig3)


def test_identity_first_element_rejected(ctx, rng):
    sk, pk = ps_keygen(ctx, rng)
    m = random_scalar(ctx, rng)
    bad = PsSignature(G1Element.identity(), G1Element.identity())
    assert not ps_verify(ctx, pk, m, bad)
    with pytest.raises(ValueError):
        ps_randomize(ctx, bad, rng)


def test_signatures_bind_to_key(ctx, rng):
    sk1, pk1 = ps_keygen(ctx, rng)
    sk2, pk2 = ps_keygen(ctx, rng)
    m = random_scalar(ctx, rng)
    sig = ps_sign(ctx, sk1, m, rng)
    assert not ps_verify(ctx, pk2, m, sig)


def test_vectors_roundtrip(ctx, rng, tmp_path):
    from epochsig.formats import read_jsonl, write_jsonl

    records = vector_records(ctx, 12, rng)
    assert sum(1 for r in records if r["valid"]) == 6
    for r in records:
        assert vector_check(ctx, r)
    path = tmp_path / "vectors.jsonl"
    write_jsonl(path, records, banner="test vectors")
    back = read_jsonl(path)
    assert back == records
    assert open(path).readline().startswith("# ")
