"""Pairing-per-signer baseline: classic hash-and-multiply aggregation.

This is the scheme the constant-pairing design is measured against.
A key is one exponent z with public half g2^z; a signature is
H(pk, t, m)^z; an aggregate is the product of member signatures, and
verifying it costs one pairing per signer plus one:

    prod_i e(H(pk_i, t, m_i), Z_i) = e(S', g2)

Binding the public key and the period into the message hash keeps the
comparison on the synchronized footing the main scheme uses, and the
usual distinct-(pk, message) restriction applies.
"""

from dataclasses import dataclass

from .groups import G1Element, G2Element, Scalar, multi_pairing_check, random_scalar
from .groups.hashing import hash_to_curve_g1

BGLS_TAG = b"AGG-BGLS-H-v1"


@dataclass(frozen=True)
class BglsSecretKey:
    z: Scalar


@dataclass(frozen=True)
class BglsPublicKey:
    Z: G2Element


@dataclass(frozen=True)
class BglsSignature:
    S: G1Element
    t: int


def bgls_keygen(ctx, rng=None):
    z = random_scalar(ctx, rng)
    return BglsSecretKey(z), BglsPublicKey(ctx.g2 ** z)


def _message_point(pk, t, msg):
    data = pk.Z.to_bytes() + int(t).to_bytes(8, "big") + len(msg).to_bytes(8, "big") + msg
    return G1Element(hash_to_curve_g1(data, BGLS_TAG))


def bgls_sign(ctx, sk, pk, t, msg):
    return BglsSignature(_message_point(pk, t, msg) ** sk.z, int(t))


def bgls_aggregate(entries):
    """entries is [(pk, msg, sig)], all for one period, with distinct
    (pk, msg) pairs."""
    if not entries:
        raise ValueError("nothing to aggregate")
    t = entries[0][2].t
    if any(sig.t != t for _, _, sig in entries):
        raise ValueError("mixed periods in aggregate")
    if len({(pk, bytes(msg)) for pk, msg, _ in entries}) != len(entries):
        raise ValueError("duplicate (key, message) pair")
    s = G1Element.identity()
    for _, _, sig in entries:
        s = s * sig.S
    return BglsSignature(s, t)


def bgls_aggregate_verify(ctx, pairs, agg):
    """pairs is [(pk, msg)]; costs len(pairs) + 1 pairings."""
    if not pairs:
        return False
    if len({(pk, bytes(msg)) for pk, msg in pairs}) != len(pairs):
        return False
    checks = [(_message_point(pk, agg.t, msg), pk.Z) for pk, msg in pairs]
    checks.append((agg.S.inverse(), ctx.g2))
    return multi_pairing_check(ctx, checks)


def bgls_verify(ctx, pk, msg, sig):
    return bgls_aggregate_verify(ctx, [(pk, msg)], sig)
