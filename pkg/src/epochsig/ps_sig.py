"""Short randomizable signatures on scalar messages.

Keys live in G2: the holder samples its own base point alongside the
two exponents, so a public key is the triple (g2, X, Y).  A signature
on m is a pair (A, B) with A a random non-identity G1 point and
B = A^(x + m y).  Anyone can re-randomize a valid pair into a fresh
one for the same message by raising both halves to a common exponent.

Verification deliberately evaluates its two pairings independently
rather than through the fused product check: this module is the
baseline other components are measured against, and its cost should
be the naive one.
"""

from dataclasses import dataclass

from .groups import (
    G1Element,
    G2Element,
    Scalar,
    pair,
    random_g1_nonidentity,
    random_g2_nonidentity,
    random_scalar,
    random_scalar_nonzero,
)


@dataclass(frozen=True)
class PsSecretKey:
    x: Scalar
    y: Scalar


@dataclass(frozen=True)
class PsPublicKey:
    g2: G2Element
    X: G2Element
    Y: G2Element


@dataclass(frozen=True)
class PsSignature:
    A: G1Element
    B: G1Element


def ps_keygen(ctx, rng=None):
    """Sample a key pair; the G2 base is per-key."""
    g2 = random_g2_nonidentity(ctx, rng)
    x = random_scalar(ctx, rng)
    y = random_scalar(ctx, rng)
    return PsSecretKey(x, y), PsPublicKey(g2, g2 ** x, g2 ** y)


def ps_sign(ctx, sk, m, rng=None):
    a = random_g1_nonidentity(ctx, rng)
    return PsSignature(a, a ** (sk.x + Scalar(int(m)) * sk.y))


def ps_verify(ctx, pk, m, sig):
    """Accept iff A is not the identity and e(A, X Y^m) = e(B, g2)."""
    if sig.A.is_identity:
        return False
    lhs = pair(ctx, sig.A, pk.X * pk.Y ** Scalar(int(m)))
    rhs = pair(ctx, sig.B, pk.g2)
    return lhs == rhs


def ps_randomize(ctx, sig, rng=None):
    """A fresh signature on the same message from an existing one."""
    if sig.A.is_identity:
        raise ValueError("cannot randomize a degenerate signature")
    r = random_scalar_nonzero(ctx, rng)
    return PsSignature(sig.A ** r, sig.B ** r)


def vector_records(ctx, count, rng):
    """Deterministic test vectors: alternating valid records and records
    broken in one of three ways (wrong B, wrong message, identity A)."""
    records = []
    for i in range(count):
        sk, pk = ps_keygen(ctx, rng)
        m = random_scalar(ctx, rng)
        sig = ps_sign(ctx, sk, m, rng)
        valid = i % 2 == 0
        if not valid:
            kind = i % 3
            if kind == 0:
                sig = PsSignature(sig.A, sig.B * ctx.g1)
            elif kind == 1:
                m = m + Scalar(1)
            else:
                sig = PsSignature(G1Element.identity(), G1Element.identity())
        records.append(
            {
                "x": sk.x.to_bytes().hex(),
                "y": sk.y.to_bytes().hex(),
                "g2": pk.g2.to_bytes().hex(),
                "X": pk.X.to_bytes().hex(),
                "Y": pk.Y.to_bytes().hex(),
                "m": int(m),
                "A": sig.A.to_bytes().hex(),
                "B": sig.B.to_bytes().hex(),
                "valid": valid,
            }
        )
    return records


def vector_check(ctx, record):
    """Re-verify one vector record; True when the stored validity bit
    matches what verification says."""
    pk = PsPublicKey(
        G2Element.from_bytes(bytes.fromhex(record["g2"])),
        G2Element.from_bytes(bytes.fromhex(record["X"])),
        G2Element.from_bytes(bytes.fromhex(record["Y"])),
    )
    sig = PsSignature(
        G1Element.from_bytes(bytes.fromhex(record["A"])),
        G1Element.from_bytes(bytes.fromhex(record["B"])),
    )
    return ps_verify(ctx, pk, int(record["m"]), sig) == bool(record["valid"])
