"""Synchronized aggregate signatures with constant-size verification.

All signers share public parameters: a G2 base, a bound T on the
period counter, and two hashes, one from periods to G1 and one from
(period, message) to scalars.  A signature for period t is the single
G1 point B = H1(t)^(x + H2(t, m) y); it carries t alongside.  Because
every signer raises the same base H1(t), signatures for one period
multiply together into an aggregate that still consists of one point,
and verification of an aggregate over any number of signers is one
two-pairing product check:

    e(H1(t), prod_i X_i Y_i^H2(t, m_i)) = e(B', g2)

Signing is deterministic; the synchronized model's one obligation on
the caller is to never sign twice in the same period, which
SignerState enforces mechanically.

The hash hooks on SasParams exist so a security experiment can run
the scheme under reprogrammed hashes; production setups leave them
alone.
"""

from dataclasses import dataclass, field

from .groups import (
    G1Element,
    G2Element,
    Scalar,
    hash_to_g1,
    hash_to_scalar,
    pairing_product_check,
    random_g2_nonidentity,
    random_scalar,
)

H1_TAG = b"SAS-PS-H1-v1"
H2_TAG = b"SAS-PS-H2-v1"

_H1_CACHE_CAP = 64


class PeriodReuseError(RuntimeError):
    """A signer was asked to sign twice for one period."""


class AggregationError(ValueError):
    """Aggregation inputs violate a structural requirement.

    The reason attribute is one of: empty-entry-list, period-mismatch,
    period-out-of-range, duplicate-pk, invalid-member-signature.
    """

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


@dataclass(eq=False)
class SasParams:
    ctx: object
    g2: G2Element
    max_periods: int
    h1_tag: bytes = H1_TAG
    h2_tag: bytes = H2_TAG
    h1_override: object = None
    h2_override: object = None
    _h1_cache: dict = field(default_factory=dict, repr=False)

    def h1(self, t):
        if self.h1_override is not None:
            return self.h1_override(t)
        pt = self._h1_cache.get(t)
        if pt is None:
            pt = hash_to_g1(self.ctx, self.h1_tag, t)
            if len(self._h1_cache) >= _H1_CACHE_CAP:
                self._h1_cache.pop(next(iter(self._h1_cache)))
            self._h1_cache[t] = pt
        return pt

    def h2(self, t, msg):
        if self.h2_override is not None:
            return self.h2_override(t, msg)
        return hash_to_scalar(self.ctx, self.h2_tag, t, msg)

    def period_in_range(self, t):
        return 1 <= t <= self.max_periods


@dataclass(frozen=True)
class SasSecretKey:
    x: Scalar
    y: Scalar


@dataclass(frozen=True)
class SasPublicKey:
    X: G2Element
    Y: G2Element


@dataclass(frozen=True)
class SasSignature:
    B: G1Element
    t: int


def sas_setup(ctx, max_periods, rng=None):
    """Shared parameters: a fresh G2 base and the period bound."""
    if max_periods < 1:
        raise ValueError("need at least one period")
    return SasParams(ctx, random_g2_nonidentity(ctx, rng), max_periods)


def sas_keygen(params, rng=None):
    x = random_scalar(params.ctx, rng)
    y = random_scalar(params.ctx, rng)
    return SasSecretKey(x, y), SasPublicKey(params.g2 ** x, params.g2 ** y)


def sas_sign(params, sk, t, msg):
    """Deterministic: B = H1(t)^(x + H2(t, msg) y)."""
    if not params.period_in_range(t):
        raise ValueError(f"period {t} outside [1, {params.max_periods}]")
    e = sk.x + params.h2(t, msg) * sk.y
    return SasSignature(params.h1(t) ** e, t)


def sas_verify_with_reason(params, pk, msg, sig):
    if not params.period_in_range(sig.t):
        return False, "period-out-of-range"
    q = pk.X * pk.Y ** params.h2(sig.t, msg)
    if pairing_product_check(params.ctx, params.h1(sig.t), q, sig.B, params.g2):
        return True, "accept"
    return False, "pairing-mismatch"


def sas_verify(params, pk, msg, sig):
    return sas_verify_with_reason(params, pk, msg, sig)[0]


class SignerState:
    """A secret key plus the high-water mark of periods already used.

    sign() refuses any period at or below the mark, so a signer driven
    through this object cannot emit two signatures for one period even
    across message retries.
    """

    def __init__(self, secret, last_period=0):
        self.secret = secret
        self.last_period = int(last_period)

    def sign(self, params, t, msg):
        if t <= self.last_period:
            raise PeriodReuseError(f"period {t} already used (last was {self.last_period})")
        sig = sas_sign(params, self.secret, t, msg)
        self.last_period = t
        return sig


def sas_aggregate(params, entries, check_members=True):
    """Combine same-period signatures from distinct signers.

    entries is a list of (public key, message bytes, signature).  The
    member check re-verifies each signature before folding it in;
    callers that have just verified them can pass check_members=False.
    """
    if not entries:
        raise AggregationError("empty-entry-list")
    t = entries[0][2].t
    if not params.period_in_range(t):
        raise AggregationError("period-out-of-range")
    if any(sig.t != t for _, _, sig in entries):
        raise AggregationError("period-mismatch")
    if len({pk for pk, _, _ in entries}) != len(entries):
        raise AggregationError("duplicate-pk")
    bprime = G1Element.identity()
    for pk, msg, sig in entries:
        if check_members and not sas_verify(params, pk, msg, sig):
            raise AggregationError("invalid-member-signature")
        bprime = bprime * sig.B
    return SasSignature(bprime, t)


def sas_aggregate_verify_with_reason(params, pairs, agg):
    """pairs is [(public key, message bytes)] in aggregate order."""
    if not pairs:
        return False, "empty-entry-list"
    if not params.period_in_range(agg.t):
        return False, "period-out-of-range"
    if len({pk for pk, _ in pairs}) != len(pairs):
        return False, "duplicate-pk"
    q = G2Element.identity()
    for pk, msg in pairs:
        q = q * pk.X * pk.Y ** params.h2(agg.t, msg)
    if pairing_product_check(params.ctx, params.h1(agg.t), q, agg.B, params.g2):
        return True, "accept"
    return False, "pairing-mismatch"


def sas_aggregate_verify(params, pairs, agg):
    return sas_aggregate_verify_with_reason(params, pairs, agg)[0]


def sas_correctness_check(params, ell, t, rng):
    """End-to-end round trip at aggregation size ell for period t:
    fresh keys, one signature each on distinct random messages, every
    member verified, then the aggregate formed and verified.  Returns
    True only if every step accepts."""
    entries = []
    for i in range(ell):
        sk, pk = sas_keygen(params, rng)
        msg = b"msg-%d-" % i + random_scalar(params.ctx, rng).to_bytes()[-12:]
        sig = sas_sign(params, sk, t, msg)
        if not sas_verify(params, pk, msg, sig):
            return False
        entries.append((pk, msg, sig))
    agg = sas_aggregate(params, entries, check_members=False)
    return sas_aggregate_verify(params, [(pk, msg) for pk, msg, _ in entries], agg)
