"""Key registration for the certified-key setting.

Aggregate verification is only meaningful against keys whose holders
demonstrably control the matching secrets; otherwise a rogue signer
can fold a victim's key into an aggregate it built alone.  Two
registration modes are provided:

* escrow: the registrant hands over the secret key and the registry
  checks it reproduces the public key.  This mirrors how the security
  experiment's certification oracle works and is intended for test
  harnesses only; the escrow store is written with a warning banner.

* proof of possession: the registrant proves knowledge of both
  exponents with a two-base Schnorr proof bound to the public key,
  and no secret leaves the holder.

Either way, certified_aggregate_verify refuses aggregates involving
any key the registry has not seen.
"""

from dataclasses import dataclass

from .formats import pk_from_hex, pk_to_hex, read_jsonl, write_jsonl
from .groups import Scalar, random_scalar
from .groups.hashing import hash_to_scalar_bytes
from .sas import sas_aggregate_verify_with_reason

POP_TAG = b"SAS-PS-POP-v1"

ESCROW_BANNER = (
    "ESCROW STORE: contains secret keys; harness and test use only, never production"
)


@dataclass(frozen=True)
class PossessionProof:
    R1: object
    R2: object
    s1: Scalar
    s2: Scalar


def _pop_challenge(params, pk, r1, r2):
    transcript = (
        params.g2.to_bytes()
        + pk.X.to_bytes()
        + pk.Y.to_bytes()
        + r1.to_bytes()
        + r2.to_bytes()
    )
    return Scalar(hash_to_scalar_bytes(transcript, POP_TAG))


def pop_prove(params, sk, pk, rng=None):
    """Schnorr proof of knowledge of (x, y) behind pk = (g2^x, g2^y)."""
    k1 = random_scalar(params.ctx, rng)
    k2 = random_scalar(params.ctx, rng)
    r1 = params.g2 ** k1
    r2 = params.g2 ** k2
    c = _pop_challenge(params, pk, r1, r2)
    return PossessionProof(r1, r2, k1 + c * sk.x, k2 + c * sk.y)


def pop_verify(params, pk, proof):
    c = _pop_challenge(params, pk, proof.R1, proof.R2)
    if params.g2 ** proof.s1 != proof.R1 * pk.X ** c:
        return False
    return params.g2 ** proof.s2 == proof.R2 * pk.Y ** c


class KeyRegistry:
    """Certified keys for one parameter set, with optional persistence."""

    def __init__(self, params):
        self.params = params
        self._mode = {}
        self._escrow = {}

    def register_escrow(self, pk, sk):
        """Certify by revealing the secret; accepted only if it matches."""
        if self.params.g2 ** sk.x != pk.X or self.params.g2 ** sk.y != pk.Y:
            return False
        self._mode[pk] = "escrow"
        self._escrow[pk] = sk
        return True

    def register_with_proof(self, pk, proof):
        if not pop_verify(self.params, pk, proof):
            return False
        self._mode[pk] = "pop"
        return True

    def is_certified(self, pk):
        return pk in self._mode

    def escrowed_secret(self, pk):
        """The revealed secret for an escrow-registered key (harness use)."""
        return self._escrow[pk]

    def __len__(self):
        return len(self._mode)

    # ------------------------------------------------------ persistence

    def save(self, registry_path, escrow_path=None):
        records = [
            {"pk_hex": pk_to_hex(pk), "mode": mode} for pk, mode in self._mode.items()
        ]
        write_jsonl(registry_path, records)
        if escrow_path is not None:
            rows = [
                {
                    "pk_hex": pk_to_hex(pk),
                    "secret_x": sk.x.to_bytes().hex(),
                    "secret_y": sk.y.to_bytes().hex(),
                }
                for pk, sk in self._escrow.items()
            ]
            write_jsonl(escrow_path, rows, banner=ESCROW_BANNER)

    @classmethod
    def load(cls, params, registry_path, escrow_path=None):
        reg = cls(params)
        for row in read_jsonl(registry_path):
            reg._mode[pk_from_hex(row["pk_hex"])] = row["mode"]
        if escrow_path is not None:
            from .sas import SasSecretKey

            for row in read_jsonl(escrow_path):
                pk = pk_from_hex(row["pk_hex"])
                reg._escrow[pk] = SasSecretKey(
                    Scalar.from_bytes(bytes.fromhex(row["secret_x"])),
                    Scalar.from_bytes(bytes.fromhex(row["secret_y"])),
                )
        return reg


def certified_aggregate_verify_with_reason(registry, pairs, agg):
    """Aggregate verification that also insists every key is certified."""
    for pk, _ in pairs:
        if not registry.is_certified(pk):
            return False, "uncertified-key"
    return sas_aggregate_verify_with_reason(registry.params, pairs, agg)


def certified_aggregate_verify(registry, pairs, agg):
    return certified_aggregate_verify_with_reason(registry, pairs, agg)[0]
