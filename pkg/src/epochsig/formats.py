"""Canonical file encodings for keys, signatures, and aggregates.

Everything is JSON with sorted keys and no whitespace so that a fixed
seed reproduces byte-identical artifacts.  Group elements travel as
hex of their compressed encodings; messages as base64; scalars as hex
of their 32-byte form.  A public key is exactly its two G2 points,
an aggregate exactly one G1 point plus the period.
"""

import base64
import json

from .groups import G1Element, G2Element, Scalar
from .sas import SasParams, SasPublicKey, SasSecretKey, SasSignature

FORMAT_VERSION = 1


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_json(path, obj):
    with open(path, "w") as fh:
        fh.write(canonical_json(obj))


def read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _require_version(d, kind):
    if d.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported {kind} version {d.get('version')!r}")


# ------------------------------------------------------------ elements

def pk_to_hex(pk):
    return (pk.X.to_bytes() + pk.Y.to_bytes()).hex()


def pk_from_hex(s):
    raw = bytes.fromhex(s)
    if len(raw) != 192:
        raise ValueError("public key must be two compressed G2 points")
    return SasPublicKey(G2Element.from_bytes(raw[:96]), G2Element.from_bytes(raw[96:]))


def _msg_to_b64(msg):
    return base64.b64encode(msg).decode("ascii")


def _msg_from_b64(s):
    return base64.b64decode(s.encode("ascii"), validate=True)


# ---------------------------------------------------------- parameters

def params_to_dict(params):
    return {
        "version": FORMAT_VERSION,
        "curve": "BLS12-381",
        "security": 128,
        "max_periods": params.max_periods,
        "h1_tag": params.h1_tag.decode("ascii"),
        "h2_tag": params.h2_tag.decode("ascii"),
        "g2_hex": params.g2.to_bytes().hex(),
    }


def params_from_dict(ctx, d):
    _require_version(d, "params")
    if d.get("curve") != "BLS12-381":
        raise ValueError(f"unsupported curve {d.get('curve')!r}")
    return SasParams(
        ctx,
        G2Element.from_bytes(bytes.fromhex(d["g2_hex"])),
        int(d["max_periods"]),
        d["h1_tag"].encode("ascii"),
        d["h2_tag"].encode("ascii"),
    )


# ---------------------------------------------------------------- keys

def key_to_dict(sk, pk, last_signed_period=0):
    return {
        "version": FORMAT_VERSION,
        "secret_x": sk.x.to_bytes().hex(),
        "secret_y": sk.y.to_bytes().hex(),
        "public_x": pk.X.to_bytes().hex(),
        "public_y": pk.Y.to_bytes().hex(),
        "last_signed_period": int(last_signed_period),
    }


def key_from_dict(d):
    _require_version(d, "key")
    sk = SasSecretKey(
        Scalar.from_bytes(bytes.fromhex(d["secret_x"])),
        Scalar.from_bytes(bytes.fromhex(d["secret_y"])),
    )
    pk = SasPublicKey(
        G2Element.from_bytes(bytes.fromhex(d["public_x"])),
        G2Element.from_bytes(bytes.fromhex(d["public_y"])),
    )
    return sk, pk, int(d["last_signed_period"])


# ----------------------------------------------------------- signatures

def signature_to_dict(sig):
    return {
        "version": FORMAT_VERSION,
        "period": int(sig.t),
        "b_hex": sig.B.to_bytes().hex(),
    }


def signature_from_dict(d):
    _require_version(d, "signature")
    return SasSignature(G1Element.from_bytes(bytes.fromhex(d["b_hex"])), int(d["period"]))


def bundle_new(period):
    """A bundle collects same-period signatures awaiting aggregation."""
    return {"version": FORMAT_VERSION, "period": int(period), "entries": []}


def bundle_add(bundle, pk, msg, sig):
    if sig.t != bundle["period"]:
        raise ValueError(f"signature period {sig.t} does not match bundle period {bundle['period']}")
    bundle["entries"].append(
        {
            "pk_hex": pk_to_hex(pk),
            "message_b64": _msg_to_b64(msg),
            "sig_hex": sig.B.to_bytes().hex(),
        }
    )
    return bundle


def bundle_entries(bundle):
    """Decode to [(pk, msg, sig)] ready for aggregation."""
    _require_version(bundle, "bundle")
    t = int(bundle["period"])
    out = []
    for e in bundle["entries"]:
        out.append(
            (
                pk_from_hex(e["pk_hex"]),
                _msg_from_b64(e["message_b64"]),
                SasSignature(G1Element.from_bytes(bytes.fromhex(e["sig_hex"])), t),
            )
        )
    return out


def aggregate_to_dict(pairs, agg):
    return {
        "version": FORMAT_VERSION,
        "period": int(agg.t),
        "bprime_hex": agg.B.to_bytes().hex(),
        "pairs": [
            {"pk_hex": pk_to_hex(pk), "message_b64": _msg_to_b64(msg)} for pk, msg in pairs
        ],
    }


def aggregate_from_dict(d):
    _require_version(d, "aggregate")
    t = int(d["period"])
    agg = SasSignature(G1Element.from_bytes(bytes.fromhex(d["bprime_hex"])), t)
    pairs = [(pk_from_hex(e["pk_hex"]), _msg_from_b64(e["message_b64"])) for e in d["pairs"]]
    return pairs, agg


# ------------------------------------------------------------- vectors

def write_jsonl(path, records, banner=None):
    with open(path, "w") as fh:
        if banner:
            fh.write("# " + banner + "\n")
        for rec in records:
            fh.write(canonical_json(rec))


def read_jsonl(path):
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            out.append(json.loads(line))
    return out
