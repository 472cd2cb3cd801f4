"""Synchronized aggregate signatures over BLS12-381.

Any number of same-period signatures fold into a single group element
that verifies with two pairings, and a signer who keeps to one message
per period never repeats randomness.  The heavy lifting lives in the
submodules; this namespace re-exports the pieces most callers want.
"""

from .groups import (
    BilinearGroupContext,
    G1Element,
    G2Element,
    GTElement,
    ORDER,
    Scalar,
    generate_context,
    pair,
    pairing_counter_read_reset,
)
from .sas import (
    AggregationError,
    PeriodReuseError,
    SasParams,
    SasPublicKey,
    SasSecretKey,
    SasSignature,
    SignerState,
    sas_aggregate,
    sas_aggregate_verify,
    sas_aggregate_verify_with_reason,
    sas_keygen,
    sas_setup,
    sas_sign,
    sas_verify,
    sas_verify_with_reason,
)
from .registry import KeyRegistry, certified_aggregate_verify, pop_prove, pop_verify

__version__ = "0.1.0"

__all__ = [
    "AggregationError",
    "BilinearGroupContext",
    "G1Element",
    "G2Element",
    "GTElement",
    "KeyRegistry",
    "ORDER",
    "PeriodReuseError",
    "SasParams",
    "SasPublicKey",
    "SasSecretKey",
    "SasSignature",
    "Scalar",
    "SignerState",
    "certified_aggregate_verify",
    "generate_context",
    "pair",
    "pairing_counter_read_reset",
    "pop_prove",
    "pop_verify",
    "sas_aggregate",
    "sas_aggregate_verify",
    "sas_aggregate_verify_with_reason",
    "sas_keygen",
    "sas_setup",
    "sas_sign",
    "sas_verify",
    "sas_verify_with_reason",
    "__version__",
]
