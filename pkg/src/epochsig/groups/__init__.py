"""Bilinear group abstraction over an embedded BLS12-381.

The rest of the package talks to this surface only: wrapped group
elements with multiplicative notation, canonical byte encodings, a
pairing with an evaluation counter, and domain-separated hashing to
G1 and to scalars.  Group elements are immutable and hashable;
exponents may be Scalar instances or plain ints.
"""

import random as _random

from .curves import (
    DecodeError,
    G1_GEN,
    G2_GEN,
    ORDER,
    g1_add,
    g1_from_bytes,
    g1_mul,
    g1_mul_gen,
    g1_neg,
    g1_to_bytes,
    g2_add,
    g2_from_bytes,
    g2_mul,
    g2_mul_gen,
    g2_neg,
    g2_to_bytes,
)
from .fields import FP12_ONE, fp12_conj, fp12_mul
from .hashing import hash_to_curve_g1, hash_to_scalar_bytes
from .pairing import (
    cyclo_exp,
    multi_pairing_is_one,
    pair_points,
    pairing_counter_read_reset,
    pairing_product_equals,
    prepare_generator,
)

ORDER = int(ORDER)

__all__ = [
    "BilinearGroupContext",
    "DecodeError",
    "G1Element",
    "G2Element",
    "GTElement",
    "Scalar",
    "generate_context",
    "hash_to_g1",
    "hash_to_scalar",
    "multi_pairing_check",
    "pair",
    "pairing_counter_read_reset",
    "pairing_product_check",
    "random_g1_nonidentity",
    "random_g2_nonidentity",
    "random_scalar",
    "random_scalar_nonzero",
]


class Scalar:
    """An element of Z_r, canonically reduced."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = int(v) % ORDER

    def __add__(self, other):
        return Scalar(self.v + _scalar_val(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.v - _scalar_val(other))

    def __rsub__(self, other):
        return Scalar(_scalar_val(other) - self.v)

    def __mul__(self, other):
        return Scalar(self.v * _scalar_val(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.v)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("zero scalar")
        return Scalar(pow(self.v, -1, ORDER))

    def __int__(self):
        return self.v

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.v == other.v

    def __hash__(self):
        return hash(("Zr", self.v))

    def __repr__(self):
        return f"Scalar({self.v:#x})"

    def to_bytes(self):
        return self.v.to_bytes(32, "big")

    @classmethod
    def from_bytes(cls, raw):
        if len(raw) != 32:
            raise DecodeError("scalar must be 32 bytes")
        v = int.from_bytes(raw, "big")
        if v >= ORDER:
            raise DecodeError("scalar not canonical")
        return cls(v)


def _scalar_val(x):
    if isinstance(x, Scalar):
        return x.v
    if isinstance(x, int):
        return x
    raise TypeError(f"expected Scalar or int, got {type(x).__name__}")


class _GroupElement:
    __slots__ = ("pt",)
    _add = None
    _neg = None
    _mul = None
    _mul_gen = None
    _gen_pt = None
    _to_bytes = None
    _from_bytes = None

    def __init__(self, pt):
        self.pt = pt

    def __mul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(type(self)._add(self.pt, other.pt))

    def __pow__(self, k):
        k = _scalar_val(k) % ORDER
        cls = type(self)
        if self.pt == cls._gen_pt:
            return cls(cls._mul_gen(k))
        return cls(cls._mul(self.pt, k))

    def inverse(self):
        return type(self)(type(self)._neg(self.pt))

    @property
    def is_identity(self):
        return self.pt is None

    def __eq__(self, other):
        return type(other) is type(self) and self.pt == other.pt

    def __hash__(self):
        return hash((type(self).__name__, self.pt))

    def to_bytes(self):
        return type(self)._to_bytes(self.pt)

    @classmethod
    def from_bytes(cls, raw):
        return cls(cls._from_bytes(raw))

    @classmethod
    def identity(cls):
        return cls(None)

    def __repr__(self):
        name = type(self).__name__
        return f"{name}({self.to_bytes().hex()[:16]}..)"


class G1Element(_GroupElement):
    __slots__ = ()
    _add = staticmethod(g1_add)
    _neg = staticmethod(g1_neg)
    _mul = staticmethod(g1_mul)
    _mul_gen = staticmethod(g1_mul_gen)
    _gen_pt = G1_GEN
    _to_bytes = staticmethod(g1_to_bytes)
    _from_bytes = staticmethod(g1_from_bytes)


class G2Element(_GroupElement):
    __slots__ = ()
    _add = staticmethod(g2_add)
    _neg = staticmethod(g2_neg)
    _mul = staticmethod(g2_mul)
    _mul_gen = staticmethod(g2_mul_gen)
    _gen_pt = G2_GEN
    _to_bytes = staticmethod(g2_to_bytes)
    _from_bytes = staticmethod(g2_from_bytes)


class GTElement:
    """Target-group element.  Only unitary values arise here (pairing
    outputs and their products), so inversion is conjugation."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __mul__(self, other):
        if not isinstance(other, GTElement):
            return NotImplemented
        return GTElement(fp12_mul(self.v, other.v))

    def __pow__(self, k):
        return GTElement(cyclo_exp(self.v, _scalar_val(k) % ORDER))

    def inverse(self):
        return GTElement(fp12_conj(self.v))

    @property
    def is_identity(self):
        return self.v == FP12_ONE

    def __eq__(self, other):
        return isinstance(other, GTElement) and self.v == other.v

    def __hash__(self):
        return hash(("GT", self.v))

    @classmethod
    def one(cls):
        return cls(FP12_ONE)

    def to_bytes(self):
        (a, b) = self.v
        out = b""
        for c in (*a, *b):
            out += int(c[0]).to_bytes(48, "big") + int(c[1]).to_bytes(48, "big")
        return out


class BilinearGroupContext:
    """Handles to one bilinear group instance: order, generators, and
    the convenience samplers.  There is a single supported instance at
    the 128-bit level; the constructor is generate_context."""

    __slots__ = ("order", "g1", "g2", "security")

    def __init__(self, order, g1, g2, security):
        self.order = order
        self.g1 = g1
        self.g2 = g2
        self.security = security

    def __repr__(self):
        return f"BilinearGroupContext(security={self.security})"


def generate_context(security=128):
    if security != 128:
        raise ValueError("only the 128-bit group is available")
    prepare_generator()
    return BilinearGroupContext(ORDER, G1Element(G1_GEN), G2Element(G2_GEN), security)


def pair(ctx, a, b):
    """The bilinear map; counts one pairing evaluation."""
    if not isinstance(a, G1Element) or not isinstance(b, G2Element):
        raise TypeError("pair expects (G1Element, G2Element)")
    return GTElement(pair_points(a.pt, b.pt))


def pairing_product_check(ctx, a1, b1, a2, b2):
    """Decide e(a1, b1) == e(a2, b2) without materializing either side.

    Shares the Miller loop and the final exponentiation, but counts as
    the two pairing evaluations it logically performs.
    """
    return pairing_product_equals(a1.pt, b1.pt, a2.pt, b2.pt)


def multi_pairing_check(ctx, pairs):
    """Decide prod e(a_i, b_i) == 1 over [(G1Element, G2Element)].

    Counts one pairing per input pair; the Miller loop and final
    exponentiation are shared across all of them.
    """
    return multi_pairing_is_one([(a.pt, b.pt) for a, b in pairs])


def hash_to_g1(ctx, tag, t):
    """Domain-separated hash of a period index into G1."""
    return G1Element(hash_to_curve_g1(int(t).to_bytes(8, "big"), tag))


def hash_to_scalar(ctx, tag, t, msg):
    """Domain-separated hash of (period, message) into Z_r."""
    data = int(t).to_bytes(8, "big") + len(msg).to_bytes(8, "big") + msg
    return Scalar(hash_to_scalar_bytes(data, tag))


def _rng_or_system(rng):
    return rng if rng is not None else _random.SystemRandom()


def random_scalar(ctx, rng=None):
    return Scalar(_rng_or_system(rng).randrange(ORDER))


def random_scalar_nonzero(ctx, rng=None):
    return Scalar(_rng_or_system(rng).randrange(1, ORDER))


def random_g1_nonidentity(ctx, rng=None):
    return ctx.g1 ** _rng_or_system(rng).randrange(1, ORDER)


def random_g2_nonidentity(ctx, rng=None):
    return ctx.g2 ** _rng_or_system(rng).randrange(1, ORDER)
