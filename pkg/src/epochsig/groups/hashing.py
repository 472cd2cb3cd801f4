"""Hashing byte strings to G1 points and to scalars.

The point encoding follows the hash_to_curve construction: two field
elements from an expand_message_xmd stream (SHA-256), the Shallue-van
de Woestijne map applied to each, the sum cleared of its cofactor.
Every constant of the map is derived here at import time from the
curve equation; nothing is pasted in, and the tests pin the derived
values by their defining properties.

Scalar hashing widens to 48 bytes before reducing mod the group order,
which keeps the bias below 2^-128.
"""

import hashlib

from .curves import B1, ORDER, g1_add, g1_mul
from .fields import P, fp_inv, mpz

_H = hashlib.sha256
_H_OUT = 32
_H_BLOCK = 64

# multiplying by 1 - x (x the curve parameter) moves any point on the
# curve into the order-r subgroup
_H_EFF = 0xD201000000010001


def expand_message_xmd(msg, dst, n):
    """The XMD expander: n uniform bytes from msg under domain tag dst."""
    if len(dst) > 255:
        raise ValueError("domain tag too long")
    ell = (n + _H_OUT - 1) // _H_OUT
    if ell > 255 or n == 0:
        raise ValueError("bad output length")
    dst_prime = dst + bytes([len(dst)])
    b0 = _H(b"\x00" * _H_BLOCK + msg + n.to_bytes(2, "big") + b"\x00" + dst_prime).digest()
    out = []
    prev = _H(b0 + b"\x01" + dst_prime).digest()
    out.append(prev)
    for i in range(2, ell + 1):
        prev = _H(bytes(a ^ b for a, b in zip(b0, prev)) + bytes([i]) + dst_prime).digest()
        out.append(prev)
    return b"".join(out)[:n]


def hash_to_field_fp(msg, dst, count):
    # L = 64: 512 bits per element against the 381-bit modulus
    raw = expand_message_xmd(msg, dst, 64 * count)
    return [mpz(int.from_bytes(raw[i * 64 : (i + 1) * 64], "big") % P) for i in range(count)]


def hash_to_scalar_bytes(msg, dst):
    """Hash to an integer in [0, r), oversampled to 384 bits."""
    return int.from_bytes(expand_message_xmd(msg, dst, 48), "big") % ORDER


# ------------------------------------------- Shallue-van de Woestijne

def _g(x):
    return (x * x % P * x + B1) % P


def _is_square(a):
    a = a % P
    return a == 0 or pow(a, (P - 1) >> 1, P) == 1


def _sqrt(a):
    # p = 3 mod 4
    r = pow(a % P, (P + 1) >> 2, P)
    if r * r % P != a % P:
        raise ValueError("not a square")
    return mpz(r)


def _find_z():
    # smallest-magnitude Z with: g(Z) != 0, the map denominator
    # -(3Z^2+4)/(4g(Z)) nonzero and square, and g(Z) or g(-Z/2) square
    for mag in range(1, 100):
        for z in (mag, P - mag):
            gz = _g(z)
            if gz == 0:
                continue
            t = -(3 * z * z) % P
            if t == 0:
                continue
            c = t * fp_inv(mpz(4 * gz % P)) % P
            if c == 0 or not _is_square(c):
                continue
            if _is_square(gz) or _is_square(_g(-z * fp_inv(mpz(2)) % P)):
                return mpz(z)
    raise AssertionError("no usable Z below 100")


_Z = _find_z()
_C1 = _g(_Z)
_C2 = -_Z * fp_inv(mpz(2)) % P
_C3 = _sqrt(-_C1 * (3 * _Z * _Z) % P)
if _C3 & 1:
    _C3 = P - _C3
_C4 = -4 * _C1 % P * fp_inv(mpz(3 * _Z * _Z % P)) % P


def map_to_curve(u):
    """Map a field element to an affine curve point (not necessarily in
    the prime-order subgroup)."""
    tv1 = u * u % P * _C1 % P
    tv2 = (1 + tv1) % P
    tv1 = (1 - tv1) % P
    tv3 = tv1 * tv2 % P
    tv3 = fp_inv(tv3) if tv3 else mpz(0)
    tv4 = u * tv1 % P * tv3 % P * _C3 % P
    x1 = (_C2 - tv4) % P
    x2 = (_C2 + tv4) % P
    x3 = tv2 * tv2 % P * tv3 % P
    x3 = x3 * x3 % P * _C4 % P
    x3 = (x3 + _Z) % P
    if _is_square(_g(x1)):
        x = x1
    elif _is_square(_g(x2)):
        x = x2
    else:
        x = x3
    y = _sqrt(_g(x))
    if (y & 1) != (u & 1):
        y = P - y
    return (mpz(x), y)


def hash_to_curve_g1(msg, dst):
    """Hash to a point of the order-r subgroup of G1, uniformly."""
    u0, u1 = hash_to_field_fp(msg, dst, 2)
    pt = g1_add(map_to_curve(u0), map_to_curve(u1))
    return g1_mul(pt, _H_EFF)
