"""Short-Weierstrass group arithmetic for the two pairing source groups.

G1 lives on y^2 = x^3 + 4 over Fp, G2 on the sextic twist
y^2 = x^3 + 4(u+1) over Fp2.  Affine points are coordinate tuples with
None for the identity; scalar ladders run in Jacobian coordinates.
Serialization follows the common 48/96-byte compressed convention:
bit 7 of the first byte flags compression, bit 6 the identity, bit 5
marks the lexicographically larger square root.
"""

from gmpy2 import invert, mpz

from .fields import (
    P,
    fp2_add,
    fp2_inv,
    fp2_is_zero,
    fp2_mul,
    fp2_neg,
    fp2_sqr,
    fp2_sqrt,
    fp2_sub,
    fp_sqrt,
)

ORDER = mpz(0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001)

B1 = mpz(4)
B2 = (mpz(4), mpz(4))

G1_GEN = (
    mpz(0x17F1D3A73197D7942695638C4FA9AC0FC3688C4F9774B905A14E3A3F171BAC586C55E83FF97A1AEFFB3AF00ADB22C6BB),
    mpz(0x08B3F481E3AAA0F1A09E30ED741D8AE4FCF5E095D5D00AF600DB18CB2C04B3EDD03CC744A2888AE40CAA232946C5E7E1),
)
G2_GEN = (
    (
        mpz(0x024AA2B2F08F0A91260805272DC51051C6E47AD4FA403B02B4510B647AE3D1770BAC0326A805BBEFD48056C8C121BDB8),
        mpz(0x13E02B6052719F607DACD3A088274F65596BD0D09920B61AB5DA61BBDC7F5049334CF11213945D57E5AC7D055D042B7E),
    ),
    (
        mpz(0x0CE5D527727D6E118CC9CDC6DA2E351AADFD9BAA8CBDD3A76D429A695160D12C923AC9CC3BACA289E193548608B82801),
        mpz(0x0606C4A02EA734CC32ACD2B02BC28B99CB3E287E85A763AF267492AB572E99AB3F370D275CEC1DA1AAA9075FF05F79BE),
    ),
)


class DecodeError(ValueError):
    """Raised for byte strings that do not name a valid group element."""


# ----------------------------------------------------------------- G1

def g1_is_on_curve(pt):
    if pt is None:
        return True
    x, y = pt
    return (y * y - (x * x % P * x + B1)) % P == 0


def g1_neg(pt):
    if pt is None:
        return None
    return (pt[0], (-pt[1]) % P)


def g1_add(p, q):
    if p is None:
        return q
    if q is None:
        return p
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if (y1 + y2) % P == 0:
            return None
        # tangent
        lam = 3 * x1 * x1 % P * invert(y1 << 1, P) % P
    else:
        lam = (y2 - y1) * invert(x2 - x1, P) % P
    x3 = (lam * lam - x1 - x2) % P
    return (x3, (lam * (x1 - x3) - y1) % P)


def g1_double(p):
    return g1_add(p, p)


# Jacobian kernels.  Identity is z == 0.

def _g1j_double(X, Y, Z):
    A = X * X % P
    Bv = Y * Y % P
    C = Bv * Bv % P
    D = ((X + Bv) ** 2 - A - C << 1) % P
    E = 3 * A % P
    X3 = (E * E - 2 * D) % P
    Y3 = (E * (D - X3) - (C << 3)) % P
    Z3 = (Y * Z << 1) % P
    return X3, Y3, Z3


def _g1j_add_mixed(X1, Y1, Z1, x2, y2):
    # q is affine; standard mixed addition
    Z1Z1 = Z1 * Z1 % P
    U2 = x2 * Z1Z1 % P
    S2 = y2 * Z1 % P * Z1Z1 % P
    H = (U2 - X1) % P
    rr = (S2 - Y1) % P
    if H == 0:
        if rr == 0:
            return _g1j_double(X1, Y1, Z1)
        return mpz(1), mpz(1), mpz(0)
    HH = H * H % P
    I = (HH << 2) % P
    J = H * I % P
    rr = rr << 1
    V = X1 * I % P
    X3 = (rr * rr - J - 2 * V) % P
    Y3 = (rr * (V - X3) - ((Y1 * J % P) << 1)) % P
    Z3 = ((Z1 + H) ** 2 - Z1Z1 - HH) % P
    return X3, Y3, Z3


def _g1j_to_affine(X, Y, Z):
    if Z == 0:
        return None
    zi = invert(Z, P)
    zi2 = zi * zi % P
    return (X * zi2 % P, Y * zi2 % P * zi % P)


def g1_mul(pt, k):
    """Scalar multiplication with a 4-bit window."""
    k = int(k) % int(ORDER)
    if pt is None or k == 0:
        return None
    if k == 1:
        return pt
    # table of 1..15 multiples, affine via one batched inversion
    table = _g1_window_table(pt)
    digits = _hex_digits(k)
    X, Y, Z = mpz(1), mpz(1), mpz(0)
    for d in digits:
        if Z != 0:
            X, Y, Z = _g1j_double(X, Y, Z)
            X, Y, Z = _g1j_double(X, Y, Z)
            X, Y, Z = _g1j_double(X, Y, Z)
            X, Y, Z = _g1j_double(X, Y, Z)
        if d:
            tx, ty = table[d]
            if Z == 0:
                X, Y, Z = tx, ty, mpz(1)
            else:
                X, Y, Z = _g1j_add_mixed(X, Y, Z, tx, ty)
    return _g1j_to_affine(X, Y, Z)


def _g1_window_table(pt):
    jac = [None] * 16
    jac[1] = (pt[0], pt[1], mpz(1))
    jac[2] = _g1j_double(*jac[1])
    for i in range(3, 16):
        jac[i] = _g1j_add_mixed(*jac[i - 1], pt[0], pt[1])
    aff = _g1_batch_affine(jac[1:])
    return [None] + aff


def _g1_batch_affine(points):
    # Montgomery's trick: one field inversion for the whole batch
    zs = [pt[2] for pt in points]
    acc = mpz(1)
    prefix = []
    for z in zs:
        prefix.append(acc)
        acc = acc * z % P
    inv_acc = invert(acc, P)
    out = [None] * len(points)
    for i in range(len(points) - 1, -1, -1):
        zi = inv_acc * prefix[i] % P
        inv_acc = inv_acc * zs[i] % P
        X, Y, _ = points[i]
        zi2 = zi * zi % P
        out[i] = (X * zi2 % P, Y * zi2 % P * zi % P)
    return out


# ----------------------------------------------------------------- G2

def g2_is_on_curve(pt):
    if pt is None:
        return True
    x, y = pt
    return fp2_sub(fp2_sqr(y), fp2_add(fp2_mul(fp2_sqr(x), x), B2)) == (0, 0)


def g2_neg(pt):
    if pt is None:
        return None
    return (pt[0], fp2_neg(pt[1]))


def g2_add(p, q):
    if p is None:
        return q
    if q is None:
        return p
    x1, y1 = p
    x2, y2 = q
    if x1 == x2:
        if fp2_is_zero(fp2_add(y1, y2)):
            return None
        num = fp2_sqr(x1)
        num = fp2_add(fp2_add(num, num), num)
        lam = fp2_mul(num, fp2_inv(fp2_add(y1, y1)))
    else:
        lam = fp2_mul(fp2_sub(y2, y1), fp2_inv(fp2_sub(x2, x1)))
    x3 = fp2_sub(fp2_sub(fp2_sqr(lam), x1), x2)
    return (x3, fp2_sub(fp2_mul(lam, fp2_sub(x1, x3)), y1))


def g2_double(p):
    return g2_add(p, p)


def _g2j_double(X, Y, Z):
    # dbl-2009-l, flattened to base-field words; scalar multiplication
    # in G2 spends nearly all its time here.  Sums run unreduced (they
    # stay within a few multiples of p), each product line reduces.
    x0, x1 = X
    y0, y1 = Y
    z0, z1 = Z
    a0 = ((x0 + x1) * (x0 - x1)) % P
    a1 = ((x0 * x1) << 1) % P
    b0 = ((y0 + y1) * (y0 - y1)) % P
    b1 = ((y0 * y1) << 1) % P
    c0 = ((b0 + b1) * (b0 - b1)) % P
    c1 = ((b0 * b1) << 1) % P
    s0 = x0 + b0
    s1 = x1 + b1
    d0 = (((s0 + s1) * (s0 - s1)) % P - a0 - c0) << 1
    d1 = (((s0 * s1) << 1) % P - a1 - c1) << 1
    e0 = 3 * a0
    e1 = 3 * a1
    x30 = (((e0 + e1) * (e0 - e1)) - (d0 << 1)) % P
    x31 = (((e0 * e1) << 1) - (d1 << 1)) % P
    g0 = d0 - x30
    g1 = d1 - x31
    m = e0 * g0
    n = e1 * g1
    y30 = (m - n - (c0 << 3)) % P
    y31 = ((e0 + e1) * (g0 + g1) - m - n - (c1 << 3)) % P
    m = y0 * z0
    n = y1 * z1
    z30 = ((m - n) << 1) % P
    z31 = (((y0 + y1) * (z0 + z1) - m - n) << 1) % P
    return (x30, x31), (y30, y31), (z30, z31)


_FP2_JINF = ((mpz(1), mpz(0)), (mpz(1), mpz(0)), (mpz(0), mpz(0)))


def _g2j_add_mixed(X1, Y1, Z1, x2, y2):
    # madd-2007-bl with the same flattening; the degenerate branches
    # (same x) fall back to doubling or the point at infinity
    p0, p1 = X1
    q0, q1 = Y1
    z0, z1 = Z1
    u0, u1 = x2
    v0, v1 = y2
    zz0 = ((z0 + z1) * (z0 - z1)) % P
    zz1 = ((z0 * z1) << 1) % P
    m = u0 * zz0
    n = u1 * zz1
    h0 = (m - n) % P - p0
    h1 = ((u0 + u1) * (zz0 + zz1) - m - n) % P - p1
    m = z0 * zz0
    n = z1 * zz1
    w0 = (m - n) % P
    w1 = ((z0 + z1) * (zz0 + zz1) - m - n) % P
    m = v0 * w0
    n = v1 * w1
    r0 = (m - n) % P - q0
    r1 = ((v0 + v1) * (w0 + w1) - m - n) % P - q1
    if h0 == 0 and h1 == 0:
        if r0 == 0 and r1 == 0:
            return _g2j_double(X1, Y1, Z1)
        return _FP2_JINF
    hh0 = ((h0 + h1) * (h0 - h1)) % P
    hh1 = ((h0 * h1) << 1) % P
    i0 = hh0 << 2
    i1 = hh1 << 2
    m = h0 * i0
    n = h1 * i1
    j0 = (m - n) % P
    j1 = ((h0 + h1) * (i0 + i1) - m - n) % P
    r0 <<= 1
    r1 <<= 1
    m = p0 * i0
    n = p1 * i1
    v30 = (m - n) % P
    v31 = ((p0 + p1) * (i0 + i1) - m - n) % P
    x30 = ((r0 + r1) * (r0 - r1) - j0 - (v30 << 1)) % P
    x31 = (((r0 * r1) << 1) - j1 - (v31 << 1)) % P
    g0 = v30 - x30
    g1 = v31 - x31
    m = r0 * g0
    n = r1 * g1
    a0 = m - n
    a1 = (r0 + r1) * (g0 + g1) - m - n
    m = q0 * j0
    n = q1 * j1
    y30 = (a0 - ((m - n) << 1)) % P
    y31 = (a1 - (((q0 + q1) * (j0 + j1) - m - n) << 1)) % P
    s0 = z0 + h0
    s1 = z1 + h1
    z30 = ((s0 + s1) * (s0 - s1) - zz0 - hh0) % P
    z31 = (((s0 * s1) << 1) - zz1 - hh1) % P
    return (x30, x31), (y30, y31), (z30, z31)


def _g2j_to_affine(X, Y, Z):
    if fp2_is_zero(Z):
        return None
    zi = fp2_inv(Z)
    zi2 = fp2_sqr(zi)
    return (fp2_mul(X, zi2), fp2_mul(fp2_mul(Y, zi2), zi))


def g2_mul(pt, k):
    k = int(k) % int(ORDER)
    if pt is None or k == 0:
        return None
    if k == 1:
        return pt
    table = _g2_window_table(pt)
    X, Y, Z = _FP2_JINF
    started = False
    for d in _hex_digits(k):
        if started:
            X, Y, Z = _g2j_double(X, Y, Z)
            X, Y, Z = _g2j_double(X, Y, Z)
            X, Y, Z = _g2j_double(X, Y, Z)
            X, Y, Z = _g2j_double(X, Y, Z)
        if d:
            tx, ty = table[d]
            if not started:
                X, Y, Z = tx, ty, (mpz(1), mpz(0))
                started = True
            else:
                X, Y, Z = _g2j_add_mixed(X, Y, Z, tx, ty)
    return _g2j_to_affine(X, Y, Z)


def _g2_window_table(pt):
    one = (mpz(1), mpz(0))
    jac = [None] * 16
    jac[1] = (pt[0], pt[1], one)
    jac[2] = _g2j_double(*jac[1])
    for i in range(3, 16):
        jac[i] = _g2j_add_mixed(*jac[i - 1], pt[0], pt[1])
    return [None] + _g2_batch_affine(jac[1:])


def _g2_batch_affine(points):
    zs = [pt[2] for pt in points]
    acc = (mpz(1), mpz(0))
    prefix = []
    for z in zs:
        prefix.append(acc)
        acc = fp2_mul(acc, z)
    inv_acc = fp2_inv(acc)
    out = [None] * len(points)
    for i in range(len(points) - 1, -1, -1):
        zi = fp2_mul(inv_acc, prefix[i])
        inv_acc = fp2_mul(inv_acc, zs[i])
        X, Y, _ = points[i]
        zi2 = fp2_sqr(zi)
        out[i] = (fp2_mul(X, zi2), fp2_mul(fp2_mul(Y, zi2), zi))
    return out


def _hex_digits(k):
    h = "%x" % k
    return [int(c, 16) for c in h]


# -------------------------------------------- fixed-base acceleration

class _FixedBase:
    """Per-generator window tables: 64 windows of 4 bits each.

    Reduces a fixed-base exponentiation to ~63 mixed additions.  Built
    lazily on first use; a few milliseconds, paid once per process.
    """

    def __init__(self, pt, dbl, add_mixed, to_affine, batch_affine):
        self.tables = None
        self._args = (pt, dbl, add_mixed, to_affine, batch_affine)

    def _build(self):
        pt, dbl, add_mixed, to_affine, batch_affine = self._args
        jac_rows = []
        base = pt
        for _ in range(64):
            row = [None] * 16
            row[1] = base
            cur = (base[0], base[1], _z_one(base))
            acc = cur
            for d in range(2, 16):
                acc = add_mixed(*acc, base[0], base[1])
                row[d] = acc
            jac_rows.append(row)
            # base <- 16 * base
            nxt = cur
            for _ in range(4):
                nxt = dbl(*nxt)
            base = to_affine(*nxt)
        flat = []
        for row in jac_rows:
            flat.extend(row[2:])
        flat_aff = batch_affine(flat)
        tables = []
        i = 0
        for row in jac_rows:
            aff_row = [None, row[1]]
            aff_row.extend(flat_aff[i : i + 14])
            i += 14
            tables.append(aff_row)
        self.tables = tables

    def mul(self, k):
        if self.tables is None:
            self._build()
        _, _, add_mixed, to_affine, _ = self._args
        acc = None
        for w in range(64):
            d = (k >> (4 * w)) & 0xF
            if not d:
                continue
            tx, ty = self.tables[w][d]
            if acc is None:
                acc = (tx, ty, _z_one((tx, ty)))
            else:
                acc = add_mixed(*acc, tx, ty)
        if acc is None:
            return None
        return to_affine(*acc)


def _z_one(pt):
    return (mpz(1), mpz(0)) if isinstance(pt[0], tuple) else mpz(1)


_G1_BASE = _FixedBase(G1_GEN, _g1j_double, _g1j_add_mixed, _g1j_to_affine, _g1_batch_affine)
_G2_BASE = _FixedBase(G2_GEN, _g2j_double, _g2j_add_mixed, _g2j_to_affine, _g2_batch_affine)


def g1_mul_gen(k):
    k = int(k) % int(ORDER)
    if k == 0:
        return None
    return _G1_BASE.mul(k)


def g2_mul_gen(k):
    k = int(k) % int(ORDER)
    if k == 0:
        return None
    return _G2_BASE.mul(k)


def _mul_affine_raw(pt, k, add):
    # affine double-and-add with NO order reduction; the subgroup checks
    # multiply by the order itself, which g1_mul/g2_mul would reduce to
    # zero.  The affine add is slower than the Jacobian ladders but
    # handles identity and torsion coincidences exactly, which matters
    # here because these run on adversarial decoded points.
    acc = None
    for bit in bin(k)[2:]:
        acc = add(acc, acc)
        if bit == "1":
            acc = add(acc, pt)
    return acc


def g1_in_subgroup(pt):
    if pt is None:
        return True
    if not g1_is_on_curve(pt):
        return False
    return _mul_affine_raw(pt, int(ORDER), g1_add) is None


def g2_in_subgroup(pt):
    if pt is None:
        return True
    if not g2_is_on_curve(pt):
        return False
    return _mul_affine_raw(pt, int(ORDER), g2_add) is None


# ------------------------------------------------------- serialization

_HALF = (P - 1) >> 1


def g1_to_bytes(pt):
    if pt is None:
        return bytes([0xC0]) + bytes(47)
    x, y = pt
    flags = 0x80 | (0x20 if y > _HALF else 0)
    data = bytearray(int(x).to_bytes(48, "big"))
    data[0] |= flags
    return bytes(data)


def g1_from_bytes(data):
    if len(data) != 48:
        raise DecodeError("G1 encodings are 48 bytes")
    flags = data[0] & 0xE0
    if not flags & 0x80:
        raise DecodeError("uncompressed encodings not supported")
    body = bytes([data[0] & 0x1F]) + data[1:]
    x = mpz(int.from_bytes(body, "big"))
    if flags & 0x40:
        if flags & 0x20 or x != 0:
            raise DecodeError("malformed identity encoding")
        return None
    if x >= P:
        raise DecodeError("coordinate out of range")
    y = fp_sqrt((x * x % P * x + B1) % P)
    if y is None:
        raise DecodeError("x is not on the curve")
    if bool(flags & 0x20) != (y > _HALF):
        y = (-y) % P
    pt = (x, y)
    if not g1_in_subgroup(pt):
        raise DecodeError("point not in the prime-order subgroup")
    return pt


def _fp2_lex_larger(y):
    y0, y1 = y
    if y1 != 0:
        return y1 > _HALF
    return y0 > _HALF


def g2_to_bytes(pt):
    if pt is None:
        return bytes([0xC0]) + bytes(95)
    (x0, x1), y = pt
    flags = 0x80 | (0x20 if _fp2_lex_larger(y) else 0)
    data = bytearray(int(x1).to_bytes(48, "big") + int(x0).to_bytes(48, "big"))
    data[0] |= flags
    return bytes(data)


def g2_from_bytes(data):
    if len(data) != 96:
        raise DecodeError("G2 encodings are 96 bytes")
    flags = data[0] & 0xE0
    if not flags & 0x80:
        raise DecodeError("uncompressed encodings not supported")
    body = bytes([data[0] & 0x1F]) + data[1:]
    x1 = mpz(int.from_bytes(body[:48], "big"))
    x0 = mpz(int.from_bytes(body[48:], "big"))
    if flags & 0x40:
        if flags & 0x20 or x0 != 0 or x1 != 0:
            raise DecodeError("malformed identity encoding")
        return None
    if x0 >= P or x1 >= P:
        raise DecodeError("coordinate out of range")
    x = (x0, x1)
    y = fp2_sqrt(fp2_add(fp2_mul(fp2_sqr(x), x), B2))
    if y is None:
        raise DecodeError("x is not on the twist")
    if bool(flags & 0x20) != _fp2_lex_larger(y):
        y = fp2_neg(y)
    pt = (x, y)
    if not g2_in_subgroup(pt):
        raise DecodeError("point not in the prime-order subgroup")
    return pt
