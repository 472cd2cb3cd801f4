"""Extension-field tower arithmetic for the BLS12-381 pairing.

Fp2 = Fp[u]/(u^2 + 1), Fp6 = Fp2[v]/(v^3 - xi) with xi = u + 1,
Fp12 = Fp6[w]/(w^2 - v).  Elements are nested tuples of gmpy2.mpz,
always kept reduced into [0, p).  Plain functions, no classes: these
run inside the Miller loop and the exponentiation ladders, where
attribute lookups and object construction are measurable costs.
"""

from gmpy2 import mpz, invert, powmod

P = mpz(0x1A0111EA397FE69A4B1BA7B6434BACD764774B84F38512BF6730D2A0F6B0F6241EABFFFEB153FFFFB9FEFFFFFFFFAAAB)

FP2_ZERO = (mpz(0), mpz(0))
FP2_ONE = (mpz(1), mpz(0))
FP6_ZERO = (FP2_ZERO, FP2_ZERO, FP2_ZERO)
FP6_ONE = (FP2_ONE, FP2_ZERO, FP2_ZERO)
FP12_ONE = (FP6_ONE, FP6_ZERO)


# ---------------------------------------------------------------- Fp2

def fp2_add(a, b):
    return ((a[0] + b[0]) % P, (a[1] + b[1]) % P)


def fp2_sub(a, b):
    return ((a[0] - b[0]) % P, (a[1] - b[1]) % P)


def fp2_neg(a):
    return ((-a[0]) % P, (-a[1]) % P)


def fp2_conj(a):
    return (a[0], (-a[1]) % P)


def fp2_mul(a, b):
    # Karatsuba: 3 base-field products.
    a0, a1 = a
    b0, b1 = b
    t0 = a0 * b0
    t1 = a1 * b1
    return ((t0 - t1) % P, ((a0 + a1) * (b0 + b1) - t0 - t1) % P)


def fp2_sqr(a):
    a0, a1 = a
    return ((a0 + a1) * (a0 - a1) % P, (a0 * a1 << 1) % P)


def fp2_scale(a, k):
    # k is a base-field scalar (mpz)
    return (a[0] * k % P, a[1] * k % P)


def fp2_mul_xi(a):
    # multiply by xi = u + 1
    a0, a1 = a
    return ((a0 - a1) % P, (a0 + a1) % P)


def fp2_inv(a):
    a0, a1 = a
    d = invert(a0 * a0 + a1 * a1, P)
    return (a0 * d % P, (-a1 * d) % P)


def fp2_pow(a, e):
    out = FP2_ONE
    for bit in bin(int(e))[2:]:
        out = fp2_sqr(out)
        if bit == "1":
            out = fp2_mul(out, a)
    return out


def fp2_is_zero(a):
    return a[0] == 0 and a[1] == 0


# ---------------------------------------------------------------- Fp6

def fp6_add(a, b):
    return (fp2_add(a[0], b[0]), fp2_add(a[1], b[1]), fp2_add(a[2], b[2]))


def fp6_sub(a, b):
    return (fp2_sub(a[0], b[0]), fp2_sub(a[1], b[1]), fp2_sub(a[2], b[2]))


def fp6_neg(a):
    return (fp2_neg(a[0]), fp2_neg(a[1]), fp2_neg(a[2]))


def fp6_mul(a, b):
    # Karatsuba over Fp2, hand-flattened to base-field words.  This and
    # the other flattened bodies below sit inside the Miller loop and the
    # exponentiation ladders; additions stay unreduced (magnitudes remain
    # a few multiples of p), every product line reduces.
    (a00, a01), (a10, a11), (a20, a21) = a
    (b00, b01), (b10, b11), (b20, b21) = b
    m = a00 * b00
    n = a01 * b01
    t00 = m - n
    t01 = (a00 + a01) * (b00 + b01) - m - n
    m = a10 * b10
    n = a11 * b11
    t10 = m - n
    t11 = (a10 + a11) * (b10 + b11) - m - n
    m = a20 * b20
    n = a21 * b21
    t20 = m - n
    t21 = (a20 + a21) * (b20 + b21) - m - n
    x0 = a10 + a20
    x1 = a11 + a21
    y0 = b10 + b20
    y1 = b11 + b21
    m = x0 * y0
    n = x1 * y1
    u0 = m - n - t10 - t20
    u1 = (x0 + x1) * (y0 + y1) - m - n - t11 - t21
    c00 = (t00 + u0 - u1) % P
    c01 = (t01 + u0 + u1) % P
    x0 = a00 + a10
    x1 = a01 + a11
    y0 = b00 + b10
    y1 = b01 + b11
    m = x0 * y0
    n = x1 * y1
    c10 = (m - n - t00 - t10 + t20 - t21) % P
    c11 = ((x0 + x1) * (y0 + y1) - m - n - t01 - t11 + t20 + t21) % P
    x0 = a00 + a20
    x1 = a01 + a21
    y0 = b00 + b20
    y1 = b01 + b21
    m = x0 * y0
    n = x1 * y1
    c20 = (m - n - t00 - t20 + t10) % P
    c21 = ((x0 + x1) * (y0 + y1) - m - n - t01 - t21 + t11) % P
    return ((c00, c01), (c10, c11), (c20, c21))


def fp6_sqr(a):
    return fp6_mul(a, a)


def fp6_mul_by_v(a):
    # v * (a0 + a1 v + a2 v^2) = xi a2 + a0 v + a1 v^2
    return (fp2_mul_xi(a[2]), a[0], a[1])


def fp6_mul_by_01(a, b0, b1):
    # sparse product with b = b0 + b1 v, from the general formula with
    # b2 = 0, flattened like fp6_mul (callers may pass mildly unreduced
    # coefficients, sums stay far below the 2^768 comfort zone)
    (a00, a01), (a10, a11), (a20, a21) = a
    b00, b01 = b0
    b10, b11 = b1
    m = a00 * b00
    n = a01 * b01
    t00 = m - n
    t01 = (a00 + a01) * (b00 + b01) - m - n
    m = a10 * b10
    n = a11 * b11
    t10 = m - n
    t11 = (a10 + a11) * (b10 + b11) - m - n
    x0 = a10 + a20
    x1 = a11 + a21
    m = x0 * b10
    n = x1 * b11
    u0 = m - n - t10
    u1 = (x0 + x1) * (b10 + b11) - m - n - t11
    c00 = (t00 + u0 - u1) % P
    c01 = (t01 + u0 + u1) % P
    x0 = a00 + a10
    x1 = a01 + a11
    y0 = b00 + b10
    y1 = b01 + b11
    m = x0 * y0
    n = x1 * y1
    c10 = (m - n - t00 - t10) % P
    c11 = ((x0 + x1) * (y0 + y1) - m - n - t01 - t11) % P
    x0 = a00 + a20
    x1 = a01 + a21
    m = x0 * b00
    n = x1 * b01
    c20 = (m - n - t00 + t10) % P
    c21 = ((x0 + x1) * (b00 + b01) - m - n - t01 + t11) % P
    return ((c00, c01), (c10, c11), (c20, c21))


def fp6_mul_by_1(a, b1):
    # sparse product with b = b1 v
    a0, a1, a2 = a
    t1 = fp2_mul(a1, b1)
    return (fp2_mul_xi(fp2_mul(a2, b1)), fp2_mul(a0, b1), t1)


def fp6_inv(a):
    a0, a1, a2 = a
    c0 = fp2_sub(fp2_sqr(a0), fp2_mul_xi(fp2_mul(a1, a2)))
    c1 = fp2_sub(fp2_mul_xi(fp2_sqr(a2)), fp2_mul(a0, a1))
    c2 = fp2_sub(fp2_sqr(a1), fp2_mul(a0, a2))
    t = fp2_add(fp2_mul(a0, c0), fp2_mul_xi(fp2_add(fp2_mul(a2, c1), fp2_mul(a1, c2))))
    ti = fp2_inv(t)
    return (fp2_mul(c0, ti), fp2_mul(c1, ti), fp2_mul(c2, ti))


def fp6_is_zero(a):
    return all(fp2_is_zero(c) for c in a)


# ---------------------------------------------------------------- Fp12

def _fp6_add_nr(a, b):
    # componentwise sum without reduction, only for feeding fp6_mul
    (a0, a1), (a2, a3), (a4, a5) = a
    (b0, b1), (b2, b3), (b4, b5) = b
    return ((a0 + b0, a1 + b1), (a2 + b2, a3 + b3), (a4 + b4, a5 + b5))


def fp12_mul(a, b):
    a0, a1 = a
    b0, b1 = b
    t0 = fp6_mul(a0, b0)
    t1 = fp6_mul(a1, b1)
    s = fp6_mul(_fp6_add_nr(a0, a1), _fp6_add_nr(b0, b1))
    (t00, t01), (t10, t11), (t20, t21) = t0
    (u00, u01), (u10, u11), (u20, u21) = t1
    (s00, s01), (s10, s11), (s20, s21) = s
    # c0 = t0 + v t1 with v (x0, x1, x2) = (xi x2, x0, x1)
    return (
        (
            ((t00 + u20 - u21) % P, (t01 + u20 + u21) % P),
            ((t10 + u00) % P, (t11 + u01) % P),
            ((t20 + u10) % P, (t21 + u11) % P),
        ),
        (
            ((s00 - t00 - u00) % P, (s01 - t01 - u01) % P),
            ((s10 - t10 - u10) % P, (s11 - t11 - u11) % P),
            ((s20 - t20 - u20) % P, (s21 - t21 - u21) % P),
        ),
    )


def fp12_sqr(a):
    a0, a1 = a
    # (a0 + a1 w)^2 with w^2 = v, computed with two Fp6 products
    t = fp6_mul(a0, a1)
    (a00, a01), (a10, a11), (a20, a21) = a0
    (b00, b01), (b10, b11), (b20, b21) = a1
    s = fp6_mul(
        ((a00 + b00, a01 + b01), (a10 + b10, a11 + b11), (a20 + b20, a21 + b21)),
        ((a00 + b20 - b21, a01 + b20 + b21), (a10 + b00, a11 + b01), (a20 + b10, a21 + b11)),
    )
    (t00, t01), (t10, t11), (t20, t21) = t
    (s00, s01), (s10, s11), (s20, s21) = s
    return (
        (
            ((s00 - t00 - t20 + t21) % P, (s01 - t01 - t20 - t21) % P),
            ((s10 - t10 - t00) % P, (s11 - t11 - t01) % P),
            ((s20 - t20 - t10) % P, (s21 - t21 - t11) % P),
        ),
        (
            ((t00 << 1) % P, (t01 << 1) % P),
            ((t10 << 1) % P, (t11 << 1) % P),
            ((t20 << 1) % P, (t21 << 1) % P),
        ),
    )


def fp12_conj(a):
    # the p^6 power map: fixes Fp6, negates the w component
    return (a[0], fp6_neg(a[1]))


def fp12_inv(a):
    a0, a1 = a
    t = fp6_inv(fp6_sub(fp6_sqr(a0), fp6_mul_by_v(fp6_sqr(a1))))
    return (fp6_mul(a0, t), fp6_neg(fp6_mul(a1, t)))


def fp12_mul_by_014(f, a0, a1, b1):
    """Multiply f by the sparse element a0 + a1 v + b1 v w.

    This is the shape of a Miller-loop line evaluation; only three of the
    twelve coefficients are nonzero.
    """
    f0, f1 = f
    t0 = fp6_mul_by_01(f0, a0, a1)
    t1 = fp6_mul_by_1(f1, b1)
    s = fp6_mul_by_01(_fp6_add_nr(f0, f1), a0, (a1[0] + b1[0], a1[1] + b1[1]))
    (t00, t01), (t10, t11), (t20, t21) = t0
    (u00, u01), (u10, u11), (u20, u21) = t1
    (s00, s01), (s10, s11), (s20, s21) = s
    return (
        (
            ((t00 + u20 - u21) % P, (t01 + u20 + u21) % P),
            ((t10 + u00) % P, (t11 + u01) % P),
            ((t20 + u10) % P, (t21 + u11) % P),
        ),
        (
            ((s00 - t00 - u00) % P, (s01 - t01 - u01) % P),
            ((s10 - t10 - u10) % P, (s11 - t11 - u11) % P),
            ((s20 - t20 - u20) % P, (s21 - t21 - u21) % P),
        ),
    )


def fp12_is_one(a):
    return a == FP12_ONE


def fp12_pow(a, e):
    # plain square-and-multiply; used as an oracle and for odd jobs,
    # the pairing code has a faster cyclotomic ladder
    e = int(e)
    if e < 0:
        a = fp12_inv(a)
        e = -e
    out = FP12_ONE
    for bit in bin(e)[2:] if e else "":
        out = fp12_sqr(out)
        if bit == "1":
            out = fp12_mul(out, a)
    return out


# ------------------------------------------------------- Frobenius maps

_XI = (mpz(1), mpz(1))
# gamma = xi^((p-1)/6); the coefficient of v^i w^j picks up gamma^(2i+j)
_GAMMA = [FP2_ONE]
for _k in range(1, 6):
    _GAMMA.append(fp2_pow(_XI, _k * (P - 1) // 6))


def fp12_frobenius(a):
    (a0, a1, a2), (b0, b1, b2) = a
    return (
        (
            fp2_conj(a0),
            fp2_mul(fp2_conj(a1), _GAMMA[2]),
            fp2_mul(fp2_conj(a2), _GAMMA[4]),
        ),
        (
            fp2_mul(fp2_conj(b0), _GAMMA[1]),
            fp2_mul(fp2_conj(b1), _GAMMA[3]),
            fp2_mul(fp2_conj(b2), _GAMMA[5]),
        ),
    )


def fp12_frobenius2(a):
    return fp12_frobenius(fp12_frobenius(a))


# ------------------------------------------------- base-field helpers

def fp_inv(a):
    return invert(a, P)


def fp_sqrt(a):
    # p = 3 mod 4, so a^((p+1)/4) is a root whenever one exists
    a = a % P
    c = powmod(a, (P + 1) >> 2, P)
    if c * c % P != a:
        return None
    return c


def fp2_sqrt(a):
    """Square root in Fp2 by norm descent; returns None for non-squares."""
    a0, a1 = a[0] % P, a[1] % P
    if a1 == 0:
        c = fp_sqrt(a0)
        if c is not None:
            return (c, mpz(0))
        c = fp_sqrt((-a0) % P)
        return None if c is None else (mpz(0), c)
    n = (a0 * a0 + a1 * a1) % P
    s = fp_sqrt(n)
    if s is None:
        return None
    half = (P + 1) >> 1
    d = (a0 + s) * half % P
    x0 = fp_sqrt(d)
    if x0 is None:
        d = (a0 - s) * half % P
        x0 = fp_sqrt(d)
        if x0 is None:
            return None
    x1 = a1 * invert(x0 << 1, P) % P
    cand = (x0, x1)
    return cand if fp2_sqr(cand) == (a[0] % P, a[1] % P) else None
