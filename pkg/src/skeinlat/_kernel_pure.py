"""Pure-python arithmetic kernel for fixed-degree integer coefficient vectors.

Vectors are tuples of python ints of a fixed length ``deg`` (the degree of
the ambient cyclotomic field).  Multiplication is polynomial convolution
followed by folding of the powers ``x^deg .. x^(2*deg-2)`` through a
precomputed reduction table ``red`` (``red[j]`` holds the coefficient vector
of ``x^(deg+j)`` modulo the cyclotomic polynomial).

The compiled twin in ``_kernel.pyx`` implements the same three functions with
an overflow-checked int64 fast path; this module is the reference
implementation and the fallback for big coefficients.
"""

from math import gcd


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a, c):
    return tuple(x * c for x in a)


def vec_mul(a, b, red):
    deg = len(a)
    conv = [0] * (2 * deg - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
    out = conv[:deg]
    for j in range(deg - 1):
        c = conv[deg + j]
        if c:
            rj = red[j]
            for k in range(deg):
                r = rj[k]
                if r:
                    out[k] += c * r
    return tuple(out)


def vec_content(a, extra=0):
    """gcd of all entries together with ``extra`` (for fraction reduction)."""
    g = extra
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g
