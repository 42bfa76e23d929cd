# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_kernel_pure``: int64/int128 fast paths with overflow
guards.  Coefficients that fit in 50 bits go through C loops; anything bigger
falls back to exact python-int arithmetic.  Both paths return identical
values, so the choice is invisible to callers.
"""

from libc.stdlib cimport malloc, free

from . import _kernel_pure as _pure

cdef extern from *:
    ctypedef long long int128 "__int128"

# input limit 2^50: with deg <= 64 the convolution stays below 2^107 and the
# reduction fold below 2^124, comfortably inside int128
cdef long long _LIM = (<long long> 1) << 50
cdef long long _RED_LIM = (<long long> 1) << 12
cdef int128 _CONV_LIM = (<int128> 1) << 105
cdef int128 _I64 = (<int128> 9223372036854775807)


cdef inline bint _fill(tuple a, long long* buf, Py_ssize_t n, long long lim) except -1:
    cdef Py_ssize_t i
    cdef object x
    cdef long long v
    for i in range(n):
        x = a[i]
        v = x  # raises OverflowError for ints beyond int64
        if v >= lim or v <= -lim:
            return 0
        buf[i] = v
    return 1


def vec_add(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef long long* ba = <long long*> malloc(2 * n * sizeof(long long))
    cdef long long* bb = ba + n
    cdef Py_ssize_t i
    try:
        if _fill(a, ba, n, _LIM) and _fill(b, bb, n, _LIM):
            return tuple([ba[i] + bb[i] for i in range(n)])
    except OverflowError:
        pass
    finally:
        free(ba)
    return _pure.vec_add(a, b)


def vec_sub(tuple a, tuple b):
    cdef Py_ssize_t n = len(a)
    cdef long long* ba = <long long*> malloc(2 * n * sizeof(long long))
    cdef long long* bb = ba + n
    cdef Py_ssize_t i
    try:
        if _fill(a, ba, n, _LIM) and _fill(b, bb, n, _LIM):
            return tuple([ba[i] - bb[i] for i in range(n)])
    except OverflowError:
        pass
    finally:
        free(ba)
    return _pure.vec_sub(a, b)


def vec_scale(tuple a, c):
    cdef Py_ssize_t n = len(a)
    cdef long long cc
    cdef long long* ba = <long long*> malloc(n * sizeof(long long))
    cdef int128 acc
    cdef Py_ssize_t i
    cdef list out
    try:
        cc = c
        if (-_LIM < cc < _LIM) and _fill(a, ba, n, _LIM):
            out = []
            for i in range(n):
                acc = <int128> ba[i] * cc
                if acc > _I64 or acc < -_I64:
                    raise OverflowError
                out.append(<long long> acc)
            return tuple(out)
    except OverflowError:
        pass
    finally:
        free(ba)
    return _pure.vec_scale(a, c)


def vec_mul(tuple a, tuple b, tuple red):
    cdef Py_ssize_t deg = len(a)
    cdef Py_ssize_t i, j, k
    cdef long long* ba = <long long*> malloc(3 * deg * sizeof(long long))
    cdef long long* bb = ba + deg
    cdef long long* br = ba + 2 * deg
    cdef int128* conv = NULL
    cdef int128* out = NULL
    cdef int128 c
    cdef bint ok = 0
    cdef tuple rj
    cdef list res
    try:
        if _fill(a, ba, deg, _LIM) and _fill(b, bb, deg, _LIM):
            ok = 1
    except OverflowError:
        ok = 0
    if not ok:
        free(ba)
        return _pure.vec_mul(a, b, red)

    conv = <int128*> malloc((2 * deg - 1) * sizeof(int128))
    out = <int128*> malloc(deg * sizeof(int128))
    try:
        for i in range(2 * deg - 1):
            conv[i] = 0
        for i in range(deg):
            if ba[i] != 0:
                for j in range(deg):
                    conv[i + j] += <int128> ba[i] * bb[j]
        for k in range(deg):
            out[k] = conv[k]
        for j in range(deg - 1):
            c = conv[deg + j]
            if c != 0:
                if c >= _CONV_LIM or c <= -_CONV_LIM:
                    return _pure.vec_mul(a, b, red)
                rj = red[j]
                try:
                    if not _fill(rj, br, deg, _RED_LIM):
                        return _pure.vec_mul(a, b, red)
                except OverflowError:
                    return _pure.vec_mul(a, b, red)
                for k in range(deg):
                    if br[k] != 0:
                        out[k] += c * br[k]
        res = []
        for k in range(deg):
            c = out[k]
            if c > _I64 or c < -_I64:
                return _pure.vec_mul(a, b, red)
            res.append(<long long> c)
        return tuple(res)
    finally:
        free(ba)
        free(conv)
        free(out)


def vec_content(tuple a, extra=0):
    return _pure.vec_content(a, extra)
