# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer polynomial kernels (same API as ``_kernels_py``)."""
from math import gcd

__all__ = [
    "padd", "psub", "pmul", "pscale", "pneg", "pdivexact", "pcontent",
    "pprimitive", "pgcd", "pval",
]


cdef tuple _trim(list c):
    cdef Py_ssize_t n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def padd(tuple a, tuple b):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    for i in range(len(b)):
        out[i] = out[i] + b[i]
    return _trim(out)


def psub(tuple a, tuple b):
    cdef Py_ssize_t i, n = max(len(a), len(b))
    cdef list out = [0] * n
    for i in range(len(a)):
        out[i] = a[i]
    for i in range(len(b)):
        out[i] = out[i] - b[i]
    return _trim(out)


def pneg(tuple a):
    return tuple([-v for v in a])


def pscale(tuple a, object k):
    if k == 0:
        return ()
    return tuple([v * k for v in a])


def pmul(tuple a, tuple b):
    cdef Py_ssize_t i, j, la = len(a), lb = len(b)
    cdef object x
    if la == 0 or lb == 0:
        return ()
    if la == 1:
        x = a[0]
        return tuple([v * x for v in b])
    if lb == 1:
        x = b[0]
        return tuple([v * x for v in a])
    cdef list out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if x:
            for j in range(lb):
                out[i + j] = out[i + j] + x * b[j]
    return tuple(out)


def pval(tuple a):
    cdef Py_ssize_t i
    for i in range(len(a)):
        if a[i]:
            return i
    raise ValueError("valuation of zero polynomial")


def pcontent(tuple a):
    cdef object g = 0
    for v in a:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def pprimitive(tuple a):
    if not a:
        return ()
    cdef object g = pcontent(a)
    if a[len(a) - 1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple([v // g for v in a])


def pdivexact(tuple a, tuple b):
    cdef Py_ssize_t db, nq, k, i
    cdef object c, r, lb, top
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    db = len(b) - 1
    if db == 0:
        lb = b[0]
        out = []
        for v in a:
            c, r = divmod(v, lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(c)
        return tuple(out)
    cdef list rem = list(a)
    lb = b[db]
    nq = len(a) - db
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    cdef list q = [0] * nq
    for k in range(nq - 1, -1, -1):
        top = rem[k + db]
        if top:
            c, r = divmod(top, lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[k] = c
            for i in range(db + 1):
                rem[k + i] = rem[k + i] - c * b[i]
    for i in range(db):
        if rem[i]:
            raise ArithmeticError("inexact polynomial division")
    return tuple(q)


cdef tuple _prem(tuple a, tuple b):
    cdef list rem = list(a)
    cdef Py_ssize_t db = len(b) - 1, shift, i
    cdef object lb = b[db], top
    while rem and len(rem) - 1 >= db:
        top = rem[len(rem) - 1]
        shift = len(rem) - 1 - db
        rem = [v * lb for v in rem]
        for i in range(db + 1):
            rem[shift + i] = rem[shift + i] - top * b[i]
        while rem and rem[len(rem) - 1] == 0:
            rem.pop()
    return tuple(rem)


def pgcd(tuple a, tuple b):
    cdef Py_ssize_t va, vb, k
    if not a:
        return pprimitive(b) if b else (1,)
    if not b:
        return pprimitive(a)
    if len(a) == 1 or len(b) == 1:
        return (1,)
    va = pval(a)
    vb = pval(b)
    k = min(va, vb)
    if len(a) - va == 1 or len(b) - vb == 1:
        return (0,) * k + (1,)
    a = pprimitive(a[va:])
    b = pprimitive(b[vb:])
    if len(a) < len(b):
        a, b = b, a
    cdef tuple r
    while b:
        r = _prem(a, b)
        a, b = b, (pprimitive(r) if r else ())
    g = pprimitive(a)
    if len(g) == 1:
        g = (1,)
    return (0,) * k + g
