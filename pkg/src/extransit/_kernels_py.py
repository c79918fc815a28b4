"""Pure-Python integer polynomial kernels.

Polynomials are tuples of Python ints, lowest degree first, with no
trailing zeros.  The zero polynomial is the empty tuple.  The compiled
module ``_kernels`` exposes exactly the same functions.
"""
from math import gcd

__all__ = [
    "padd", "psub", "pmul", "pscale", "pneg", "pdivexact", "pcontent",
    "pprimitive", "pgcd", "pval",
]


def _trim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] += v
    return _trim(out)


def psub(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, v in enumerate(a):
        out[i] = v
    for i, v in enumerate(b):
        out[i] -= v
    return _trim(out)


def pneg(a):
    return tuple(-v for v in a)


def pscale(a, k):
    if k == 0:
        return ()
    return tuple(v * k for v in a)


def pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        k = a[0]
        return tuple(v * k for v in b)
    if len(b) == 1:
        k = b[0]
        return tuple(v * k for v in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def pval(a):
    """Index of the lowest nonzero coefficient (valuation at z = 0)."""
    for i, v in enumerate(a):
        if v:
            return i
    raise ValueError("valuation of zero polynomial")


def pcontent(a):
    g = 0
    for v in a:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def pprimitive(a):
    """Return a primitive polynomial with positive leading coefficient."""
    if not a:
        return ()
    g = pcontent(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return tuple(a)
    return tuple(v // g for v in a)


def pdivexact(a, b):
    """Exact quotient a / b in Z[z]; b must divide a."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return ()
    db = len(b) - 1
    if db == 0:
        k = b[0]
        out = []
        for v in a:
            q, r = divmod(v, k)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return tuple(out)
    rem = list(a)
    lb = b[-1]
    nq = len(a) - db
    if nq <= 0:
        raise ArithmeticError("inexact polynomial division")
    q = [0] * nq
    for k in range(nq - 1, -1, -1):
        top = rem[k + db]
        if top:
            c, r = divmod(top, lb)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[k] = c
            for i in range(db + 1):
                rem[k + i] -= c * b[i]
    for v in rem[:db]:
        if v:
            raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def _prem(a, b):
    # pseudo-remainder of a by b
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(rem) - 1 >= db and rem:
        top = rem[-1]
        shift = len(rem) - 1 - db
        rem = [v * lb for v in rem]
        for i in range(db + 1):
            rem[shift + i] -= top * b[i]
        while rem and rem[-1] == 0:
            rem.pop()
    return tuple(rem)


def pgcd(a, b):
    """Primitive gcd with positive leading coefficient; pgcd(0, 0) = (1,)."""
    if not a:
        return pprimitive(b) if b else (1,)
    if not b:
        return pprimitive(a)
    if len(a) == 1 or len(b) == 1:
        # constants are units in Q[z]; only a common power of z survives
        return (1,)
    va, vb = pval(a), pval(b)
    if len(a) - va == 1 or len(b) - vb == 1:
        k = min(va, vb)
        return (0,) * k + (1,)
    k = min(va, vb)
    a = pprimitive(a[va:])
    b = pprimitive(b[vb:])
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, pprimitive(r) if r else ()
    g = pprimitive(a)
    if len(g) == 1:
        g = (1,)
    return (0,) * k + g
