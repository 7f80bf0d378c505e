"""Compiled inner loops: characteristic polynomials modulo word-size primes.

Primes must stay below 2**31 so every product fits in int64.
"""

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure numpy fallback
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


@njit(cache=True)
def _inv_mod(b, p):
    r = 1
    e = p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@njit(cache=True)
def charpoly_mod(a, p):
    """Coefficients (low degree first) of det(xI - a) mod p.

    Reduces to upper Hessenberg form by Gaussian similarity transforms, then
    expands the Hessenberg determinant by the standard recurrence.
    """
    n = a.shape[0]
    h = np.empty((n, n), np.int64)
    for i in range(n):
        for j in range(n):
            h[i, j] = a[i, j] % p
    for k in range(n - 2):
        piv = -1
        for i in range(k + 1, n):
            if h[i, k] != 0:
                piv = i
                break
        if piv == -1:
            continue
        if piv != k + 1:
            for j in range(n):
                t = h[piv, j]
                h[piv, j] = h[k + 1, j]
                h[k + 1, j] = t
            for i in range(n):
                t = h[i, piv]
                h[i, piv] = h[i, k + 1]
                h[i, k + 1] = t
        inv = _inv_mod(h[k + 1, k], p)
        for i in range(k + 2, n):
            u = h[i, k] * inv % p
            if u == 0:
                continue
            for j in range(k, n):
                h[i, j] = (h[i, j] - u * h[k + 1, j]) % p
            for r in range(n):
                h[r, k + 1] = (h[r, k + 1] + u * h[r, i]) % p
    polys = np.zeros((n + 1, n + 1), np.int64)
    polys[0, 0] = 1
    for m in range(1, n + 1):
        for c in range(m):
            polys[m, c + 1] = polys[m - 1, c]
        d = h[m - 1, m - 1]
        for c in range(m):
            polys[m, c] = (polys[m, c] - d * polys[m - 1, c]) % p
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * h[i, i - 1] % p
            if t == 0:
                break
            coef = t * h[i - 1, m - 1] % p
            if coef == 0:
                continue
            for c in range(i):
                polys[m, c] = (polys[m, c] - coef * polys[i - 1, c]) % p
    return polys[n].copy()


@njit(cache=True)
def charpoly_mod_batch(mats, primes):
    m, n = mats.shape[0], mats.shape[1]
    out = np.empty((m, primes.shape[0], n + 1), np.int64)
    for b in range(m):
        for q in range(primes.shape[0]):
            out[b, q] = charpoly_mod(mats[b], primes[q])
    return out
