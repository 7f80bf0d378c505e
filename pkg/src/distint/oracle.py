"""Brute-force verifier built on explicit distance matrices.

The characteristic polynomial is computed exactly: Hessenberg reduction
modulo enough 31-bit primes, then Chinese remaindering.  The prime count
comes from a bound on the coefficients of the characteristic polynomial
that uses only the matrix entries:

    |c_k| <= e_k(|lambda|) <= prod(1 + |lambda_i|) <= (1 + sqrt(tr(D^2)/n))^n

Nothing here depends on the factored form of the distance polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt, prod
from typing import Iterable, Sequence

import numpy as np

from ._kernels import charpoly_mod_batch
from .model import PartitionSpec, iter_partitions
from .poly import IntPoly

log = logging.getLogger(__name__)

DEFAULT_LIMIT = 500


class TooLarge(ValueError):
    pass


class Disconnected(ValueError):
    pass


def distance_matrix(spec: PartitionSpec, limit: int = DEFAULT_LIMIT) -> np.ndarray:
    """Dense ``n x n`` distance matrix; parts in spec order, vertices contiguous."""
    if spec.n > limit:
        raise TooLarge(f"n = {spec.n} exceeds the oracle limit {limit}")
    if not spec.connected:
        raise Disconnected(f"{spec} has a single part and no edges")
    labels = np.repeat(np.arange(spec.part_count), [p for p in spec.ungroup()])
    d = np.where(labels[:, None] == labels[None, :], 2, 1).astype(np.int64)
    np.fill_diagonal(d, 0)
    d.setflags(write=False)
    return d


def dump_matrix(m: np.ndarray) -> str:
    lines = [str(m.shape[0])]
    lines.extend(" ".join(str(int(x)) for x in row) for row in m)
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> np.ndarray:
    lines = text.strip().splitlines()
    n = int(lines[0])
    rows = [[int(x) for x in line.split()] for line in lines[1 : n + 1]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError("matrix dump is not square")
    return np.array(rows, dtype=np.int64).reshape(n, n)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic below 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple[int, ...]:
    out = []
    q = (1 << 31) - 1
    while len(out) < count:
        if _is_prime(q):
            out.append(q)
        q -= 2
    return tuple(out)


def coefficient_bound(m: np.ndarray) -> int:
    n = m.shape[0]
    tr2 = int((m.astype(np.int64) ** 2).sum())
    mean_sq = -(-tr2 // n)
    root = isqrt(mean_sq)
    if root * root < mean_sq:
        root += 1
    return (1 + root) ** n


def _primes_for(bound: int) -> tuple[int, ...]:
    k = 1
    while prod(_primes(k)) <= 2 * bound:
        k += 1
    return _primes(k)


def _crt_lift(residues: np.ndarray, primes: Sequence[int]) -> list[int]:
    """Symmetric CRT lift of residues shaped ``(len(primes), ncoeff)``."""
    modulus = prod(primes)
    weights = []
    for q in primes:
        mi = modulus // q
        weights.append(mi * pow(mi % q, -1, q))
    acc = [0] * residues.shape[1]
    for row, w in zip(residues.tolist(), weights):
        for j, r in enumerate(row):
            acc[j] += r * w
    half = modulus // 2
    out = []
    for x in acc:
        x %= modulus
        out.append(x - modulus if x > half else x)
    return out


def charpoly_batch(mats: np.ndarray) -> list[IntPoly]:
    """Exact characteristic polynomials of a stack of same-size integer matrices."""
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError("expected a stack of square matrices")
    if mats.shape[0] == 0:
        return []
    bound = max(coefficient_bound(m) for m in mats)
    primes = _primes_for(bound)
    res = charpoly_mod_batch(np.ascontiguousarray(mats, dtype=np.int64), np.array(primes, dtype=np.int64))
    return [IntPoly(tuple(_crt_lift(res[b], primes))) for b in range(res.shape[0])]


def charpoly_exact(m: np.ndarray) -> IntPoly:
    """Exact integer characteristic polynomial ``det(xI - m)``."""
    return charpoly_batch(np.asarray(m, dtype=np.int64)[None, :, :])[0]


def cross_check(spec: PartitionSpec, limit: int = DEFAULT_LIMIT) -> bool:
    from .spectral import d_polynomial_factored

    return charpoly_exact(distance_matrix(spec, limit)) == d_polynomial_factored(spec).expand()


@dataclass
class SweepResult:
    checked: int = 0
    mismatches: list[PartitionSpec] = field(default_factory=list)


def sweep(n_values: Iterable[int], batch: int = 512) -> SweepResult:
    """Cross-check every connected grouped partition for each ``n`` given."""
    from .spectral import d_polynomial_factored

    result = SweepResult()
    for n in n_values:
        specs = [s for s in iter_partitions(n) if s.connected]
        for start in range(0, len(specs), batch):
            chunk = specs[start : start + batch]
            mats = np.stack([distance_matrix(s, limit=n) for s in chunk])
            for spec, cp in zip(chunk, charpoly_batch(mats)):
                result.checked += 1
                if cp != d_polynomial_factored(spec).expand():
                    result.mismatches.append(spec)
        log.info("n=%d: %d partitions checked", n, len(specs))
    return result
