"""Grouped complete multipartite graph descriptions.

A complete multipartite graph is stored in grouped form: a tuple of
``(size, count)`` pairs with strictly increasing sizes.  ``K_{2,2,5}`` is
``PartitionSpec(((2, 2), (5, 1)))``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Iterator


class SpecError(ValueError):
    """Raised for malformed partition descriptions."""

    def __init__(self, message: str, token: str | None = None):
        super().__init__(message)
        self.token = token


@dataclass(frozen=True)
class PartitionSpec:
    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        parts = tuple((int(p), int(a)) for p, a in self.parts)
        if not parts:
            raise SpecError("a partition needs at least one part size")
        for p, a in parts:
            if p < 1 or a < 1:
                raise SpecError(f"sizes and counts must be positive, got size {p} count {a}")
        for (p, _), (q, _) in zip(parts, parts[1:]):
            if q <= p:
                raise SpecError(f"sizes must be strictly increasing, got {p} then {q}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_vectors(cls, sizes: Iterable[int], counts: Iterable[int]) -> "PartitionSpec":
        sizes, counts = list(sizes), list(counts)
        if len(sizes) != len(counts):
            raise SpecError("size and count vectors differ in length")
        return cls(tuple(zip(sizes, counts)))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.parts)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(a for _, a in self.parts)

    @property
    def s(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(p * a for p, a in self.parts)

    @property
    def part_count(self) -> int:
        return sum(a for _, a in self.parts)

    @property
    def connected(self) -> bool:
        return self.part_count >= 2 or self.n == 1

    def ungroup(self) -> list[int]:
        return [p for p, a in self.parts for _ in range(a)]

    def __str__(self) -> str:
        return format_spec(self)


def group(multiset: Iterable[int]) -> PartitionSpec:
    """Group a multiset of part sizes into a :class:`PartitionSpec`."""
    items = list(multiset)
    if not items:
        raise SpecError("empty list of part sizes")
    for x in items:
        if int(x) != x or x < 1:
            raise SpecError(f"part size must be a positive integer, got {x!r}", str(x))
    return PartitionSpec(tuple(sorted(Counter(int(x) for x in items).items())))


def scale(spec: PartitionSpec, q: int) -> PartitionSpec:
    if int(q) != q or q < 1:
        raise SpecError(f"scale factor must be a positive integer, got {q!r}")
    return PartitionSpec(tuple((p * q, a) for p, a in spec.parts))


def primitive_reduce(spec: PartitionSpec) -> tuple[PartitionSpec, int]:
    """Divide all sizes by their GCD; return the reduced spec and the GCD."""
    g = reduce(gcd, spec.sizes)
    return PartitionSpec(tuple((p // g, a) for p, a in spec.parts)), g


def is_primitive(sizes: Iterable[int]) -> bool:
    return reduce(gcd, sizes, 0) == 1


_GROUPED = re.compile(r"^\s*(\d+)\s*[xX]\s*(\d+)\s*$")
_PLAIN = re.compile(r"^\s*(\d+)\s*$")


def parse_spec(text: str) -> PartitionSpec:
    """Parse ``a1xp1,a2xp2,...`` (counts before sizes) or plain ``p1,p2,...``.

    >>> parse_spec("7x1,2x3").parts
    ((1, 7), (3, 2))
    >>> parse_spec("1,1,3").parts
    ((1, 2), (3, 1))
    """
    tokens = [t for t in text.split(",")]
    if not text.strip() or any(not t.strip() for t in tokens):
        raise SpecError(f"empty token in partition {text!r}", text)
    if any("x" in t.lower() for t in tokens):
        parts = []
        for tok in tokens:
            tok = tok.strip()
            m = _GROUPED.match(tok)
            if not m:
                raise SpecError(f"bad token {tok!r}: expected COUNTxSIZE", tok)
            a, p = int(m.group(1)), int(m.group(2))
            if a < 1 or p < 1:
                raise SpecError(f"bad token {tok!r}: count and size must be positive", tok)
            if parts and p <= parts[-1][0]:
                raise SpecError(f"bad token {tok!r}: sizes must be strictly increasing", tok)
            parts.append((p, a))
        return PartitionSpec(tuple(parts))
    sizes = []
    for tok in tokens:
        m = _PLAIN.match(tok)
        if not m or int(m.group(1)) < 1:
            raise SpecError(f"bad token {tok.strip()!r}: expected a positive integer", tok.strip())
        sizes.append(int(m.group(1)))
    return group(sizes)


def format_spec(spec: PartitionSpec) -> str:
    return ",".join(f"{a}x{p}" for p, a in spec.parts)


def iter_partitions(n: int) -> Iterator[PartitionSpec]:
    """Yield every grouped partition of ``n`` exactly once."""

    def rec(remaining: int, max_size: int) -> Iterator[list[tuple[int, int]]]:
        if remaining == 0:
            yield []
            return
        for p in range(min(remaining, max_size), 0, -1):
            for a in range(remaining // p, 0, -1):
                for rest in rec(remaining - a * p, p - 1):
                    yield rest + [(p, a)]

    for parts in rec(n, n):
        yield PartitionSpec(tuple(parts))
