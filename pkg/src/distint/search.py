"""Bounded exhaustive search for distance-integral complete multipartite graphs.

Rows are produced per primitive size vector ``p`` in lexicographic order; for
each ``p`` every interlacing head ``mu_1..mu_{s-1}`` is tried in
lexicographic order and the admissible ``mu_s`` values come from
:func:`candidate_mu_s`.  For a fixed head, ``a_k`` is an integer exactly when
``mu_s = p_k - 2 (mod |D_k| / gcd(N_k, D_k))``, so all ``s`` conditions merge
into a single residue class.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product as cartesian
from math import gcd, prod
from typing import Any, Iterable, Iterator, Sequence, TextIO

from .integrality import SolutionRow, denominators

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7


class BoundsError(ValueError):
    pass


class BoundsTooLarge(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(f"search box has at least {estimate} work prefixes, budget is {budget}; pass force=True to run anyway")
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class SearchBounds:
    """Box constraints.  ``max_gap[i]`` bounds ``p_i - p_{i-1}`` (entry 0 unused)."""

    s: int
    p_lo: tuple[int, ...]
    p_hi: tuple[int, ...]
    mu_max: int
    max_gap: tuple[int | None, ...] | None = None
    n_max: int | None = None
    limit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "p_lo", tuple(self.p_lo))
        object.__setattr__(self, "p_hi", tuple(self.p_hi))
        if self.max_gap is not None:
            object.__setattr__(self, "max_gap", tuple(self.max_gap))
        if self.s < 1:
            raise BoundsError("s must be at least 1")
        if len(self.p_lo) != self.s or len(self.p_hi) != self.s:
            raise BoundsError("size ranges must have exactly s entries")
        if self.max_gap is not None and len(self.max_gap) != self.s:
            raise BoundsError("max_gap must have exactly s entries")
        if any(lo < 1 for lo in self.p_lo):
            raise BoundsError("size lower bounds must be at least 1")
        if any(lo > hi for lo, hi in zip(self.p_lo, self.p_hi)):
            raise BoundsError("empty size range")
        # strict increase must be achievable from the lowest choice at index 0
        floor = self.p_lo[0]
        for i in range(1, self.s):
            floor = max(floor + 1, self.p_lo[i])
            if floor > self.p_hi[i]:
                raise BoundsError(f"ranges do not permit strictly increasing sizes at index {i + 1}")
        if not self.mu_max > self.p_hi[-1] - 2:
            raise BoundsError("mu_max must exceed p_s - 2")

    @classmethod
    def box(cls, p_max: Sequence[int], mu_max: int, **kw) -> "SearchBounds":
        return cls(len(p_max), tuple(1 for _ in p_max), tuple(p_max), mu_max, **kw)

    @classmethod
    def fixed(cls, p: Sequence[int], mu_max: int, **kw) -> "SearchBounds":
        return cls(len(p), tuple(p), tuple(p), mu_max, **kw)

    def to_dict(self) -> dict[str, Any]:
        return {
            "s": self.s,
            "p_lo": list(self.p_lo),
            "p_hi": list(self.p_hi),
            "mu_max": self.mu_max,
            "max_gap": None if self.max_gap is None else list(self.max_gap),
            "n_max": self.n_max,
            "limit": self.limit,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SearchBounds":
        return cls(d["s"], tuple(d["p_lo"]), tuple(d["p_hi"]), d["mu_max"],
                   None if d.get("max_gap") is None else tuple(d["max_gap"]), d.get("n_max"), d.get("limit"))


def size_vectors(bounds: SearchBounds) -> Iterator[tuple[int, ...]]:
    """Primitive strictly increasing size vectors inside the box, lexicographically."""
    s, lo, hi, gap = bounds.s, bounds.p_lo, bounds.p_hi, bounds.max_gap

    def rec(prefix: list[int], g: int) -> Iterator[tuple[int, ...]]:
        i = len(prefix)
        if i == s:
            if g == 1:
                yield tuple(prefix)
            return
        start, stop = lo[i], hi[i]
        if i:
            start = max(start, prefix[-1] + 1)
            if gap is not None and gap[i] is not None:
                stop = min(stop, prefix[-1] + gap[i])
        for v in range(start, stop + 1):
            prefix.append(v)
            yield from rec(prefix, gcd(g, v))
            prefix.pop()

    yield from rec([], 0)


def _head_ranges(p: Sequence[int]) -> list[range]:
    return [range(p[k] - 1, p[k + 1] - 2) for k in range(len(p) - 1)]


def estimate_prefixes(bounds: SearchBounds, stop_at: int | None = None) -> int:
    total = 0
    for p in size_vectors(bounds):
        total += prod(len(r) for r in _head_ranges(p))
        if stop_at is not None and total > stop_at:
            break
    return total


def _merge(c1: int, m1: int, c2: int, m2: int) -> tuple[int, int] | None:
    g = gcd(m1, m2)
    if (c2 - c1) % g:
        return None
    m2g = m2 // g
    k = ((c2 - c1) // g) * pow(m1 // g, -1, m2g) % m2g if m2g > 1 else 0
    m = m1 * m2g
    return (c1 + m1 * k) % m, m


def residue_class(p: Sequence[int], mu_head: Sequence[int], dens: Sequence[int] | None = None) -> tuple[int, int] | None:
    """``(c, m)`` with ``a_k`` integral iff ``mu_s = c (mod m)``; ``None`` if no ``mu_s`` works.

    Returns ``None`` also when some head factor vanishes, which callers treat
    as the degenerate case.
    """
    if dens is None:
        dens = denominators(p)
    c, m = 0, 1
    for pk, dk in zip(p, dens):
        nk = 1
        for x in mu_head:
            nk *= x - pk + 2
        if nk == 0:
            return None
        mk = abs(dk) // gcd(nk, dk)
        merged = _merge(c, m, (pk - 2) % mk, mk)
        if merged is None:
            return None
        c, m = merged
    return c, m


def _divisible(p: Sequence[int], dens: Sequence[int], mu: Sequence[int]) -> bool:
    for pk, dk in zip(p, dens):
        num = 1
        for x in mu:
            num *= x - pk + 2
        if num % dk:
            return False
    return True


def candidate_mu_s(p: Sequence[int], mu_head: Sequence[int], mu_max: int) -> list[int]:
    """All ``mu_s`` in ``(p_s - 2, mu_max]`` making every multiplicity quotient integral."""
    p, mu_head = list(p), list(mu_head)
    dens = denominators(p)
    lo = p[-1] - 1
    if any(x - pk + 2 == 0 for x in mu_head for pk in p):
        return [m for m in range(lo, mu_max + 1) if _divisible(p, dens, mu_head + [m])]
    rc = residue_class(p, mu_head, dens)
    if rc is None:
        return []
    c, m = rc
    first = lo + (c - lo) % m
    return list(range(first, mu_max + 1, m))


def rows_for_sizes(p: tuple[int, ...], mu_max: int, n_max: int | None = None) -> list[SolutionRow]:
    """Every solution for one size vector, ordered lexicographically in ``mu``."""
    s = len(p)
    dens = denominators(p)
    shift_sum = sum(x - 2 for x in p)
    lo = p[-1] - 1
    rows = []
    for head in cartesian(*_head_ranges(p)):
        top = mu_max
        if n_max is not None:
            # n = sum(mu) - sum(p_i - 2)
            top = min(top, n_max + shift_sum - sum(head))
        if top < lo:
            continue
        rc = residue_class(p, head, dens)
        if rc is None:
            continue
        c, m = rc
        nums = []
        for pk in p:
            nk = 1
            for x in head:
                nk *= x - pk + 2
            nums.append(nk)
        for mu_s in range(lo + (c - lo) % m, top + 1, m):
            a = []
            for nk, pk, dk in zip(nums, p, dens):
                q, rem = divmod(nk * (mu_s - pk + 2), dk)
                if rem or q <= 0:
                    break
                a.append(q)
            if len(a) == s:
                rows.append(SolutionRow.build(p, a, head + (mu_s,)))
    return rows


def naive_rows_for_sizes(p: tuple[int, ...], mu_max: int) -> list[SolutionRow]:
    """Reference loop over every interlacing ``mu``; defines correctness."""
    from .integrality import MultiplicityError, multiplicities_from_roots

    rows = []
    ranges = _head_ranges(p) + [range(p[-1] - 1, mu_max + 1)]
    for mu in cartesian(*ranges):
        try:
            a = multiplicities_from_roots(p, mu)
        except MultiplicityError:
            continue
        rows.append(SolutionRow.build(p, a, mu))
    return rows


def _unit(args: tuple[tuple[int, ...], int, int | None, str]) -> list[SolutionRow]:
    p, mu_max, n_max, strategy = args
    if strategy == "scan":
        rows = naive_rows_for_sizes(p, mu_max)
        if n_max is not None:
            rows = [r for r in rows if r.n <= n_max]
        return rows
    return rows_for_sizes(p, mu_max, n_max)


@dataclass
class Checkpoint:
    """Resumable search state: ``{bounds, last_completed_prefix, rows_emitted}``."""

    path: str
    bounds: SearchBounds
    last_completed_prefix: tuple[int, ...] | None = None
    rows_emitted: int = 0

    def save(self) -> None:
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(
                {
                    "bounds": self.bounds.to_dict(),
                    "last_completed_prefix": None if self.last_completed_prefix is None else list(self.last_completed_prefix),
                    "rows_emitted": self.rows_emitted,
                },
                fh,
                sort_keys=True,
            )
        os.replace(tmp, self.path)

    @classmethod
    def load(cls, path: str) -> "Checkpoint":
        with open(path) as fh:
            d = json.load(fh)
        last = d.get("last_completed_prefix")
        return cls(path, SearchBounds.from_dict(d["bounds"]), None if last is None else tuple(last), d.get("rows_emitted", 0))


def _ordered_results(tasks: Iterable[Any], workers: int, window: int) -> Iterator[tuple[Any, list[SolutionRow]]]:
    """Apply :func:`_unit` to tasks, yielding in submission order with a bounded buffer."""
    if workers <= 1:
        for t in tasks:
            yield t, _unit(t)
        return
    it = iter(tasks)
    pending: deque = deque()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for t in it:
            pending.append((t, pool.submit(_unit, t)))
            if len(pending) >= window:
                break
        while pending:
            t, fut = pending.popleft()
            rows = fut.result()
            nxt = next(it, None)
            if nxt is not None:
                pending.append((nxt, pool.submit(_unit, nxt)))
            yield t, rows


def search(
    bounds: SearchBounds,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    force: bool = False,
    checkpoint: Checkpoint | None = None,
    strategy: str = "crt",
    progress_every: float = 10.0,
) -> Iterator[SolutionRow]:
    """Stream every solution inside ``bounds`` in lexicographic ``(p, mu)`` order.

    With ``checkpoint`` set, size vectors up to its ``last_completed_prefix``
    are skipped and the checkpoint is rewritten as units complete.
    """
    if strategy not in ("crt", "scan"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if not force:
        est = estimate_prefixes(bounds, stop_at=budget)
        if est > budget:
            raise BoundsTooLarge(est, budget)
    skip = checkpoint.last_completed_prefix if checkpoint else None
    emitted = checkpoint.rows_emitted if checkpoint else 0
    tasks = ((p, bounds.mu_max, bounds.n_max, strategy) for p in size_vectors(bounds) if skip is None or p > skip)
    last_save = last_log = time.monotonic()
    units = 0
    try:
        for (p, *_), rows in _ordered_results(tasks, workers, window=4 * max(workers, 1)):
            for row in rows:
                if bounds.limit is not None and emitted >= bounds.limit:
                    return
                emitted += 1
                yield row
            units += 1
            if checkpoint is not None:
                checkpoint.last_completed_prefix = p
                checkpoint.rows_emitted = emitted
                now = time.monotonic()
                if now - last_save >= 5.0:
                    checkpoint.save()
                    last_save = now
            now = time.monotonic()
            if now - last_log >= progress_every:
                log.info("searched %d size vectors, last %s, %d rows", units, list(p), emitted)
                last_log = now
    finally:
        if checkpoint is not None:
            checkpoint.save()


# ---------------------------------------------------------------------------
# output formats


def _columns(s: int) -> list[str]:
    return [f"p{i}" for i in range(1, s + 1)] + [f"a{i}" for i in range(1, s + 1)] + [f"mu{i}" for i in range(1, s + 1)]


class RowWriter:
    """Streams rows as an aligned table, CSV with header, or JSON lines."""

    def __init__(self, stream: TextIO, fmt: str, s: int, width: int = 9):
        if fmt not in ("table", "csv", "json"):
            raise ValueError(f"unknown format {fmt!r}")
        self.stream, self.fmt, self.s, self.width = stream, fmt, s, width
        self._started = False

    def _header(self) -> None:
        if self.fmt == "table":
            self.stream.write(" ".join(c.rjust(self.width) for c in _columns(self.s)) + "\n")
        elif self.fmt == "csv":
            self.stream.write(",".join(_columns(self.s) + ["n", "part_count"]) + "\n")

    def write(self, row: SolutionRow) -> None:
        if not self._started:
            self._header()
            self._started = True
        values = list(row.p) + list(row.a) + list(row.mu)
        if self.fmt == "table":
            self.stream.write(" ".join(str(v).rjust(self.width) for v in values) + "\n")
        elif self.fmt == "csv":
            self.stream.write(",".join(str(v) for v in values + [row.n, row.part_count]) + "\n")
        else:
            self.stream.write(json.dumps(row.to_dict(), sort_keys=True) + "\n")

    def close(self) -> None:
        if not self._started:
            self._header()
            self._started = True


def read_rows(text: str, fmt: str) -> list[SolutionRow]:
    """Parse output produced by :class:`RowWriter` in csv or json format."""
    if fmt == "json":
        return [SolutionRow.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        out = []
        for rec in reader:
            s = sum(1 for k in rec if k.startswith("p") and k[1:].isdigit())
            out.append(
                SolutionRow.build(
                    [int(rec[f"p{i}"]) for i in range(1, s + 1)],
                    [int(rec[f"a{i}"]) for i in range(1, s + 1)],
                    [int(rec[f"mu{i}"]) for i in range(1, s + 1)],
                    int(rec["n"]),
                    int(rec["part_count"]),
                )
            )
        return out
    raise ValueError(f"cannot parse format {fmt!r}")
