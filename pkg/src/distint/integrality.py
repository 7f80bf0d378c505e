"""Deciding distance integrality and reconstructing part multiplicities.

A grouped complete multipartite graph is distance integral exactly when
there are integers ``mu_1 < ... < mu_s`` interlacing the shifted sizes
(``p_k - 2 < mu_k < p_{k+1} - 2``, ``mu_s > p_s - 2``) such that every

    a_k = prod_i (mu_i - p_k + 2) / (p_k * prod_{i != k} (p_i - p_k))

is a positive integer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from typing import Any, Sequence

from .model import PartitionSpec, is_primitive
from .spectral import Eigenvalue, Interval, spectrum


class MultiplicityError(ValueError):
    pass


class InterlacingViolation(MultiplicityError):
    pass


class NonIntegerMultiplicity(MultiplicityError):
    def __init__(self, k: int, value: Fraction):
        super().__init__(f"a_{k} = {value} is not an integer")
        self.k = k
        self.value = value


class NonPositiveMultiplicity(MultiplicityError):
    def __init__(self, k: int, value: int):
        super().__init__(f"a_{k} = {value} is not positive")
        self.k = k
        self.value = value


@dataclass(frozen=True)
class IntegralityReport:
    integral: bool
    mu: tuple[int, ...] | None
    roots: tuple[Eigenvalue, ...]

    def __bool__(self) -> bool:
        return self.integral


def is_distance_integral(spec: PartitionSpec) -> IntegralityReport:
    roots = spectrum(spec).nontrivial
    if all(isinstance(r, int) for r in roots):
        return IntegralityReport(True, tuple(roots), roots)
    return IntegralityReport(False, None, roots)


def interlaces(p: Sequence[int], mu: Sequence[int]) -> bool:
    if len(p) != len(mu) or not p:
        return False
    for k in range(len(p)):
        if not p[k] - 2 < mu[k]:
            return False
        if k + 1 < len(p) and not mu[k] < p[k + 1] - 2:
            return False
    return True


def numerators(p: Sequence[int], mu: Sequence[int]) -> list[int]:
    return [prod(m - pk + 2 for m in mu) for pk in p]


def denominators(p: Sequence[int]) -> list[int]:
    return [pk * prod(pi - pk for i, pi in enumerate(p) if i != k) for k, pk in enumerate(p)]


def quotients(p: Sequence[int], mu: Sequence[int]) -> list[Fraction]:
    """Raw multiplicity quotients, without any acceptance checks."""
    return [Fraction(a, b) for a, b in zip(numerators(p, mu), denominators(p))]


def multiplicities_from_roots(p: Sequence[int], mu: Sequence[int]) -> tuple[int, ...]:
    """Recover ``(a_1, ..., a_s)`` from sizes and integer non-trivial eigenvalues.

    Raises :class:`InterlacingViolation`, :class:`NonIntegerMultiplicity` or
    :class:`NonPositiveMultiplicity`; ``k`` on the latter two is 1-based.
    """
    p, mu = list(p), list(mu)
    if any(q < 1 for q in p) or any(b <= a for a, b in zip(p, p[1:])):
        raise InterlacingViolation(f"sizes {p} are not strictly increasing positive integers")
    if not interlaces(p, mu):
        raise InterlacingViolation(f"mu = {mu} does not interlace sizes {p}")
    out = []
    for k, (num, den) in enumerate(zip(numerators(p, mu), denominators(p)), start=1):
        if num % den:
            raise NonIntegerMultiplicity(k, Fraction(num, den))
        a = num // den
        if a <= 0:
            raise NonPositiveMultiplicity(k, a)
        out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class SolutionRow:
    p: tuple[int, ...]
    a: tuple[int, ...]
    mu: tuple[int, ...]
    n: int
    part_count: int

    @classmethod
    def build(cls, p, a, mu, n: int | None = None, part_count: int | None = None) -> "SolutionRow":
        p, a, mu = tuple(p), tuple(a), tuple(mu)
        if n is None:
            n = sum(x * y for x, y in zip(p, a))
        if part_count is None:
            part_count = sum(a)
        return cls(p, a, mu, n, part_count)

    @property
    def spec(self) -> PartitionSpec:
        return PartitionSpec.from_vectors(self.p, self.a)

    def to_dict(self) -> dict[str, Any]:
        return {"p": list(self.p), "a": list(self.a), "mu": list(self.mu), "n": self.n, "part_count": self.part_count}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "SolutionRow":
        return cls.build(d["p"], d["a"], d["mu"], d.get("n"), d.get("part_count"))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class VerificationReport:
    row: SolutionRow
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "row": self.row.to_dict(),
            "ok": self.ok,
            "checks": [{"name": c.name, "passed": c.passed, **c.detail} for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"row p={list(self.row.p)} a={list(self.row.a)} mu={list(self.row.mu)}"]
        for c in self.checks:
            extra = "".join(f" {k}={v}" for k, v in sorted(c.detail.items()))
            lines.append(f"  {'PASS' if c.passed else 'FAIL'} {c.name}{extra}")
        lines.append("verified" if self.ok else f"{len(self.failures)} check(s) failed")
        return "\n".join(lines)


def _fmt(x) -> Any:
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, Interval):
        return [str(x.lo), str(x.hi)]
    return x


def verify_row(row: SolutionRow) -> VerificationReport:
    """Recompute everything about a claimed solution; never raises on bad data."""
    p, a, mu = list(row.p), list(row.a), list(row.mu)
    checks: list[Check] = []
    shape_ok = (
        len(p) == len(a) == len(mu) >= 1
        and all(x >= 1 for x in p)
        and all(x < y for x, y in zip(p, p[1:]))
        and all(x >= 1 for x in a)
    )
    checks.append(Check("structure", shape_ok))
    if not shape_ok:
        return VerificationReport(row, tuple(checks))

    checks.append(Check("interlacing", interlaces(p, mu)))
    for k, (q, claimed) in enumerate(zip(quotients(p, mu), a), start=1):
        good = q.denominator == 1 and q > 0 and q == claimed
        detail = {} if good else {"printed": claimed, "recomputed": _fmt(q)}
        checks.append(Check(f"eq2[{k}]", good, detail))

    n = sum(x * y for x, y in zip(p, a))
    r = sum(a)
    checks.append(Check("n", n == row.n, {} if n == row.n else {"printed": row.n, "recomputed": n}))
    checks.append(
        Check("part_count", r == row.part_count, {} if r == row.part_count else {"printed": row.part_count, "recomputed": r})
    )
    g = 0
    for x in p:
        g = gcd(g, x)
    checks.append(Check("primitive", g == 1, {} if g == 1 else {"gcd": g}))
    lhs, rhs = sum(mu), n + sum(x - 2 for x in p)
    checks.append(Check("vieta", lhs == rhs, {} if lhs == rhs else {"sum_mu": lhs, "expected": rhs}))
    roots = spectrum(row.spec).nontrivial
    good = tuple(roots) == tuple(mu)
    checks.append(Check("spectrum", good, {} if good else {"recomputed": [_fmt(x) for x in roots]}))
    return VerificationReport(row, tuple(checks))
