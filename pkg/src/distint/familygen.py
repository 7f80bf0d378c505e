"""Infinite distance-integral families obtained by moving the largest eigenvalue.

Given a base solution ``(p, mu)``, keep ``mu_1..mu_{s-1}`` fixed and replace
``mu_s`` by ``mu_s + step * t``.  Writing ``N_k = prod_{i<s} (mu_i - p_k + 2)``
and ``D_k = p_k * prod_{i != k} (p_i - p_k)``::

    d_k  = gcd(N_k, D_k)
    r_k  = |D_k| / d_k
    step = lcm(r_1, ..., r_s)
    b_k(t) = N_k * (mu_s - p_k + 2 + step * t) / D_k = a_k + slope_k * t

``N_k`` and ``D_k`` both carry ``k - 1`` negative factors, so each slope is a
positive integer.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from math import gcd, lcm
from typing import Any, Sequence

from .integrality import MultiplicityError, denominators, multiplicities_from_roots
from .model import PartitionSpec


class NotIntegralBase(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    p: tuple[int, ...]
    mu_head: tuple[int, ...]
    mu_s_base: int
    step: int
    d: tuple[int, ...]
    r: tuple[int, ...]
    slopes: tuple[int, ...]
    intercepts: tuple[int, ...]

    @property
    def n_intercept(self) -> int:
        return sum(a * q for a, q in zip(self.intercepts, self.p))

    @property
    def n_slope(self) -> int:
        return sum(b * q for b, q in zip(self.slopes, self.p))

    def counts(self, t: int) -> tuple[int, ...]:
        return tuple(c + m * t for c, m in zip(self.intercepts, self.slopes))

    def mu(self, t: int) -> tuple[int, ...]:
        return self.mu_head + (self.mu_s_base + self.step * t,)

    def to_dict(self) -> dict[str, Any]:
        d = {k: list(v) if isinstance(v, tuple) else v for k, v in asdict(self).items()}
        d["n_intercept"] = self.n_intercept
        d["n_slope"] = self.n_slope
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "FamilyParams":
        return cls(
            tuple(d["p"]), tuple(d["mu_head"]), d["mu_s_base"], d["step"],
            tuple(d["d"]), tuple(d["r"]), tuple(d["slopes"]), tuple(d["intercepts"]),
        )

    def formulas(self) -> list[str]:
        """Human-readable affine expressions in ``t``."""
        s = len(self.p)
        lines = [f"mu_{s}(t) = {self.step}t + {self.mu_s_base}"]
        lines += [f"a_{k}(t) = {m}t + {c}" for k, (m, c) in enumerate(zip(self.slopes, self.intercepts), start=1)]
        lines.append(f"n(t) = {self.n_slope}t + {self.n_intercept}")
        return lines


def family_params(p: Sequence[int], mu: Sequence[int]) -> FamilyParams:
    p, mu = tuple(p), tuple(mu)
    try:
        base = multiplicities_from_roots(p, mu)
    except MultiplicityError as exc:
        raise NotIntegralBase(str(exc)) from exc
    head, top = mu[:-1], mu[-1]
    nums = [1] * len(p)
    for k, pk in enumerate(p):
        for m in head:
            nums[k] *= m - pk + 2
    dens = denominators(p)
    ds = tuple(gcd(nk, dk) for nk, dk in zip(nums, dens))
    rs = tuple(abs(dk) // g for dk, g in zip(dens, ds))
    step = lcm(*rs)
    slopes = []
    for nk, dk in zip(nums, dens):
        q, rem = divmod(nk * step, dk)
        assert rem == 0 and q > 0, "step must clear every denominator"
        slopes.append(q)
    return FamilyParams(p, head, top, step, ds, rs, tuple(slopes), base)


def instantiate(fam: FamilyParams, t: int) -> tuple[PartitionSpec, tuple[int, ...]]:
    if t < 0:
        raise ValueError("t must be nonnegative")
    return PartitionSpec.from_vectors(fam.p, fam.counts(t)), fam.mu(t)
