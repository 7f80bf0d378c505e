"""Distance spectra of complete multipartite graphs.

For ``K_{a1*p1,...,as*ps}`` on ``n`` vertices with ``r`` parts the distance
characteristic polynomial factors as::

    (x + 2)^(n - r) * prod_i (x - p_i + 2)^(a_i - 1) * P(x)

where ``P(x) = prod_i (x - p_i + 2) * f(x)`` and
``f(x) = 1 - sum_i a_i p_i / (x - p_i + 2)``.  ``P`` is monic of degree
``s``; its roots are the non-trivial eigenvalues, one in each interval
``(p_k - 2, p_{k+1} - 2)`` and one above ``p_s - 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .model import PartitionSpec
from .poly import IntPoly, product

ReducedPoly = IntPoly


class PoleError(ZeroDivisionError):
    """``f`` was evaluated at one of its poles ``p_i - 2``."""


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)`` with rational endpoints isolating one root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_integer(self) -> bool:
        lo_floor = self.lo.numerator // self.lo.denominator
        return lo_floor + 1 < self.hi

    def __str__(self) -> str:
        return f"({self.lo},{self.hi})"


Eigenvalue = Union[int, Interval]


@dataclass(frozen=True)
class DSpectrum:
    """Full distance spectrum.

    ``entries`` is sorted by decreasing eigenvalue; ``nontrivial`` holds
    ``mu_1 < ... < mu_s`` (integers or isolating intervals).
    """

    entries: tuple[tuple[Eigenvalue, int], ...]
    nontrivial: tuple[Eigenvalue, ...]
    integral: bool

    @property
    def n(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict[int, int]:
        if not self.integral:
            raise ValueError("spectrum is not integral")
        return {lam: m for lam, m in self.entries}

    def __str__(self) -> str:
        return " ".join(f"{lam}:{m}" for lam, m in self.entries)


@dataclass(frozen=True)
class FactoredPoly:
    """``prod (x - root)^exp * reduced``; zero exponents are never stored."""

    linear: tuple[tuple[int, int], ...]
    reduced: ReducedPoly

    def expand(self) -> IntPoly:
        return product([IntPoly.linear_power(c, e) for c, e in self.linear]) * self.reduced

    def __str__(self) -> str:
        out = []
        for c, e in self.linear:
            lin = "x" if c == 0 else (f"x + {-c}" if c < 0 else f"x - {c}")
            out.append(f"({lin})" + (f"^{e}" if e != 1 else ""))
        out.append(f"({self.reduced})")
        return " * ".join(out)


def reduced_poly(spec: PartitionSpec) -> ReducedPoly:
    shifts = [p - 2 for p in spec.sizes]
    lin = [IntPoly((-c, 1)) for c in shifts]
    poly = product(lin)
    for i, (p, a) in enumerate(spec.parts):
        poly = poly - product(lin[:i] + lin[i + 1:]).scale(a * p)
    return poly


def eval_f(spec: PartitionSpec, x) -> Fraction:
    x = Fraction(x)
    total = Fraction(1)
    for p, a in spec.parts:
        d = x - p + 2
        if d == 0:
            raise PoleError(f"f has a pole at x = {p - 2}")
        total -= Fraction(a * p) / d
    return total


def d_polynomial_factored(spec: PartitionSpec) -> FactoredPoly:
    linear = []
    if spec.n > spec.part_count:
        linear.append((-2, spec.n - spec.part_count))
    linear.extend((p - 2, a - 1) for p, a in spec.parts if a > 1)
    return FactoredPoly(tuple(linear), reduced_poly(spec))


def root_upper_bound(spec: PartitionSpec) -> int:
    # spectral radius <= max row sum <= 2(n-1)
    return 2 * (spec.n - 1)


def _isolate(spec: PartitionSpec, lo: int, hi: int, hi_is_pole: bool) -> Eigenvalue:
    """Locate the single root of f in ``(lo, hi)`` (or ``(lo, hi]``)."""
    # smallest integer m in the candidate range with f(m) >= 0
    left, right = lo + 1, hi if hi_is_pole else hi + 1
    while left < right:
        mid = (left + right) // 2
        if eval_f(spec, mid) >= 0:
            right = mid
        else:
            left = mid + 1
    m = left
    if m < hi or (not hi_is_pole and m == hi):
        if eval_f(spec, m) == 0:
            return m
    if not hi_is_pole and m > hi:
        raise ArithmeticError(f"largest root of {spec} exceeds the bound {hi}")
    mid = Fraction(2 * m - 1, 2)
    if eval_f(spec, mid) >= 0:
        return Interval(Fraction(m - 1), mid)
    return Interval(mid, Fraction(m))


def nontrivial_roots(spec: PartitionSpec) -> tuple[Eigenvalue, ...]:
    poles = [p - 2 for p in spec.sizes]
    roots = []
    for k, lo in enumerate(poles):
        if k + 1 < len(poles):
            roots.append(_isolate(spec, lo, poles[k + 1], True))
        else:
            roots.append(_isolate(spec, lo, root_upper_bound(spec), False))
    return tuple(roots)


def _sort_key(lam: Eigenvalue) -> Fraction:
    return Fraction(lam) if isinstance(lam, int) else lam.lo


def spectrum(spec: PartitionSpec) -> DSpectrum:
    mu = nontrivial_roots(spec)
    mult: dict[Eigenvalue, int] = {}
    if spec.n > spec.part_count:
        mult[-2] = spec.n - spec.part_count
    for p, a in spec.parts:
        if a > 1:
            mult[p - 2] = mult.get(p - 2, 0) + a - 1
    for lam in mu:
        mult[lam] = mult.get(lam, 0) + 1
    entries = tuple(sorted(mult.items(), key=lambda e: _sort_key(e[0]), reverse=True))
    return DSpectrum(entries, mu, all(isinstance(m, int) for m in mu))
