"""Dense integer polynomials with arbitrary-precision coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable


@dataclass(frozen=True)
class IntPoly:
    """Coefficients stored lowest degree first; trailing zeros are stripped."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @classmethod
    def from_high(cls, coeffs: Iterable[int]) -> "IntPoly":
        return cls(tuple(reversed(list(coeffs))))

    @classmethod
    def linear_power(cls, root: int, exponent: int) -> "IntPoly":
        """``(x - root) ** exponent`` via the binomial theorem."""
        return cls(tuple(comb(exponent, k) * (-root) ** (exponent - k) for k in range(exponent + 1)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs != (0,) else -1

    @property
    def high(self) -> tuple[int, ...]:
        return tuple(reversed(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return IntPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def scale(self, k: int) -> "IntPoly":
        return IntPoly(tuple(k * c for c in self.coeffs))

    def eval_exact(self, x: Fraction | int) -> Fraction:
        return Fraction(self(Fraction(x)))

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0 and self.degree > 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def product(polys: Iterable[IntPoly]) -> IntPoly:
    acc = IntPoly((1,))
    for p in polys:
        acc = acc * p
    return acc
