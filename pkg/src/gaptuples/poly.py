"""Dense univariate and sparse bivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Poly:
    """Polynomial with Fraction coefficients; ``coeffs[i]`` multiplies x**i.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients and
    degree -1 (standing in for minus infinity).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    X: "Poly"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-other if isinstance(other, Poly) else -_frac(other))

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = _frac(other)
            return Poly(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result, base = Poly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        """self(inner(x))."""
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> "Poly":
        """The antiderivative vanishing at 0."""
        return Poly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def integrate(self, lo, hi) -> Fraction:
        F = self.antiderivative()
        return F(_frac(hi)) - F(_frac(lo))

    def divmod_linear(self, root) -> tuple["Poly", Fraction]:
        """Quotient and remainder of division by (x - root) (synthetic division)."""
        root = _frac(root)
        if self.is_zero():
            return Poly(), Fraction(0)
        n = len(self.coeffs)
        q = [Fraction(0)] * (n - 1)
        acc = Fraction(0)
        for i in range(n - 1, -1, -1):
            acc = acc * root + self.coeffs[i]
            if i:
                q[i - 1] = acc
        return Poly(q), acc

    def shift_down(self) -> "Poly":
        """self / x, requiring a zero constant term."""
        if self[0] != 0:
            raise ArithmeticError("polynomial is not divisible by x")
        return Poly(self.coeffs[1:])

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: Sequence) -> "Poly":
        return cls(Fraction(c) for c in obj)


Poly.X = Poly([0, 1])


def antiderivative(P: Poly) -> Poly:
    return P.antiderivative()


def compose_affine(P: Poly, constant, slope) -> Poly:
    """P(constant + slope * x)."""
    return P.compose(Poly([constant, slope]))


def poly_mul(P: Poly, Q: Poly) -> Poly:
    return P * Q


def poly_add(P: Poly, Q: Poly) -> Poly:
    return P + Q


class BiPoly:
    """Sparse polynomial in x and y: {(i, j): coefficient of x**i y**j}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Fraction] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def from_x(cls, P: Poly) -> "BiPoly":
        return cls({(i, 0): c for i, c in enumerate(P.coeffs)})

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + a * b
        return BiPoly(out)

    def times_x_power(self, n: int) -> "BiPoly":
        return BiPoly({(i + n, j): v for (i, j), v in self.terms.items()})

    def integrate_x_zero_to_one_minus_y(self) -> Poly:
        """Integral over x from 0 to 1 - y, as a polynomial in y."""
        result = Poly()
        for (i, j), c in self.terms.items():
            # integral of x^i dx over [0, 1-y] = (1-y)^(i+1) / (i+1)
            upper = Poly(comb(i + 1, t) * (-1) ** t for t in range(i + 2))
            result = result + Poly.monomial(j, c / (i + 1)) * upper
        return result


def poly_in_one_minus_x_minus_y(P: Poly) -> BiPoly:
    """P(1 - x - y) as a bivariate polynomial."""
    base = BiPoly({(0, 0): Fraction(1), (1, 0): Fraction(-1), (0, 1): Fraction(-1)})
    acc = BiPoly()
    for c in reversed(P.coeffs):
        acc = acc * base + BiPoly({(0, 0): c})
    return acc
