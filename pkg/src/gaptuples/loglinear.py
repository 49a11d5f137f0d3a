"""Exact numbers of the form q0 + sum c_j * ln(r_j) with rational q0, c_j, r_j."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .arith import factorize

MAX_PREC_BITS = 512
START_PREC_BITS = 64


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LogLinearValue:
    """q0 + sum of coeff * ln(arg).

    Terms are kept with the arguments as given (merged only when two arguments
    are equal); equality compares the prime-log expansion, so
    ``ln(6) == ln(2) + ln(3)``.
    """

    __slots__ = ("q0", "terms")

    def __init__(self, q0=0, terms: Mapping | Iterable[tuple] = ()):
        self.q0 = _frac(q0)
        merged: dict[Fraction, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for arg, coeff in ((_frac(a), _frac(c)) for a, c in items):
            if arg <= 0:
                raise ValueError(f"log argument must be positive, got {arg}")
            if arg == 1 or coeff == 0:
                continue
            merged[arg] = merged.get(arg, Fraction(0)) + coeff
        self.terms: dict[Fraction, Fraction] = {a: c for a, c in merged.items() if c != 0}

    @classmethod
    def log(cls, arg, coeff=1) -> "LogLinearValue":
        return cls(0, {arg: coeff})

    def __add__(self, other) -> "LogLinearValue":
        if not isinstance(other, LogLinearValue):
            return LogLinearValue(self.q0 + _frac(other), self.terms)
        terms = list(self.terms.items()) + list(other.terms.items())
        return LogLinearValue(self.q0 + other.q0, terms)

    __radd__ = __add__

    def __neg__(self) -> "LogLinearValue":
        return LogLinearValue(-self.q0, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other) -> "LogLinearValue":
        return self + (-other)

    def __rsub__(self, other) -> "LogLinearValue":
        return (-self) + other

    def __mul__(self, scalar) -> "LogLinearValue":
        if isinstance(scalar, LogLinearValue):
            raise TypeError("product of two log-linear values is not log-linear")
        s = _frac(scalar)
        return LogLinearValue(self.q0 * s, {a: c * s for a, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "LogLinearValue":
        return self * (1 / _frac(scalar))

    def prime_log_form(self) -> tuple[Fraction, dict[int, Fraction]]:
        """(q0, {p: coefficient of ln p}) with every argument factored into primes."""
        basis: dict[int, Fraction] = {}
        for arg, c in self.terms.items():
            for sign, n in ((1, arg.numerator), (-1, arg.denominator)):
                for p, e in factorize(n):
                    basis[p] = basis.get(p, Fraction(0)) + sign * e * c
        return self.q0, {p: c for p, c in sorted(basis.items()) if c != 0}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LogLinearValue):
            try:
                other = LogLinearValue(_frac(other))
            except (TypeError, ValueError):
                return NotImplemented
        return self.prime_log_form() == other.prime_log_form()

    def __hash__(self) -> int:
        q0, basis = self.prime_log_form()
        return hash((q0, tuple(basis.items())))

    def is_rational(self) -> bool:
        return not self.prime_log_form()[1]

    def is_zero(self) -> bool:
        q0, basis = self.prime_log_form()
        return q0 == 0 and not basis

    def coefficient(self, arg) -> Fraction:
        """Coefficient attached to ln(arg) as stored (no prime expansion)."""
        return self.terms.get(_frac(arg), Fraction(0))

    def to_mpf(self, dps: int = 50) -> mpmath.mpf:
        with mpmath.workdps(dps):
            acc = mpmath.mpf(self.q0.numerator) / self.q0.denominator
            for arg, c in self.terms.items():
                acc += (mpmath.mpf(c.numerator) / c.denominator) * mpmath.log(
                    mpmath.mpf(arg.numerator) / arg.denominator
                )
            return +acc

    def __float__(self) -> float:
        return float(self.to_mpf(40))

    def enclosure(self, prec_bits: int):
        """Interval (mpmath.iv) containing the exact value, at the given precision."""
        iv = mpmath.iv
        saved = iv.prec
        iv.prec = prec_bits
        try:
            acc = iv.mpf(self.q0.numerator) / self.q0.denominator
            for arg, c in self.terms.items():
                acc += (iv.mpf(c.numerator) / c.denominator) * iv.log(iv.mpf(arg.numerator) / arg.denominator)
            return acc
        finally:
            iv.prec = saved

    def certify_sign(self) -> "SignCertificate":
        return certify_sign(self)

    def __repr__(self) -> str:
        return f"LogLinearValue({self})"

    def __str__(self) -> str:
        parts = [str(self.q0)] if self.q0 or not self.terms else []
        for arg, c in self.terms.items():
            parts.append(f"({c})*ln({arg})")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "q0": _frac_str(self.q0),
            "terms": [{"c": _frac_str(c), "arg": _frac_str(a)} for a, c in self.terms.items()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LogLinearValue":
        return cls(Fraction(obj["q0"]), [(Fraction(t["arg"]), Fraction(t["c"])) for t in obj["terms"]])


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SignCertificate:
    """Sign of an exact value, certified by interval evaluation."""

    status: str  # "positive" | "negative" | "zero" | "indeterminate"
    lower: float | None
    upper: float | None
    precision_bits: int

    @property
    def sign(self) -> int | None:
        return {"positive": 1, "negative": -1, "zero": 0}.get(self.status)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "enclosure": [self.lower, self.upper],
            "precision_bits": self.precision_bits,
        }


def certify_sign(value: LogLinearValue) -> SignCertificate:
    """Decide the sign exactly: structural zero test, then intervals at 64..512 bits."""
    if value.is_zero():
        return SignCertificate("zero", 0.0, 0.0, 0)
    if value.is_rational():
        q0 = value.prime_log_form()[0]
        return SignCertificate("positive" if q0 > 0 else "negative", float(q0), float(q0), 0)
    prec = START_PREC_BITS
    while True:
        box = value.enclosure(prec)
        lo, hi = box.a, box.b
        if lo > 0:
            return SignCertificate("positive", float(lo), float(hi), prec)
        if hi < 0:
            return SignCertificate("negative", float(lo), float(hi), prec)
        if prec >= MAX_PREC_BITS:
            return SignCertificate("indeterminate", float(lo), float(hi), prec)
        prec *= 2
