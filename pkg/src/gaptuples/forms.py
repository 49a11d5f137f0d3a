"""Reduced linear forms am+b, tuples of them, and their arithmetic invariants."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .arith import is_prime, primes_up_to


@dataclass(frozen=True)
class LinearForm:
    """The reduced form ``a*m + b`` with ``a > 0`` and ``gcd(a, b) = 1``.

    Forms are ordered by the ratio b/a (exact cross-multiplication); for
    reduced forms this is the strict total order ``L1 |-> L2`` under which a
    relation from L1 to L2 exists.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"linear coefficient must be positive, got {self.a}")
        if math.gcd(self.a, self.b) != 1:
            raise ValueError(f"form {self} is not reduced: gcd(a, b) = {math.gcd(self.a, self.b)}")

    def __call__(self, m: int) -> int:
        return self.a * m + self.b

    def __lt__(self, other: "LinearForm") -> bool:
        return self.b * other.a < other.b * self.a

    def __gt__(self, other: "LinearForm") -> bool:
        return other < self

    def __le__(self, other: "LinearForm") -> bool:
        return self == other or self < other

    def __ge__(self, other: "LinearForm") -> bool:
        return self == other or other < self

    def __str__(self) -> str:
        lead = "m" if self.a == 1 else f"{self.a}m"
        if self.b == 0:
            return lead
        return f"{lead}{'+' if self.b > 0 else '-'}{abs(self.b)}"

    _PATTERN = re.compile(r"^\s*(\d*)\s*\*?\s*m\s*(?:([+-])\s*(\d+))?\s*$")

    @classmethod
    def parse(cls, text: str) -> "LinearForm":
        """Parse ``"6m+5"``, ``"m"``, ``"m-3"`` style strings."""
        match = cls._PATTERN.match(text)
        if not match:
            raise ValueError(f"cannot parse linear form {text!r}")
        a = int(match.group(1)) if match.group(1) else 1
        b = int(match.group(3) or 0) * (-1 if match.group(2) == "-" else 1)
        return cls(a, b)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj) -> "LinearForm":
        if isinstance(obj, str):
            return cls.parse(obj)
        return cls(int(obj["a"]), int(obj["b"]))


def evaluate(form: LinearForm, m: int) -> int:
    return form(m)


@dataclass(frozen=True)
class FormTuple:
    """An ordered k-tuple of distinct reduced linear forms."""

    forms: tuple[LinearForm, ...]

    def __init__(self, forms: Iterable[LinearForm]):
        forms = tuple(forms)
        if not forms:
            raise ValueError("a tuple needs at least one form")
        if len(set(forms)) != len(forms):
            raise ValueError("forms in a tuple must be distinct")
        object.__setattr__(self, "forms", forms)

    @classmethod
    def of(cls, *specs) -> "FormTuple":
        """Build from ``(a, b)`` pairs, forms, or strings like ``"6m+5"``."""
        out = []
        for s in specs:
            if isinstance(s, LinearForm):
                out.append(s)
            elif isinstance(s, str):
                out.append(LinearForm.parse(s))
            else:
                out.append(LinearForm(*s))
        return cls(out)

    @classmethod
    def shifts(cls, offsets: Iterable[int]) -> "FormTuple":
        """Monic tuple m+h for each offset h."""
        return cls(LinearForm(1, h) for h in offsets)

    @property
    def k(self) -> int:
        return len(self.forms)

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, i):
        return self.forms[i]

    @property
    def is_sorted(self) -> bool:
        return all(x < y for x, y in zip(self.forms, self.forms[1:]))

    def sorted(self) -> "FormTuple":
        return FormTuple(sorted(self.forms))

    def translate(self, t: int) -> "FormTuple":
        """Substitute m -> m + t in every form."""
        return FormTuple(LinearForm(f.a, f.a * t + f.b) for f in self.forms)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.forms)) + ")"

    def to_json(self) -> dict:
        return {"forms": [f.to_json() for f in self.forms]}

    @classmethod
    def from_json(cls, obj) -> "FormTuple":
        if isinstance(obj, dict):
            obj = obj["forms"]
        return cls(LinearForm.from_json(f) for f in obj)


def nu_p(forms: FormTuple | Sequence[LinearForm], p: int) -> int:
    """Number of residues m mod p at which the product of the forms vanishes mod p."""
    roots = set()
    for f in forms:
        if f.a % p:
            roots.add(-f.b * pow(f.a, -1, p) % p)
    return len(roots)


class Admissibility(NamedTuple):
    admissible: bool
    witness: int | None  # smallest prime p with nu_p = p

    def __bool__(self) -> bool:
        return self.admissible


def is_admissible(forms: FormTuple) -> Admissibility:
    """Admissibility test; only primes p <= k can be obstructions for reduced forms."""
    for p in primes_up_to(len(forms)):
        if nu_p(forms, p) == p:
            return Admissibility(False, p)
    return Admissibility(True, None)


class OrderError(ValueError):
    pass


def _check_order(*forms: LinearForm) -> None:
    for x, y in zip(forms, forms[1:]):
        if not x < y:
            raise OrderError(
                f"forms must satisfy b/a strictly increasing: {x} does not precede {y}"
                + ("" if x == y else f" (the correct orientation is {y} |-> {x})")
            )


def dist(L1: LinearForm, L2: LinearForm) -> int:
    """Least relation value r over all relations c2*L2 - c1*L1 = r."""
    _check_order(L1, L2)
    v = math.lcm(L1.a, L2.a)
    return v // L2.a * L2.b - v // L1.a * L1.b


def diam(L1: LinearForm, L2: LinearForm, L3: LinearForm) -> int:
    """Least total value r1 + r2 over triangle relations on L1 |-> L2 |-> L3."""
    _check_order(L1, L2, L3)
    v = math.lcm(L1.a, L2.a, L3.a)
    return v // L3.a * L3.b - v // L1.a * L1.b


def max_diameter(forms: FormTuple) -> int:
    """Largest diameter over all ordered triples of a sorted tuple (k >= 3)."""
    if forms.k < 3:
        raise ValueError(f"max_diameter needs k >= 3, got k = {forms.k}")
    if not forms.is_sorted:
        raise OrderError("max_diameter needs a tuple sorted by b/a")
    return max(diam(*t) for t in itertools.combinations(forms, 3))


@dataclass(frozen=True)
class SingularSeriesEstimate:
    """Truncated Euler product; an estimate only, no tail bound is claimed."""

    value: float
    truncation_prime: int
    is_zero_exact: bool
    rigorous: bool = False

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "truncation_prime": self.truncation_prime,
            "is_zero_exact": self.is_zero_exact,
            "note": "truncated product, no tail bound",
        }


def singular_series(forms: FormTuple, truncation_prime: int) -> SingularSeriesEstimate:
    """Product of (1 - 1/p)^-k (1 - nu(p)/p) over primes p <= truncation_prime."""
    k = forms.k
    if truncation_prime < k:
        raise ValueError(f"truncation prime {truncation_prime} must be >= k = {k}")
    if not is_admissible(forms):
        return SingularSeriesEstimate(0.0, truncation_prime, True)
    logs = []
    for p in primes_up_to(truncation_prime):
        nu = nu_p(forms, p)
        if nu == 1 and k == 1:
            continue
        logs.append(-k * math.log1p(-1.0 / p) + math.log1p(-nu / p))
    return SingularSeriesEstimate(math.exp(math.fsum(logs)), truncation_prime, False)


def check_prime_values(forms: FormTuple, m: int) -> bool:
    """True when every form takes a prime value at m."""
    return all(is_prime(f(m)) for f in forms)
