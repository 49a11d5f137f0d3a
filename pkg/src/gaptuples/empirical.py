"""Desk-scale enumeration: sifted E2 values over tuples, prime tuple counts, gap scans."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, TextIO

import numpy as np

from .arith import is_prime, primes_up_to, sequence_up_to
from .forms import FormTuple, LinearForm, is_admissible, singular_series

BITMAP_LIMIT = 5 * 10**7
INT64_SAFE = 2**62
MAX_WITNESSES = 10


@lru_cache(maxsize=2)
def prime_flags(limit: int) -> np.ndarray:
    """Boolean array flags[n] = n is prime, for 0 <= n <= limit."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def _root_threshold(N: int, eta: Fraction) -> int:
    """Least integer t with t^v > N^u for eta = u/v, i.e. the least t > N^eta."""
    u, v = eta.numerator, eta.denominator
    target = N**u
    t = max(1, int(math.floor(N ** float(eta))))
    while t**v > target:
        t -= 1
    while t**v <= target:
        t += 1
    return t


@dataclass(frozen=True)
class BetaParams:
    """Thresholds for sifted E2 numbers p1*p2 with N^eta < p1 <= N^(1/2) < p2.

    ``C`` is an optional extra lower bound: p1 > C as well. The tuple constructions
    only need C to exceed every relation coefficient.
    """

    N: int
    eta: Fraction
    C: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "eta", Fraction(self.eta))
        if self.N < 1:
            raise ValueError("N must be positive")
        if not 0 < self.eta <= Fraction(1, 4):
            raise ValueError(f"eta = {self.eta} outside (0, 1/4]")

    @property
    def p1_min(self) -> int:
        """Least admissible small prime factor."""
        t = _root_threshold(self.N, self.eta)
        return max(t, self.C + 1) if self.C is not None else t

    @property
    def sqrt_floor(self) -> int:
        return math.isqrt(self.N)


def beta(n: int, params: BetaParams) -> int:
    """1 when n = p1 * p2 with N^eta < p1 <= sqrt(N) < p2 (and p1 > C), else 0."""
    if n < 4:
        return 0
    r = params.sqrt_floor
    for p in primes_up_to(r):
        if n % p == 0:
            q = n // p
            ok = p >= params.p1_min and q * q > params.N and is_prime(q)
            return int(ok)
    return 0


def beta_over_range(form: LinearForm, params: BetaParams) -> np.ndarray:
    """beta(form(n)) for every n in (N, 2N], as a uint8 array."""
    N = params.N
    n_values = np.arange(N + 1, 2 * N + 1, dtype=np.int64)
    top = form.a * 2 * N + form.b
    if top >= INT64_SAFE or form.a * (N + 1) + form.b < 0:
        return np.array([beta(form(int(n)), params) for n in n_values], dtype=np.uint8)
    values = form.a * n_values + form.b
    spf = np.zeros(len(values), dtype=np.int64)
    for p in primes_up_to(params.sqrt_floor):
        if form.a % p == 0:
            continue
        root = -form.b * pow(form.a, -1, p) % p
        start = (root - (N + 1)) % p
        block = spf[start::p]
        block[block == 0] = p
    mask = (spf >= params.p1_min) & (values >= 4)
    q = np.zeros(len(values), dtype=np.int64)
    q[mask] = values[mask] // spf[mask]
    mask &= q > params.sqrt_floor  # q > sqrt(N) as integers: q >= isqrt(N) + 1
    idx = np.flatnonzero(mask)
    out = np.zeros(len(values), dtype=np.uint8)
    if len(idx) == 0:
        return out
    qmax = int(q[idx].max())
    if qmax <= BITMAP_LIMIT:
        out[idx] = prime_flags(qmax)[q[idx]]
    else:
        out[idx] = [is_prime(int(x)) for x in q[idx]]
    return out


@dataclass(frozen=True)
class SimultaneousCount:
    count: int
    witnesses: list[int]
    per_form: list[int]

    def to_json(self) -> dict:
        return {"count": self.count, "witnesses": self.witnesses, "per_form_beta_counts": self.per_form}


def _beta_matrix(forms: FormTuple, params: BetaParams) -> np.ndarray:
    return np.vstack([beta_over_range(f, params) for f in forms])


def count_simultaneous(forms: FormTuple, params: BetaParams, threshold: int) -> SimultaneousCount:
    """Number of n in (N, 2N] where at least ``threshold`` forms take sifted E2 values."""
    if not 1 <= threshold <= forms.k:
        raise ValueError(f"threshold must lie in [1, k = {forms.k}], got {threshold}")
    flags = _beta_matrix(forms, params)
    good = np.flatnonzero(flags.sum(axis=0) >= threshold)
    witnesses = [int(params.N + 1 + i) for i in good[:MAX_WITNESSES]]
    per_form = [int(row.sum()) for row in flags]
    return SimultaneousCount(int(len(good)), witnesses, per_form)


def simultaneous_rows(forms: FormTuple, params: BetaParams) -> Iterator[list]:
    """Rows (n, L_1(n), ..., L_k(n), beta_1, ..., beta_k) for n in (N, 2N]."""
    flags = _beta_matrix(forms, params)
    for offset, n in enumerate(range(params.N + 1, 2 * params.N + 1)):
        yield [n, *(f(n) for f in forms), *(int(x) for x in flags[:, offset])]


def write_csv(forms: FormTuple, params: BetaParams, out: TextIO) -> int:
    writer = csv.writer(out)
    writer.writerow(["n", *(f"L{i + 1}" for i in range(forms.k)), *(f"beta{i + 1}" for i in range(forms.k))])
    rows = 0
    for row in simultaneous_rows(forms, params):
        writer.writerow(row)
        rows += 1
    return rows


def pi_tuple(x: int, forms: FormTuple) -> int:
    """#{1 <= m <= x : every L_i(m) is prime}."""
    if x < 1:
        return 0
    m = np.arange(1, x + 1, dtype=np.int64)
    top = max(f.a * x + f.b for f in forms)
    alive = np.ones(x, dtype=bool)
    if top <= BITMAP_LIMIT:
        flags = prime_flags(max(top, 2))
        for f in forms:
            vals = f.a * m + f.b
            ok = vals >= 2
            ok[ok] = flags[vals[ok]]
            alive &= ok
        return int(alive.sum())
    return sum(1 for mm in range(1, x + 1) if all(is_prime(f(mm)) for f in forms))


@dataclass(frozen=True)
class HLComparison:
    actual: int
    predicted: float
    ratio: float
    singular_series: float

    def to_json(self) -> dict:
        return {
            "actual": self.actual,
            "predicted": self.predicted,
            "ratio": self.ratio,
            "singular_series": self.singular_series,
            "note": "singular series is a truncated-product estimate",
        }


class InadmissibleError(ValueError):
    pass


def hl_compare(x: int, forms: FormTuple, truncation_prime: int = 10**6) -> HLComparison:
    """pi(x; L) against S(L) x / (ln x)^k."""
    adm = is_admissible(forms)
    if not adm:
        raise InadmissibleError(f"tuple is inadmissible (obstruction at p = {adm.witness}); prediction is 0")
    series = singular_series(forms, max(truncation_prime, forms.k)).value
    predicted = series * x / math.log(x) ** forms.k
    actual = pi_tuple(x, forms)
    return HLComparison(actual, predicted, actual / predicted, series)


@dataclass(frozen=True)
class GapScan:
    count: int
    first_witness: list[int] | None

    def to_json(self) -> dict:
        return {"count": self.count, "first_witness": self.first_witness}


def scan_gaps(kind: str, j: int, nu: int, window: int, limit: int) -> GapScan:
    """Count n with t[n + nu] - t[n] <= window among sequence terms t <= limit."""
    if window < 0 or nu < 0:
        raise ValueError("window and nu must be nonnegative")
    terms = sequence_up_to(kind, j, limit)
    if len(terms) <= nu:
        return GapScan(0, None)
    spans = terms[nu:] - terms[: len(terms) - nu]
    hits = np.flatnonzero(spans <= window)
    first = [int(t) for t in terms[hits[0] : hits[0] + nu + 1]] if len(hits) else None
    return GapScan(int(len(hits)), first)
