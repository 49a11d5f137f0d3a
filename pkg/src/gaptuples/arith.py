"""Integer foundations: primality, factorization, and functions on exponent patterns.

Rationals are plain :class:`fractions.Fraction` values throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Iterator

import numpy as np

Rational = Fraction

TRIAL_LIMIT = 10**6

# Strong-pseudoprime bases 2..41 decide primality for every n below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_BOUND = 3317044064679887385961981


@lru_cache(maxsize=None)
def primes_up_to(limit: int) -> tuple[int, ...]:
    """All primes ``p <= limit`` (Eratosthenes on a numpy bitmap)."""
    if limit < 2:
        return ()
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(flags))


def nth_primes(count: int) -> list[int]:
    """The first ``count`` primes."""
    if count <= 0:
        return []
    # p_n < n (ln n + ln ln n) for n >= 6
    bound = 15 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    return list(primes_up_to(bound)[:count])


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and math.isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    inv2 = (n + 1) // 2
    U, V, Qk = 1, P, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality test.

    Deterministic Miller-Rabin with a fixed witness set below 3.3e24; above that,
    Baillie-PSW (no counterexample is known).
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 43 * 43:
        return True
    if n < MR_DETERMINISTIC_BOUND:
        return all(_strong_probable_prime(n, a) for a in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def _pollard_brent(n: int, c: int) -> int:
    """Return a divisor of odd composite n (possibly n itself on failure)."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int) -> int:
    """Nontrivial divisor of a composite n without small factors; deterministic."""
    r = math.isqrt(n)
    if r * r == n:
        return r
    c = 1
    while True:
        g = _pollard_brent(n, c)
        if 1 < g < n:
            return g
        c += 1


@dataclass(frozen=True)
class Factorization:
    """Prime powers of a positive integer, primes strictly increasing."""

    prime_powers: tuple[tuple[int, int], ...]

    def value(self) -> int:
        return math.prod(p**e for p, e in self.prime_powers)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.prime_powers]

    @property
    def exponents(self) -> list[int]:
        return [e for _, e in self.prime_powers]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.prime_powers)

    def __len__(self) -> int:
        return len(self.prime_powers)

    def __str__(self) -> str:
        if not self.prime_powers:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.prime_powers)


def factorize(n: int) -> Factorization:
    """Exact prime factorization of ``n >= 1``.

    Trial division by primes up to 10**6, then Pollard-Brent splitting; every
    reported prime passes :func:`is_prime`.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    counts: dict[int, int] = {}
    for p in primes_up_to(TRIAL_LIMIT):
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        d = _split(m)
        stack.extend((d, m // d))
    return Factorization(tuple(sorted(counts.items())))


@dataclass(frozen=True)
class ExponentPattern:
    """Multiset of exponents, stored sorted descending so equality ignores order."""

    exponents: tuple[int, ...]

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(sorted((int(e) for e in exponents), reverse=True))
        if any(e < 1 for e in exps):
            raise ValueError("exponents must be positive")
        object.__setattr__(self, "exponents", exps)

    def __add__(self, other: "ExponentPattern") -> "ExponentPattern":
        # Pattern of a product of coprime integers.
        return ExponentPattern(self.exponents + other.exponents)

    def smallest(self) -> int:
        """Least positive integer carrying this pattern."""
        return math.prod(p**e for p, e in zip(nth_primes(len(self.exponents)), self.exponents))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.exponents)) + "}"


def exponent_pattern(n: int) -> ExponentPattern:
    return ExponentPattern(factorize(n).exponents)


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(n))


def Omega(n: int) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(factorize(n).exponents)


def d(n: int) -> int:
    """Number of divisors."""
    return math.prod(e + 1 for e in factorize(n).exponents)


def h(n: int) -> int:
    """Least positive integer with the same exponent pattern as ``n``; h(1) = 1."""
    return exponent_pattern(n).smallest()


# Functions on exponent patterns, keyed by the names the CLI and diagram checks use.
PATTERN_FUNCTIONS = {
    "d": lambda pat: math.prod(e + 1 for e in pat.exponents),
    "omega": lambda pat: len(pat.exponents),
    "Omega": lambda pat: sum(pat.exponents),
    "h": lambda pat: pat.smallest(),
}
ARITH_FUNCTIONS = {
    "d": d,
    "omega": omega,
    "Omega": Omega,
    "h": h,
}


def pattern_function(name: str):
    try:
        return PATTERN_FUNCTIONS[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}; choose from {sorted(PATTERN_FUNCTIONS)}") from None


def _crt_merge(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        raise ValueError(f"inconsistent congruences: x = {r1} mod {m1} and x = {r2} mod {m2}")
    lcm = m1 // g * m2
    if m1 == 1:
        return r2 % m2, m2
    t = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * t) % lcm, lcm


def crt_solve(congruences: Iterable[tuple[int, int]]) -> int:
    """Least nonnegative x with x = r (mod m) for every (r, m).

    Non-coprime moduli are accepted as long as the residues agree on the overlap.
    """
    x, mod = reduce(lambda acc, rm: _crt_merge(acc[0], acc[1], rm[0], rm[1]), congruences, (0, 1))
    return x


def crt_modulus(congruences: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Like :func:`crt_solve` but also return the combined modulus."""
    return reduce(lambda acc, rm: _crt_merge(acc[0], acc[1], rm[0], rm[1]), congruences, (0, 1))


def omega_table(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """(omega, Omega) for every n in [lo, hi), computed by a segmented sieve.

    Only base primes up to sqrt(hi) are used; any cofactor left after dividing
    them out is a single large prime.
    """
    lo = max(lo, 1)
    if hi <= lo:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    rest = np.arange(lo, hi, dtype=np.int64)
    small = np.zeros(hi - lo, dtype=np.int64)
    big = np.zeros(hi - lo, dtype=np.int64)
    for p in primes_up_to(math.isqrt(hi - 1)):
        start = (-lo) % p
        small[start::p] += 1
        q = p
        while q < hi:
            start = (-lo) % q
            big[start::q] += 1
            rest[start::q] //= p
            q *= p
    leftover = rest > 1
    small += leftover
    big += leftover
    return small, big


_KIND_DOC = {"S": "Omega = j", "s": "omega = j", "q": "omega = Omega = j"}


def _kind_mask(kind: str, j: int, om: np.ndarray, Om: np.ndarray) -> np.ndarray:
    if kind == "S":
        return Om == j
    if kind == "s":
        return om == j
    if kind == "q":
        return (om == j) & (Om == j)
    raise ValueError(f"kind must be one of {sorted(_KIND_DOC)}, got {kind!r}")


def sequence_up_to(kind: str, j: int, limit: int) -> np.ndarray:
    """All members <= limit of S^(j) (Omega = j), s^(j) (omega = j) or q^(j) (E_j-numbers)."""
    om, Om = omega_table(2, limit + 1)
    return np.flatnonzero(_kind_mask(kind, j, om, Om)) + 2


def sequence(kind: str, j: int, count: int) -> list[int]:
    """The first ``count`` terms of S^(j), s^(j) or q^(j), ordered by size."""
    if j < 1 or count < 1:
        raise ValueError("j and count must be positive")
    _kind_mask(kind, j, np.zeros(0), np.zeros(0))
    limit = max(64, 2 ** (j + 1) * count)
    while True:
        terms = sequence_up_to(kind, j, limit)
        if len(terms) >= count:
            return [int(t) for t in terms[:count]]
        limit *= 2
