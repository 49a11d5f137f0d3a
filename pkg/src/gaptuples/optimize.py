"""Search for polynomials P with J(P) > 0.

J(p) = p^T M_num p - nu * p^T M_den p on the coefficient vector p, and M_den
is positive definite, so some P of the given degree makes J positive exactly
when the largest generalized eigenvalue of (M_num, M_den) exceeds nu. The top
eigenvector is rationalized and J is then re-evaluated exactly through the
integrals themselves, never through the matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .loglinear import LogLinearValue, SignCertificate, certify_sign
from .poly import Poly
from .sieve import J0, J_numerator, J_total, SieveConfig, quadratic_forms

MAX_DEGREE = 8
DENOMINATOR_BOUNDS = (10**6, 10**9)
WORKING_DPS = 60


@dataclass(frozen=True)
class OptimizationResult:
    config: SieveConfig
    lambda_max: float
    p_best: list[Fraction]
    J_exact: LogLinearValue
    positive: bool
    sign: SignCertificate
    denominator_bound: int
    diagnostic: str = ""
    eigenvalues: list[float] = field(default_factory=list)

    @property
    def polynomial(self) -> Poly:
        return Poly(self.p_best)

    def quotient(self) -> float:
        """k(k-1)/B (J1+J2+J3) / J0 at p_best, i.e. the realized Rayleigh quotient."""
        P = self.polynomial
        j0 = J0(P, self.config.k)
        return float(J_numerator(P, self.config).to_mpf(40) * j0.denominator / j0.numerator)

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "lambda_max": self.lambda_max,
            "eigenvalues": self.eigenvalues,
            "p_best": [str(c) for c in self.p_best],
            "J_exact": self.J_exact.to_json(),
            "J_decimal": mpmath.nstr(self.J_exact.to_mpf(60), 15),
            "positive": self.positive,
            "sign": self.sign.to_json(),
            "denominator_bound": self.denominator_bound,
            "diagnostic": self.diagnostic,
        }


def _to_mp_matrix(M: Sequence[Sequence[LogLinearValue]]) -> mpmath.matrix:
    n = len(M)
    out = mpmath.matrix(n, n)
    for i in range(n):
        for j in range(n):
            out[i, j] = M[i][j].to_mpf(WORKING_DPS)
    return out


def generalized_eigen(M_num, M_den) -> tuple[list, list]:
    """Eigenpairs of M_num v = lambda M_den v, descending by eigenvalue.

    Reduces with the Cholesky factor of M_den to an ordinary symmetric problem.
    """
    with mpmath.workdps(WORKING_DPS):
        A, Bm = _to_mp_matrix(M_num), _to_mp_matrix(M_den)
        L = mpmath.cholesky(Bm)
        Linv = mpmath.inverse(L)
        C = Linv * A * Linv.T
        C = (C + C.T) / 2
        E, Q = mpmath.eigsy(C)
        n = A.rows
        order = sorted(range(n), key=lambda i: -E[i])
        values = [E[i] for i in order]
        vectors = []
        for i in order:
            w = Q[:, i]
            vectors.append(list(Linv.T * w))
        return values, vectors


def rationalize(vector: Sequence, bound: int) -> list[Fraction]:
    """Scale so the largest |component| is +1, then continued-fraction round each entry."""
    with mpmath.workdps(WORKING_DPS):
        vec = [mpmath.mpf(v) for v in vector]
        pivot = max(range(len(vec)), key=lambda i: (abs(vec[i]), -i))
        scale = vec[pivot]
        if scale == 0:
            raise ValueError("cannot rationalize the zero vector")
        return [Fraction(mpmath.nstr(v / scale, WORKING_DPS - 5, strip_zeros=False)).limit_denominator(bound) for v in vec]


def certify_vector(config: SieveConfig, vector: Sequence, bound: int) -> tuple[list[Fraction], LogLinearValue, SignCertificate]:
    p = rationalize(vector, bound)
    J = J_total(Poly(p), config)
    return p, J, certify_sign(J)


def maximize(config: SieveConfig) -> OptimizationResult:
    """Best polynomial of degree ``config.degree`` for J, with an exact sign check."""
    if config.degree > MAX_DEGREE:
        raise ValueError(f"degree {config.degree} exceeds {MAX_DEGREE}")
    M_num, M_den = quadratic_forms(config)
    values, vectors = generalized_eigen(M_num, M_den)
    lam = values[0]
    # near-degenerate top eigenvalues: consider each and keep the lexicographically smallest
    tied = [v for val, v in zip(values, vectors) if abs(val - lam) <= mpmath.mpf(10) ** -12 * max(1, abs(lam))]
    diagnostic = ""
    result = None
    for bound in DENOMINATOR_BOUNDS:
        candidates = sorted((certify_vector(config, v, bound) for v in tied), key=lambda c: c[0])
        p, J, sign = candidates[0]
        result = (p, J, sign, bound)
        if sign.status == "positive":
            break
        if lam <= config.nu:
            break
    p, J, sign, bound = result
    if sign.status == "indeterminate":
        diagnostic = "exact sign of J is indeterminate at maximum precision"
    elif lam > config.nu and sign.status != "positive":
        diagnostic = "eigenvalue exceeds nu but the rationalized vector was not certified positive"
    return OptimizationResult(
        config=config,
        lambda_max=float(lam),
        p_best=p,
        J_exact=J,
        positive=sign.status == "positive",
        sign=sign,
        denominator_bound=bound,
        diagnostic=diagnostic,
        eigenvalues=[float(v) for v in values],
    )


def minimal_k(nu: int, B, eta, degree: int, k_max: int) -> tuple[int | None, list[OptimizationResult]]:
    """Smallest k <= k_max at which maximize certifies J > 0, plus the results scanned."""
    if k_max > 40:
        raise ValueError("k_max must be <= 40")
    scanned = []
    for k in range(max(2, nu + 1), k_max + 1):
        result = maximize(SieveConfig(k, nu, Fraction(B), Fraction(eta), degree))
        scanned.append(result)
        if result.positive:
            return k, scanned
    return None, scanned
