"""Exact evaluation of the GGPY functional J and its integrals J0..J3.

For a polynomial P with antiderivative Pt (Pt(0) = 0) and weight
w(y) = B / (y (B - y)) = 1/y + 1/(B - y):

    J0 = int_0^1 P(1-x)^2 x^(k-1) dx
    J1 = int_{B eta}^1 w(y) int_0^{1-y} (Pt(1-x) - Pt(1-x-y))^2 x^(k-2) dx dy
    J2 = int_{B eta}^1 w(y) int_{1-y}^1 Pt(1-x)^2 x^(k-2) dx dy
    J3 = int_1^{B/2} w(y) int_0^1 Pt(1-x)^2 x^(k-2) dx dy
    J  = k(k-1)/B (J1 + J2 + J3) - nu J0

The inner integrals are polynomials in y that vanish at y = 0, so the 1/y
part of the weight integrates to a rational and the 1/(B - y) part leaves a
single logarithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .loglinear import LogLinearValue, SignCertificate, certify_sign
from .poly import BiPoly, Poly, compose_affine, poly_in_one_minus_x_minus_y


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SieveConfig:
    k: int
    nu: int
    B: Fraction
    eta: Fraction
    degree: int = 2

    def __post_init__(self):
        object.__setattr__(self, "B", Fraction(self.B))
        object.__setattr__(self, "eta", Fraction(self.eta))
        problems = []
        if self.k < 2:
            problems.append(f"k = {self.k} < 2")
        if self.nu < 1:
            problems.append(f"nu = {self.nu} < 1")
        if self.k < self.nu + 1:
            problems.append(f"k = {self.k} < nu + 1 = {self.nu + 1}")
        if not self.B > 2:
            problems.append(f"B = {self.B} must exceed 2")
        if not 0 < self.eta <= Fraction(1, 4):
            problems.append(f"eta = {self.eta} outside (0, 1/4]")
        if not self.B * self.eta < 1:
            problems.append(f"B*eta = {self.B * self.eta} must be < 1")
        if self.degree < 0:
            problems.append(f"degree = {self.degree} < 0")
        if problems:
            raise ConfigError("invalid sieve config: " + "; ".join(problems))

    def with_k(self, k: int) -> "SieveConfig":
        return SieveConfig(k, self.nu, self.B, self.eta, self.degree)

    def to_json(self) -> dict:
        return {"k": self.k, "nu": self.nu, "B": str(self.B), "eta": str(self.eta), "degree": self.degree}


def as_poly(P) -> Poly:
    return P if isinstance(P, Poly) else Poly(P)


def J0(P, k: int) -> Fraction:
    """int_0^1 P(1-x)^2 x^(k-1) dx."""
    if k < 1:
        raise ValueError("J0 needs k >= 1")
    P = as_poly(P)
    integrand = compose_affine(P, 1, -1) ** 2 * Poly.monomial(k - 1)
    return integrand.integrate(0, 1)


def _outer(Q: Poly, B: Fraction, lo: Fraction, hi: Fraction) -> LogLinearValue:
    """int_lo^hi Q(y) * B / (y (B - y)) dy for a polynomial Q with Q(0) = 0."""
    try:
        over_y = Q.shift_down()
    except ArithmeticError:
        raise AssertionError("inner integral does not vanish at y = 0; integrand bug") from None
    # Q(y) = (y - B) S(y) + Q(B), so Q / (B - y) = -S(y) + Q(B) / (B - y)
    S, rem = Q.divmod_linear(B)
    rational = over_y.integrate(lo, hi) - S.integrate(lo, hi)
    return LogLinearValue(rational, {(B - lo) / (B - hi): rem})


def _pt_of_one_minus_x(P: Poly) -> Poly:
    return compose_affine(P.antiderivative(), 1, -1)


def _check_limits(config: SieveConfig) -> None:
    if not config.B * config.eta < 1:
        raise ConfigError(f"B*eta = {config.B * config.eta} must be < 1")


def J1(P, config: SieveConfig) -> LogLinearValue:
    P = as_poly(P)
    _check_limits(config)
    Pt = P.antiderivative()
    diff = BiPoly.from_x(compose_affine(Pt, 1, -1)) - poly_in_one_minus_x_minus_y(Pt)
    inner = (diff * diff).times_x_power(config.k - 2).integrate_x_zero_to_one_minus_y()
    return _outer(inner, config.B, config.B * config.eta, Fraction(1))


def _tail_weight(P: Poly, k: int) -> Poly:
    """Antiderivative in x of Pt(1-x)^2 x^(k-2)."""
    return (_pt_of_one_minus_x(P) ** 2 * Poly.monomial(k - 2)).antiderivative()


def J2(P, config: SieveConfig) -> LogLinearValue:
    P = as_poly(P)
    _check_limits(config)
    F = _tail_weight(P, config.k)
    # int_{1-y}^1 = F(1) - F(1 - y)
    inner = Poly.const(F(Fraction(1))) - compose_affine(F, 1, -1)
    return _outer(inner, config.B, config.B * config.eta, Fraction(1))


def J3(P, config: SieveConfig) -> LogLinearValue:
    P = as_poly(P)
    _check_limits(config)
    F = _tail_weight(P, config.k)
    # int_1^{B/2} B / (y (B - y)) dy = ln(B - 1)
    return LogLinearValue.log(config.B - 1, F(Fraction(1)) - F(Fraction(0)))


def J_numerator(P, config: SieveConfig) -> LogLinearValue:
    """k(k-1)/B (J1 + J2 + J3)."""
    P = as_poly(P)
    scale = Fraction(config.k * (config.k - 1)) / config.B
    return (J1(P, config) + J2(P, config) + J3(P, config)) * scale


def J_total(P, config: SieveConfig) -> LogLinearValue:
    P = as_poly(P)
    return J_numerator(P, config) - config.nu * J0(P, config.k)


@dataclass(frozen=True)
class JEvaluation:
    config: SieveConfig
    P: Poly
    J0: Fraction
    J1: LogLinearValue
    J2: LogLinearValue
    J3: LogLinearValue
    J: LogLinearValue
    sign: SignCertificate

    @property
    def status(self) -> str:
        return self.sign.status

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "P": self.P.to_json(),
            "J0": LogLinearValue(self.J0).to_json(),
            "J1": self.J1.to_json(),
            "J2": self.J2.to_json(),
            "J3": self.J3.to_json(),
            "J": self.J.to_json(),
            "decimal": {
                name: mp_str(value)
                for name, value in (
                    ("J0", LogLinearValue(self.J0)),
                    ("J1", self.J1),
                    ("J2", self.J2),
                    ("J3", self.J3),
                    ("J", self.J),
                )
            },
            "sign": self.sign.to_json(),
        }


def mp_str(value: LogLinearValue, digits: int = 15) -> str:
    import mpmath

    return mpmath.nstr(value.to_mpf(60), digits)


def evaluate(P, config: SieveConfig) -> JEvaluation:
    """All four integrals, J, and a certified sign for J."""
    P = as_poly(P)
    j0, j1, j2, j3 = J0(P, config.k), J1(P, config), J2(P, config), J3(P, config)
    scale = Fraction(config.k * (config.k - 1)) / config.B
    J = (j1 + j2 + j3) * scale - config.nu * j0
    return JEvaluation(config, P, j0, j1, j2, j3, J, certify_sign(J))


def quadratic_forms(config: SieveConfig) -> tuple[list[list[LogLinearValue]], list[list[LogLinearValue]]]:
    """Matrices M_num, M_den on the monomial basis 1, x, ..., x^degree.

    p^T M_num p = k(k-1)/B (J1+J2+J3)(P) and p^T M_den p = J0(P), entries
    obtained by polarization M_ab = (F(e_a + e_b) - F(e_a) - F(e_b)) / 2.
    """
    n = config.degree + 1
    basis = [Poly.monomial(a) for a in range(n)]

    def num(P):
        return J_numerator(P, config)

    def den(P):
        return LogLinearValue(J0(P, config.k))

    M_num = [[LogLinearValue()] * n for _ in range(n)]
    M_den = [[LogLinearValue()] * n for _ in range(n)]
    diag_num = [num(e) for e in basis]
    diag_den = [den(e) for e in basis]
    for a in range(n):
        M_num[a][a], M_den[a][a] = diag_num[a], diag_den[a]
        for b in range(a + 1, n):
            s = basis[a] + basis[b]
            M_num[a][b] = M_num[b][a] = (num(s) - diag_num[a] - diag_num[b]) / 2
            M_den[a][b] = M_den[b][a] = (den(s) - diag_den[a] - diag_den[b]) / 2
    return M_num, M_den


def quadratic_value(M: Sequence[Sequence[LogLinearValue]], p: Sequence[Fraction]) -> LogLinearValue:
    """p^T M p, exactly."""
    acc = LogLinearValue()
    for a, pa in enumerate(p):
        for b, pb in enumerate(p):
            if pa and pb:
                acc = acc + M[a][b] * (Fraction(pa) * Fraction(pb))
    return acc
