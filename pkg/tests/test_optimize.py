from fractions import Fraction as F

import mpmath
import numpy as np
import pytest

from gaptuples.optimize import generalized_eigen, maximize, minimal_k, rationalize
from gaptuples.poly import Poly
from gaptuples.sieve import ConfigError, J0, J_numerator, J_total, SieveConfig, quadratic_forms

UNCOND = SieveConfig(10, 2, F(4), F(1, 340), 2)
COND = SieveConfig(5, 2, F(201, 100), F(1, 340), 2)


def rayleigh(P: Poly, config: SieveConfig):
    """k(k-1)/B (J1+J2+J3) / J0 at P, exactly as a log-linear value."""
    return J_numerator(P, config) / J0(P, config.k)


def grid_max_quotient(config: SieveConfig, steps: int = 60) -> float:
    """Largest quotient over a dense grid of unit-sphere directions (degree 2)."""
    M_num, M_den = quadratic_forms(config)
    N = np.array([[float(x) for x in row] for row in M_num])
    D = np.array([[float(x) for x in row] for row in M_den])
    best = -np.inf
    for theta in np.linspace(0, np.pi, steps):
        for phi in np.linspace(0, 2 * np.pi, 2 * steps):
            v = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
            best = max(best, (v @ N @ v) / (v @ D @ v))
    return best


def test_unconditional_positive_and_beats_printed_P():
    res = maximize(UNCOND)
    assert res.positive and res.sign.status == "positive"
    assert res.lambda_max > 2
    assert J_total(res.polynomial, UNCOND) == res.J_exact
    diff = rayleigh(res.polynomial, UNCOND) - rayleigh(Poly([F(3, 20), F(3, 5), 10]), UNCOND)
    assert diff.certify_sign().status in ("positive", "zero")


def test_conditional_positive_and_beats_printed_P():
    res = maximize(COND)
    assert res.positive
    diff = rayleigh(res.polynomial, COND) - rayleigh(Poly([F(3, 4), 6, 10]), COND)
    assert diff.certify_sign().status in ("positive", "zero")


def test_k3_not_positive_grid_oracle():
    cfg = SieveConfig(3, 2, F(4), F(1, 340), 2)
    res = maximize(cfg)
    assert not res.positive
    grid = grid_max_quotient(cfg)
    assert grid < cfg.nu
    assert res.lambda_max == pytest.approx(grid, rel=1e-3)
    assert res.lambda_max >= grid - 1e-12


def test_lambda_matches_numpy_generalized_eigen():
    M_num, M_den = quadratic_forms(UNCOND)
    N = np.array([[float(x) for x in row] for row in M_num])
    D = np.array([[float(x) for x in row] for row in M_den])
    L = np.linalg.cholesky(D)
    Li = np.linalg.inv(L)
    top = max(np.linalg.eigvalsh(Li @ N @ Li.T))
    values, vectors = generalized_eigen(M_num, M_den)
    assert float(values[0]) == pytest.approx(top, rel=1e-9)
    # residual of the generalized eigen-equation
    with mpmath.workdps(60):
        A = mpmath.matrix([[x.to_mpf(60) for x in row] for row in M_num])
        Bm = mpmath.matrix([[x.to_mpf(60) for x in row] for row in M_den])
        v = mpmath.matrix(vectors[0])
        assert mpmath.norm(A * v - values[0] * (Bm * v)) < mpmath.mpf(10) ** -12


def test_soundness_independent_path():
    for cfg in (UNCOND, COND):
        res = maximize(cfg)
        assert J_total(Poly(res.p_best), cfg).certify_sign().status == "positive"


def test_positive_flag_scale_invariant():
    M_num, M_den = quadratic_forms(UNCOND)
    _, vectors = generalized_eigen(M_num, M_den)
    v = vectors[0]
    for scale in (1, -1, mpmath.mpf("1e-7"), mpmath.mpf("3.5e9")):
        p = rationalize([scale * x for x in v], 10**6)
        assert J_total(Poly(p), UNCOND).certify_sign().status == "positive"
        assert max(abs(x) for x in p) == 1


def test_rationalize_is_deterministic_and_bounded():
    p = rationalize([mpmath.mpf(2), mpmath.mpf("0.3333333333333"), mpmath.mpf(-1)], 10**6)
    assert p == [1, F(1, 6), F(-1, 2)]
    with pytest.raises(ValueError):
        rationalize([0, 0], 100)


def test_degree_limit():
    with pytest.raises(ValueError):
        maximize(SieveConfig(10, 2, F(4), F(1, 340), 9))


def test_minimal_k_unconditional():
    k, scanned = minimal_k(2, F(4), F(1, 340), 2, 12)
    assert k is not None and k <= 10
    assert [r.config.k for r in scanned] == list(range(3, k + 1))


def test_minimal_k_conditional():
    k, _ = minimal_k(2, F(201, 100), F(1, 340), 2, 8)
    assert k is not None and k <= 5


def test_monotone_after_first_positive():
    for B in (F(4), F(201, 100)):
        k0, _ = minimal_k(2, B, F(1, 340), 2, 12)
        for k in (k0 + 1, k0 + 2):
            assert maximize(SieveConfig(k, 2, B, F(1, 340), 2)).positive


def test_nu1_eta_quarter_rejected():
    # B = 4 with eta = 1/4 gives B*eta = 1, outside the admissible range
    with pytest.raises(ConfigError):
        SieveConfig(3, 1, F(4), F(1, 4), 2)


def test_nu1_small_eta_reaches_k3():
    k, _ = minimal_k(1, F(4), F(1, 340), 2, 5)
    assert k is not None and k <= 3


def test_nu1_report(capsys):
    # report-only: at eta = 1/5 (largest simple eta with B*eta < 1) degree 2 stays below nu = 1
    k, scanned = minimal_k(1, F(4), F(1, 5), 2, 5)
    print(f"nu=1 B=4 eta=1/5: minimal k = {k}; lambda by k = "
          + ", ".join(f"{r.config.k}:{r.lambda_max:.4f}" for r in scanned))
    assert "minimal k" in capsys.readouterr().out


def test_result_json():
    doc = maximize(UNCOND).to_json()
    assert doc["positive"] is True
    assert all(isinstance(c, str) for c in doc["p_best"])
    assert doc["sign"]["status"] == "positive"
