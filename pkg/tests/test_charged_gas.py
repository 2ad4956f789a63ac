import math

import numpy as np
import pytest
from scipy.special import gamma as gamma_fn

from bosegas.charged_gas import (QuadratureSpec, bogolubov_coefficients,
                                 foldy_energy, infinite_mass_comparison,
                                 pairing_kernel, tabulate_pairing_G,
                                 two_component_scaling, zero_point_summand,
                                 _dimensionless_integral)


def exact_rs_coefficient():
    """Closed form of the pairing zero-point integral.

    With nu = q^2/2 and w = 4 pi/q^2 the scaled summand integrates to
    (4 pi)^(5/4) J / 2 with J = (2/5) sqrt(pi) Gamma(3/4)/Gamma(5/4); in the
    r_s convention the per-particle coefficient is 3^(1/4) J / pi = 0.40154.
    """
    J = 0.4 * math.sqrt(math.pi) * gamma_fn(0.75) / gamma_fn(1.25)
    return 3.0 ** 0.25 / math.pi * J


# ---------------------------------------------------------------------------
# mode coefficients


def test_coefficient_equations_residuals_on_log_grid():
    rho = 1.0
    for q in np.geomspace(1e-3, 1e3, 61):
        p = q * rho**0.25
        m = bogolubov_coefficients(p, rho)
        s = m.nu + m.w
        assert abs(m.A * (1 + m.beta**2) - s) <= 1e-12 * s
        assert abs(2 * m.A * m.beta - m.w) <= 1e-12 * m.w
        assert 0.0 < m.beta < 1.0
        assert m.A > 0.0


def test_beta_decreases_with_momentum():
    betas = [bogolubov_coefficients(p, 1.0).beta for p in np.geomspace(1e-3, 1e3, 100)]
    assert all(b2 < b1 for b1, b2 in zip(betas, betas[1:]))
    assert betas[0] > 0.999          # beta -> 1 as p -> 0
    assert betas[-1] < 1e-10         # beta -> 0 as p -> inf


def test_free_gas_limit():
    # rho -> 0 at fixed p: w -> 0, beta -> 0, A -> p^2/2
    m = bogolubov_coefficients(2.0, 1e-12)
    assert m.beta < 1e-12
    assert m.A == pytest.approx(2.0, rel=1e-12)


def test_large_momentum_expansion():
    # beta ~ w/(2 nu), A -> nu
    rho = 1.0
    m = bogolubov_coefficients(50.0, rho)
    nu, w = 0.5 * 50.0**2, rho / 50.0**2
    assert m.beta == pytest.approx(w / (2 * nu), rel=1e-5)
    assert m.A == pytest.approx(nu, rel=1e-6)


def test_zero_momentum_rejected():
    with pytest.raises(ValueError):
        bogolubov_coefficients(0.0, 1.0)
    with pytest.raises(ValueError):
        pairing_kernel(1.0, 0.0)


def test_resubstitution_at_quarter_scale():
    rho = 1.0
    m = bogolubov_coefficients(rho**0.25, rho)
    assert abs(m.A * (1 + m.beta**2) - (m.nu + m.w)) < 1e-12 * (m.nu + m.w)
    assert abs(2 * m.A * m.beta - m.w) < 1e-12 * m.w


# ---------------------------------------------------------------------------
# scaling collapse


def test_collapse_power_of_two_exact():
    for p in (0.3, 1.0, 7.0):
        b1 = bogolubov_coefficients(p, 1.0).beta
        b2 = bogolubov_coefficients(2.0 * p, 16.0).beta
        assert b1 == b2              # exact in IEEE arithmetic


def test_collapse_general_scale():
    s = 10.0
    for p in (0.3, 1.0, 7.0):
        b1 = bogolubov_coefficients(p, 1.0).beta
        b2 = bogolubov_coefficients(s * p, s**4).beta
        assert b2 == pytest.approx(b1, rel=1e-14)


def test_pairing_kernel_returns_beta():
    assert pairing_kernel(1.0, 0.7) == bogolubov_coefficients(0.7, 1.0).beta


def test_G_tabulation_monotone():
    x = np.geomspace(1e-4, 1e4, 81)
    G = tabulate_pairing_G(x)
    assert np.all(np.diff(G) < 0)
    assert G[0] > 0.99 and G[-1] < 1e-3


# ---------------------------------------------------------------------------
# the correlation energy


def test_rs_coefficient_against_closed_form():
    res = foldy_energy(1.0)
    assert res.coefficient_rs == pytest.approx(exact_rs_coefficient(), rel=1e-10)
    assert 0.400 <= res.coefficient_rs <= 0.404


def test_energy_negative_and_scaling():
    for rho in (1e-3, 1.0, 1e3):
        res = foldy_energy(rho)
        assert res.e_per_particle < 0.0
    r1, r16 = foldy_energy(1.0), foldy_energy(16.0)
    assert r16.e_per_particle / r1.e_per_particle == pytest.approx(2.0, rel=1e-12)


def test_reduced_energy_density_independent():
    vals = [foldy_energy(rho).e_per_particle / rho**0.25
            for rho in np.geomspace(1e-3, 1e3, 7)]
    assert max(vals) - min(vals) <= 1e-10 * abs(vals[0])


def test_quadrature_resolution_refinement():
    i1, _ = _dimensionless_integral(QuadratureSpec(panels=64))
    i2, _ = _dimensionless_integral(QuadratureSpec(panels=256))
    assert abs(i1 - i2) <= 1e-8 * abs(i2)


def test_quadrature_error_estimate_small():
    res = foldy_energy(1.0)
    assert res.quadrature_error < 1e-10 * abs(res.e_per_particle)


def test_summand_stable_form():
    # (nu + w)^2 - w^2 rationalizes: A beta^2 * q^2 has no cancellation
    q = np.array([1e-8, 1.0, 1e8])
    nu, w = 0.5 * q * q, 4.0 * math.pi / (q * q)
    vals = zero_point_summand(nu, w)
    assert np.all(np.isfinite(vals)) and np.all(vals > 0)


def test_invalid_density_rejected():
    with pytest.raises(ValueError):
        foldy_energy(0.0)
    with pytest.raises(ValueError):
        foldy_energy(-1.0)


# ---------------------------------------------------------------------------
# exponent fits


def test_infinite_mass_comparison_slopes():
    fit = infinite_mass_comparison(np.geomspace(1e-3, 1e3, 7))
    assert fit.slope_per_particle == pytest.approx(0.25, abs=0.005)
    assert fit.slope_per_volume == pytest.approx(1.25, abs=0.01)
    assert fit.reference_exponent == pytest.approx(1.0 / 3.0)


def test_slope_invariant_under_density_rescaling():
    f1 = infinite_mass_comparison(np.geomspace(1e-3, 1e3, 7))
    f2 = infinite_mass_comparison(2.0 * np.geomspace(1e-3, 1e3, 7))
    assert f1.slope_per_particle == pytest.approx(f2.slope_per_particle, abs=1e-12)


def test_slope_fit_stability():
    f3 = infinite_mass_comparison(np.geomspace(1.0, 1e3, 7))
    f5 = infinite_mass_comparison(np.geomspace(0.1, 1e4, 11))
    assert abs(f3.slope_per_particle - f5.slope_per_particle) < 1e-3


def test_infinite_mass_preconditions():
    with pytest.raises(ValueError):
        infinite_mass_comparison([1.0, 2.0, 3.0])            # < 4 points
    with pytest.raises(ValueError):
        infinite_mass_comparison([1.0, 2.0, 4.0, 8.0])       # < 3 decades


def test_two_component_exponents():
    fit = two_component_scaling(np.geomspace(10.0, 1e5, 9))
    assert fit.slope_energy == pytest.approx(1.4, abs=0.01)
    assert fit.slope_length == pytest.approx(-0.2, abs=0.01)
    assert all(e < 0 for e in fit.E_min)


def test_two_component_scale_invariance():
    base = two_component_scaling(np.geomspace(10.0, 1e5, 9), 1.0, 1.0)
    scaled = two_component_scaling(np.geomspace(10.0, 1e5, 9), 4.0, 4.0)
    assert scaled.slope_energy == pytest.approx(base.slope_energy, abs=1e-10)
    assert scaled.slope_length == pytest.approx(base.slope_length, abs=1e-10)
    # E(L; 4a, 4b) = 4 E(L; a, b): the optimum scales by exactly 4
    ratio = np.array(scaled.E_min) / np.array(base.E_min)
    assert np.allclose(ratio, 4.0, rtol=1e-12)


def test_two_component_rejects_bad_constants():
    with pytest.raises(ValueError):
        two_component_scaling(np.geomspace(10, 1e5, 9), c_kin=-1.0)
