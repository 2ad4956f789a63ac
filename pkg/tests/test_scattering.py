import math

import numpy as np
import pytest

from bosegas.potentials import HardCore, PowerTail, SquareWell, Units
from bosegas.scattering import (DivergentIntegralError, NoLogarithmError,
                                born_approximation, energy_identity_check,
                                scattering_length_2d, scattering_length_3d,
                                solve_zero_energy)

U = Units()


def well_scattering_length(height, R0, mu=1.0):
    """Closed form for the repulsive square well: a = R0 (1 - tanh(kR0)/(kR0))."""
    kappa = math.sqrt(height / (2.0 * mu))
    return R0 * (1.0 - math.tanh(kappa * R0) / (kappa * R0))


def well_profile(r, height, R0, mu=1.0):
    """Piecewise sinh/linear zero-energy solution with unit interior slope."""
    kappa = math.sqrt(height / (2.0 * mu))
    r = np.asarray(r, dtype=float)
    inside = np.sinh(kappa * r) / kappa
    c = math.cosh(kappa * R0)
    a = well_scattering_length(height, R0, mu)
    outside = c * (r - a)
    return np.where(r <= R0, inside, outside)


def test_free_particle_profile_is_linear():
    sol = solve_zero_energy(SquareWell(0.0, 1.0), U, r_max=10.0, n_points=400)
    # u0'' = 0: u0 = c r exactly (skip the r = 0 node)
    ratio = sol.u[1:] / sol.grid[1:]
    assert np.allclose(ratio, ratio[-1], rtol=1e-12, atol=1e-12)
    assert abs(sol.a) < 1e-10
    assert sol.residual < 1e-12


@pytest.mark.parametrize("n_points", [150, 500, 2000])
def test_hard_core_exact(n_points):
    # u = r - a exactly outside the core; the recurrence roundoff floor
    # (~ n^1.5 eps) is the only error source
    sol = solve_zero_energy(HardCore(1.0), U, r_max=12.0, n_points=n_points)
    assert abs(sol.a - 1.0) < 1e-11
    assert abs(scattering_length_3d(sol) - 1.0) < 1e-11


def test_square_well_profile_matches_closed_form():
    h, R0 = 5.0, 1.0
    sol = solve_zero_energy(SquareWell(h, R0), U, r_max=8.0, n_points=1500)
    exact = well_profile(sol.grid, h, R0)
    # normalize both at the outer end; compare where the profile is not tiny
    num = sol.u / sol.u[-1]
    ref = exact / exact[-1]
    mask = ref > 1e-3 * ref[-1]
    rel = np.max(np.abs(num[mask] - ref[mask]) / ref[mask])
    assert rel < 1e-8


@pytest.mark.parametrize("height", [0.1, 1.0, 10.0, 100.0, 1000.0])
def test_square_well_length_against_closed_form(height):
    sol = solve_zero_energy(SquareWell(height, 1.0), U, r_max=8.0, n_points=800)
    exact = well_scattering_length(height, 1.0)
    assert abs(sol.a - exact) / exact < 1e-8


def test_square_well_monotone_in_height():
    heights = np.geomspace(0.05, 2000.0, 12)
    lengths = [solve_zero_energy(SquareWell(h, 1.0), U, r_max=6.0, n_points=500).a
               for h in heights]
    assert all(b >= a - 1e-12 for a, b in zip(lengths, lengths[1:]))


def test_hard_disc_2d_exact():
    sol = solve_zero_energy(HardCore(1.0), U, r_max=60.0, n_points=500, dimension=2)
    assert abs(sol.a - 1.0) < 1e-10
    assert abs(scattering_length_2d(sol) - 1.0) < 1e-10


def test_2d_free_particle_has_no_logarithm():
    with pytest.raises(NoLogarithmError):
        solve_zero_energy(SquareWell(0.0, 1.0), U, r_max=50.0, n_points=300,
                          dimension=2)


def test_2d_square_well_richardson_oracle():
    h, R0 = 3.0, 1.0
    p = SquareWell(h, R0)
    api = solve_zero_energy(p, U, r_max=60.0, n_points=800, dimension=2).a
    coarse = solve_zero_energy(p, U, r_max=60.0, n_points=600, dimension=2,
                               max_refine=0).a
    fine = solve_zero_energy(p, U, r_max=60.0, n_points=2400, dimension=2,
                             max_refine=0).a
    extrapolated = fine + (fine - coarse) / (4.0 ** 4 - 1.0)
    assert abs(api - extrapolated) / extrapolated < 1e-6


def test_2d_hard_disc_normalization_independent_of_window():
    # psi = c ln(r/a): fitting windows at different radii agree on a
    s1 = solve_zero_energy(HardCore(1.0), U, r_max=30.0, n_points=400, dimension=2)
    s2 = solve_zero_energy(HardCore(1.0), U, r_max=300.0, n_points=400, dimension=2)
    assert abs(s1.a - s2.a) < 1e-9


def test_born_square_well_volume():
    h, R0 = 2.0, 1.5
    exact = h * 4.0 * math.pi / 3.0 * R0**3
    assert born_approximation(SquareWell(h, R0), U) == pytest.approx(exact, rel=1e-12)


def test_born_zero_potential():
    assert born_approximation(SquareWell(0.0, 1.0), U) == 0.0


def test_born_hard_core_divergent():
    with pytest.raises(DivergentIntegralError):
        born_approximation(HardCore(1.0), U)


def test_born_power_tail():
    # head h*(4pi/3)R0^3 plus tail 4 pi A ts^-eps / eps
    p = PowerTail(SquareWell(2.0, 1.0), amplitude=0.5, eps=1.0)
    exact = 2.0 * 4.0 * math.pi / 3.0 + 4.0 * math.pi * 0.5
    assert born_approximation(p, U) == pytest.approx(exact, rel=1e-10)


def test_born_first_order_consistency():
    # born/(8 pi mu) - a = O(h): deviation shrinks linearly with the height
    devs = []
    for h in (1e-4, 1e-5):
        sol = solve_zero_energy(SquareWell(h, 1.0), U, r_max=8.0, n_points=800)
        born = born_approximation(SquareWell(h, 1.0), U) / (8.0 * math.pi * U.mu)
        devs.append(abs(born - sol.a) / sol.a)
    assert 5.0 < devs[0] / devs[1] < 20.0


def test_power_tail_length_close_to_truncated_well():
    # weak slowly-decaying tail shifts a slightly upward from the bare well
    bare = solve_zero_energy(SquareWell(2.0, 1.0), U, r_max=10.0, n_points=600).a
    tailed = solve_zero_energy(PowerTail(SquareWell(2.0, 1.0), amplitude=1e-3, eps=1.0),
                               U, r_max=10.0, n_points=600).a
    assert tailed > bare
    assert tailed - bare < 0.01


def test_identity_hard_core_at_10a():
    chk = energy_identity_check(HardCore(1.0), U, R=10.0)
    # boundary form (1 - a/R)^2 = 0.81; quadrature of the energy integral
    # gives exactly 1 - a/R = 0.9 for the hard core
    assert chk.ratio == pytest.approx(0.81, abs=1e-6)
    assert chk.integral_ratio == pytest.approx(0.9, abs=1e-4)
    assert not chk.degenerate


def test_identity_converges_to_one():
    a0 = 1.0
    errors = []
    for R in (5.0, 10.0, 20.0, 50.0):
        chk = energy_identity_check(HardCore(a0), U, R=R)
        err = abs(chk.ratio - 1.0)
        assert err <= 1.1 * (2.0 * a0 / R - (a0 / R) ** 2)
        errors.append(err)
    assert errors == sorted(errors, reverse=True)


def test_identity_degenerate_for_zero_potential():
    chk = energy_identity_check(SquareWell(0.0, 1.0), U, R=5.0)
    assert chk.degenerate
    assert math.isnan(chk.ratio)


def test_identity_square_well():
    # u = c(r-a) outside the range: same boundary form as the hard core
    h, R0 = 10.0, 1.0
    a = well_scattering_length(h, R0)
    chk = energy_identity_check(SquareWell(h, R0), U, R=8.0)
    assert chk.ratio == pytest.approx((1.0 - a / 8.0) ** 2, rel=1e-5)
    assert chk.integral_ratio == pytest.approx(1.0 - a / 8.0, rel=1e-3)


def test_solver_rejects_short_domain():
    with pytest.raises(ValueError):
        solve_zero_energy(SquareWell(1.0, 2.0), U, r_max=2.2, n_points=300)


def test_solver_rejects_few_points():
    with pytest.raises(ValueError):
        solve_zero_energy(SquareWell(1.0, 1.0), U, r_max=8.0, n_points=50)


def test_residual_reflects_solver_error_only_beyond_range():
    sol = solve_zero_energy(SquareWell(3.0, 1.0), U, r_max=10.0, n_points=800)
    assert sol.residual < 1e-10
    assert sol.fit_window[0] > 1.0


def test_tabulated_staircase_approaches_square_well():
    # a fine staircase table of the constant well reproduces its length
    from bosegas.potentials import Tabulated
    h, R0 = 4.0, 1.0
    r = np.linspace(1e-3, R0, 140)
    tab = Tabulated(tuple(r), tuple(np.full(r.size, h)))
    a_tab = solve_zero_energy(tab, U, r_max=8.0, n_points=700).a
    a_well = well_scattering_length(h, R0)
    assert abs(a_tab - a_well) / a_well < 5e-3   # table edge shaves the well


def test_power_tail_2d_solve():
    p = PowerTail(SquareWell(3.0, 1.0), amplitude=1e-4, eps=1.0)
    bare = solve_zero_energy(SquareWell(3.0, 1.0), U, r_max=60.0, n_points=600,
                             dimension=2)
    tailed = solve_zero_energy(p, U, r_max=60.0, n_points=600, dimension=2)
    assert tailed.a > bare.a
    assert abs(tailed.a - bare.a) / bare.a < 0.05


def test_positive_length_for_positive_potentials():
    for p in (SquareWell(0.5, 1.0), HardCore(0.3),
              PowerTail(SquareWell(1.0, 1.0), amplitude=0.1, eps=0.8)):
        sol = solve_zero_energy(p, U, r_max=10.0, n_points=500)
        assert sol.a > 0.0
