import math

import numpy as np
import pytest

from bosegas.potentials import (CHARGED_UNITS, BoxTrap, HardCore, HarmonicTrap,
                                PowerTail, SquareWell, Tabulated, Units,
                                evaluate_potential, load_potential_config,
                                potential_from_mapping)


def test_hard_core_inside_is_infinite():
    p = HardCore(1.0)
    assert evaluate_potential(p, 0.5) == math.inf


def test_hard_core_outside_is_zero():
    # v(r) = 0 outside the core
    assert evaluate_potential(HardCore(1.0), 2.0) == 0.0


def test_square_well_inside_value():
    h, R0 = 3.5, 2.0
    assert evaluate_potential(SquareWell(h, R0), R0 / 2) == h


def test_negative_radius_rejected():
    with pytest.raises(ValueError):
        evaluate_potential(SquareWell(1.0, 1.0), -0.3)
    with pytest.raises(ValueError):
        evaluate_potential(HardCore(1.0), 0.0)


@pytest.mark.parametrize("p", [
    HardCore(0.7),
    SquareWell(2.5, 1.3),
    SquareWell(0.0, 1.0),
    Tabulated((0.1, 0.5, 1.0, 2.0), (4.0, 3.0, 1.0, 0.0)),
    PowerTail(SquareWell(1.0, 1.0), amplitude=0.3, eps=0.5),
])
def test_nonnegative_everywhere(p):
    r = np.geomspace(1e-3, 50.0, 400)
    assert np.all(np.asarray(p.value(r)) >= 0)


@pytest.mark.parametrize("p", [
    HardCore(0.7),
    SquareWell(2.5, 1.3),
    Tabulated((0.1, 0.5, 1.0, 2.0), (4.0, 3.0, 1.0, 0.0)),
])
def test_zero_beyond_range(p):
    r = np.linspace(p.range_R0 * 1.0001, p.range_R0 * 10, 50)
    assert np.all(np.asarray(p.value(r)) == 0.0)


def test_tabulated_validation():
    with pytest.raises(ValueError):
        Tabulated((1.0, 0.5), (1.0, 1.0))          # not increasing
    with pytest.raises(ValueError):
        Tabulated((0.5, 1.0), (1.0, -1.0))         # negative sample
    with pytest.raises(ValueError):
        Tabulated((0.5, 1.0), (1.0, math.inf))     # non-finite


def test_tabulated_linear_interpolation():
    p = Tabulated((1.0, 2.0), (2.0, 0.0))
    assert p.value(1.5) == pytest.approx(1.0)


def test_power_tail_requires_positive_eps():
    with pytest.raises(ValueError):
        PowerTail(SquareWell(1.0, 1.0), amplitude=1.0, eps=0.0)
    with pytest.raises(ValueError):
        PowerTail(SquareWell(1.0, 1.0), amplitude=1.0, eps=-0.5)


def test_power_tail_values():
    p = PowerTail(SquareWell(2.0, 1.0), amplitude=0.5, eps=1.0)
    assert p.value(0.5) == 2.0
    assert p.value(2.0) == pytest.approx(0.5 * 2.0 ** (-4.0))
    assert math.isinf(p.range_R0)


def test_units_validation():
    with pytest.raises(ValueError):
        Units(mu=0.0)
    with pytest.raises(ValueError):
        Units(mu=1.0, charged_gas_convention=True)   # convention fixes mu = 1/2
    assert CHARGED_UNITS.mu == 0.5


def test_mixed_convention_rejected():
    with pytest.raises(ValueError):
        CHARGED_UNITS.require_dilute("test op")


def test_harmonic_trap_ground_state_energy():
    # -mu Lap + sum k_i x_i^2 has eigenvalue sum sqrt(mu k_i)
    trap = HarmonicTrap(k=(1.0, 4.0, 9.0))
    assert trap.ground_state_energy(Units(), 3) == pytest.approx(1 + 2 + 3)
    iso = HarmonicTrap(k=(2.0,))
    assert iso.ground_state_energy(Units(), 3) == pytest.approx(3 * math.sqrt(2))


def test_box_trap_validation():
    with pytest.raises(ValueError):
        BoxTrap(-1.0)


def test_potential_from_mapping():
    p = potential_from_mapping({"kind": "square_well", "height": "2.0", "range": "1.5"})
    assert isinstance(p, SquareWell)
    assert p.height == 2.0 and p.range_ == 1.5


def test_potential_mapping_unknown_key_named():
    with pytest.raises(ValueError, match="bogus"):
        potential_from_mapping({"kind": "hard_core", "radius": "1.0", "bogus": "3"})


def test_potential_config_file(tmp_path):
    cfg = tmp_path / "pot.cfg"
    cfg.write_text("[potential]\nkind = hard_core\nradius = 1.25\n")
    p = load_potential_config(cfg)
    assert isinstance(p, HardCore)
    assert p.radius == 1.25
