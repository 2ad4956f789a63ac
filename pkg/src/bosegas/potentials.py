"""Pair potentials, trap potentials and the unit conventions shared by all solvers.

Unit conventions
----------------
Dilute-gas modules work in units where the kinetic coefficient mu (= hbar^2/2m
in physical units) is an explicit positive parameter, defaulting to 1.  The
charged-gas module fixes hbar = m = e = 1, so its kinetic term is -(1/2)Lap
and mu = 1/2.  Conversions between the two are pure multiplicative rescalings
of lengths and energies; they happen nowhere except through the `Units` value
passed around explicitly.  Mixing conventions in one computation is rejected.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Units",
    "DILUTE_UNITS",
    "CHARGED_UNITS",
    "PairPotential",
    "HardCore",
    "SquareWell",
    "Tabulated",
    "PowerTail",
    "evaluate_potential",
    "TrapPotential",
    "HarmonicTrap",
    "BoxTrap",
    "TabulatedRadialTrap",
    "pair_potential",
    "potential_from_mapping",
    "load_potential_config",
]


@dataclass(frozen=True)
class Units:
    """Kinetic coefficient mu (energy*length^2) and the active convention."""

    mu: float = 1.0
    charged_gas_convention: bool = False

    def __post_init__(self):
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise ValueError(f"mu must be positive and finite, got {self.mu}")
        if self.charged_gas_convention and self.mu != 0.5:
            # hbar = m = e = 1 makes the kinetic term -(1/2)Lap, i.e. mu = 1/2
            raise ValueError("charged-gas convention fixes mu = 1/2")

    def require_dilute(self, where: str = "operation"):
        if self.charged_gas_convention:
            raise ValueError(f"{where} uses the dilute-gas convention; "
                             "got charged-gas units")


DILUTE_UNITS = Units(mu=1.0)
CHARGED_UNITS = Units(mu=0.5, charged_gas_convention=True)


class PairPotential:
    """Nonnegative spherically symmetric two-body potential v(r).

    Subclasses provide `value(r)` (vectorized; returns +inf inside a hard
    core) and `range_R0` (smallest radius beyond which v = 0, or inf for
    power-law tails).
    """

    kind: str = "abstract"

    @property
    def range_R0(self) -> float:
        raise NotImplementedError

    @property
    def core_radius(self) -> float:
        """Radius of the hard core, 0 if none."""
        return 0.0

    @property
    def has_hard_core(self) -> bool:
        return self.core_radius > 0

    def value(self, r):
        raise NotImplementedError

    def __call__(self, r):
        return self.value(r)


@dataclass(frozen=True)
class HardCore(PairPotential):
    """v(r) = inf for r < radius, 0 otherwise."""

    radius: float
    kind: str = field(default="hard_core", init=False)

    def __post_init__(self):
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"hard-core radius must be positive, got {self.radius}")

    @property
    def range_R0(self) -> float:
        return self.radius

    @property
    def core_radius(self) -> float:
        return self.radius

    def value(self, r):
        r = np.asarray(r, dtype=float)
        out = np.where(r < self.radius, np.inf, 0.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class SquareWell(PairPotential):
    """Repulsive step: v(r) = height for r < range_, 0 beyond."""

    height: float
    range_: float
    kind: str = field(default="square_well", init=False)

    def __post_init__(self):
        if self.height < 0 or not math.isfinite(self.height):
            raise ValueError(f"square-well height must be >= 0, got {self.height}")
        if not (self.range_ > 0 and math.isfinite(self.range_)):
            raise ValueError(f"square-well range must be positive, got {self.range_}")

    @property
    def range_R0(self) -> float:
        return self.range_

    def value(self, r):
        r = np.asarray(r, dtype=float)
        out = np.where(r < self.range_, self.height, 0.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class Tabulated(PairPotential):
    """Samples of v(r) on a strictly increasing radial grid.

    Linear interpolation between samples (preserves nonnegativity); v = 0
    beyond the last sample and v = v(first sample) below it.
    """

    r_grid: tuple
    v_grid: tuple
    kind: str = field(default="tabulated", init=False)

    def __post_init__(self):
        r = np.asarray(self.r_grid, dtype=float)
        v = np.asarray(self.v_grid, dtype=float)
        if r.ndim != 1 or r.size < 2 or r.shape != v.shape:
            raise ValueError("tabulated potential needs matching 1d grids with >= 2 samples")
        if not np.all(np.diff(r) > 0):
            raise ValueError("tabulated radial grid must be strictly increasing")
        if r[0] <= 0:
            raise ValueError("tabulated radial grid must start at r > 0")
        if not np.all(np.isfinite(v)):
            raise ValueError("tabulated samples must be finite")
        if np.any(v < 0):
            raise ValueError("tabulated samples must be nonnegative")
        object.__setattr__(self, "r_grid", tuple(float(x) for x in r))
        object.__setattr__(self, "v_grid", tuple(float(x) for x in v))

    @property
    def range_R0(self) -> float:
        return self.r_grid[-1]

    def value(self, r):
        r_arr = np.asarray(r, dtype=float)
        out = np.interp(r_arr, self.r_grid, self.v_grid,
                        left=self.v_grid[0], right=0.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class PowerTail(PairPotential):
    """Finite-range part plus an amplitude * r^-(3+eps) tail, eps > 0.

    The tail starts where the finite-range part ends; slower decay than 1/r^3
    (eps <= 0) would make the scattering length infinite and is rejected.
    """

    base: PairPotential
    amplitude: float
    eps: float
    kind: str = field(default="power_tail", init=False)

    def __post_init__(self):
        if not (self.eps > 0):
            raise ValueError(f"power tail requires eps > 0, got {self.eps}")
        if not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise ValueError(f"tail amplitude must be >= 0 and finite, got {self.amplitude}")
        if not math.isfinite(self.base.range_R0):
            raise ValueError("power tail must be attached to a finite-range part")

    @property
    def tail_start(self) -> float:
        return self.base.range_R0

    @property
    def range_R0(self) -> float:
        return math.inf

    @property
    def core_radius(self) -> float:
        return self.base.core_radius

    def value(self, r):
        r_arr = np.asarray(r, dtype=float)
        inner = np.asarray(self.base.value(r_arr), dtype=float)
        with np.errstate(divide="ignore"):
            tail = self.amplitude * np.where(r_arr > 0, r_arr, np.inf) ** (-(3.0 + self.eps))
        out = np.where(r_arr <= self.tail_start, inner, tail)
        return out if out.ndim else float(out)


def evaluate_potential(p: PairPotential, r) -> float:
    """v(r); +inf inside a hard core.  Rejects r <= 0."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise ValueError("potential evaluation requires r > 0")
    return p.value(r)


# ---------------------------------------------------------------------------
# traps

class TrapPotential:
    """External confining potential V(x) for the GP solver."""

    form: str = "abstract"
    confining: bool = True

    def radial(self, r):
        """V as a function of radius (spherically symmetric traps only)."""
        raise NotImplementedError(f"{self.form} trap is not spherically symmetric")

    def on_axes(self, axes):
        """V on a tensor grid given per-axis coordinate arrays."""
        raise NotImplementedError


@dataclass(frozen=True)
class HarmonicTrap(TrapPotential):
    """V(x) = sum_i k_i x_i^2.  Isotropic if all spring constants agree.

    For -mu*Lap + k r^2 the single-particle ground state energy is
    sum_i sqrt(mu k_i) and the oscillator length per axis is (mu/k_i)^(1/4).
    """

    k: tuple
    form: str = field(default="harmonic", init=False)
    confining: bool = field(default=True, init=False)

    def __post_init__(self):
        k = tuple(float(x) for x in (self.k if np.iterable(self.k) else (self.k,)))
        if any(x <= 0 for x in k):
            raise ValueError("harmonic spring constants must be positive")
        object.__setattr__(self, "k", k)

    @property
    def isotropic(self) -> bool:
        return len(set(self.k)) == 1

    def ground_state_energy(self, units: Units, dimension: int | None = None) -> float:
        """Single-particle eigenvalue of -mu*Lap + V."""
        k = self.k if dimension is None else self._expand(dimension)
        return sum(math.sqrt(units.mu * ki) for ki in k)

    def oscillator_length(self, units: Units) -> float:
        return max((units.mu / ki) ** 0.25 for ki in self.k)

    def _expand(self, dimension: int) -> tuple:
        if len(self.k) == dimension:
            return self.k
        if len(self.k) == 1:
            return self.k * dimension
        raise ValueError(f"trap has {len(self.k)} axes, problem has {dimension}")

    def radial(self, r):
        if not self.isotropic:
            raise ValueError("radial form requires an isotropic harmonic trap")
        return self.k[0] * np.asarray(r, dtype=float) ** 2

    def on_axes(self, axes):
        k = self._expand(len(axes))
        grids = np.meshgrid(*axes, indexing="ij")
        return sum(ki * g**2 for ki, g in zip(k, grids))


@dataclass(frozen=True)
class BoxTrap(TrapPotential):
    """V = 0 inside a box of side L, infinite walls outside.

    The walls live in the grid's boundary condition, not in V; the default
    Neumann discretization realizes the homogeneous-gas limit where the
    minimizer is the constant profile.
    """

    side: float
    form: str = field(default="box", init=False)
    confining: bool = field(default=True, init=False)

    def __post_init__(self):
        if not (self.side > 0 and math.isfinite(self.side)):
            raise ValueError(f"box side must be positive, got {self.side}")

    def on_axes(self, axes):
        grids = np.meshgrid(*axes, indexing="ij")
        return np.zeros_like(grids[0])


@dataclass(frozen=True)
class TabulatedRadialTrap(TrapPotential):
    """Radially symmetric trap from samples, linearly interpolated."""

    r_grid: tuple
    v_grid: tuple
    confining: bool = True
    form: str = field(default="tabulated", init=False)

    def __post_init__(self):
        r = np.asarray(self.r_grid, dtype=float)
        v = np.asarray(self.v_grid, dtype=float)
        if not np.all(np.diff(r) > 0):
            raise ValueError("trap radial grid must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("trap samples must be finite")
        if self.confining and v[-1] <= v[0]:
            raise ValueError("confining trap must grow toward the grid edge")
        object.__setattr__(self, "r_grid", tuple(float(x) for x in r))
        object.__setattr__(self, "v_grid", tuple(float(x) for x in v))

    def radial(self, r):
        # beyond the table keep growing linearly so V -> inf is respected
        r_arr = np.asarray(r, dtype=float)
        slope = ((self.v_grid[-1] - self.v_grid[-2])
                 / (self.r_grid[-1] - self.r_grid[-2]))
        inside = np.interp(r_arr, self.r_grid, self.v_grid)
        beyond = self.v_grid[-1] + slope * (r_arr - self.r_grid[-1])
        out = np.where(r_arr <= self.r_grid[-1], inside, beyond)
        return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# plain-text construction (one section per potential, key = value pairs)

_PAIR_KEYS = {
    "hard_core": {"radius"},
    "square_well": {"height", "range"},
    "tabulated": {"r", "v"},
    "power_tail": {"amplitude", "eps", "height", "range"},
}


def pair_potential(kind: str, **params) -> PairPotential:
    """Factory used by the config layer and the CLI."""
    if kind == "hard_core":
        return HardCore(radius=params["radius"])
    if kind == "square_well":
        return SquareWell(height=params["height"], range_=params["range"])
    if kind == "tabulated":
        return Tabulated(r_grid=tuple(params["r"]), v_grid=tuple(params["v"]))
    if kind == "power_tail":
        base = SquareWell(height=params.get("height", 0.0), range_=params["range"])
        return PowerTail(base=base, amplitude=params["amplitude"], eps=params["eps"])
    raise ValueError(f"unknown potential kind '{kind}'")


def potential_from_mapping(mapping) -> PairPotential:
    """Build a pair potential from one config section (string values)."""
    data = dict(mapping)
    kind = data.pop("kind", None)
    if kind is None:
        raise ValueError("potential section needs a 'kind' key")
    if kind not in _PAIR_KEYS:
        raise ValueError(f"unknown potential kind '{kind}'")
    unknown = set(data) - _PAIR_KEYS[kind]
    if unknown:
        raise ValueError(f"unknown key '{sorted(unknown)[0]}' for potential kind '{kind}'")
    parsed = {}
    for key, raw in data.items():
        if key in ("r", "v"):
            parsed[key] = tuple(float(tok) for tok in str(raw).replace(",", " ").split())
        else:
            parsed[key] = float(raw)
    return pair_potential(kind, **parsed)


def load_potential_config(path, section: str = "potential") -> PairPotential:
    """Read a key = value config file and build the named potential section."""
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise ValueError(f"cannot read potential config {path!r}")
    if section not in cp:
        raise ValueError(f"config {path!r} has no [{section}] section")
    return potential_from_mapping(cp[section])
