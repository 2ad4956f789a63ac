"""Zero-energy two-body scattering: radial solves and scattering-length extraction.

The 3d reduced radial problem is  -2*mu*u'' + v(r)*u = 0  with u(0) = 0; the
scattering length a is fixed by the asymptotic profile u(r) = c*(r - a) beyond
the range of v.  In 2d the regular solution behaves like psi(r) = c*ln(r/a)
outside the range, and the solve runs on a logarithmic grid where that
asymptote is exactly linear.

Also here: the first Born approximation integral, the partial-integration
energy identity check, and a numerical verifier for the hard/soft potential
inequality (3d and 2d variants) used by the lower-bound machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .potentials import PairPotential, Units

__all__ = [
    "ScatteringSolution",
    "IdentityCheck",
    "ScatteringError",
    "FitWindowError",
    "NoLogarithmError",
    "DivergentIntegralError",
    "solve_zero_energy",
    "scattering_length_3d",
    "scattering_length_2d",
    "born_approximation",
    "energy_identity_check",
    "UniformShell",
    "DeltaShell",
    "verify_dyson_lemma",
    "seeded_test_profiles",
]


class ScatteringError(ValueError):
    pass


class FitWindowError(ScatteringError):
    """Extraction window overlaps the potential range."""


class NoLogarithmError(ScatteringError):
    """2d profile carries no logarithmic growth (v = 0); no length to extract."""


class DivergentIntegralError(ScatteringError):
    """Born integral diverges (hard core)."""


@dataclass
class ScatteringSolution:
    """Radial zero-energy profile plus the extracted scattering length.

    `u` is u0(r) in 3d and psi(r) in 2d; the overall normalization is
    arbitrary and recorded in `slope` (the fitted asymptotic coefficient c).
    """

    dimension: int
    grid: np.ndarray
    u: np.ndarray
    a: float
    fit_window: tuple
    residual: float
    slope: float
    potential: PairPotential
    units: Units
    refinements: int = 0
    r_cut: float | None = None


# ---------------------------------------------------------------------------
# Numerov integration on piecewise-uniform grids
#
# u'' = f(r) u is advanced by (1 - T_{i+1}) u_{i+1} = (2 + 10 T_i) u_i
# - (1 - T_{i-1}) u_{i-1}, T = h^2 f / 12 (4th order).  Discontinuities of v
# are kept on segment boundaries; a segment change restarts the recurrence
# with a Taylor step consistent to the same order.


def _numerov_segment(f, u_prev, u_curr, h):
    t = [h * h * fi / 12.0 for fi in f]
    u = [u_prev, u_curr]
    up, uc = u_prev, u_curr
    for i in range(1, len(f) - 1):
        un = ((2.0 + 10.0 * t[i]) * uc - (1.0 - t[i - 1]) * up) / (1.0 - t[i + 1])
        u.append(un)
        up, uc = uc, un
    return u


def _left_derivative(u_m2, u_m1, u_0, f_m2, f_m1, f_0, h):
    # O(h^4) one-sided derivative, curvature terms supplied by the ODE
    ddd = (3.0 * f_0 * u_0 - 4.0 * f_m1 * u_m1 + f_m2 * u_m2) / (2.0 * h)
    return (15.0 * u_0 - 16.0 * u_m1 + u_m2
            + 6.0 * h * h * f_0 * u_0 - (4.0 / 3.0) * h ** 3 * ddd) / (14.0 * h)


def _rk4_first_node(u0, du0, r0, h, f_of_x):
    # one grid step of u'' = f u as two RK4 half-steps (local O(h^5));
    # f is smooth on the open segment so interior stage points are safe
    y, w, x = u0, du0, r0
    hh = 0.5 * h
    for _ in range(2):
        k1y, k1w = w, f_of_x(x + 1e-9 * h) * y
        k2y, k2w = w + hh / 2 * k1w, f_of_x(x + hh / 2) * (y + hh / 2 * k1y)
        k3y, k3w = w + hh / 2 * k2w, f_of_x(x + hh / 2) * (y + hh / 2 * k2y)
        k4y, k4w = w + hh * k3w, f_of_x(x + hh * (1 - 1e-9)) * (y + hh * k3y)
        y, w = (y + hh / 6 * (k1y + 2 * k2y + 2 * k3y + k4y),
                w + hh / 6 * (k1w + 2 * k2w + 2 * k3w + k4w))
        x += hh
    return y


def _segment_edges(p: PairPotential, r_start: float, r_end: float) -> list:
    """Segment boundaries: potential breakpoints inside (r_start, r_end)."""
    pts = set()
    kind = getattr(p, "kind", "")
    if kind == "square_well":
        pts.add(p.range_R0)
    elif kind == "tabulated":
        pts.update(p.r_grid)
    elif kind == "power_tail":
        pts.update(_segment_edges(p.base, r_start, r_end))
        pts.add(p.tail_start)
    inner = sorted(x for x in pts if r_start < x < r_end)
    return [r_start] + inner + [r_end]


def _integrate_radial(segments, f_of_r, seed_slope_zero=False):
    """Run Numerov across uniform segments [(lo, hi, n), ...]; returns (grid, u).

    Seeds u = 0 with unit slope at the left edge, or unit value with zero
    slope when `seed_slope_zero` (regular 2d start).
    """
    grids, us = [], []
    u_curr = None
    du = None
    for (lo, hi, n) in segments:
        n = max(8, int(n))
        h = (hi - lo) / n
        r = [lo + i * h for i in range(n + 1)]
        # endpoints take one-sided limits so discontinuities of v stay on
        # segment boundaries and f is smooth at every sampled point
        f = [f_of_r(lo + 1e-9 * h)] + [f_of_r(x) for x in r[1:-1]] + [f_of_r(hi - 1e-9 * h)]
        if u_curr is None:
            u0, du = (1.0, 0.0) if seed_slope_zero else (0.0, 1.0)
        else:
            u0 = u_curr
        u1 = _rk4_first_node(u0, du, lo, h, f_of_r)
        seg = _numerov_segment(f, u0, u1, h)
        du = _left_derivative(seg[-3], seg[-2], seg[-1], f[-3], f[-2], f[-1], h)
        u_curr = seg[-1]
        if grids:
            grids.append(np.asarray(r[1:]))
            us.append(np.asarray(seg[1:]))
        else:
            grids.append(np.asarray(r))
            us.append(np.asarray(seg))
    return np.concatenate(grids), np.concatenate(us)


def _tail_cutoff(p: PairPotential, units: Units) -> float:
    """Truncation radius beyond which the remaining tail shifts a by < 1e-10*a.

    The shift is estimated through the Born integral of the tail,
    da = amplitude * rc^-eps / (2 mu eps).
    """
    finite_part = integrate.quad(
        lambda r: p.base.value(r) * r * r, 0.0 if not p.has_hard_core else p.core_radius,
        p.tail_start, limit=200)[0]
    a_scale = max(finite_part / (2.0 * units.mu), p.tail_start)
    rc = (p.amplitude / (2.0 * units.mu * p.eps * 1e-10 * a_scale)) ** (1.0 / p.eps)
    return max(rc, 4.0 * p.tail_start)


def _power_tail_edges(p, units, r_fit_span):
    """Geometric cascade of segments out to the truncation radius."""
    rc = _tail_cutoff(p, units)
    start = p.core_radius if p.has_hard_core else 0.0
    edges = _segment_edges(p.base, start, p.tail_start)
    r = p.tail_start
    while r < rc:
        r = min(2.0 * r, rc)
        edges.append(r)
    edges.append(rc * (1.0 + r_fit_span))
    return edges, rc


def solve_zero_energy(p: PairPotential, units: Units, r_max: float,
                      n_points: int = 2000, dimension: int = 3,
                      tol_a: float = 1e-10, max_refine: int = 8) -> ScatteringSolution:
    """Integrate the zero-energy equation outward and extract a.

    The step is refined (points doubled) until the extracted scattering
    length moves by less than `tol_a` relative.  Hard cores start the
    integration at the core edge with u = 0 there.
    """
    units.require_dilute("scattering solve")
    if dimension not in (2, 3):
        raise ScatteringError(f"dimension must be 2 or 3, got {dimension}")
    if n_points < 100:
        raise ScatteringError("need n_points >= 100")
    r_cut = None
    if p.kind == "power_tail":
        edges, r_cut = _power_tail_edges(p, units, r_fit_span=0.5)
    else:
        if not math.isfinite(p.range_R0):
            raise ScatteringError("potential range is infinite and not a power tail")
        if r_max <= 1.25 * p.range_R0:
            raise ScatteringError(
                f"r_max = {r_max} does not clear the potential range {p.range_R0}")
        start = p.core_radius if p.has_hard_core else 0.0
        if r_max <= start * 1.5:
            raise ScatteringError("r_max must exceed the hard-core radius comfortably")
        edges = _segment_edges(p, start, r_max)

    mu2 = 2.0 * units.mu

    if dimension == 3:
        def f_of_r(r):
            v = p.value(r) if r > 0 else p.value(1e-300)
            if not math.isfinite(v):
                raise ScatteringError(f"non-finite potential inside the integration domain at r={r}")
            return v / mu2

        # density-based counts in the core region; the power-tail cascade
        # (v tiny, u nearly linear) gets a fixed budget per doubling segment
        core_end = p.tail_start if p.kind == "power_tail" else edges[-1]
        span_core = core_end - edges[0]
        core_edges = [e for e in edges if e < core_end] + [core_end]
        ppu0 = max(n_points / span_core, 6.0 * _stiffness(core_edges, f_of_r))
        base_counts = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            if p.kind == "power_tail" and lo >= p.tail_start * (1 - 1e-12):
                base_counts.append(48)
            else:
                base_counts.append(int(math.ceil((hi - lo) * ppu0)))

        def solve_at(mult):
            segments = [(lo, hi, n * mult) for (lo, hi), n in
                        zip(zip(edges[:-1], edges[1:]), base_counts)]
            grid, u = _integrate_radial(segments, f_of_r)
            a, c, window, residual = _extract_3d(grid, u, p, r_cut)
            return grid, u, a, c, window, residual

        a_floor = (r_cut if r_cut is not None else edges[-1]) * 1e-8
        sol, it = _refine(solve_at, 1.0, tol_a, a_floor, max_refine)
        grid, u, a, c, window, residual = sol
        return ScatteringSolution(3, grid, u, a, window, residual, c, p, units,
                                  refinements=it, r_cut=r_cut)

    # 2d: work in s = ln r, where psi_ss = r^2 v/(2 mu) psi
    if p.has_hard_core:
        s_lo = math.log(p.core_radius)
        seed_flat = False
    else:
        r_min = (p.tail_start if p.kind == "power_tail" else p.range_R0) * 1e-4
        s_lo = math.log(r_min)
        seed_flat = True
    s_edges = [s_lo] + [math.log(x) for x in edges[1:] if math.log(x) > s_lo]

    def f_of_s(s):
        r = math.exp(s)
        v = p.value(r)
        if not math.isfinite(v):
            raise ScatteringError(f"non-finite potential at r={r}")
        return r * r * v / mu2

    span = s_edges[-1] - s_edges[0]
    ppu0 = max(n_points / span, 6.0 * _stiffness(s_edges, f_of_s))
    base_counts = [int(math.ceil((hi - lo) * ppu0))
                   for lo, hi in zip(s_edges[:-1], s_edges[1:])]

    def solve_at(mult):
        segments = [(lo, hi, n * mult) for (lo, hi), n in
                    zip(zip(s_edges[:-1], s_edges[1:]), base_counts)]
        s_grid, psi = _integrate_radial(segments, f_of_s,
                                        seed_slope_zero=seed_flat)
        grid = np.exp(s_grid)
        a, c, window, residual = _extract_2d(grid, psi, p, r_cut)
        return grid, psi, a, c, window, residual

    sol, it = _refine(solve_at, 1.0, tol_a, 1e-12, max_refine)
    grid, psi, a, c, window, residual = sol
    return ScatteringSolution(2, grid, psi, a, window, residual, c, p, units,
                              refinements=it, r_cut=r_cut)


def _stiffness(edges, f_of_x):
    """sqrt(max f) sampled per segment: local wavenumber of u'' = f u."""
    fmax = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        for t in (0.25, 0.5, 0.75):
            fmax = max(fmax, abs(f_of_x(lo + t * (hi - lo))))
    return math.sqrt(fmax)


def _refine(solve_at, resolution, tol_a, a_floor, max_refine):
    """Double the resolution until a settles; back off at the roundoff floor.

    Numerov error first falls like h^3..h^4 and then rises again when the
    recurrence's accumulated roundoff dominates; once the inter-resolution
    delta stops shrinking, the previous iterate is the better one.
    """
    prev = None
    prev_delta = None
    for it in range(max_refine + 1):
        cur = solve_at(resolution)
        if prev is not None:
            delta = abs(cur[2] - prev[2])
            if delta <= tol_a * max(abs(cur[2]), a_floor):
                return cur, it
            if prev_delta is not None and delta >= prev_delta:
                return prev, it - 1
            prev_delta = delta
        prev = cur
        resolution *= 2.0
    return cur, max_refine


def _outer_window(grid, frac=0.2):
    lo = grid[-1] - frac * (grid[-1] - grid[0])
    mask = grid >= lo
    if mask.sum() < 8:
        mask = np.zeros_like(mask, dtype=bool)
        mask[-8:] = True
    return mask


def _effective_range(p: PairPotential, r_cut) -> float:
    return r_cut if r_cut is not None else p.range_R0


def _extract_3d(grid, u, p, r_cut=None):
    mask = _outer_window(grid)
    if r_cut is not None:
        mask &= grid >= 1.05 * r_cut     # fit only past the tail truncation
    if grid[mask][0] <= _effective_range(p, r_cut) * (1.0 - 1e-12):
        raise FitWindowError("fit window reaches into the potential range; increase r_max")
    r_w, u_w = grid[mask], u[mask]
    # least squares u = c*r - c*a
    A = np.vstack([r_w, np.ones_like(r_w)]).T
    (c, d), *_ = np.linalg.lstsq(A, u_w, rcond=None)
    scale = np.max(np.abs(u_w))
    if abs(c) * (r_w[-1] - r_w[0]) < 1e-13 * scale:
        raise ScatteringError("u0' vanishes on the fit window")
    a = -d / c
    residual = float(np.sqrt(np.mean((u_w - A @ (c, d)) ** 2)) / scale)
    return float(a), float(c), (float(r_w[0]), float(r_w[-1])), residual


def _extract_2d(grid, psi, p, r_cut=None):
    mask = _outer_window(np.log(grid))
    if r_cut is not None:
        mask = grid >= 1.05 * r_cut      # fit only past the tail truncation
    if grid[mask][0] <= _effective_range(p, r_cut) * (1.0 - 1e-12):
        raise FitWindowError("fit window reaches into the potential range; increase r_max")
    s_w, psi_w = np.log(grid[mask]), psi[mask]
    A = np.vstack([s_w, np.ones_like(s_w)]).T
    (c, d), *_ = np.linalg.lstsq(A, psi_w, rcond=None)
    scale = max(np.max(np.abs(psi_w)), 1e-300)
    if abs(c) * (s_w[-1] - s_w[0]) < 1e-10 * scale:
        raise NoLogarithmError("profile has no logarithmic growth (v = 0?)")
    a = math.exp(-d / c)
    residual = float(np.sqrt(np.mean((psi_w - A @ (c, d)) ** 2)) / scale)
    return float(a), float(c), (float(grid[mask][0]), float(grid[mask][-1])), residual


def scattering_length_3d(s: ScatteringSolution) -> float:
    """a from fitting u0(r) = c (r - a) over the outer window of the profile."""
    if s.dimension != 3:
        raise ScatteringError("3d extraction on a non-3d solution")
    a, _, _, _ = _extract_3d(s.grid, s.u, s.potential, s.r_cut)
    return a


def scattering_length_2d(s: ScatteringSolution) -> float:
    """a from fitting psi(r) = c ln(r/a) outside the range."""
    if s.dimension != 2:
        raise ScatteringError("2d extraction on a non-2d solution")
    a, _, _, _ = _extract_2d(s.grid, s.u, s.potential, s.r_cut)
    return a


# ---------------------------------------------------------------------------


def born_approximation(p: PairPotential, units: Units) -> float:
    """int v(|x|) d^3x, the first Born approximation to 8 pi mu a."""
    units.require_dilute("Born integral")
    if p.has_hard_core:
        raise DivergentIntegralError("Born integral diverges for a hard core")
    if p.kind == "power_tail":
        ts = p.tail_start
        head = integrate.quad(lambda r: p.value(r) * r * r, 0.0, ts, limit=200)[0]
        tail = p.amplitude * ts ** (-p.eps) / p.eps   # int_ts^inf r^{-1-eps}
        return 4.0 * math.pi * (head + tail)
    pieces = _segment_edges(p, 0.0, p.range_R0) if p.range_R0 > 0 else [0.0, 0.0]
    total = 0.0
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        if hi > lo:
            total += integrate.quad(lambda r: p.value(r) * r * r, lo, hi, limit=200)[0]
    return 4.0 * math.pi * total


@dataclass
class IdentityCheck:
    """Partial-integration identity at finite R.

    `ratio` is the boundary expression (u0(R)/(c R))^2, which tends to 1 like
    (1 - a/R)^2; `integral_ratio` is the actual radial quadrature of the
    energy integral divided by 8 pi mu a, which for finite-range potentials
    equals (1 - a/R) exactly (the two agree only in the R -> inf limit).
    """

    ratio: float
    integral_ratio: float
    boundary_ratio: float
    R: float
    a: float
    degenerate: bool


def energy_identity_check(p: PairPotential, units: Units, R: float,
                          n_points: int = 4000) -> IdentityCheck:
    """Check int_{|x|<=R} (2 mu |grad f0|^2 + v f0^2) -> 8 pi mu a.

    f0 = u0/r with u0 normalized so that u0 = r - a asymptotically.  Returns
    both the quadrature of the left side and the boundary-value form.
    """
    units.require_dilute("energy identity")
    if not math.isfinite(p.range_R0):
        raise ScatteringError("energy identity check needs a finite-range potential")
    if R <= p.range_R0:
        raise ScatteringError(f"R = {R} must exceed the potential range {p.range_R0}")
    sol = solve_zero_energy(p, units, r_max=max(2.0 * R, 2.5 * p.range_R0, R + 1.0),
                            n_points=n_points)
    if sol.a <= 1e-8 * R or sol.slope == 0.0:
        # both sides of the identity vanish with a
        return IdentityCheck(math.nan, math.nan, math.nan, R, sol.a, degenerate=True)
    grid, u = sol.grid, sol.u / sol.slope   # now u -> r - a outside the range
    iR = int(np.searchsorted(grid, R))
    iR = min(max(iR, 2), len(grid) - 1)
    r_q = np.append(grid[:iR], R)
    u_q = np.append(u[:iR], np.interp(R, grid, u))
    du = np.gradient(u_q, r_q, edge_order=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        shear = np.where(r_q > 0, du - u_q / r_q, 0.0)
    v_q = np.where(r_q > max(p.core_radius, 0.0), p.value(np.maximum(r_q, 1e-300)), 0.0)
    v_q = np.where(np.isfinite(v_q), v_q, 0.0)   # inside a core u = 0 exactly
    integrand = 2.0 * units.mu * shear**2 + v_q * u_q**2
    lhs = 4.0 * math.pi * float(np.trapezoid(integrand, r_q))
    r_used = float(r_q[-1])
    u_at_R = float(u_q[-1])
    integral_ratio = lhs / (8.0 * math.pi * units.mu * sol.a)
    boundary_ratio = (u_at_R / r_used) ** 2
    return IdentityCheck(ratio=boundary_ratio, integral_ratio=integral_ratio,
                         boundary_ratio=boundary_ratio, R=r_used, a=sol.a,
                         degenerate=False)


# ---------------------------------------------------------------------------
# soft potentials and the hard/soft trade inequality


@dataclass(frozen=True)
class UniformShell:
    """U = const on (r_inner, r_outer), zero elsewhere.

    Normalized so that int U r^2 dr = 1 in 3d, or int U ln(r/a) r dr = 1 in
    2d (the 2d constant depends on the scattering length).
    """

    r_inner: float
    r_outer: float

    def values(self, r, dimension: int, a: float) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if dimension == 3:
            c = 3.0 / (self.r_outer**3 - self.r_inner**3)
        else:
            if self.r_inner < a:
                raise ValueError("2d shell must start outside the scattering length")
            norm = _log_weight_integral(self.r_inner, self.r_outer, a)
            if norm <= 0:
                raise ValueError("degenerate 2d shell normalization")
            c = 1.0 / norm
        return np.where((r > self.r_inner) & (r < self.r_outer), c, 0.0)


@dataclass(frozen=True)
class DeltaShell:
    """Smooth bump of half-width `width` at `radius` (delta-function stand-in).

    cos^2 profile; normalized on the quadrature grid so the constraint
    integral equals 1 exactly for the rule in use.
    """

    radius: float
    width: float

    def values(self, r, dimension: int, a: float) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        x = (r - self.radius) / self.width
        bump = np.where(np.abs(x) < 1.0, np.cos(0.5 * math.pi * x) ** 2, 0.0)
        weight = r**2 if dimension == 3 else np.where(r > 0, np.log(np.maximum(r / a, 1e-300)) * r, 0.0)
        norm = np.trapezoid(bump * weight, r)
        if norm <= 0:
            raise ValueError("bump does not overlap the admissible region")
        return bump / norm


def _log_weight_integral(ri, ro, a):
    # int_ri^ro ln(r/a) r dr
    def F(r):
        return 0.5 * r * r * math.log(r / a) - 0.25 * r * r
    return F(ro) - F(ri)


def verify_dyson_lemma(p: PairPotential, U, psi, R1: float, dimension: int = 3,
                       units: Units = Units(), a: float | None = None,
                       n_quad: int = 4001) -> float:
    """LHS - RHS of the hard/soft inequality on the ball of radius R1.

    3d:  int mu |grad psi|^2 + v psi^2 / 2  >=  mu a int U psi^2
    2d:  same left side                     >=  mu   int U psi^2
    with U supported outside the range of v and normalized by
    int U r^2 dr <= 1 (3d) or int U ln(r/a) r dr <= 1 (2d).

    `psi` is a callable radial profile.  The returned margin must be
    >= -(quadrature tolerance) for every admissible input.
    """
    units.require_dilute("hard/soft inequality")
    if dimension not in (2, 3):
        raise ScatteringError("dimension must be 2 or 3")
    if a is None:
        r_solve = max(3.0 * p.range_R0, R1) if math.isfinite(p.range_R0) else R1
        sol = solve_zero_energy(p, units, r_max=r_solve * 1.5, n_points=1200,
                                dimension=dimension)
        a = sol.a
    r_lo = p.core_radius if p.has_hard_core else 0.0
    r = np.linspace(r_lo, R1, n_quad)
    psi_v = np.asarray(psi(r), dtype=float)
    if not np.all(np.isfinite(psi_v)):
        raise ScatteringError("test profile is not finite on the ball")
    if p.has_hard_core and abs(psi_v[0]) > 1e-12 * max(1.0, np.max(np.abs(psi_v))):
        return math.inf   # infinite core energy: inequality holds trivially
    dpsi = np.gradient(psi_v, r, edge_order=2)
    v = np.where(r > r_lo, p.value(np.maximum(r, 1e-300)), 0.0)
    v = np.where(np.isfinite(v), v, 0.0)
    u_vals = U.values(r, dimension, a)
    if np.any(u_vals < 0):
        raise ScatteringError("soft potential must be nonnegative")
    if np.any((u_vals > 0) & (r < p.range_R0 * (1 - 1e-12))):
        raise ScatteringError("soft potential must vanish inside the range of v")
    # normalization constraint (1% slack: the grid rule smears shell edges)
    if dimension == 3:
        constraint = np.trapezoid(u_vals * r**2, r)
    else:
        logw = np.where(r > 0, np.log(np.maximum(r / a, 1e-300)), 0.0)
        constraint = np.trapezoid(u_vals * logw * r, r)
    if constraint > 1.01:
        raise ScatteringError(
            f"soft potential violates its normalization (integral = {constraint:.4f} > 1)")
    weight = 4.0 * math.pi * r**2 if dimension == 3 else 2.0 * math.pi * r
    lhs = np.trapezoid((units.mu * dpsi**2 + 0.5 * v * psi_v**2) * weight, r)
    coupling = units.mu * a if dimension == 3 else units.mu
    rhs = coupling * np.trapezoid(u_vals * psi_v**2 * weight, r)
    return float(lhs - rhs)


def seeded_test_profiles(seed: int, count: int, r_scale: float,
                         vanish_below: float | None = None) -> list:
    """Reproducible family of smooth positive radial profiles for the verifier.

    Each profile is a positive constant plus a few Gaussian bumps; with
    `vanish_below` set, a smooth mollifier pins the profile to zero at and
    below that radius (hard-core admissibility).
    """
    rng = np.random.default_rng(seed)
    profiles = []
    for _ in range(count):
        base = rng.uniform(0.2, 1.0)
        amps = rng.uniform(0.1, 1.0, size=3)
        centers = rng.uniform(0.0, 1.2 * r_scale, size=3)
        widths = rng.uniform(0.1 * r_scale, 0.5 * r_scale, size=3)

        def make(base=base, amps=amps, centers=centers, widths=widths):
            def profile(r):
                r = np.asarray(r, dtype=float)
                val = base + sum(A * np.exp(-((r - m) ** 2) / (2 * w * w))
                                 for A, m, w in zip(amps, centers, widths))
                if vanish_below is not None:
                    cut = np.where(
                        r >= vanish_below,
                        1.0 - np.exp(-((r - vanish_below) / (0.3 * r_scale)) ** 2),
                        0.0)
                    val = val * cut
                return val
            return profile

        profiles.append(make())
    return profiles
