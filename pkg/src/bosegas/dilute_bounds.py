"""Explicit energy bounds for the dilute gas and their error-constant optimization.

Everything is expressed through the dimensionless gas parameter
Y = 4 pi rho a^3 / 3 (3d) or rho a^2 (2d) and the ratio e0/(4 pi mu rho a).
The lower-bound pipeline composes: kinetic split epsilon, the hard->soft
potential trade with shell radius R, a cubic cell of side ell with Neumann
walls, a first-order expectation in the cell, and Temple's inequality with
spectral gap eps*pi*mu/ell^2 (the printed convention; eps*pi^2*mu/ell^2 is
available as an option, see `gap_convention`).

All core formulas run either in double precision or, with extended=True, in
mpmath arithmetic; the tiny-Y paths (Y <= 1e-16) lose nothing in double but
the extended path exists to prove it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .potentials import Units

__all__ = [
    "GasParameter",
    "CellParameters",
    "TempleFactors",
    "BoundReport",
    "BoundsError",
    "upper_bound_ratio",
    "upper_bound_finite_box",
    "dyson_bounds_hard_sphere",
    "DYSON_LOWER_CONSTANT",
    "fixed_R_infimum_bound",
    "SCHICK_2D_ERROR_EXPONENTS",
    "first_order_expectation",
    "temple_K",
    "ansatz_parameters",
    "lower_bound_ratio",
    "lower_bound_finite_box",
    "cell_occupancy_minimize",
    "superadditivity_check",
    "SuperadditivityResult",
    "exponent_conditions",
    "exponent_chain",
    "PAPER_EXPONENTS",
    "optimize_error_constant",
    "OptimizedConstants",
    "lhy_expansion",
    "LHY_SQRT_COEFF",
    "LHY_XLOGX_COEFF",
    "schick_2d",
    "schick_2d_pairwise_rule",
]


class BoundsError(ValueError):
    pass


def _scalars(extended: bool, *values):
    if extended:
        return (mp.pi,) + tuple(mp.mpf(v) for v in values)
    return (math.pi,) + tuple(float(v) for v in values)


@dataclass(frozen=True)
class GasParameter:
    """Density rho, scattering length a and the diluteness Y they imply."""

    rho: float
    a: float
    dimension: int = 3

    def __post_init__(self):
        if self.rho < 0 or self.a < 0:
            raise BoundsError("density and scattering length must be nonnegative")
        if self.dimension not in (2, 3):
            raise BoundsError("dimension must be 2 or 3")

    @property
    def Y(self) -> float:
        if self.dimension == 3:
            return 4.0 * math.pi * self.rho * self.a**3 / 3.0
        return self.rho * self.a**2

    @classmethod
    def from_Y(cls, Y: float, a: float = 1.0, dimension: int = 3) -> "GasParameter":
        if Y < 0:
            raise BoundsError("Y must be nonnegative")
        if dimension == 3:
            rho = 3.0 * Y / (4.0 * math.pi * a**3)
        else:
            rho = Y / a**2
        return cls(rho=rho, a=a, dimension=dimension)


# ---------------------------------------------------------------------------
# upper bounds


def upper_bound_ratio(Y, extended: bool = False):
    """Thermodynamic upper bound on e0/(4 pi mu rho a):
    (1 - Y^(1/3) + Y^(2/3) - Y/2) / (1 - Y^(1/3))^8, valid for 0 <= Y < 1.
    """
    _, Yv = _scalars(extended, Y)
    if Yv < 0 or Yv >= 1:
        raise BoundsError(f"upper bound needs 0 <= Y < 1, got {Y}")
    one = Yv * 0 + 1
    s = Yv ** (one / 3)
    return (1 - s + s * s - Yv / 2) / (1 - s) ** 8


def upper_bound_finite_box(N: int, L: float, a: float, units: Units,
                           b: float | None = None, finite_range: bool = False,
                           R0: float = 0.0, dirichlet_constant: float = 0.0):
    """Finite-box upper bound on E0(N, L)/N.

    rho1 = (N-1)/L^3 and b = (4 pi rho1/3)^(-1/3) unless given explicitly.
    The default form requires b > a; with `finite_range` the milder form
    (valid for b > R0) replaces it.  With Dirichlet walls an additive
    (const)/L^2 appears whose constant is not pinned down; it defaults to 0
    and is exposed as `dirichlet_constant`.
    """
    units.require_dilute("finite-box upper bound")
    if N < 2:
        raise BoundsError("need at least two particles")
    rho1 = (N - 1) / L**3
    if b is None:
        b = (4.0 * math.pi * rho1 / 3.0) ** (-1.0 / 3.0)
    x = a / b
    if finite_range:
        if b <= R0:
            raise BoundsError(f"improved form needs b > R0, got b={b}, R0={R0}")
        ratio = (1 - x**2 + 0.5 * x**3) / (1 - x) ** 4
    else:
        if b <= a:
            raise BoundsError(f"bound invalid for b <= a (b={b}, a={a})")
        ratio = (1 - x + x**2 + 0.5 * x**3) / (1 - x) ** 8
    return 4.0 * math.pi * units.mu * rho1 * a * ratio + dirichlet_constant / L**2


DYSON_LOWER_CONSTANT = 1.0 / (10.0 * math.sqrt(2.0))


def dyson_bounds_hard_sphere(Y: float) -> tuple:
    """The 1957 hard-sphere pair: 1/(10 sqrt 2) <= e0/(4 pi mu rho a)
    <= (1 + 2 Y^(1/3)) / (1 - Y^(1/3))^2."""
    if Y < 0 or Y >= 1:
        raise BoundsError(f"need 0 <= Y < 1, got {Y}")
    s = Y ** (1.0 / 3.0)
    return DYSON_LOWER_CONSTANT, (1.0 + 2.0 * s) / (1.0 - s) ** 2


def fixed_R_infimum_bound(R: float, rho: float, A: float, B: float) -> float:
    """Geometric floor A/R^3 - B/(rho R^6) on the nearest-neighbor soft sum.

    The constants A and B are not pinned down anywhere; they must be supplied
    by the caller (no defaults are claimed).
    """
    if R <= 0 or rho <= 0:
        raise BoundsError("need R > 0 and rho > 0")
    return A / R**3 - B / (rho * R**6)


# ---------------------------------------------------------------------------
# lower-bound pipeline


def first_order_expectation(n: float, ell: float, R: float, R0: float,
                            rho_cell: float | None = None) -> tuple:
    """Two-sided bounds on <W_R>_0 / n in a Neumann cell.

    upper: 4 pi rho (1 - 1/n)
    lower: upper * (1 - 2R/ell)^3 / (1 + 4 pi rho (1 - 1/n)(R^3 - R0^3)/3)
    with rho = n/ell^3 unless `rho_cell` overrides it.
    """
    if not (ell > 2.0 * R > 2.0 * R0 >= 0.0):
        raise BoundsError(f"need ell > 2R > 2R0 >= 0, got ell={ell}, R={R}, R0={R0}")
    if n < 1:
        raise BoundsError("need n >= 1")
    rho = n / ell**3 if rho_cell is None else rho_cell
    pairs = 1.0 - 1.0 / n
    upper = 4.0 * math.pi * rho * pairs
    geometry = (1.0 - 2.0 * R / ell) ** 3
    crowding = 1.0 + 4.0 * math.pi * rho * pairs * (R**3 - R0**3) / 3.0
    return upper * geometry / crowding, upper


@dataclass(frozen=True)
class TempleFactors:
    """K(n, ell) and its multiplicative pieces; invalid values clamp to 0."""

    value: float
    valid: bool
    kinetic: float          # 1 - epsilon
    geometry: float         # (1 - 2R/ell)^3
    crowding: float         # (1 + (4 pi/3) rho (1-1/n)(R^3-R0^3))^-1
    temple: float           # 1 - variance/(gap * mean) correction
    denominator: float      # sign decides Temple validity


def temple_K(n: float, ell: float, R: float, R0: float, epsilon: float,
             a: float, units: Units, gap_convention: str = "paper",
             extended: bool = False) -> TempleFactors:
    """K(n, ell) of the cell lower bound.

    K = (1 - eps) (1 - 2R/ell)^3 (1 + (4 pi/3) rho (1 - 1/n)(R^3 - R0^3))^-1
        * (1 - (3/pi) a n / ((R^3 - R0^3)(eps g / ell^2 - 4 a n(n-1)/ell^3)))

    with rho = n/ell^3 and g = 1 for the printed Neumann gap eps*pi*mu/ell^2
    ("paper"), g = pi for the textbook eigenvalue eps*pi^2*mu/ell^2
    ("pi-squared").  When the Temple denominator is <= 0 or any factor goes
    negative the trivial bound 0 is returned with valid=False.
    """
    units.require_dilute("Temple bound")
    if min(n, ell, R, epsilon, a) < 0 or R <= R0:
        raise BoundsError("temple_K needs positive parameters and R > R0")
    if n <= 1:
        raise BoundsError("temple_K needs n > 1")
    if gap_convention not in ("paper", "pi-squared"):
        raise BoundsError(f"unknown gap convention {gap_convention!r}")
    pi, nv, ellv, Rv, R0v, epsv, av = _scalars(extended, n, ell, R, R0, epsilon, a)
    gap = 1 if gap_convention == "paper" else pi
    rho = nv / ellv**3
    shell = Rv**3 - R0v**3
    kinetic = 1 - epsv
    geometry = (1 - 2 * Rv / ellv) ** 3
    crowding = 1 / (1 + (4 * pi / 3) * rho * (1 - 1 / nv) * shell)
    denominator = epsv * gap / ellv**2 - 4 * av / ellv**3 * nv * (nv - 1)
    if denominator <= 0:
        return TempleFactors(0.0, False, float(kinetic), float(geometry),
                             float(crowding), 0.0, float(denominator))
    temple = 1 - (3 / pi) * av * nv / (shell * denominator)
    value = kinetic * geometry * crowding * temple
    valid = kinetic > 0 and geometry > 0 and temple > 0
    if not valid:
        value = value * 0
    return TempleFactors(value if extended else float(value), valid,
                         float(kinetic), float(geometry), float(crowding),
                         float(temple), float(denominator))


@dataclass(frozen=True)
class CellParameters:
    """Lower-bound parameters (epsilon, R, ell) plus the ansatz constants."""

    epsilon: float
    R: float
    R0: float
    ell: float
    n: float
    c_eps: float = 1.0
    c_ell: float = 1.0
    c_R: float = 1.0

    def violated(self, a: float, rho: float) -> list:
        """Names of the admissibility inequalities this set breaks."""
        bad = []
        if not (0 < self.epsilon < 1):
            bad.append("0 < epsilon < 1")
        if not (self.R > self.R0):
            bad.append("R > R0")
        if not (self.ell > 2 * self.R):
            bad.append("ell > 2R")
        if not (self.n >= 2):
            bad.append("n >= 2")
        if not (a < self.R):
            bad.append("a < R")
        if rho > 0:
            if not (self.R < rho ** (-1.0 / 3.0)):
                bad.append("R < rho^(-1/3)")
            if not (rho ** (-1.0 / 3.0) < self.ell):
                bad.append("rho^(-1/3) < ell")
            if a > 0 and not (self.ell < (rho * a) ** (-0.5)):
                bad.append("ell < (rho a)^(-1/2)")
        return bad


PAPER_EXPONENTS = (Fraction(1, 17), Fraction(6, 17), Fraction(3, 17))


def ansatz_parameters(Y, exponents=PAPER_EXPONENTS,
                      constants=(1.0, 1.0, 1.0), a: float = 1.0,
                      R0: float | None = None, extended: bool = False) -> CellParameters:
    """Cell parameters from the scaling ansatz
    epsilon = c_eps Y^alpha,  a/ell = c_ell Y^beta,  (R^3-R0^3)/ell^3 = c_R Y^gamma,
    with n = 4 rho ell^3 particles fed to K."""
    alpha, beta, gamma = (float(e) for e in exponents)
    c_eps, c_ell, c_R = constants
    pi, Yv, av = _scalars(extended, Y, a)
    if Yv <= 0:
        raise BoundsError("ansatz needs Y > 0")
    R0v = av if R0 is None else R0
    epsilon = c_eps * Yv**alpha
    ell = av / (c_ell * Yv**beta)
    third = 1 / (Yv * 0 + 3)      # exact 1/3 in whichever arithmetic Yv uses
    R = (R0v**3 + c_R * Yv**gamma * ell**3) ** third
    rho = 3 * Yv / (4 * pi * av**3)
    n = 4 * rho * ell**3
    return CellParameters(epsilon=epsilon, R=R, R0=float(R0v), ell=ell, n=n,
                          c_eps=c_eps, c_ell=c_ell, c_R=c_R)


@dataclass
class BoundReport:
    """Certified bracket at one Y with every factor of the error functional."""

    Y: float
    lower: float
    upper: float
    params: CellParameters
    factors: dict = field(default_factory=dict)
    valid: bool = True


def lower_bound_ratio(gas: GasParameter, params: CellParameters, units: Units,
                      gap_convention: str = "paper",
                      extended: bool = False) -> BoundReport:
    """e0/(4 pi mu rho a) >= (1 - 1/(rho ell^3)) K(4 rho ell^3, ell), clamped at 0."""
    units.require_dilute("cell lower bound")
    Y = gas.Y
    if Y >= 1:
        raise BoundsError(f"lower bound needs Y < 1, got {Y}")
    pi, rhov, ellv, av = _scalars(extended, gas.rho, params.ell, gas.a)
    k_cell = rhov * ellv**3
    tf = temple_K(params.n, params.ell, params.R, params.R0, params.epsilon,
                  gas.a, units, gap_convention=gap_convention, extended=extended)
    pair_factor = 1 - 1 / k_cell
    factors = {
        "pairs": float(pair_factor),
        "kinetic": tf.kinetic,
        "geometry": tf.geometry,
        "crowding": tf.crowding,
        "temple": tf.temple,
        "denominator": tf.denominator,
    }
    valid = tf.valid and pair_factor > 0
    lower = pair_factor * tf.value if valid else 0.0
    upper = upper_bound_ratio(Y, extended=extended)
    return BoundReport(Y=Y, lower=lower if extended else float(lower),
                       upper=upper if extended else float(upper),
                       params=params, factors=factors, valid=valid)


def lower_bound_finite_box(N: int, L: float, gas: GasParameter,
                           params: CellParameters, units: Units,
                           gap_convention: str = "paper",
                           box_constant: float = 1.0,
                           extended: bool = False) -> BoundReport:
    """Finite-box form of the certified lower bound.

    Checks the geometry (cells fit in the box, density consistent) and the
    box admissibility L/a > box_constant * Y^(-6/17) before delegating to the
    thermodynamic cell estimate; violations are reported by name.
    """
    if N < 2:
        raise BoundsError("need at least two particles")
    rho_box = N / L**3
    if gas.rho > 0 and abs(rho_box - gas.rho) > 1e-9 * gas.rho:
        raise BoundsError(f"N/L^3 = {rho_box} inconsistent with gas density {gas.rho}")
    bad = params.violated(gas.a, gas.rho)
    if L < params.ell:
        bad.append("L >= ell")
    if gas.a > 0 and L / gas.a <= box_constant * gas.Y ** (-6.0 / 17.0):
        bad.append("L/a > C' Y^(-6/17)")
    if bad:
        raise BoundsError("inadmissible geometry: " + "; ".join(bad))
    return lower_bound_ratio(gas, params, units, gap_convention=gap_convention,
                             extended=extended)


# ---------------------------------------------------------------------------
# cell occupation numbers


def cell_occupancy_minimize(k: float, p: int, mode: str = "analytic",
                            denominator: int = 16, n_max: int = 50) -> float:
    """Minimum of sum_{n<p} c_n n(n-1) + (1/2) sum_{n>=p} c_n n(p-1)
    over occupation distributions with sum c_n = 1 and sum c_n n = k.

    analytic: relaxation min over 1 <= t <= k of t(t-1) + (k-t)(p-1)/2
    (equals k(k-1) whenever p >= 4k).  brute_force: exhaustive minimum over
    rational weights c_n = m_n/denominator with n <= n_max, which can only
    lie above the relaxed value.
    """
    if k < 1:
        raise BoundsError("need k >= 1")
    if p < 2:
        raise BoundsError("need p >= 2")
    if mode == "analytic":
        def q(t):
            return t * (t - 1.0) + 0.5 * (k - t) * (p - 1.0)
        t_star = min(max((p + 1.0) / 4.0, 1.0), float(k))
        return min(q(t_star), q(1.0), q(float(k)))
    if mode != "brute_force":
        raise BoundsError(f"unknown mode {mode!r}")
    if k > n_max:
        raise BoundsError(f"infeasible: k = {k} exceeds n_max = {n_max}")
    D = denominator
    target = k * D
    target_int = round(target)
    if abs(target - target_int) > 1e-9:
        raise BoundsError(f"k = {k} is not representable with denominator {D}")

    def phi(n):
        return n * (n - 1.0) if n < p else 0.5 * n * (p - 1.0)

    # exhaustive over distributions of D weight-units across n in [0, n_max]
    # with total weighted occupancy target_int; dynamic program on
    # (units placed, occupancy so far), minimizing the linear objective
    INF = math.inf
    best = [[INF] * (target_int + 1) for _ in range(D + 1)]
    best[0][0] = 0.0
    for j in range(D):
        row = best[j]
        nxt = best[j + 1]
        for s in range(target_int + 1):
            base = row[s]
            if base is INF:
                continue
            for n in range(0, min(n_max, target_int - s) + 1):
                cand = base + phi(n) / D
                if cand < nxt[s + n]:
                    nxt[s + n] = cand
    result = best[D][target_int]
    if result is INF:
        raise BoundsError("no feasible occupancy distribution")
    return result


@dataclass
class SuperadditivityResult:
    passed: bool
    worst_pair: tuple | None
    worst_margin: float


def superadditivity_check(E_table: dict, slack: float = 0.0) -> SuperadditivityResult:
    """E(n+n') >= E(n) + E(n') on all table pairs, plus E(n) >= (n/2p) E(p)
    for n >= p.  Returns the worst violating pair if any."""
    worst = (None, math.inf)
    for n, En in E_table.items():
        for m, Em in E_table.items():
            if (n + m) in E_table:
                margin = E_table[n + m] - (En + Em)
                if margin < worst[1]:
                    worst = ((n, m), margin)
            if n >= m and m >= 1:
                margin = En - (n / (2.0 * m)) * Em
                if margin < worst[1]:
                    worst = ((n, m), margin)
    passed = worst[1] >= -slack
    return SuperadditivityResult(passed=passed, worst_pair=worst[0],
                                 worst_margin=worst[1])


# ---------------------------------------------------------------------------
# ansatz exponents and the error constant


def exponent_conditions(alpha, beta, gamma) -> dict:
    """The five admissibility bullets for the scaling ansatz, as exact rationals.

    Every entry must be positive for the error to vanish as Y -> 0.
    """
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    return {
        "2 - alpha - 5 beta": 2 - alpha - 5 * beta,     # Temple denominator survives
        "alpha": alpha,                                  # epsilon -> 0
        "3 beta - 1": 3 * beta - 1,                      # 1/(rho ell^3) -> 0
        "1 - 3 beta + gamma": 1 - 3 * beta + gamma,      # crowding correction -> 0
        "1 - alpha - 2 beta - gamma": 1 - alpha - 2 * beta - gamma,  # Temple term -> 0
    }


def exponent_chain(alpha, beta, gamma) -> dict:
    """Exact rational values of the error exponents at the chosen ansatz.

    The decisive ones are alpha, 3 beta - 1, gamma/3 (through 2R/ell) and
    1 - alpha - 2 beta - gamma; at (1/17, 6/17, 3/17) those four all equal
    1/17, while 1 - 3 beta + gamma = 2/17 is subleading.
    """
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    return {
        "alpha": alpha,
        "3 beta - 1": 3 * beta - 1,
        "gamma / 3": gamma / 3,
        "1 - 3 beta + gamma": 1 - 3 * beta + gamma,
        "1 - alpha - 2 beta - gamma": 1 - alpha - 2 * beta - gamma,
    }


@dataclass
class OptimizedConstants:
    C: float
    constants: tuple
    converged: bool
    evaluations: int


def optimize_error_constant(Y_grid, exponents=PAPER_EXPONENTS, *,
                            units: Units = Units(), a: float = 1.0,
                            gap_convention: str = "paper",
                            coarse_points: int = 7,
                            descent_rounds: int = 60) -> OptimizedConstants:
    """Minimize sup_Y (1 - lower(Y)) / Y^(1/17) over the ansatz constants.

    Deterministic: coarse logarithmic scan over (c_eps, c_ell, c_R) followed
    by multiplicative coordinate descent.  Exponent admissibility is asserted
    up front.  Returns the achieved constant C and the argmin constants; if
    the descent exhausts its budget the best-so-far is flagged.
    """
    conds = exponent_conditions(*exponents)
    bad = [name for name, val in conds.items() if val <= 0]
    if bad:
        raise BoundsError("inadmissible exponents: " + "; ".join(bad))
    Y_grid = [float(Y) for Y in Y_grid]
    if not Y_grid or min(Y_grid) <= 0 or max(Y_grid) >= 1:
        raise BoundsError("Y grid must lie in (0, 1)")
    evals = 0

    def objective(consts):
        nonlocal evals
        evals += 1
        worst = 0.0
        for Y in Y_grid:
            params = ansatz_parameters(Y, exponents, consts, a=a)
            gas = GasParameter.from_Y(Y, a=a)
            if params.violated(gas.a, gas.rho):
                return math.inf
            rep = lower_bound_ratio(gas, params, units, gap_convention)
            if not rep.valid or rep.lower <= 0:
                return math.inf
            worst = max(worst, (1.0 - rep.lower) / Y ** (1.0 / 17.0))
        return worst

    grid = [10.0 ** e for e in
            [i * 2.0 / (coarse_points - 1) - 1.0 for i in range(coarse_points)]]
    best, best_c = math.inf, (1.0, 1.0, 1.0)
    for ce in grid:
        for cl in grid:
            for cr in grid:
                val = objective((ce, cl, cr))
                if val < best:
                    best, best_c = val, (ce, cl, cr)
    if not math.isfinite(best):
        return OptimizedConstants(C=best, constants=best_c, converged=False,
                                  evaluations=evals)

    step = 1.4
    rounds = 0
    while step > 1.0005 and rounds < descent_rounds:
        rounds += 1
        improved = False
        for axis in range(3):
            for factor in (step, 1.0 / step):
                cand = list(best_c)
                cand[axis] *= factor
                val = objective(tuple(cand))
                if val < best:
                    best, best_c = val, tuple(cand)
                    improved = True
        if not improved:
            step = math.sqrt(step)
    return OptimizedConstants(C=best, constants=best_c,
                              converged=rounds < descent_rounds,
                              evaluations=evals)


# ---------------------------------------------------------------------------
# series and the 2d formula

LHY_SQRT_COEFF = 128.0 / (15.0 * math.sqrt(math.pi))
LHY_XLOGX_COEFF = 8.0 * (4.0 * math.pi / 3.0 - math.sqrt(3.0))


def lhy_expansion(x: float) -> float:
    """e0/(4 pi mu rho a) through the x ln x term, x = rho a^3:
    1 + (128/(15 sqrt pi)) x^(1/2) + 8 (4 pi/3 - sqrt 3) x ln x."""
    if not (0 < x < 1):
        raise BoundsError(f"series needs 0 < x < 1, got {x}")
    return 1.0 + LHY_SQRT_COEFF * math.sqrt(x) + LHY_XLOGX_COEFF * x * math.log(x)


# relative-error magnitudes of the 2d formula, as exponents of
# 1/|ln(rho a^2)|; which of the two bounds carries the 1/5 is left open
SCHICK_2D_ERROR_EXPONENTS = (1.0, 0.2)


def schick_2d(rho: float, a: float, units: Units) -> float:
    """2d ground-state energy per particle, 4 pi mu rho / |ln(rho a^2)|."""
    units.require_dilute("2d energy formula")
    if rho < 0 or a <= 0:
        raise BoundsError("need rho >= 0 and a > 0")
    x = rho * a * a
    if x >= 1:
        raise BoundsError(f"dilute 2d formula needs rho a^2 < 1, got {x}")
    if x == 0:
        return 0.0
    return 4.0 * math.pi * units.mu * rho / abs(math.log(x))


def schick_2d_pairwise_rule(rho: float, a: float, L: float, units: Units) -> float:
    """The (wrong) N(N-1)/2 pairwise extrapolation 4 pi mu rho / ln(L^2/a^2).

    Box-size dependent, unlike `schick_2d`; exposed to illustrate why the
    thermodynamic 2d energy replaces L by the mean particle separation.
    """
    units.require_dilute("2d pairwise rule")
    if L <= a:
        raise BoundsError("need L > a")
    return 4.0 * math.pi * units.mu * rho / math.log(L**2 / a**2)
