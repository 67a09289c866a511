"""Time evolution of the released trap states under the three sudden changes.

Scenarios
---------
A: wall removed, the linear ramp extended over the whole line.
B: wall and ramp both removed (free flight).
C: ramp removed, wall kept (free flight on the half line).

Two independent routes compute the same field and cross-validate each other:

DirectQuadrature propagates the sampled initial state with the exact
time-dependent kernel.  The quadratic kernel phase is trapezoid-integrated
at a fixed number of points per oscillation; for very short times the
integral is restricted to a smoothly tapered window around the stationary
point of the phase, whose width covers ~14 Fresnel zones, so cost stays
bounded as t -> 0.

ErfcClosedForm evaluates the closed-form representation of the evolved
state: a cubic-phase integral over wavenumber against a complementary error
function factor, computed on the rotated contour planned in _contour.py.
Note the erfc argument carries the (i-1)/2 branch: it is fixed by the t->0
limit of the half-line Fresnel integral and confirmed structurally by
agreement with DirectQuadrature.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from . import backend, specfun
from ._contour import Family, plan_legs
from .eigen import Eigenstate, PhysicalParams, make_eigenstate, sample_cutoff_state, source_cutoff
from .errors import DomainError, ResolutionError, TruncationError
from .fields import SpaceGrid, WaveField

PPC_DIRECT = 16.0        # direct-kernel points per phase cycle
PPC_FLOOR = 4.0          # below this the quadrature is rejected
STATE_DX = 5e-3          # source spacing (units of 1/alpha) resolving the state
WINDOW_FRESNEL = 14.0    # half-width of the short-time window, Fresnel units
WINDOW_TAPER = 0.25
DEFAULT_NODE_BUDGET = 4e8


class ScenarioTag(enum.Enum):
    A = "a"   # ramp everywhere, wall removed
    B = "b"   # free flight
    C = "c"   # free flight behind the kept wall

    @classmethod
    def from_letter(cls, s: str) -> "ScenarioTag":
        try:
            return cls(s.strip().lower())
        except ValueError:
            raise DomainError(f"unknown scenario {s!r}, expected a, b or c") from None


class EvolutionMethod(enum.Enum):
    DIRECT = "direct"
    ERFC = "erfc"


def _prefactor(t, params):
    m, hbar = params.mass, params.hbar
    return math.sqrt(m / (2.0 * math.pi * hbar * t)) * np.exp(-0.25j * np.pi)


def kernel_linear(x: float, t: float, x_src: float, params: PhysicalParams) -> complex:
    """Exact kernel of the uniform-force Hamiltonian (reduces to the free
    Gaussian kernel for zero slope)."""
    if t <= 0:
        raise DomainError("kernel defined for t > 0 only")
    m, hbar, K = params.mass, params.hbar, params.k_slope
    a = m / (2.0 * hbar * t)
    # note the mass in the cubic constant: required by the semigroup
    # composition property of the kernel
    phase = (a * (x - x_src) ** 2
             - K * t / (2.0 * hbar) * (x + x_src)
             - K * K * t ** 3 / (24.0 * m * hbar))
    return complex(_prefactor(t, params) * np.exp(1j * phase))


def kernel_halfspace(x: float, t: float, x_src: float, params: PhysicalParams) -> complex:
    """Dirichlet kernel on the half line: free kernel minus its mirror image."""
    if x < 0 or x_src < 0:
        raise DomainError("half-space kernel defined for x, x_src >= 0")
    free = PhysicalParams(params.hbar, params.mass, 0.0)
    return kernel_linear(x, t, x_src, free) - kernel_linear(-x, t, x_src, free)


def _beta(scenario, t, params):
    if scenario is ScenarioTag.A:
        return -params.k_slope * t / (2.0 * params.hbar)
    return 0.0


def _window_plan(t, params, x_cut):
    a = params.mass / (2.0 * params.hbar * t)
    W = WINDOW_FRESNEL * math.sqrt(math.pi / a)
    return (W < 0.35 * x_cut), W, a


def _kernel_rate(a, beta, xout_lo, xout_hi, src_lo, src_hi, window, W, image):
    if window:
        return 2.0 * a * W
    cands = []
    outs = [xout_lo, xout_hi] + ([-xout_hi, -xout_lo] if image else [])
    for xo in outs:
        for xs in (src_lo, src_hi):
            cands.append(abs(2.0 * a * (xo - xs) + beta))
    return max(cands)


def _state_rate(state, params):
    return params.alpha * math.sqrt(max(-state.airy_zero, 0.0)) + params.alpha


def eigenstate_source(n: int, params: PhysicalParams, scenario: ScenarioTag,
                      t: float, out_grid: SpaceGrid) -> WaveField:
    """Sample phi_n on a source grid fine enough for evolve_direct at time t."""
    state = make_eigenstate(n, params)
    x_cut = source_cutoff(state, params)
    window, W, a = _window_plan(t, params, x_cut)
    rate = (_kernel_rate(a, _beta(scenario, t, params), out_grid.x_min, out_grid.x_max,
                         0.0, x_cut, window, W, scenario is ScenarioTag.C)
            + _state_rate(state, params))
    dx = min(2.0 * math.pi / (PPC_DIRECT * rate), STATE_DX / params.alpha)
    grid = SpaceGrid.from_bounds(0.0, x_cut, dx)
    return sample_cutoff_state(state, params, grid)


def evolve_direct(scenario: ScenarioTag, initial: WaveField, t: float,
                  out_grid: SpaceGrid, params: PhysicalParams) -> WaveField:
    """Propagate a sampled initial state (supported on x >= 0, normalized)
    by direct quadrature of the kernel against its samples."""
    if t <= 0:
        raise DomainError("evolve_direct needs t > 0; sample the state for t = 0")
    if scenario is ScenarioTag.C and out_grid.x_min < -1e-12:
        raise DomainError("scenario C keeps the wall: output grid must have x >= 0")
    g0 = initial.grid
    beta = _beta(scenario, t, params)
    window, W, a = _window_plan(t, params, g0.x_max - max(g0.x_min, 0.0))
    rate = _kernel_rate(a, beta, out_grid.x_min, out_grid.x_max, g0.x_min, g0.x_max,
                        window, W, scenario is ScenarioTag.C)
    floor = 2.0 * math.pi / (PPC_FLOOR * rate)
    if g0.dx > floor * (1.0 + 1e-9):
        raise ResolutionError(
            f"source spacing {g0.dx:.4g} leaves fewer than {int(PPC_FLOOR)} points per "
            f"kernel-phase cycle at t = {t:g}; resample the initial state with "
            f"dx <= {floor:.4g}")
    xout = out_grid.points()
    raw = backend.direct_sum(g0.x_min, g0.dx, initial.values, xout, a, beta,
                             window, W, WINDOW_TAPER)
    if scenario is ScenarioTag.C:
        raw = raw - backend.direct_sum(g0.x_min, g0.dx, initial.values, -xout, a, beta,
                                       window, W, WINDOW_TAPER)
    vals = _prefactor(t, params) * raw
    if scenario is ScenarioTag.A:
        K, hbar, m = params.k_slope, params.hbar, params.mass
        vals = vals * np.exp(1j * (-K * t / (2.0 * hbar) * xout
                                   - K * K * t ** 3 / (24.0 * m * hbar)))
    return WaveField(out_grid, t, vals)


def _closed_form_point(y, t, state, params, budget):
    fam = Family(y, t, params.alpha, state.airy_zero, params.hbar, params.mass)
    legs, nodes = plan_legs(fam)
    if nodes > budget[0]:
        raise TruncationError(
            f"closed-form contour needs {nodes} nodes at (x~{y:.3g}, t={t:g}) but only "
            f"{int(budget[0])} remain of the node budget; raise node_budget or use the "
            "direct method")
    budget[0] -= nodes
    return backend.contour_sum(legs, params.alpha, state.airy_zero,
                               params.hbar, params.mass, t, y)


def evolve_erfc(scenario: ScenarioTag, n: int, t: float, out_grid: SpaceGrid,
                params: PhysicalParams, node_budget: float = DEFAULT_NODE_BUDGET) -> WaveField:
    """Closed-form route: rotated-contour evaluation of the wavenumber
    integral with the erfc edge factor."""
    if t <= 0:
        raise DomainError("evolve_erfc needs t > 0; sample the state for t = 0")
    if scenario is ScenarioTag.C and out_grid.x_min < -1e-12:
        raise DomainError("scenario C keeps the wall: output grid must have x >= 0")
    state = make_eigenstate(n, params)
    alpha = params.alpha
    aip = specfun.airy_ai(state.airy_zero).ai_prime
    c0 = 1.0 / (4.0 * math.pi * math.sqrt(alpha) * aip)
    m, hbar, K = params.mass, params.hbar, params.k_slope
    xs = out_grid.points()
    budget = [float(node_budget)]
    vals = np.empty(out_grid.count, dtype=np.complex128)
    if scenario is ScenarioTag.B:
        for i, x in enumerate(xs):
            vals[i] = c0 * _closed_form_point(x, t, state, params, budget)
    elif scenario is ScenarioTag.A:
        shift = K * t * t / (2.0 * m)
        gamma = (-K * t / hbar * xs
                 - K * K * t ** 3 / (24.0 * m * hbar)
                 - K * K * t ** 3 / (8.0 * m * hbar))
        for i, x in enumerate(xs):
            vals[i] = c0 * _closed_form_point(x + shift, t, state, params, budget)
        vals *= np.exp(1j * gamma)
    else:
        for i, x in enumerate(xs):
            if x == 0.0:
                vals[i] = 0.0
                continue
            vals[i] = c0 * (_closed_form_point(x, t, state, params, budget)
                            - _closed_form_point(-x, t, state, params, budget))
    return WaveField(out_grid, t, vals)


def evolve_eigenstate(scenario: ScenarioTag, n: int, t: float, out_grid: SpaceGrid,
                      params: PhysicalParams,
                      method: EvolutionMethod = EvolutionMethod.DIRECT,
                      node_budget: float = DEFAULT_NODE_BUDGET) -> WaveField:
    """Evolve phi_n to time t (t = 0 returns the sampled state itself)."""
    if t < 0:
        raise DomainError("t must be nonnegative")
    if t == 0.0:
        if scenario is ScenarioTag.C and out_grid.x_min < -1e-12:
            raise DomainError("scenario C keeps the wall: output grid must have x >= 0")
        return sample_cutoff_state(make_eigenstate(n, params), params, out_grid)
    if method is EvolutionMethod.ERFC:
        return evolve_erfc(scenario, n, t, out_grid, params, node_budget)
    src = eigenstate_source(n, params, scenario, t, out_grid)
    return evolve_direct(scenario, src, t, out_grid, params)


def evolve_superposition(coeffs, scenario: ScenarioTag, t: float, out_grid: SpaceGrid,
                         params: PhysicalParams,
                         method: EvolutionMethod = EvolutionMethod.DIRECT) -> WaveField:
    """Linear combination sum_n c_n psi_n(x, t) of per-mode evolved fields."""
    total = np.zeros(out_grid.count, dtype=np.complex128)
    for i, c in enumerate(np.asarray(coeffs.values)):
        mode = evolve_eigenstate(scenario, i + 1, t, out_grid, params, method)
        total += c * mode.values
    return WaveField(out_grid, t, total)


def suggested_grid(scenario: ScenarioTag, n: int, t: float, params: PhysicalParams,
                   eps_leak: float = 2e-4, max_points: int = 20000) -> SpaceGrid:
    """Grid covering the spread state at time t to norm accuracy ~eps_leak.

    The sharp edge of the released state gives the momentum density a slow
    k^-4 tail; the extent follows the velocity that caps the tail mass at
    eps_leak, never less than twice the classical edge speed.
    """
    state = make_eigenstate(n, params)
    alpha = params.alpha
    k_n = alpha * math.sqrt(-state.airy_zero)
    k_cap = max(2.0 * k_n, alpha * (2.0 / (3.0 * math.pi * eps_leak)) ** (1.0 / 3.0))
    v_cap = params.hbar * k_cap / params.mass
    pad = 12.0 / alpha
    hi = v_cap * t + source_cutoff(state, params) + pad
    lo = 0.0 if scenario is ScenarioTag.C else -v_cap * t - pad
    if scenario is ScenarioTag.A:
        shift = params.k_slope * t * t / (2.0 * params.mass)
        lo, hi = lo - shift, hi - shift
    dx = max((hi - lo) / max_points, 0.02 / alpha)
    return SpaceGrid.from_bounds(lo, hi, dx)
