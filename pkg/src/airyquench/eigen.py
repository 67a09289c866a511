"""Spectrum and stationary states of the half-line ramp potential, plus
spectral expansion of arbitrary packets over them.

The trap is a hard wall at x = 0 with potential slope K for x > 0.  With
alpha = (2 m K / hbar^2)^(1/3) the normalized bound states are shifted Airy
functions

    phi_n(x) = sqrt(alpha) Ai(alpha x + a_n) / Ai'(a_n),   E_n = -a_n (hbar^2 K^2 / 2m)^(1/3),

where a_n is the n-th negative zero of Ai.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, GridCoverageError, InvalidConfigError, RangeError, ShapeError
from .fields import SpaceGrid, WaveField, _require_same_grid

TAIL_PAD = 15.0  # normalization/source domains end at (|a_n| + TAIL_PAD)/alpha


@dataclass(frozen=True)
class PhysicalParams:
    hbar: float = 1.0
    mass: float = 0.5
    k_slope: float = 1.0

    def __post_init__(self):
        if self.hbar <= 0 or self.mass <= 0:
            raise InvalidConfigError("hbar and mass must be positive")
        if self.k_slope < 0:
            raise InvalidConfigError("potential slope must be nonnegative")

    @property
    def alpha(self) -> float:
        if self.k_slope == 0:
            return 0.0
        return (2.0 * self.mass * self.k_slope / self.hbar ** 2) ** (1.0 / 3.0)

    @property
    def energy_scale(self) -> float:
        return (self.hbar ** 2 * self.k_slope ** 2 / (2.0 * self.mass)) ** (1.0 / 3.0)


@dataclass(frozen=True)
class Eigenstate:
    n: int
    airy_zero: float
    energy: float


@dataclass
class SpectralCoefficients:
    """Expansion coefficients c_n, n = 1..n_max, with the reconstruction
    residual ||psi0 - sum c_n phi_n||_2 reported alongside."""
    values: np.ndarray
    residual: float

    @property
    def sum_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


def make_eigenstate(n: int, params: PhysicalParams) -> Eigenstate:
    if params.k_slope == 0:
        raise InvalidConfigError("no bound states without a potential ramp (k_slope = 0)")
    if not (1 <= int(n) <= specfun.ZERO_MAX):
        raise RangeError(f"state index must lie in [1, {specfun.ZERO_MAX}]")
    zero = specfun.airy_zero(int(n)).value
    return Eigenstate(int(n), zero, -zero * params.energy_scale)


def eigenstate_values(state: Eigenstate, params: PhysicalParams, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.size and np.min(x) < 0:
        raise DomainError("stationary states live on x >= 0")
    alpha = params.alpha
    aip = specfun.airy_ai(state.airy_zero).ai_prime
    ai, _ = specfun.airy_ai_values(alpha * x + state.airy_zero)
    return np.sqrt(alpha) * ai / aip


def eigenstate_value(state: Eigenstate, params: PhysicalParams, x: float) -> float:
    return float(eigenstate_values(state, params, np.array([float(x)]))[0])


def turning_point(state: Eigenstate, params: PhysicalParams) -> float:
    return -state.airy_zero / params.alpha


def source_cutoff(state: Eigenstate, params: PhysicalParams) -> float:
    """End of the numerically relevant support (forbidden tail < 1e-12)."""
    return (-state.airy_zero + TAIL_PAD) / params.alpha


def sample_cutoff_state(state: Eigenstate, params: PhysicalParams, grid: SpaceGrid) -> WaveField:
    """phi_n on x >= 0 extended by zero to any negative part of the grid."""
    x = grid.points()
    vals = np.zeros(grid.count, dtype=np.complex128)
    pos = x >= 0
    vals[pos] = eigenstate_values(state, params, x[pos])
    return WaveField(grid, 0.0, vals)


def inner_product(f: WaveField, g: WaveField) -> complex:
    _require_same_grid(f, g)
    return complex(np.trapezoid(np.conj(f.values) * g.values, dx=f.grid.dx))


def expand_packet(psi0: WaveField, n_max: int, params: PhysicalParams) -> SpectralCoefficients:
    if not (1 <= int(n_max) <= specfun.ZERO_MAX):
        raise RangeError(f"n_max must lie in [1, {specfun.ZERO_MAX}]")
    n_max = int(n_max)
    top = make_eigenstate(n_max, params)
    if psi0.grid.x_max < turning_point(top, params):
        raise GridCoverageError(
            f"grid ends at {psi0.grid.x_max:.3g} but the classically allowed region of "
            f"state {n_max} extends to {turning_point(top, params):.3g}")
    coeffs = np.empty(n_max, dtype=np.complex128)
    recon = np.zeros(psi0.grid.count, dtype=np.complex128)
    for n in range(1, n_max + 1):
        phi = sample_cutoff_state(make_eigenstate(n, params), params, psi0.grid)
        coeffs[n - 1] = inner_product(phi, psi0)
        recon += coeffs[n - 1] * phi.values
    residual = float(np.sqrt(np.trapezoid(np.abs(psi0.values - recon) ** 2, dx=psi0.grid.dx)))
    return SpectralCoefficients(coeffs, residual)
