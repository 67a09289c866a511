"""Densities, probability current, node/maxima structure, the long-time
even/odd split of the free-flight density, and the noninteracting-fermion
single-particle density with its hard-core boson counterpart.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .eigen import PhysicalParams
from .errors import DomainError, ShapeError
from .fields import RealField, WaveField, _require_same_grid

NODE_MERGE_GAP = 2        # grid points between candidates merged into one node
MAXIMA_FLOOR = 1e-6       # of peak; suppresses quadrature ripple


@dataclass
class StructureReport:
    node_positions: list
    maxima_positions: list
    asymmetry: float


def density(psi: WaveField) -> RealField:
    return RealField(psi.grid, psi.time, np.abs(psi.values) ** 2)


def current(psi: WaveField, params: PhysicalParams) -> RealField:
    """j = (hbar/m) Im(psi* dpsi/dx), central differences inside, one-sided
    at the two boundary points."""
    if psi.grid.count < 3:
        raise ShapeError("current needs at least 3 grid points")
    v = psi.values
    dx = psi.grid.dx
    dpsi = np.empty_like(v)
    dpsi[1:-1] = (v[2:] - v[:-2]) / (2.0 * dx)
    dpsi[0] = (v[1] - v[0]) / dx
    dpsi[-1] = (v[-1] - v[-2]) / dx
    j = params.hbar / params.mass * np.imag(np.conj(v) * dpsi)
    return RealField(psi.grid, psi.time, j)


def continuity_residual(psi_t1: WaveField, psi_t2: WaveField, params: PhysicalParams) -> float:
    """max of |(rho2-rho1)/dt + d/dx j_mid| over points where the centered
    stencils are valid (two samples in from each edge, since the boundary
    current is one-sided), normalized by the peak of |d/dx j_mid|.

    The normalization is floored at hbar rho_peak / (m W^2), W a quarter of
    the grid span: a pair whose flux divergence sits below the rate of any
    field actually evolving across the window is stationary at the grid's
    resolving power, and reports ~0 instead of noise-over-noise."""
    _require_same_grid(psi_t1, psi_t2)
    dt = psi_t2.time - psi_t1.time
    if dt < 0:
        raise DomainError("fields must be time ordered")
    if dt > 1e-2 * (1 + 1e-9):
        raise DomainError(f"time step {dt:g} too large for the finite-difference check (<= 1e-2)")
    grid = psi_t1.grid
    dx = grid.dx
    j_mid = 0.5 * (current(psi_t1, params).values + current(psi_t2, params).values)
    djdx = (j_mid[2:] - j_mid[:-2]) / (2.0 * dx)
    core = slice(1, -1) if len(djdx) > 4 else slice(None)
    peak = float(np.max(np.abs(djdx[core])))
    rho_peak = float(max(np.max(np.abs(psi_t1.values)), np.max(np.abs(psi_t2.values)))) ** 2
    window = 0.25 * (grid.x_max - grid.x_min)
    denom = max(peak, params.hbar * rho_peak / (params.mass * window * window))
    if denom == 0.0:
        return 0.0
    if dt == 0.0:
        warnings.warn("continuity check degenerate: identical times, rho term dropped")
        return peak / denom
    rho_dot = (np.abs(psi_t2.values) ** 2 - np.abs(psi_t1.values) ** 2)[1:-1] / dt
    return float(np.max(np.abs((rho_dot + djdx)[core]))) / denom


def _parabolic_min(y0, y1, y2):
    """Refined minimum value of the parabola through three equispaced samples."""
    denom = y0 - 2.0 * y1 + y2
    if denom <= 0:
        return y1, 0.0
    shift = 0.5 * (y0 - y2) / denom
    val = y1 - 0.125 * (y0 - y2) ** 2 / denom
    return max(val, 0.0), shift


def structure_report(rho: RealField, node_threshold_fraction: float) -> StructureReport:
    """Nodes are refined local minima below threshold*peak (zeros of a density
    are quadratic touches, so each candidate is sharpened with the parabola
    through its three samples before thresholding); maxima are strict local
    maxima above the ripple floor; asymmetry is the L1 mass of the odd part
    over the symmetric portion of the grid."""
    # the ceiling admits the quasi-node reading of walled free flight, where
    # the outermost minimum transits ~1.4e-2 of peak around t ~ 10
    if not (0.0 < node_threshold_fraction <= 2.5e-2):
        raise DomainError("node threshold fraction must lie in (0, 2.5e-2]")
    v = rho.values
    if np.min(v) < -1e-12 * max(np.max(np.abs(v)), 1e-300):
        raise DomainError("density field has negative values")
    x = rho.grid.points()
    dx = rho.grid.dx
    peak = float(np.max(v))
    if peak <= 0.0:
        return StructureReport([], [], 0.0)
    thr = node_threshold_fraction * peak

    floor = max(MAXIMA_FLOOR, node_threshold_fraction) * peak
    maxima_positions = []
    for i in range(1, len(v) - 1):
        if v[i] > v[i - 1] and v[i] > v[i + 1] and v[i] > floor:
            denom = v[i - 1] - 2.0 * v[i] + v[i + 1]
            shift = 0.5 * (v[i - 1] - v[i + 1]) / denom if denom < 0 else 0.0
            maxima_positions.append(x[i] + shift * dx)

    # a node must separate real lobes: require a detected maximum to the
    # right, and to the left either another maximum or the wall-side grid
    # edge (sub-threshold ripples in the evanescent tail are not nodes)
    first_max = maxima_positions[0] if maxima_positions else np.inf
    last_max = maxima_positions[-1] if maxima_positions else -np.inf
    candidates = []
    for i in range(len(v)):
        left = v[i - 1] if i > 0 else np.inf
        right = v[i + 1] if i < len(v) - 1 else np.inf
        if v[i] <= left and v[i] <= right:
            if 0 < i < len(v) - 1:
                val, shift = _parabolic_min(v[i - 1], v[i], v[i + 1])
            else:
                val, shift = v[i], 0.0
            pos = x[i] + shift * dx
            at_wall = i == 0 and abs(x[0]) <= 2.0 * dx
            flanked = (first_max < pos < last_max) or (at_wall and pos < first_max)
            if val < thr and flanked:
                candidates.append((i, pos))
    nodes = []
    for i, pos in candidates:
        if nodes and i - nodes[-1][0] <= NODE_MERGE_GAP:
            nodes[-1] = (i, nodes[-1][1])
        else:
            nodes.append((i, pos))
    node_positions = [pos for _, pos in nodes]

    X = min(-rho.grid.x_min, rho.grid.x_max)
    if X <= 0:
        asym = 0.0
    else:
        xs = np.arange(0.0, X, dx)
        right = np.interp(xs, x, v)
        left = np.interp(-xs, x, v)
        num = 2.0 * np.trapezoid(np.abs(right - left), dx=dx)
        den = np.trapezoid(right + left, dx=dx)
        asym = float(num / den) if den > 0 else 0.0
    return StructureReport(node_positions, maxima_positions, asym)


def symmetry_decomposition(initial: WaveField, t: float, x: float,
                           params: PhysicalParams):
    """Even/odd split of the free-flight density at one point.

    rho factorizes into |cos-transform|^2 + |sin-transform|^2 (both even in x)
    plus a cross term that is odd in x; returns (even_terms, cross_term) so
    the late-time smallness of the cross term is directly checkable."""
    if t <= 0:
        raise DomainError("decomposition defined for t > 0")
    m, hbar = params.mass, params.hbar
    xs = initial.grid.points()
    dx = initial.grid.dx
    chirp = np.exp(1j * m * xs ** 2 / (2.0 * hbar * t)) * initial.values
    cosI = complex(np.trapezoid(np.cos(m * x * xs / (hbar * t)) * chirp, dx=dx))
    sinI = complex(np.trapezoid(np.sin(m * x * xs / (hbar * t)) * chirp, dx=dx))
    scale = m / (2.0 * np.pi * hbar * t)
    even = scale * (abs(cosI) ** 2 + abs(sinI) ** 2)
    cross = -2.0 * scale * (cosI * np.conj(sinI)).imag
    return float(even), float(cross)


def fermion_density(fields: list) -> RealField:
    """Single-particle density of N noninteracting fermions filling the given
    orbitals; integrates to N for orthonormal inputs."""
    if not fields:
        raise ShapeError("need at least one orbital")
    first = fields[0]
    total = np.zeros(first.grid.count)
    for f in fields:
        _require_same_grid(first, f)
        if abs(f.time - first.time) > 1e-12 * max(1.0, abs(first.time)):
            raise ShapeError("orbitals sampled at different times")
        total += np.abs(f.values) ** 2
    return RealField(first.grid, first.time, total)


def _slater(fields, point):
    n = len(fields)
    mat = np.empty((n, n), dtype=np.complex128)
    for a, f in enumerate(fields):
        x = f.grid.points()
        for j, xj in enumerate(point):
            mat[a, j] = complex(np.interp(xj, x, f.values.real),
                                np.interp(xj, x, f.values.imag))
    return np.linalg.det(mat) / math.sqrt(math.factorial(n))


def bose_map_check(fields: list, sample_points: list) -> float:
    """Hard-core bosons on the fermion map: |psi_B|^2 - |psi_F|^2 must vanish
    identically, and psi_F must vanish at coincident coordinates.  Returns the
    largest deviation over the sample tuples."""
    n = len(fields)
    if n > 3:
        raise DomainError("desk-scale determinant check limited to N <= 3")
    first = fields[0]
    for f in fields:
        _require_same_grid(first, f)
    worst = 0.0
    for pt in sample_points:
        psi_f = _slater(fields, list(pt))
        psi_b = abs(psi_f)
        worst = max(worst, abs(psi_b ** 2 - abs(psi_f) ** 2))
        if n >= 2:
            coincident = list(pt)
            coincident[1] = coincident[0]
            worst = max(worst, abs(_slater(fields, coincident)) ** 2)
    return worst
