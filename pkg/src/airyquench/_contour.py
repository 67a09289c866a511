"""Contour planning for the closed-form evolution integral.

The field at one point is proportional to

    I(y, t) = int_-inf^inf exp(i theta(k)) erfc(zeta(k)) dk,
    theta(k) = k^3/(3 alpha^3) - (hbar t/2m) k^2 + (a_n/alpha + y) k,
    zeta(k)  = (i-1)/2 sqrt(m/(hbar t)) (y - hbar k t/m).

The integrand does not decay on the real axis (erfc -> 2 on one side), so the
tails are rotated into the sectors where the cubic phase decays.  Writing
erfc through the Faddeeva function in whichever half plane is bounded gives,
at every node, a sum of terms exp(i*theta), exp(i*theta~) w(+-i zeta) where
theta~(k) = theta(k) + (hbar t/2m)(k - k*)^2 = k^3/(3 alpha^3) + (a_n/alpha) k + const

is the second real cubic in play (k* = m y / hbar t).  Rotating by pi/6 at a
point R to the right of the stationary points of BOTH cubics, and by 5pi/6 at
a point L to their left, keeps every term bounded by ~2 along the whole path
and exponentially decaying along the rays, for any y, t > 0.  The finite
segment [L, R] is integrated with panelwise trapezoid rules stepped at a
fixed number of points per local phase cycle, plus the analytic h^2/12
endpoint correction, which leaves an O(h^4) boundary-only error.

The planner emits legs as rows [z0_re, z0_im, step_re, step_im, nsteps, sign]
consumed by either backend's contour_sum.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import TruncationError

PPC = 24.0          # quadrature points per phase cycle
N_PANELS = 12
RAY_SUBSTEPS = 40
RAY_DECAY = 42.0    # stop rays once the live exponents decay by e^-42
MAX_RAY_LEGS = 400


@dataclass(frozen=True)
class Family:
    """Scalar parameters of one evolution integral."""
    y: float
    t: float
    alpha: float
    a_n: float
    hbar: float
    mass: float

    @property
    def c3(self):
        return 1.0 / (3.0 * self.alpha ** 3)

    @property
    def c2(self):
        return -self.hbar * self.t / (2.0 * self.mass)

    @property
    def c1(self):
        return self.a_n / self.alpha + self.y

    @property
    def b1(self):
        return self.a_n / self.alpha

    @property
    def sigma(self):
        # |d zeta / dk|
        return math.sqrt(0.5 * self.hbar * self.t / self.mass)

    def dtheta(self, k):
        return (3.0 * self.c3 * k + 2.0 * self.c2) * k + self.c1

    def dtheta0(self, k):
        return 3.0 * self.c3 * k * k + self.b1

    def theta(self, k):
        return ((self.c3 * k + self.c2) * k + self.c1) * k

    def theta0(self, k):
        return self.c3 * k * k * k + self.b1 * k


def _rate(fam: Family, k) -> float:
    floor = 0.5 / fam.alpha
    return max(abs(fam.dtheta(k)), abs(fam.dtheta0(k))) + 2.0 * fam.sigma + floor


def _endpoints(fam: Family):
    alpha = fam.alpha
    k_s = alpha * math.sqrt(max(-fam.a_n, 0.0))
    vertex = -fam.c2 / (3.0 * fam.c3)      # hbar t alpha^3 / (2 m)
    disc = vertex * vertex - fam.c1 * alpha ** 3
    sq = math.sqrt(max(disc, 0.0))
    km, kp = vertex - sq, vertex + sq
    pad = 0.75 / alpha + 0.05 * (abs(km) + abs(kp) + k_s)
    L = min(-1.1 * k_s - pad, km - pad)
    R = max(1.1 * k_s + pad, kp + pad)
    return L, R, vertex


def _ray_legs(fam: Family, k0: float, direction: float, sign: float, legs: list,
              edge_only: bool):
    """Plan one rotated tail.  When the whole ray stays on the pure Faddeeva
    form (edge_only: the pi/6 ray whenever it starts right of the erfc sign
    switch, which only recedes further along that direction), the stop
    criterion tracks the edge cubic alone."""
    e = cmath.exp(1j * direction)
    kc = complex(k0)
    for _ in range(MAX_RAY_LEGS):
        h = 2.0 * math.pi / (PPC * _rate(fam, kc)) * e
        legs.append((kc.real, kc.imag, h.real, h.imag, RAY_SUBSTEPS, sign))
        kc = kc + RAY_SUBSTEPS * h
        decay = fam.theta0(kc).imag
        if not edge_only:
            decay = min(fam.theta(kc).imag, decay)
        if decay > RAY_DECAY:
            return
    raise TruncationError(
        f"contour ray from k={k0:.3g} (t={fam.t:.3g}, y={fam.y:.3g}) did not decay "
        f"within {MAX_RAY_LEGS * RAY_SUBSTEPS} nodes; increase the node budget")


def plan_legs(fam: Family):
    """Plan the complete contour; returns (legs list, node count)."""
    L, R, vertex = _endpoints(fam)
    legs: list = []
    _ray_legs(fam, L, 5.0 * math.pi / 6.0, -1.0, legs, edge_only=False)
    width = (R - L) / N_PANELS
    for p in range(N_PANELS):
        a = L + p * width
        b = a + width
        cand = [_rate(fam, a), _rate(fam, b)]
        if a < vertex < b:
            cand.append(_rate(fam, vertex))
        if a < 0.0 < b:
            cand.append(_rate(fam, 0.0))
        rate = max(cand)
        n = max(8, math.ceil(width * rate * PPC / (2.0 * math.pi)))
        legs.append((a, 0.0, width / n, 0.0, n, 1.0))
    k_star = fam.mass * fam.y / (fam.hbar * fam.t)
    _ray_legs(fam, R, math.pi / 6.0, 1.0, legs, edge_only=(k_star <= R))
    nodes = sum(int(row[4]) + 1 for row in legs)
    return legs, nodes
