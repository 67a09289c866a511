"""Pure-numpy implementations of the numerical hot kernels.

The compiled twin in ``_kernels_cy`` exports the same four entry points with
identical semantics; ``backend.py`` picks one at import time.

Kernels
-------
airy_ai_arr(x)
    Ai and Ai' on an array.  Maclaurin series summed in 80-bit long double
    for |x| <= 8, optimally truncated asymptotic expansions beyond.  Both
    branches agree to ~1e-13 absolute at the seam.
faddeeva_upper(z)
    w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.  Weideman rational
    approximation (N = 64) for |z| < 16, 8-term asymptotic series beyond.
direct_sum(...)
    Trapezoid sum of exp(i(a(x-x')^2 + beta x')) against sampled source
    values, optionally restricted to a tapered stationary-phase window
    around each output point.
contour_sum(...)
    Trapezoid-plus-endpoint-correction sum of the cubic-phase/erfc
    integrand along planned complex legs (see _contour.py for the math).
"""
import numpy as np

_LD = np.longdouble
_SQRTPI = 1.7724538509055160273
# Ai(0), Ai'(0) to long-double precision
_AI0 = _LD("0.3550280538878172392600631860041831763979791741991772405833")
_AIP0 = _LD("-0.2588194037928067984051835601892039634790911383549345822100")
_SERIES_CUT = 8.0
_PI_LD = _LD("3.14159265358979323846264338327950288")
_ASYM_TERMS = 38


def _uk_vk(nterms=_ASYM_TERMS):
    u = np.empty(nterms)
    v = np.empty(nterms)
    u[0] = v[0] = 1.0
    for k in range(1, nterms):
        u[k] = u[k - 1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        v[k] = u[k] * (6 * k + 1) / (1.0 - 6 * k)
    return u, v


_UK, _VK = _uk_vk()


def _airy_series(x):
    """Long-double Maclaurin series for Ai, Ai' (|x| <= ~9)."""
    x = x.astype(_LD)
    x3 = x * x * x
    f = np.ones_like(x)
    tf = np.ones_like(x)
    g = x.copy()
    tg = x.copy()
    fp = x * x / 2
    tfp = fp.copy()
    gp = np.ones_like(x)
    tgp = np.ones_like(x)
    for k in range(90):
        tf = tf * x3 / _LD((3 * k + 2) * (3 * k + 3))
        f += tf
        tg = tg * x3 / _LD((3 * k + 3) * (3 * k + 4))
        g += tg
        tfp = tfp * x3 / _LD((3 * k + 3) * (3 * k + 5))
        fp += tfp
        tgp = tgp * x3 / _LD((3 * k + 1) * (3 * k + 3))
        gp += tgp
        if k > 8 and float(np.max(np.abs(tf) + np.abs(tg))) < 1e-26:
            break
    ai = _AI0 * f + _AIP0 * g
    aip = _AI0 * fp + _AIP0 * gp
    return ai.astype(np.float64), aip.astype(np.float64)


def _airy_asym_pos(x):
    # xi and exp(-xi) in long double: the phase/scale rounding would otherwise
    # dominate the absolute error for large |x|
    xl = x.astype(_LD)
    xil = (_LD(2) / _LD(3)) * xl * np.sqrt(xl)
    xi = xil.astype(np.float64)
    su = np.zeros_like(x)
    sv = np.zeros_like(x)
    pw = np.ones_like(x)
    alive = np.ones_like(x, dtype=bool)
    prev = np.full_like(x, np.inf)
    for k in range(_ASYM_TERMS):
        term = _UK[k] * pw
        alive &= np.abs(term) <= prev
        sgn = -1.0 if k % 2 else 1.0
        su += np.where(alive, sgn * term, 0.0)
        sv += np.where(alive, sgn * _VK[k] * pw, 0.0)
        prev = np.abs(term)
        pw = pw / xi
    decay = np.exp(-xil).astype(np.float64)
    pref = decay / (2.0 * _SQRTPI * x ** 0.25)
    return pref * su, -(x ** 0.25) * decay / (2.0 * _SQRTPI) * sv


def _airy_asym_neg(x):
    z = -x
    zl = z.astype(_LD)
    zetal = (_LD(2) / _LD(3)) * zl * np.sqrt(zl)
    zeta = zetal.astype(np.float64)
    phase = zetal - _PI_LD / 4
    c = np.cos(phase).astype(np.float64)
    s = np.sin(phase).astype(np.float64)
    P = np.zeros_like(z)
    Q = np.zeros_like(z)
    R = np.zeros_like(z)
    S = np.zeros_like(z)
    alive = np.ones_like(z, dtype=bool)
    prev = np.full_like(z, np.inf)
    for k in range(_ASYM_TERMS // 2):
        te = _UK[2 * k] / zeta ** (2 * k)
        alive &= te <= prev
        prev = te
        sgn = -1.0 if k % 2 else 1.0
        P += np.where(alive, sgn * te, 0.0)
        Q += np.where(alive, sgn * _UK[2 * k + 1] / zeta ** (2 * k + 1), 0.0)
        R += np.where(alive, sgn * _VK[2 * k] / zeta ** (2 * k), 0.0)
        S += np.where(alive, sgn * _VK[2 * k + 1] / zeta ** (2 * k + 1), 0.0)
    ai = (c * P + s * Q) / (_SQRTPI * z ** 0.25)
    aip = (z ** 0.25) / _SQRTPI * (s * R - c * S)
    return ai, aip


def airy_ai_arr(x):
    """Ai(x), Ai'(x) elementwise on a float64 array."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    ai = np.empty_like(x)
    aip = np.empty_like(x)
    mid = np.abs(x) <= _SERIES_CUT
    if mid.any():
        ai[mid], aip[mid] = _airy_series(x[mid])
    pos = x > _SERIES_CUT
    if pos.any():
        ai[pos], aip[pos] = _airy_asym_pos(x[pos])
    neg = x < -_SERIES_CUT
    if neg.any():
        ai[neg], aip[neg] = _airy_asym_neg(x[neg])
    return ai, aip


# ---------------------------------------------------------------------------
# Faddeeva function, upper half plane

def _weideman_coeffs(N=64):
    M = 2 * N
    L = np.sqrt(N / np.sqrt(2.0))
    k = np.arange(-M + 1, M)
    t = L * np.tan(k * np.pi / (2 * M))
    f = np.exp(-t * t) * (L * L + t * t)
    f = np.concatenate(([0.0], f))
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * M)
    return L, a[1:N + 1][::-1].copy()


_WL, _WA = _weideman_coeffs()
_W_ASYM_CUT = 16.0


def faddeeva_upper(z):
    """w(z) for Im z >= 0 (elementwise)."""
    z = np.ascontiguousarray(z, dtype=np.complex128)
    out = np.empty_like(z)
    big = np.abs(z) >= _W_ASYM_CUT
    if big.any():
        zb = z[big]
        iz2 = 1.0 / (zb * zb)
        s = np.ones_like(zb)
        term = np.ones_like(zb)
        c = 1.0
        for k in range(1, 8):
            c *= (2 * k - 1) / 2.0
            term = term * iz2
            s = s + c * term
        out[big] = (1j / _SQRTPI) * s / zb
    sm = ~big
    if sm.any():
        iz = 1j * z[sm]
        Z = (_WL + iz) / (_WL - iz)
        p = np.zeros_like(Z)
        for c in _WA:
            p = p * Z + c
        out[sm] = 2.0 * p / (_WL - iz) ** 2 + (1.0 / _SQRTPI) / (_WL - iz)
    return out


# ---------------------------------------------------------------------------
# Direct propagator quadrature

def _taper_weights(xs, center, wcut, taper_frac):
    u = np.abs(xs - center) / wcut
    w = np.ones_like(xs)
    edge = u > (1.0 - taper_frac)
    w[edge] = np.cos(0.5 * np.pi * (u[edge] - (1.0 - taper_frac)) / taper_frac) ** 2
    w[u >= 1.0] = 0.0
    return w


def direct_sum(x0, dx, src, xout, a, beta, window, wcut, taper_frac):
    """sum_j w_j src_j exp(i(a(x_i - x'_j)^2 + beta x'_j)) for every x_i.

    w_j are trapezoid weights times, when ``window`` is set, a cosine-squared
    taper over a window of half-width ``wcut`` centred on the stationary
    point x_i - beta/(2a) of the quadratic phase.
    """
    src = np.ascontiguousarray(src, dtype=np.complex128)
    xout = np.ascontiguousarray(xout, dtype=np.float64)
    n = src.shape[0]
    xs = x0 + dx * np.arange(n)
    wbase = np.full(n, dx)
    wbase[0] *= 0.5
    wbase[-1] *= 0.5
    out = np.empty(xout.shape[0], dtype=np.complex128)
    if not window:
        fsrc = wbase * src * np.exp(1j * beta * xs)
        chunk = max(1, int(4e6 // n))
        for lo in range(0, xout.shape[0], chunk):
            xo = xout[lo:lo + chunk, None]
            out[lo:lo + chunk] = np.exp(1j * a * (xo - xs[None, :]) ** 2) @ fsrc
        return out
    for i, xi in enumerate(xout):
        center = xi - beta / (2.0 * a)
        jlo = max(0, int(np.floor((center - wcut - x0) / dx)))
        jhi = min(n, int(np.ceil((center + wcut - x0) / dx)) + 1)
        if jhi <= jlo:
            out[i] = 0.0
            continue
        xw = xs[jlo:jhi]
        w = wbase[jlo:jhi] * _taper_weights(xw, center, wcut, taper_frac)
        out[i] = np.sum(w * src[jlo:jhi] * np.exp(1j * (a * (xi - xw) ** 2 + beta * xw)))
    return out


# ---------------------------------------------------------------------------
# Contour sum for the cubic-phase / erfc closed-form integral

def _family_T(k, c3, c2, c1, b1, pph, cz, vt, zp, y):
    """Stable evaluation of exp(i theta(k)) erfc(zeta(k)) at complex nodes."""
    theta = ((c3 * k + c2) * k + c1) * k
    theta0 = c3 * k * k * k + b1 * k
    z = 1j * ((1j - 1.0) / 2.0 * cz * (y - vt * k))
    up = z.imag >= 0.0 if np.isscalar(z) else (z.imag >= 0.0)
    zu = np.where(up, z, -z)
    w = faddeeva_upper(zu)
    edge = np.exp(1j * (theta0 + pph)) * w
    return np.where(up, edge, 2.0 * np.exp(1j * theta) - edge)


def _family_Tp(k, c3, c2, c1, b1, pph, cz, vt, zp, y):
    """dT/dk at complex nodes (for the trapezoid endpoint correction)."""
    k = np.asarray(k, dtype=np.complex128)
    theta = ((c3 * k + c2) * k + c1) * k
    dtheta = (3 * c3 * k + 2 * c2) * k + c1
    theta0 = c3 * k * k * k + b1 * k
    dtheta0 = 3 * c3 * k * k + b1
    z = 1j * ((1j - 1.0) / 2.0 * cz * (y - vt * k))
    dz = 1j * zp
    up = z.imag >= 0.0
    zu = np.where(up, z, -z)
    dzu = np.where(up, dz, -dz)
    w = faddeeva_upper(zu)
    edge = np.exp(1j * (theta0 + pph)) * (1j * dtheta0 * w + (-2.0 * zu * w + 2j / _SQRTPI) * dzu)
    return np.where(up, edge, 2j * dtheta * np.exp(1j * theta) - edge)


def contour_sum(legs, alpha, a_n, hbar, m, t, y):
    """Accumulate the planned legs; returns the complete contour integral."""
    c3 = 1.0 / (3.0 * alpha ** 3)
    c2 = -hbar * t / (2.0 * m)
    c1 = a_n / alpha + y
    b1 = a_n / alpha
    pph = m * y * y / (2.0 * hbar * t)
    cz = np.sqrt(m / (hbar * t))
    vt = hbar * t / m
    zp = -(1j - 1.0) / 2.0 * cz * vt
    args = (c3, c2, c1, b1, pph, cz, vt, zp, y)
    total = 0.0 + 0.0j
    for row in legs:
        z0 = complex(row[0], row[1])
        h = complex(row[2], row[3])
        nst = int(row[4])
        sign = row[5]
        nodes = z0 + h * np.arange(nst + 1)
        vals = _family_T(nodes, *args)
        s = h * (np.sum(vals) - 0.5 * (vals[0] + vals[-1]))
        ends = _family_Tp(np.array([nodes[0], nodes[-1]]), *args)
        s += h * h / 12.0 * (ends[0] - ends[1])
        total += sign * s
    return total
