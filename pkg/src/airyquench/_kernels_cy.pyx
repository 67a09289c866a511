# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of _kernels_py: identical entry points and semantics."""
import numpy as np

cimport numpy as cnp
from libc.math cimport M_PI, ceil, cos, exp, fabs, floor, sin, sqrt

cdef extern from "<math.h>" nogil:
    long double sqrtl(long double)
    long double cosl(long double)
    long double sinl(long double)
    long double expl(long double)

cnp.import_array()

cdef double SQRTPI = 1.7724538509055160273
cdef double SERIES_CUT = 8.0
cdef int ASYM_TERMS = 38
# Ai(0), Ai'(0) as exact hi+lo double pairs (full long-double precision)
cdef long double AI0 = (<long double> 0.3550280538878172) + (<long double> 2.05233632436212e-17)
cdef long double AIP0 = (<long double> -0.2588194037928068) + (<long double> 2.522243111610832e-17)
cdef long double PI_L = (<long double> 3.141592653589793) + (<long double> 1.2246467991473532e-16)

cdef double[64] _WA
cdef double _WL = 0.0
cdef double[38] _UK
cdef double[38] _VK


def _init_tables():
    global _WL
    cdef int N = 64
    M = 2 * N
    L = np.sqrt(N / np.sqrt(2.0))
    k = np.arange(-M + 1, M)
    t = L * np.tan(k * np.pi / (2 * M))
    f = np.exp(-t * t) * (L * L + t * t)
    f = np.concatenate(([0.0], f))
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * M)
    a = a[1:N + 1][::-1].copy()
    cdef int i
    for i in range(N):
        _WA[i] = a[i]
    _WL = L
    u = np.empty(ASYM_TERMS)
    v = np.empty(ASYM_TERMS)
    u[0] = v[0] = 1.0
    for i in range(1, ASYM_TERMS):
        u[i] = u[i - 1] * (6 * i - 5) * (6 * i - 3) * (6 * i - 1) / (216.0 * i * (2 * i - 1))
        v[i] = u[i] * (6 * i + 1) / (1.0 - 6 * i)
    for i in range(ASYM_TERMS):
        _UK[i] = u[i]
        _VK[i] = v[i]


_init_tables()


cdef inline double complex _cexp(double complex z) noexcept nogil:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * m * sin(z.imag)


# --------------------------------------------------------------------------
# Airy

cdef void _airy_scalar(double x, double* ai, double* aip) noexcept nogil:
    cdef long double xl, x3, f, tf, g, tg, fp, tfp, gp, tgp, xil, zetal
    cdef double xi, su, sv, pw, term, prev, pref, z, zeta, c, s, P, Q, R, S, te, decay
    cdef int k
    if fabs(x) <= SERIES_CUT:
        xl = <long double> x
        x3 = xl * xl * xl
        f = <long double> 1.0
        tf = <long double> 1.0
        g = xl
        tg = xl
        fp = xl * xl / <long double> 2.0
        tfp = fp
        gp = <long double> 1.0
        tgp = <long double> 1.0
        for k in range(90):
            tf = tf * x3 / <long double>((3 * k + 2) * (3 * k + 3))
            f += tf
            tg = tg * x3 / <long double>((3 * k + 3) * (3 * k + 4))
            g += tg
            tfp = tfp * x3 / <long double>((3 * k + 3) * (3 * k + 5))
            fp += tfp
            tgp = tgp * x3 / <long double>((3 * k + 1) * (3 * k + 3))
            gp += tgp
            if k > 8 and (tf if tf >= 0 else -tf) + (tg if tg >= 0 else -tg) < <long double> 1e-26:
                break
        ai[0] = <double>(AI0 * f + AIP0 * g)
        aip[0] = <double>(AI0 * fp + AIP0 * gp)
        return
    if x > 0:
        xl = <long double> x
        xil = (<long double> 2.0) / (<long double> 3.0) * xl * sqrtl(xl)
        xi = <double> xil
        su = 0.0
        sv = 0.0
        pw = 1.0
        prev = 1e308
        for k in range(ASYM_TERMS):
            term = _UK[k] * pw
            if fabs(term) > prev:
                break
            prev = fabs(term)
            if k % 2:
                su -= term
                sv -= _VK[k] * pw
            else:
                su += term
                sv += _VK[k] * pw
            pw /= xi
        decay = <double> expl(-xil)
        pref = decay / (2.0 * SQRTPI * sqrt(sqrt(x)))
        ai[0] = pref * su
        aip[0] = -sqrt(sqrt(x)) * decay / (2.0 * SQRTPI) * sv
        return
    z = -x
    xl = <long double> z
    zetal = (<long double> 2.0) / (<long double> 3.0) * xl * sqrtl(xl)
    zeta = <double> zetal
    c = <double> cosl(zetal - PI_L / 4)
    s = <double> sinl(zetal - PI_L / 4)
    P = 0.0
    Q = 0.0
    R = 0.0
    S = 0.0
    prev = 1e308
    pw = 1.0  # zeta^{-2k}
    for k in range(ASYM_TERMS // 2):
        te = _UK[2 * k] * pw
        if te > prev:
            break
        prev = te
        if k % 2:
            P -= te
            Q -= _UK[2 * k + 1] * pw / zeta
            R -= _VK[2 * k] * pw
            S -= _VK[2 * k + 1] * pw / zeta
        else:
            P += te
            Q += _UK[2 * k + 1] * pw / zeta
            R += _VK[2 * k] * pw
            S += _VK[2 * k + 1] * pw / zeta
        pw /= zeta * zeta
    ai[0] = (c * P + s * Q) / (SQRTPI * sqrt(sqrt(z)))
    aip[0] = sqrt(sqrt(z)) / SQRTPI * (s * R - c * S)


def airy_ai_arr(x):
    """Ai(x), Ai'(x) elementwise on a float64 array."""
    cdef cnp.ndarray[double, ndim=1] xa = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xa.shape[0]
    cdef cnp.ndarray[double, ndim=1] ai = np.empty(n)
    cdef cnp.ndarray[double, ndim=1] aip = np.empty(n)
    cdef Py_ssize_t i
    for i in range(n):
        _airy_scalar(xa[i], &ai[i], &aip[i])
    return ai, aip


# --------------------------------------------------------------------------
# Faddeeva, upper half plane

cdef double complex _w_scalar(double complex z) noexcept nogil:
    cdef double complex iz, Z, p, iz2, s, term
    cdef double c
    cdef int k
    if z.real * z.real + z.imag * z.imag >= 256.0:
        iz2 = 1.0 / (z * z)
        s = 1.0
        term = 1.0
        c = 1.0
        for k in range(1, 8):
            c *= (2 * k - 1) / 2.0
            term = term * iz2
            s = s + c * term
        return (1j / SQRTPI) * s / z
    iz = 1j * z
    Z = (_WL + iz) / (_WL - iz)
    p = 0.0
    for k in range(64):
        p = p * Z + _WA[k]
    return 2.0 * p / ((_WL - iz) * (_WL - iz)) + (1.0 / SQRTPI) / (_WL - iz)


def faddeeva_upper(z):
    """w(z) for Im z >= 0 (elementwise)."""
    cdef cnp.ndarray[double complex, ndim=1] za = np.ascontiguousarray(z, dtype=np.complex128)
    cdef Py_ssize_t n = za.shape[0]
    cdef cnp.ndarray[double complex, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = _w_scalar(za[i])
    return out


# --------------------------------------------------------------------------
# Direct propagator quadrature

def direct_sum(double x0, double dx, src, xout, double a, double beta,
               bint window, double wcut, double taper_frac):
    cdef cnp.ndarray[double complex, ndim=1] s = np.ascontiguousarray(src, dtype=np.complex128)
    cdef cnp.ndarray[double, ndim=1] xo = np.ascontiguousarray(xout, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0], m = xo.shape[0]
    cdef cnp.ndarray[double complex, ndim=1] out = np.empty(m, dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=1] eff = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t i, j, jlo, jhi
    cdef double xi, xj, d, ph, wb, center, u, wt, acc_r, acc_i, cr, ci
    cdef double complex v
    if not window:
        for j in range(n):
            xj = x0 + dx * j
            wb = dx if 0 < j < n - 1 else 0.5 * dx
            ph = beta * xj
            v = s[j]
            eff[j] = wb * (v.real * cos(ph) - v.imag * sin(ph)) \
                + 1j * wb * (v.real * sin(ph) + v.imag * cos(ph))
        with nogil:
            for i in range(m):
                xi = xo[i]
                acc_r = 0.0
                acc_i = 0.0
                for j in range(n):
                    d = xi - (x0 + dx * j)
                    ph = a * d * d
                    cr = cos(ph)
                    ci = sin(ph)
                    acc_r += eff[j].real * cr - eff[j].imag * ci
                    acc_i += eff[j].real * ci + eff[j].imag * cr
                out[i] = acc_r + 1j * acc_i
        return out
    with nogil:
        for i in range(m):
            xi = xo[i]
            center = xi - beta / (2.0 * a)
            jlo = <Py_ssize_t> floor((center - wcut - x0) / dx)
            jhi = <Py_ssize_t> ceil((center + wcut - x0) / dx) + 1
            if jlo < 0:
                jlo = 0
            if jhi > n:
                jhi = n
            acc_r = 0.0
            acc_i = 0.0
            for j in range(jlo, jhi):
                xj = x0 + dx * j
                wb = dx if 0 < j < n - 1 else 0.5 * dx
                u = fabs(xj - center) / wcut
                if u >= 1.0:
                    continue
                if u > 1.0 - taper_frac:
                    wt = cos(0.5 * M_PI * (u - (1.0 - taper_frac)) / taper_frac)
                    wb *= wt * wt
                d = xi - xj
                ph = a * d * d + beta * xj
                cr = cos(ph)
                ci = sin(ph)
                acc_r += wb * (s[j].real * cr - s[j].imag * ci)
                acc_i += wb * (s[j].real * ci + s[j].imag * cr)
            out[i] = acc_r + 1j * acc_i
    return out


# --------------------------------------------------------------------------
# Contour sum for the cubic-phase / erfc closed-form integral

cdef struct FamilyPars:
    double c3, c2, c1, b1, pph, cz, vt
    double complex zp
    double y


cdef inline double complex _fam_T(double complex k, FamilyPars* f) noexcept nogil:
    cdef double complex theta = ((f.c3 * k + f.c2) * k + f.c1) * k
    cdef double complex theta0 = f.c3 * k * k * k + f.b1 * k
    cdef double complex z = 1j * ((1j - 1.0) / 2.0 * f.cz * (f.y - f.vt * k))
    cdef double complex edge
    if z.imag >= 0.0:
        edge = _cexp(1j * (theta0 + f.pph)) * _w_scalar(z)
        return edge
    edge = _cexp(1j * (theta0 + f.pph)) * _w_scalar(-z)
    return 2.0 * _cexp(1j * theta) - edge


cdef inline double complex _fam_Tp(double complex k, FamilyPars* f) noexcept nogil:
    cdef double complex theta = ((f.c3 * k + f.c2) * k + f.c1) * k
    cdef double complex dtheta = (3.0 * f.c3 * k + 2.0 * f.c2) * k + f.c1
    cdef double complex theta0 = f.c3 * k * k * k + f.b1 * k
    cdef double complex dtheta0 = 3.0 * f.c3 * k * k + f.b1
    cdef double complex z = 1j * ((1j - 1.0) / 2.0 * f.cz * (f.y - f.vt * k))
    cdef double complex dz = 1j * f.zp
    cdef double complex w, edge
    if z.imag >= 0.0:
        w = _w_scalar(z)
        return _cexp(1j * (theta0 + f.pph)) * (1j * dtheta0 * w + (-2.0 * z * w + 2j / SQRTPI) * dz)
    w = _w_scalar(-z)
    edge = _cexp(1j * (theta0 + f.pph)) * (1j * dtheta0 * w + (-2.0 * (-z) * w + 2j / SQRTPI) * (-dz))
    return 2j * dtheta * _cexp(1j * theta) - edge


def contour_sum(legs, double alpha, double a_n, double hbar, double m, double t, double y):
    cdef cnp.ndarray[double, ndim=2] lg = np.ascontiguousarray(legs, dtype=np.float64)
    cdef FamilyPars f
    f.c3 = 1.0 / (3.0 * alpha * alpha * alpha)
    f.c2 = -hbar * t / (2.0 * m)
    f.c1 = a_n / alpha + y
    f.b1 = a_n / alpha
    f.pph = m * y * y / (2.0 * hbar * t)
    f.cz = sqrt(m / (hbar * t))
    f.vt = hbar * t / m
    f.zp = -(1j - 1.0) / 2.0 * f.cz * f.vt
    f.y = y
    cdef double complex total = 0.0
    cdef double complex z0, h, nodesum, first, last, k, s
    cdef double sign
    cdef Py_ssize_t r, q, nst
    with nogil:
        for r in range(lg.shape[0]):
            z0 = lg[r, 0] + 1j * lg[r, 1]
            h = lg[r, 2] + 1j * lg[r, 3]
            nst = <Py_ssize_t> lg[r, 4]
            sign = lg[r, 5]
            nodesum = 0.0
            first = _fam_T(z0, &f)
            last = first
            for q in range(nst + 1):
                k = z0 + q * h
                last = _fam_T(k, &f)
                nodesum += last
            s = h * (nodesum - 0.5 * (first + last))
            s += h * h / 12.0 * (_fam_Tp(z0, &f) - _fam_Tp(z0 + nst * h, &f))
            total += sign * s
    return complex(total)
