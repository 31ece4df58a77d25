# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: nonlinear phase rotation and inequality sweeps.

Element semantics mirror ``_numpy.py`` exactly; keep the two in sync (the
parity suite in ``tests/test_kernels.py`` compares them).
"""

from libc.math cimport cos, exp, fabs, fmax, fmin, hypot, isfinite, log, pow, sin, sqrt

import numpy as np

cdef double MODULUS_FLOOR = 1e-280
cdef double PHASE_OVERFLOW = 9007199254740992.0  # 2^53
# squared moduli inside this range lose nothing to sqrt(re^2 + im^2);
# outside it (subnormal squares, near-overflow) rescale by the larger leg
cdef double SAFE_SQ_LO = 1e-280
cdef double SAFE_SQ_HI = 1e280

REG_EXACT, REG_SHIFTED, REG_FLOOR = 0, 1, 2


cdef inline double _mod(double re, double im) nogil:
    cdef double sq = re * re + im * im
    cdef double big, small, r
    if SAFE_SQ_LO < sq < SAFE_SQ_HI:
        return sqrt(sq)
    big = fmax(fabs(re), fabs(im))
    if big == 0.0 or not isfinite(big):
        return big
    small = fmin(fabs(re), fabs(im))
    r = small / big
    return big * sqrt(1.0 + r * r)


cdef inline double _log_modulus(double m) nogil:
    return log(m) if m > 0.0 else 0.0


cdef inline double _theta(double m) nogil:
    cdef double r
    if m <= 0.5:
        return 1.0
    if m >= 1.0:
        return 0.0
    r = 2.0 * m - 1.0
    return 1.0 - r * r * r * (10.0 + r * (6.0 * r - 15.0))


cdef inline double _log_plus(double m) nogil:
    return log(m) if m > 1.0 else 0.0


def nl_phase(const double complex[::1] z, double dt, double lam, double mu,
             double alpha, double eps, int mode):
    """See ``_numpy.nl_phase``; operates on a 1-D complex128 array."""
    if mode not in (0, 1, 2):
        raise ValueError(f"unknown regularization mode {mode}")
    cdef Py_ssize_t n = z.shape[0]
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int cmode = mode
    cdef double zr, zi, m, logterm, phase, c, s
    cdef long overflow = 0
    with nogil:
        for i in range(n):
            zr = z[i].real
            zi = z[i].imag
            m = _mod(zr, zi)
            if m < MODULUS_FLOOR:
                out[i] = z[i]
                continue
            if cmode == 0:
                logterm = 2.0 * log(m)
            elif cmode == 1:
                logterm = 2.0 * log(hypot(m, eps))
            else:
                logterm = 2.0 * log(fmax(m, eps))
            phase = dt * lam * logterm
            if mu != 0.0:
                phase += dt * mu * pow(m, alpha)
            if not isfinite(phase) or fabs(phase) > PHASE_OVERFLOW:
                overflow += 1
            c = cos(phase)
            s = sin(phase)
            out[i] = (zr * c - zi * s) + 1j * (zr * s + zi * c)
    return out_arr, int(overflow)


def ch_sweep(const double complex[::1] z, const double complex[::1] w,
             double bound=float("inf")):
    """See ``_numpy.ch_sweep``."""
    cdef Py_ssize_t n = z.shape[0]
    if w.shape[0] != n:
        raise ValueError("z and w must have equal length")
    cdef Py_ssize_t i, best_i = 0
    cdef double zr, zi, wr, wi, lz, lw, tr, ti, dr, di, den, ratio
    cdef double best = -1.0
    cdef double slack = bound * (1.0 + 1e-12)
    cdef long violations = 0
    with nogil:
        for i in range(n):
            zr = z[i].real
            zi = z[i].imag
            wr = w[i].real
            wi = w[i].imag
            dr = zr - wr
            di = zi - wi
            den = dr * dr + di * di
            if den > 0.0:
                lz = _log_modulus(_mod(zr, zi))
                lw = _log_modulus(_mod(wr, wi))
                tr = zr * lz - wr * lw
                ti = zi * lz - wi * lw
                ratio = fabs(dr * ti - di * tr) / den
            else:
                ratio = 0.0
            if ratio > best:
                best = ratio
                best_i = i
            if ratio > slack:
                violations += 1
    return best, int(best_i), int(violations)


def g1_sweep(const double complex[::1] z, const double complex[::1] w,
             double delta, double lam=1.0, double bound=float("inf")):
    """See ``_numpy.g1_sweep``."""
    cdef Py_ssize_t n = z.shape[0]
    if w.shape[0] != n:
        raise ValueError("z and w must have equal length")
    cdef Py_ssize_t i, best_i = 0
    cdef double zr, zi, wr, wi, mz, mw, az, aw, dr, di, dist, ratio
    cdef double best = -1.0
    cdef double slack = bound * (1.0 + 1e-12)
    cdef double holder = 1.0 - delta
    cdef long violations = 0
    with nogil:
        for i in range(n):
            zr = z[i].real
            zi = z[i].imag
            wr = w[i].real
            wi = w[i].imag
            dr = zr - wr
            di = zi - wi
            dist = _mod(dr, di)
            if dist > 0.0:
                mz = _mod(zr, zi)
                mw = _mod(wr, wi)
                az = lam * _theta(mz) * 2.0 * _log_modulus(mz)
                aw = lam * _theta(mw) * 2.0 * _log_modulus(mw)
                # exp/log instead of pow: same to ~1 ulp of the exponent
                # product, measurably faster than scalar libm pow
                ratio = delta * _mod(az * zr - aw * wr, az * zi - aw * wi) \
                    / exp(holder * log(dist))
            else:
                ratio = 0.0
            if ratio > best:
                best = ratio
                best_i = i
            if ratio > slack:
                violations += 1
    return best, int(best_i), int(violations)


def g2_sweep(const double complex[::1] z, const double complex[::1] w,
             double lam=1.0, double bound=float("inf")):
    """See ``_numpy.g2_sweep``."""
    cdef Py_ssize_t n = z.shape[0]
    if w.shape[0] != n:
        raise ValueError("z and w must have equal length")
    cdef Py_ssize_t i, best_i = 0
    cdef double zr, zi, wr, wi, mz, mw, az, aw, dr, di, dist, ratio
    cdef double best = -1.0
    cdef double slack = bound * (1.0 + 1e-12)
    cdef long violations = 0
    with nogil:
        for i in range(n):
            zr = z[i].real
            zi = z[i].imag
            wr = w[i].real
            wi = w[i].imag
            dr = zr - wr
            di = zi - wi
            dist = _mod(dr, di)
            if dist > 0.0:
                mz = _mod(zr, zi)
                mw = _mod(wr, wi)
                az = lam * (1.0 - _theta(mz)) * 2.0 * _log_modulus(mz)
                aw = lam * (1.0 - _theta(mw)) * 2.0 * _log_modulus(mw)
                ratio = _mod(az * zr - aw * wr, az * zi - aw * wi) \
                    / ((1.0 + _log_plus(mz) + _log_plus(mw)) * dist)
            else:
                ratio = 0.0
            if ratio > best:
                best = ratio
                best_i = i
            if ratio > slack:
                violations += 1
    return best, int(best_i), int(violations)
