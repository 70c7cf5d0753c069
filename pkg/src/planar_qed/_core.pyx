# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled quadrature hot path.

Same integrand, Gauss-Kronrod rule and interval-selection order as
``planar_qed._pycore``; only the arithmetic runs in C.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double complex cexp(double complex)
    double cabs(double complex)
    double cimag(double complex)
    double creal(double complex)

cdef extern from "math.h" nogil:
    double exp(double)
    double fabs(double)
    double fmax(double, double)
    double fmin(double, double)
    double pow(double, double)

cdef enum:
    NCOMP = 6

cdef double[11] XGK = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
]
cdef double[11] WGK = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525478960,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
]
cdef double[5] WG = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
]

cdef double INV8PI = 1.0 / (8.0 * 3.14159265358979323846)
cdef double EPMACH = np.finfo(float).eps
cdef double UFLOW = np.finfo(float).tiny


cdef inline double complex branch_sqrt(double complex w) nogil:
    cdef double complex s = csqrt(w)
    if cimag(s) < 0:
        s = -s
    return s


cdef inline void interface_terms(double complex b, double complex b1,
                                 double complex q2, double complex m,
                                 double complex other,
                                 double complex* num, double complex* den) nogil:
    cdef double complex plus = m * b + b1
    cdef double complex minus = m * b - b1
    cdef double complex prod = m * (m - other) + q2 * (1.0 - m) * (1.0 + m)
    if cabs(plus) >= cabs(minus):
        minus = prod / plus
    else:
        plus = prod / minus
    num[0] = minus
    den[0] = plus


cdef inline void eval_point(int sector, double x, double z, double complex eps,
                            double complex mu, double d, double complex* out) nogil:
    cdef double complex b, q2, w, dfac, fp, b1, xx
    cdef double complex ns, ds, np_, dp, rs, rp
    if sector == 0:
        b = x
        q2 = 1.0 - x * x
        w = 1j * INV8PI * cexp(2j * x * z)
        dfac = 2j * x
        fp = -x * x
    else:
        b = 1j * x
        q2 = 1.0 + x * x
        w = INV8PI * exp(-2.0 * x * z)
        dfac = -2.0 * x
        fp = x * x
    b1 = branch_sqrt(eps * mu - q2)
    interface_terms(b, b1, q2, mu, eps, &ns, &ds)
    interface_terms(b, b1, q2, eps, mu, &np_, &dp)
    if d == 0:
        xx = 1.0
    else:
        xx = cexp(2j * b1 * d)
    rs = (ns - xx * ds) / (ds - xx * ns)
    rp = (np_ + xx * dp) / (dp + xx * np_)
    out[0] = w * rs
    out[1] = w * fp * rp
    out[2] = w * 2.0 * q2 * rp
    out[3] = dfac * out[0]
    out[4] = dfac * out[1]
    out[5] = dfac * out[2]


cdef void gk21_c(int sector, double a, double bb, double z, double complex eps,
                 double complex mu, double d, double complex* result,
                 double* err) nogil:
    cdef double centr = 0.5 * (a + bb)
    cdef double hlgth = 0.5 * (bb - a)
    cdef double complex f[21][NCOMP]
    cdef double wk[21]
    cdef double wg[21]
    cdef double complex resk, resg, reskh
    cdef double resabs, resasc, e, scaled
    cdef int j, k
    for j in range(10):
        eval_point(sector, centr - hlgth * XGK[j], z, eps, mu, d, f[j])
        eval_point(sector, centr + hlgth * XGK[j], z, eps, mu, d, f[20 - j])
        wk[j] = WGK[j]
        wk[20 - j] = WGK[j]
        wg[j] = 0.0
        wg[20 - j] = 0.0
    eval_point(sector, centr, z, eps, mu, d, f[10])
    wk[10] = WGK[10]
    wg[10] = 0.0
    for j in range(5):
        wg[2 * j + 1] = WG[j]
        wg[19 - 2 * j] = WG[j]
    for k in range(NCOMP):
        resk = 0.0
        resg = 0.0
        resabs = 0.0
        for j in range(21):
            resk = resk + wk[j] * f[j][k]
            resg = resg + wg[j] * f[j][k]
            resabs = resabs + wk[j] * cabs(f[j][k])
        reskh = 0.5 * resk
        resasc = 0.0
        for j in range(21):
            resasc = resasc + wk[j] * cabs(f[j][k] - reskh)
        result[k] = resk * hlgth
        resabs = resabs * fabs(hlgth)
        resasc = resasc * fabs(hlgth)
        e = cabs((resk - resg) * hlgth)
        if resasc != 0 and e != 0:
            e = resasc * fmin(1.0, pow(200.0 * e / resasc, 1.5))
        if resabs > UFLOW / (50.0 * EPMACH):
            e = fmax(50.0 * EPMACH * resabs, e)
        err[k] = e


def integrand(int sector, x, double z, double complex eps, double complex mu,
              double d):
    """Integrand columns at nodes ``x``; see ``_pycore.integrand``."""
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=float).ravel()
    out = np.empty((xv.shape[0], NCOMP), dtype=complex)
    cdef double complex[:, ::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(xv.shape[0]):
            eval_point(sector, xv[i], z, eps, mu, d, &ov[i, 0])
    return out.reshape(np.shape(x) + (NCOMP,))


def gk21(int sector, double a, double b, double z, double complex eps,
         double complex mu, double d):
    res = np.empty(NCOMP, dtype=complex)
    err = np.empty(NCOMP, dtype=float)
    cdef double complex[::1] rv = res
    cdef double[::1] ev = err
    gk21_c(sector, a, b, z, eps, mu, d, &rv[0], &ev[0])
    return res, err


def adaptive(int sector, breakpoints, double z, double complex eps,
             double complex mu, double d, double rel_tol, double abs_tol,
             int max_sub):
    """Globally adaptive integration; see ``_pycore.adaptive``."""
    cdef double[::1] pts = np.ascontiguousarray(breakpoints, dtype=float)
    cdef Py_ssize_t n0 = pts.shape[0] - 1
    cdef Py_ssize_t cap = n0 + max_sub + 1
    lo_a = np.empty(cap)
    hi_a = np.empty(cap)
    res_a = np.zeros((cap, NCOMP), dtype=complex)
    err_a = np.zeros((cap, NCOMP))
    cdef double[::1] lo = lo_a
    cdef double[::1] hi = hi_a
    cdef double complex[:, ::1] res = res_a
    cdef double[:, ::1] err = err_a
    cdef double complex total[NCOMP]
    cdef double total_err[NCOMP]
    cdef double scale[NCOMP]
    cdef Py_ssize_t n = n0, i, worst
    cdef int k, n_sub = 0, converged = 0
    cdef double p, best, a, b, m
    with nogil:
        for i in range(n0):
            lo[i] = pts[i]
            hi[i] = pts[i + 1]
            gk21_c(sector, lo[i], hi[i], z, eps, mu, d, &res[i, 0], &err[i, 0])
        while True:
            for k in range(NCOMP):
                total[k] = 0.0
                total_err[k] = 0.0
            for i in range(n):
                for k in range(NCOMP):
                    total[k] = total[k] + res[i, k]
                    total_err[k] = total_err[k] + err[i, k]
            converged = 1
            for k in range(NCOMP):
                scale[k] = fmax(abs_tol, rel_tol * cabs(total[k]))
                if total_err[k] > scale[k]:
                    converged = 0
            worst = 0
            best = -1.0
            for i in range(n):
                p = 0.0
                for k in range(NCOMP):
                    p = fmax(p, err[i, k] / scale[k])
                if p > best:
                    best = p
                    worst = i
            if converged or n_sub >= max_sub:
                break
            a = lo[worst]
            b = hi[worst]
            m = 0.5 * (a + b)
            hi[worst] = m
            gk21_c(sector, a, m, z, eps, mu, d, &res[worst, 0], &err[worst, 0])
            lo[n] = m
            hi[n] = b
            gk21_c(sector, m, b, z, eps, mu, d, &res[n, 0], &err[n, 0])
            n += 1
            n_sub += 1
    tot = np.array([total[k] for k in range(NCOMP)])
    terr = np.array([total_err[k] for k in range(NCOMP)])
    return tot, terr, int(n), (lo[worst], hi[worst]), bool(converged)
