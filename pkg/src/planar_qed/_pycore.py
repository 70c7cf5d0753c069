"""Pure-Python (numpy) implementation of the quadrature hot path.

Mirrors ``_core.pyx`` exactly: same integrand, same 21-point Gauss-Kronrod
rule, same interval-selection order.  Used when the compiled extension is
unavailable or ``PLANAR_QED_PURE=1`` is set.
"""
import numpy as np

from .kernel import branch_sqrt, reflection_from_branches

PROPAGATING = 0
EVANESCENT = 1
NCOMP = 6

# 21-point Kronrod abscissae (descending, last one is the centre) and weights,
# with the weights of the embedded 10-point Gauss rule on xgk[1::2].
XGK = np.array([
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
    0.000000000000000000000000000000000,
])
WGK = np.array([
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
])
WG = np.array([
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])

# node order: -x0..-x9, 0, x9..x0
_NODES = np.concatenate([-XGK[:-1], [0.0], XGK[-2::-1]])
_WK = np.concatenate([WGK[:-1], [WGK[-1]], WGK[-2::-1]])
_WG = np.zeros(21)
_WG[1:10:2] = WG
_WG[11:20:2] = WG[::-1]

_EPMACH = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny
_INV8PI = 1.0 / (8.0 * np.pi)


def integrand(sector, x, z, eps, mu, d):
    """Integrand columns at nodes ``x`` of one sector.

    Columns: g_xx s-part, g_xx p-part, g_zz, then their z-derivatives.
    Prefactors i/(8 pi) (propagating) and 1/(8 pi) (evanescent) are included,
    so the sector integrals add directly to the dimensionless Green tensor.
    """
    x = np.asarray(x, dtype=float)
    if sector == PROPAGATING:
        b = x + 0j
        q2 = 1.0 - x * x
        w = 1j * _INV8PI * np.exp(2j * x * z)
        dfac = 2j * x
        fp = -x * x
    else:
        b = 1j * x
        q2 = 1.0 + x * x
        w = _INV8PI * np.exp(-2.0 * x * z) + 0j
        dfac = -2.0 * x + 0j
        fp = x * x
    b1 = branch_sqrt(eps * mu - q2)
    rs, rp = reflection_from_branches(b, b1, q2, eps, mu, d)[:2]
    out = np.empty(x.shape + (NCOMP,), dtype=complex)
    out[..., 0] = w * rs
    out[..., 1] = w * fp * rp
    out[..., 2] = w * 2.0 * q2 * rp
    out[..., 3] = dfac * out[..., 0]
    out[..., 4] = dfac * out[..., 1]
    out[..., 5] = dfac * out[..., 2]
    return out


def gk21(sector, a, b, z, eps, mu, d):
    """Kronrod estimate and QUADPACK-style error for each column on [a, b]."""
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    f = integrand(sector, centr + hlgth * _NODES, z, eps, mu, d)
    resk = _WK @ f
    resg = _WG @ f
    reskh = 0.5 * resk
    resabs = _WK @ np.abs(f)
    resasc = _WK @ np.abs(f - reskh)
    result = resk * hlgth
    resabs = resabs * abs(hlgth)
    resasc = resasc * abs(hlgth)
    err = np.abs((resk - resg) * hlgth)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0) & (err != 0), scaled, err)
    floor = 50.0 * _EPMACH * resabs
    err = np.where(resabs > _UFLOW / (50.0 * _EPMACH), np.maximum(floor, err), err)
    return result, err


def adaptive(sector, breakpoints, z, eps, mu, d, rel_tol, abs_tol, max_sub):
    """Globally adaptive integration over consecutive ``breakpoints``.

    The interval with the largest error relative to the running per-column
    tolerance is bisected until every column satisfies
    ``err <= max(abs_tol, rel_tol*|I|)`` or ``max_sub`` bisections were spent.

    Returns ``(integral, error, n_intervals, worst_interval, converged)``.
    """
    pts = np.asarray(breakpoints, dtype=float)
    lo = list(pts[:-1])
    hi = list(pts[1:])
    res = []
    err = []
    for a, b in zip(lo, hi):
        r, e = gk21(sector, a, b, z, eps, mu, d)
        res.append(r)
        err.append(e)
    res = np.array(res).reshape(-1, NCOMP)
    err = np.array(err).reshape(-1, NCOMP)
    n_sub = 0
    while True:
        total = res.sum(axis=0)
        total_err = err.sum(axis=0)
        scale = np.maximum(abs_tol, rel_tol * np.abs(total))
        prio = (err / scale).max(axis=1)
        worst = int(np.argmax(prio))
        if np.all(total_err <= scale):
            return total, total_err, len(lo), (lo[worst], hi[worst]), True
        if n_sub >= max_sub:
            return total, total_err, len(lo), (lo[worst], hi[worst]), False
        a, b = lo[worst], hi[worst]
        m = 0.5 * (a + b)
        r1, e1 = gk21(sector, a, m, z, eps, mu, d)
        r2, e2 = gk21(sector, m, b, z, eps, mu, d)
        hi[worst] = m
        res[worst] = r1
        err[worst] = e1
        lo.append(m)
        hi.append(b)
        res = np.vstack([res, r2])
        err = np.vstack([err, e2])
        n_sub += 1
