"""Near-surface (nonretarded) limits and the thick-slab interface limit.

For z_A << 1 only evanescent waves with q >> 1 matter and beta ~ beta1 ~ i q.
The reflection coefficients then depend on q only through x = exp(-2 q d):

    r_p = (eps - 1 + (eps + 1) x) / (eps + 1 + (eps - 1) x)
    r_s = (mu - 1 - (mu + 1) x)   / (mu + 1 - (mu - 1) x)

and the observables reduce to single q integrals against exp(-2 q z_A).
"""
from __future__ import annotations

import math
import warnings
from typing import NamedTuple

import numpy as np
from scipy import integrate

from .errors import LosslessMediumError, ValidationError
from .units import DipoleOrientation, MediumResponse

RECOMMENDED_MAX_Z = 0.1


class NearSurfaceResult(NamedTuple):
    """Reduced observable split into s- and p-polarized contributions."""

    value: float
    s_part: float
    p_part: float


def _x(q, d):
    return np.exp(-2.0 * q * d)


def re_rp(q, eps, d):
    x = _x(q, d)
    num = (abs(eps) ** 2 - 1) * (1 + x * x) + (abs(eps - 1) ** 2 + abs(eps + 1) ** 2) * x
    return num / np.abs(eps + 1 + (eps - 1) * x) ** 2


def re_rs(q, mu, d):
    x = _x(q, d)
    num = (abs(mu) ** 2 - 1) * (1 + x * x) - (abs(mu - 1) ** 2 + abs(mu + 1) ** 2) * x
    return num / np.abs(mu + 1 - (mu - 1) * x) ** 2


def im_rp(q, eps, d):
    x = _x(q, d)
    return 2 * eps.imag * (1 - x * x) / np.abs(eps + 1 + (eps - 1) * x) ** 2


def im_rs(q, mu, d):
    x = _x(q, d)
    return 2 * mu.imag * (1 - x * x) / np.abs(mu + 1 - (mu - 1) * x) ** 2


def _check(z_A, m, d):
    if not z_A > 0:
        raise ValidationError(f"atom height must be > 0, got {z_A!r}")
    if not d >= 0:
        raise ValidationError(f"slab thickness must be >= 0, got {d!r}")
    if m.lossless:
        raise LosslessMediumError("near-surface forms require an absorbing medium")
    if z_A > RECOMMENDED_MAX_Z:
        warnings.warn(
            f"near-surface approximation used at z_A={z_A} > {RECOMMENDED_MAX_Z}",
            RuntimeWarning,
            stacklevel=3,
        )


def _q_integral(fun, z_A, d, m, power=0):
    """int_0^inf q^power exp(-2 q z_A) fun(q) dq, cut where exp(-2 q z) < 1e-18."""
    q_max = max(20.0 / z_A, 10.0)
    pts = [min(1.0 / z_A, 0.5 * q_max)]
    if d > 0:
        # slab scale, where exp(-2 q d) drops from 1 to 1e-17
        pts += [0.5 / d, 4.0 / d, 20.0 / d]
        for detune in (abs(m.eps + 1), abs(m.mu + 1)):
            if 0 < detune < 2:
                # plasmon-like resonance at exp(-2 q d) ~ |m + 1| / 2
                q0 = math.log(2.0 / detune) / (2.0 * d)
                pts += [0.5 * q0, q0, 2 * q0]
    pts = sorted({p for p in pts if 0 < p < q_max})

    def f(q):
        return q**power * math.exp(-2.0 * q * z_A) * fun(q)

    val, _ = integrate.quad(f, 0.0, q_max, points=pts, limit=1000,
                            epsabs=0.0, epsrel=1e-12)
    return val


def _parts(z_A, m, d, o, s_fun, p_fun, weight_power):
    s = _q_integral(lambda q: s_fun(q, m.mu, d), z_A, d, m, weight_power)
    p = _q_integral(lambda q: p_fun(q, m.eps, d), z_A, d, m, weight_power + 2)
    return o.p_par * s, (o.p_par + 2.0 * o.p_perp) * p


def near_surface_potential(z_A: float, m: MediumResponse, d: float,
                           o: DipoleOrientation) -> NearSurfaceResult:
    """Nonretarded potential in units of hbar*Gamma_0.

    U = -(3/8) int dq e^{-2 q z} [p_par (Re r_s + q^2 Re r_p) + 2 p_perp q^2 Re r_p]
    """
    _check(z_A, m, d)
    s, p = _parts(z_A, m, d, o, re_rs, re_rp, 0)
    s, p = -0.375 * s, -0.375 * p
    return NearSurfaceResult(s + p, s, p)


def near_surface_force(z_A: float, m: MediumResponse, d: float,
                       o: DipoleOrientation) -> NearSurfaceResult:
    """-dU/dz_A of :func:`near_surface_potential` (differentiated under the integral)."""
    _check(z_A, m, d)
    s, p = _parts(z_A, m, d, o, re_rs, re_rp, 1)
    s, p = -0.75 * s, -0.75 * p
    return NearSurfaceResult(s + p, s, p)


def near_surface_decay(z_A: float, m: MediumResponse, d: float,
                       o: DipoleOrientation) -> NearSurfaceResult:
    """Nonretarded Gamma/Gamma_0; ``s_part`` and ``p_part`` exclude the free-space 1."""
    _check(z_A, m, d)
    s, p = _parts(z_A, m, d, o, im_rs, im_rp, 0)
    s, p = 0.75 * s, 0.75 * p
    return NearSurfaceResult(1.0 + s + p, s, p)


class InterfaceLimit(NamedTuple):
    potential: float
    rate: float
    force: float


def interface_limits(z_A: float, m: MediumResponse,
                     o: DipoleOrientation) -> InterfaceLimit:
    """Nonretarded potential, decay rate and force in front of a half-space.

    U/(hbar Gamma_0) = -(3/32)(p_par + 2 p_perp) (|eps|^2 - 1) / (z^3 |eps + 1|^2)
    Gamma/Gamma_0    = 1 + (3/8)(p_par + 2 p_perp) Im eps / (z^3 |eps + 1|^2)
    """
    if not z_A > 0:
        raise ValidationError(f"atom height must be > 0, got {z_A!r}")
    eps = m.eps
    den = abs(eps + 1) ** 2
    if den == 0:
        raise ValidationError("interface limit diverges for eps = -1 exactly")
    w = o.p_par + 2.0 * o.p_perp
    a = (3.0 / 32.0) * w * (abs(eps) ** 2 - 1) / den
    u = -a / z_A**3
    rate = 1.0 + 0.375 * w * eps.imag / (den * z_A**3)
    force = -3.0 * a / z_A**4
    return InterfaceLimit(u, rate, force)
