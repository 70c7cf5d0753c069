"""Closed forms for the lossless superlens slab eps = mu = -1 on a mirror.

For z_A > d the slab acts like a perfect mirror moved to z = d, so with
zt = 2 (z_A - d)

    g_xx = e^{i zt} (1 - i zt - zt^2) / (4 pi zt^3)
    g_zz = e^{i zt} (1 - i zt)        / (2 pi zt^3)

The imaginary parts are even in zt and finite everywhere; the real parts
diverge for 0 < z_A <= d.
"""
from __future__ import annotations

import math

from .errors import DivergentPotentialError, ValidationError
from .green import GreenDiag
from .units import DipoleOrientation

SERIES_CUTOFF = 1e-3


def _zt(z_A, d):
    if not z_A > 0:
        raise ValidationError(f"atom height must be > 0, got {z_A!r}")
    if not d >= 0:
        raise ValidationError(f"slab thickness must be >= 0, got {d!r}")
    return 2.0 * (z_A - d)


def _im_parts(zt):
    if abs(zt) < SERIES_CUTOFF:
        z2 = zt * zt
        im_xx = (-2.0 / 3.0 + (2.0 / 15.0) * z2 - z2 * z2 / 140.0) / (4.0 * math.pi)
        im_zz = (1.0 / 3.0 - z2 / 30.0 + z2 * z2 / 840.0) / (2.0 * math.pi)
        return im_xx, im_zz
    s, c = math.sin(zt), math.cos(zt)
    z3 = zt**3
    im_xx = (s - zt * c - zt * zt * s) / (4.0 * math.pi * z3)
    im_zz = (s - zt * c) / (2.0 * math.pi * z3)
    return im_xx, im_zz


def _re_parts(zt):
    s, c = math.sin(zt), math.cos(zt)
    z3 = zt**3
    re_xx = (c + zt * s - zt * zt * c) / (4.0 * math.pi * z3)
    re_zz = (c + zt * s) / (2.0 * math.pi * z3)
    return re_xx, re_zz


def ideal_green(z_A: float, d: float, imag_only: bool = False) -> GreenDiag:
    """Closed-form Green tensor of the lossless slab.

    Parameters
    ----------
    imag_only : bool
        Return only the imaginary parts (real parts set to zero).  Required
        for ``z_A <= d``, where the real parts diverge.

    Raises
    ------
    DivergentPotentialError
        Real parts requested for ``z_A <= d``.
    """
    zt = _zt(z_A, d)
    im_xx, im_zz = _im_parts(zt)
    if imag_only:
        return GreenDiag(complex(0.0, im_xx), complex(0.0, im_zz))
    if zt <= 0:
        raise DivergentPotentialError(
            f"real part of the ideal Green tensor diverges for z_A <= d "
            f"(z_A={z_A}, d={d})"
        )
    re_xx, re_zz = _re_parts(zt)
    return GreenDiag(complex(re_xx, im_xx), complex(re_zz, im_zz))


def ideal_green_derivative(z_A: float, d: float) -> GreenDiag:
    """d/dz_A of :func:`ideal_green` (z_A > d)."""
    zt = _zt(z_A, d)
    if zt <= 0:
        raise DivergentPotentialError("ideal Green tensor diverges for z_A <= d")
    e = complex(math.cos(zt), math.sin(zt))
    z4 = zt**4
    dxx = e * complex(-3.0 + 2.0 * zt * zt, 3.0 * zt - zt**3) / (4.0 * math.pi * z4)
    dzz = e * complex(zt * zt - 3.0, 3.0 * zt) / (2.0 * math.pi * z4)
    return GreenDiag(2.0 * dxx, 2.0 * dzz)


def ideal_potential(z_A: float, d: float, o: DipoleOrientation) -> float:
    """Resonant potential in units of hbar*Gamma_0 (z_A > d only)."""
    g = ideal_green(z_A, d)
    return -3.0 * math.pi * (o.p_par * g.gxx.real + o.p_perp * g.gzz.real)


def ideal_force(z_A: float, d: float, o: DipoleOrientation) -> float:
    """Force -dU/dz_A in units of hbar*Gamma_0*omega_10/c."""
    dg = ideal_green_derivative(z_A, d)
    return 3.0 * math.pi * (o.p_par * dg.gxx.real + o.p_perp * dg.gzz.real)


def ideal_decay(z_A: float, d: float, o: DipoleOrientation) -> float:
    """Gamma/Gamma_0; symmetric about the focal point z_A = d."""
    zt = _zt(z_A, d)
    if abs(zt) < SERIES_CUTOFF:
        # 1 + 6 pi Im g expanded so the focal-point values 0 and 2 are exact
        z2 = zt * zt
        rate_par = 1.5 * ((2.0 / 15.0) * z2 - z2 * z2 / 140.0)
        rate_perp = 2.0 - z2 / 10.0 + z2 * z2 / 280.0
        return o.p_par * rate_par + o.p_perp * rate_perp
    g = ideal_green(z_A, d, imag_only=True)
    return 1.0 + 6.0 * math.pi * (o.p_par * g.gxx.imag + o.p_perp * g.gzz.imag)
