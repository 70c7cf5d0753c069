"""Wavevector branches and reflection coefficients of the slab + mirror.

Every function accepts a scalar or an array of transverse wavenumbers ``q``
(units omega_10/c) and returns values of the same shape.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import LosslessMediumError, NearPoleError, ValidationError
from .units import MediumResponse

SINGULAR_THRESHOLD = 1e-30


class ReflectionPair(NamedTuple):
    rs: complex
    rp: complex


def _out(x):
    return x.item() if np.ndim(x) == 0 else x


def _as_q(q):
    q = np.asarray(q, dtype=float)
    if np.any(q < 0) or np.any(~np.isfinite(q)):
        raise ValidationError("transverse wavenumber q must be finite and >= 0")
    return q


def beta(q):
    """Vacuum z-wavenumber: real for q <= 1, ``i*sqrt(q**2 - 1)`` above."""
    q = _as_q(q)
    s = 1.0 - q * q
    out = np.where(s >= 0, np.sqrt(np.abs(s)) + 0j, 1j * np.sqrt(np.abs(s)))
    return _out(out)


def branch_sqrt(w):
    """Square root with non-negative imaginary part.

    Principal root, negated wherever its imaginary part is negative.  For a
    passive absorbing medium this is the unique root with Im > 0.
    """
    s = np.sqrt(np.asarray(w, dtype=complex))
    return np.where(s.imag < 0, -s, s)


def _check_branch_defined(m: MediumResponse):
    if m.lossless and m.eps.real < 0 and m.mu.real < 0:
        raise LosslessMediumError(
            "lossless double-negative medium: the sign of beta1 is not fixed by "
            "Im(beta1) > 0; use planar_qed.ideal for eps = mu = -1"
        )


def beta1(q, m: MediumResponse):
    """In-medium z-wavenumber ``sqrt(eps*mu - q**2)`` with Im >= 0.

    Right-handed absorbing media give a first-quadrant root, left-handed
    ones (Im k1**2 < 0) a second-quadrant root.
    """
    q = _as_q(q)
    _check_branch_defined(m)
    return _out(branch_sqrt(m.k1_squared - q * q))


def _interface_terms(b, b1, q2, m_self, m_other):
    """Numerator and denominator ``m*beta -+ beta1`` of one Fresnel ratio.

    The smaller of the two is recomputed from the exact product
    (m beta)^2 - beta1^2 = m (m - m_other) + q^2 (1 - m)(1 + m), which stays
    accurate for eps ~ mu ~ -1 where m*beta + beta1 nearly cancels.
    """
    plus = m_self * b + b1
    minus = m_self * b - b1
    prod = m_self * (m_self - m_other) + q2 * (1.0 - m_self) * (1.0 + m_self)
    big_plus = np.abs(plus) >= np.abs(minus)
    with np.errstate(divide="ignore", invalid="ignore"):
        plus = np.where(big_plus, plus, prod / minus)
        minus = np.where(big_plus, prod / plus, minus)
    return minus, plus


def _raise_if_singular(den, scale, q):
    bad = np.abs(den) <= SINGULAR_THRESHOLD * scale
    if np.any(bad):
        where = np.asarray(q)[bad] if np.ndim(q) else q
        raise NearPoleError(
            f"reflection denominator vanishes at q = {where!r}", q=where
        )


def fresnel_r21(q, m: MediumResponse) -> ReflectionPair:
    """Single vacuum/medium interface coefficients seen from the vacuum side."""
    q = _as_q(q)
    q2 = q * q
    b = np.asarray(beta(q))
    b1 = np.asarray(beta1(q, m))
    num_s, den_s = _interface_terms(b, b1, q2, m.mu, m.eps)
    num_p, den_p = _interface_terms(b, b1, q2, m.eps, m.mu)
    _raise_if_singular(den_s, 1.0, q)
    _raise_if_singular(den_p, 1.0, q)
    return ReflectionPair(_out(num_s / den_s), _out(num_p / den_p))


def reflection_from_branches(b, b1, q2, eps, mu, d):
    """Slab + mirror coefficients from precomputed beta, beta1 and q**2.

    Works for complex ``q2`` as well, which the pole finder relies on.
    Returns ``(rs, rp, den_s, den_p, scale_s, scale_p)`` so callers can test
    the denominators themselves.
    """
    num_s, den_s = _interface_terms(b, b1, q2, mu, eps)
    num_p, den_p = _interface_terms(b, b1, q2, eps, mu)
    if d == 0:
        x = np.ones_like(b1)
    else:
        x = np.exp(2j * b1 * d)
    # r_s = (r21 - x) / (1 - r21 x), r_p = (r21 + x) / (1 + r21 x), r21 = num/den
    top_s = num_s - x * den_s
    bot_s = den_s - x * num_s
    top_p = num_p + x * den_p
    bot_p = den_p + x * num_p
    scale_s = np.maximum(np.abs(num_s), np.abs(den_s))
    scale_p = np.maximum(np.abs(num_p), np.abs(den_p))
    with np.errstate(divide="ignore", invalid="ignore"):
        rs = top_s / bot_s
        rp = top_p / bot_p
    return rs, rp, bot_s, bot_p, scale_s, scale_p


def layer_reflection(q, m: MediumResponse, d: float) -> ReflectionPair:
    """Generalized reflection coefficients of a slab of thickness ``d`` on a mirror.

    ``d = 0`` returns the perfect-mirror values (-1, +1) exactly.
    """
    if not d >= 0:
        raise ValidationError(f"slab thickness must be >= 0, got {d!r}")
    q = _as_q(q)
    if d == 0:
        ones = np.ones_like(q, dtype=complex)
        return ReflectionPair(_out(-ones), _out(ones))
    b = np.asarray(beta(q))
    b1 = np.asarray(beta1(q, m))
    rs, rp, bot_s, bot_p, sc_s, sc_p = reflection_from_branches(
        b, b1, q * q, m.eps, m.mu, d
    )
    _raise_if_singular(bot_s, sc_s, q)
    _raise_if_singular(bot_p, sc_p, q)
    return ReflectionPair(_out(rs), _out(rp))
