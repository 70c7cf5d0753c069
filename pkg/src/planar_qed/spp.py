"""Surface-plasmon-polariton poles of the slab + mirror reflection coefficients.

Poles are zeros of the denominators

    p:  (eps*beta + beta1) + (eps*beta - beta1) exp(2i beta1 d)
    s:  (mu*beta + beta1)  - (mu*beta - beta1)  exp(2i beta1 d)

in the complex ``q`` plane, equivalent to the dispersion relations
``beta1/(eps*beta) = coth(i beta1 d)`` and ``beta1/(mu*beta) = tanh(i beta1 d)``.
They are located by the argument principle on a grid of cells and polished
with Newton's method.
"""
from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .kernel import _interface_terms, branch_sqrt
from .units import MediumResponse

DEFAULT_BOX = (1.001, 20.0, -2.0, 2.0)
DEFAULT_GRID = (200, 80)
RESIDUAL_TOL = 1e-10
DEDUP_TOL = 1e-8
NEAR_REAL_RATIO = 0.1


class PartialResultWarning(UserWarning):
    """Some flagged cells could not be resolved to a root."""


@dataclass(frozen=True)
class PoleRecord:
    q_pole: complex
    polarization: str
    residual: float

    def to_dict(self):
        return {
            "q_re": self.q_pole.real,
            "q_im": self.q_pole.imag,
            "polarization": self.polarization,
            "residual": self.residual,
        }


def _check_pol(polarization):
    if polarization not in ("s", "p"):
        raise ValidationError(f"polarization must be 's' or 'p', got {polarization!r}")


def _branches(q, m):
    q = np.asarray(q, dtype=complex)
    q2 = q * q
    b = 1j * np.sqrt(q2 - 1.0)
    b1 = branch_sqrt(m.k1_squared - q2)
    return q2, b, b1


def denominator(q, m: MediumResponse, d: float, polarization: str):
    """Reflection denominator whose zeros are the SPP poles."""
    q2, b, b1 = _branches(q, m)
    x = np.exp(2j * b1 * d)
    if polarization == "p":
        num, den = _interface_terms(b, b1, q2, m.eps, m.mu)
        return den + x * num
    num, den = _interface_terms(b, b1, q2, m.mu, m.eps)
    return den - x * num


def _denominator_and_derivative(q, m, d, polarization):
    q2, b, b1 = _branches(q, m)
    x = np.exp(2j * b1 * d)
    mm = m.eps if polarization == "p" else m.mu
    plus = mm * b + b1
    minus = mm * b - b1
    db = -q / b
    db1 = -q / b1
    dplus = mm * db + db1
    dminus = mm * db - db1
    dx = 2j * d * x * db1
    sign = 1.0 if polarization == "p" else -1.0
    f = plus + sign * x * minus
    fp = dplus + sign * (dx * minus + x * dminus)
    return f, fp


def dispersion_residual(q, m: MediumResponse, d: float, polarization: str) -> float:
    """Mismatch of ``beta1/(eps beta) = coth(i beta1 d)`` (p) or the tanh form (s)."""
    q2, b, b1 = _branches(q, m)
    x = np.exp(2j * b1 * d)
    if polarization == "p":
        lhs = b1 / (m.eps * b)
        rhs = -(1.0 + x) / (1.0 - x)  # coth(i beta1 d)
    else:
        lhs = b1 / (m.mu * b)
        rhs = -(1.0 - x) / (1.0 + x)  # tanh(i beta1 d)
    return float(np.abs(lhs - rhs))


def _newton(q0, m, d, polarization, max_iter=60):
    q = complex(q0)
    for _ in range(max_iter):
        f, fp = _denominator_and_derivative(q, m, d, polarization)
        if fp == 0 or not np.isfinite(fp):
            return None
        step = complex(f / fp)
        q -= step
        if not np.isfinite(q):
            return None
        if abs(step) <= 1e-15 * max(1.0, abs(q)):
            break
    if dispersion_residual(q, m, d, polarization) < RESIDUAL_TOL:
        return q
    return None


def _edge_phase(values):
    """Total unwrapped phase change along consecutive samples."""
    ang = np.angle(values)
    return np.diff(ang, axis=-1)


def _winding_numbers(m, d, polarization, box, grid, sub=8):
    re0, re1, im0, im1 = box
    nx, ny = grid
    xs = np.linspace(re0, re1, nx + 1)
    ys = np.linspace(im0, im1, ny + 1)
    fx = np.linspace(re0, re1, nx * sub + 1)
    fy = np.linspace(im0, im1, ny * sub + 1)
    # phases along horizontal lines (one per grid row) and vertical lines
    h = denominator(fx[None, :] + 1j * ys[:, None], m, d, polarization)
    v = denominator(xs[:, None] + 1j * fy[None, :], m, d, polarization)
    dh = _edge_phase(h)
    dh = (dh + np.pi) % (2 * np.pi) - np.pi
    dv = _edge_phase(v)
    dv = (dv + np.pi) % (2 * np.pi) - np.pi
    # per-cell edge sums
    bottom = dh[:-1].reshape(ny, nx, sub).sum(axis=2)
    top = dh[1:].reshape(ny, nx, sub).sum(axis=2)
    left = dv[:-1].reshape(nx, ny, sub).sum(axis=2).T
    right = dv[1:].reshape(nx, ny, sub).sum(axis=2).T
    wind = (bottom + right - top - left) / (2 * np.pi)
    return np.rint(wind).astype(int), xs, ys


def _solve_cell(m, d, polarization, x0, x1, y0, y1, depth=0):
    seeds = [complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)),
             complex(x0, y0), complex(x1, y0), complex(x0, y1), complex(x1, y1)]
    hx, hy = x1 - x0, y1 - y0
    for s in seeds:
        q = _newton(s, m, d, polarization)
        if q is not None and (x0 - hx <= q.real <= x1 + hx) and (y0 - hy <= q.imag <= y1 + hy):
            return q
    if depth >= 3:
        return None
    xm, ym = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    for a, b, c, e in ((x0, xm, y0, ym), (xm, x1, y0, ym), (x0, xm, ym, y1), (xm, x1, ym, y1)):
        q = _solve_cell(m, d, polarization, a, b, c, e, depth + 1)
        if q is not None:
            return q
    return None


def find_poles(m: MediumResponse, d: float, polarization: str,
               search_box=DEFAULT_BOX, grid=DEFAULT_GRID) -> list[PoleRecord]:
    """All reflection-coefficient poles of one polarization inside ``search_box``.

    Parameters
    ----------
    m : MediumResponse
        Absorbing medium.
    d : float
        Slab thickness (> 0).
    polarization : {'s', 'p'}
    search_box : tuple
        ``(re_min, re_max, im_min, im_max)`` in the evanescent region.
    grid : tuple
        Number of scan cells along the real and imaginary axes.

    Returns
    -------
    list of PoleRecord
        Sorted by real part, then imaginary part.
    """
    _check_pol(polarization)
    if m.lossless:
        raise ValidationError("pole search requires an absorbing medium")
    if not d > 0:
        raise ValidationError(f"pole search requires d > 0, got {d!r}")
    re0, re1, im0, im1 = search_box
    if not (1.0 < re0 < re1 and im0 < im1):
        raise ValidationError(f"invalid search box {search_box!r}")
    wind, xs, ys = _winding_numbers(m, d, polarization, search_box, grid)
    roots: list[complex] = []
    unresolved = []
    for j, i in zip(*np.nonzero(wind)):
        q = _solve_cell(m, d, polarization, xs[i], xs[i + 1], ys[j], ys[j + 1])
        if q is None:
            unresolved.append((xs[i], xs[i + 1], ys[j], ys[j + 1]))
            continue
        if not (re0 <= q.real <= re1 and im0 <= q.imag <= im1):
            continue
        if all(abs(q - r) > DEDUP_TOL for r in roots):
            roots.append(q)
    if unresolved:
        warnings.warn(
            f"{len(unresolved)} flagged cell(s) without a converged root: {unresolved}",
            PartialResultWarning,
            stacklevel=2,
        )
    roots.sort(key=lambda r: (r.real, r.imag))
    return [PoleRecord(r, polarization, dispersion_residual(r, m, d, polarization))
            for r in roots]


@functools.lru_cache(maxsize=128)
def _proximity_cached(eps: complex, mu: complex, d: float) -> tuple:
    m = MediumResponse(eps, mu)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PartialResultWarning)
        poles = find_poles(m, d, "s") + find_poles(m, d, "p")
    pts = set()
    for rec in poles:
        q = rec.q_pole
        if abs(q.imag) >= NEAR_REAL_RATIO * q.real:
            continue
        for f in (10.0, 1.0, 0.1):
            for sgn in (-1.0, 1.0):
                v = q.real + sgn * f * abs(q.imag)
                pts.add(max(v, 1.0))
    return tuple(sorted(p for p in pts if p > 1.0))


def pole_proximity(m: MediumResponse, d: float) -> list[float]:
    """Real ``q`` split points bracketing poles that lie close to the real axis.

    A pole counts as close when ``|Im q| < 0.1 Re q``.  Each contributes
    ``Re q +- {10, 1, 0.1} |Im q|``, clipped to the evanescent sector q > 1.
    """
    if m.lossless:
        raise ValidationError("pole search requires an absorbing medium")
    if d == 0:
        return []
    return list(_proximity_cached(m.eps, m.mu, float(d)))
