"""Diagonal scattering Green tensor of the slab + mirror at equal positions.

After the angular integration the dimensionless tensor g = (c/omega_10) G is
diagonal with g_yy = g_xx, and the q integral splits into

    propagating:  (i / 8 pi) int_0^1    dbeta e^{2i beta z}  f(q = sqrt(1 - beta^2))
    evanescent:   (1 / 8 pi) int_0^inf db    e^{-2 b z}     f(q = sqrt(1 + b^2))

with f_xx = r_s - beta^2 r_p and f_zz = 2 q^2 r_p (beta = i b in the
evanescent sector).  Both sectors are integrated by the globally adaptive
Gauss-Kronrod engine in :mod:`planar_qed._backend`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import ConvergenceError, LosslessMediumError, ValidationError
from .units import MediumResponse

PROPAGATING = 0
EVANESCENT = 1


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and splitting controls for :func:`green_scattering_diag`.

    ``pole_guided=None`` enables pole-guided splitting automatically when
    ``min(Im eps, Im mu) < 1e-3``.
    """

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_subdivisions: int = 4000
    evanescent_cutoff_factor: float = 40.0
    pole_guided: bool | None = None

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValidationError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValidationError("max_subdivisions must be >= 1")
        if not self.evanescent_cutoff_factor > 0:
            raise ValidationError("evanescent_cutoff_factor must be positive")

    def use_poles(self, m: MediumResponse) -> bool:
        if self.pole_guided is None:
            return m.min_absorption < 1e-3
        return self.pole_guided


@dataclass(frozen=True)
class GreenDiag:
    """Dimensionless diagonal scattering Green tensor; ``gyy`` equals ``gxx``."""

    gxx: complex
    gzz: complex

    @property
    def gyy(self) -> complex:
        return self.gxx


@dataclass(frozen=True)
class GreenSolution:
    """Sector-resolved quadrature result.

    ``propagating`` and ``evanescent`` hold six columns: the s- and p-parts of
    g_xx, g_zz, and the z-derivatives of those three.
    """

    propagating: np.ndarray
    evanescent: np.ndarray
    error: np.ndarray
    n_intervals: int
    b_max: float
    splits: tuple = field(default=())

    @property
    def total(self) -> np.ndarray:
        return self.propagating + self.evanescent

    @property
    def gxx(self) -> complex:
        t = self.total
        return complex(t[0] + t[1])

    @property
    def gzz(self) -> complex:
        return complex(self.total[2])

    @property
    def gxx_s(self) -> complex:
        return complex(self.total[0])

    @property
    def gxx_p(self) -> complex:
        return complex(self.total[1])

    @property
    def dgxx(self) -> complex:
        t = self.total
        return complex(t[3] + t[4])

    @property
    def dgzz(self) -> complex:
        return complex(self.total[5])

    @property
    def diag(self) -> GreenDiag:
        return GreenDiag(self.gxx, self.gzz)

    def sector(self, which: str) -> GreenDiag:
        v = self.propagating if which == "propagating" else self.evanescent
        return GreenDiag(complex(v[0] + v[1]), complex(v[2]))


def _check_inputs(z_A, m, d):
    if not z_A > 0:
        raise ValidationError(f"atom height must be > 0, got {z_A!r}")
    if not d >= 0:
        raise ValidationError(f"slab thickness must be >= 0, got {d!r}")
    if m.lossless:
        raise LosslessMediumError(
            "numerical Green tensor needs an absorbing medium; "
            "use planar_qed.ideal for eps = mu = -1"
        )


def evanescent_cutoff(z_A: float, cfg: QuadratureConfig) -> float:
    return max(cfg.evanescent_cutoff_factor / (2.0 * z_A), 10.0)


def _propagating_breakpoints(z_A):
    if z_A > 20:
        n = math.ceil(1.0 / (math.pi / (2.0 * z_A)))
        return np.linspace(0.0, 1.0, n + 1)
    return np.array([0.0, 1.0])


def _evanescent_breakpoints(z_A, m, d, b_max, q_splits):
    pts = {0.0, b_max, min(1.0, b_max)}
    if d > 0:
        # mirror/interface crossover where exp(-2bd) ~ |m + 1| / 2
        detune = max(abs(m.eps + 1), abs(m.mu + 1))
        if 0 < detune < 2:
            b0 = math.log(2.0 / detune) / (2.0 * d)
            if 0 < b0 < b_max:
                pts.add(b0)
    for q in q_splits:
        if q > 1:
            b = math.sqrt(q * q - 1.0)
            if 0 < b < b_max:
                pts.add(b)
    return np.array(sorted(pts))


def _tail_estimate(z_A, m, d, b_max, core):
    f = np.abs(core.integrand(EVANESCENT, np.array([b_max]), z_A, m.eps, m.mu, d)[0])
    # envelope |F(B)| * int_B^inf (b/B)^3 e^{-2(b-B)z} db, times a safety factor 2
    zb = 2.0 * z_A * b_max
    return 2.0 * f / (2.0 * z_A) * (1.0 + 3.0 / zb + 6.0 / zb**2 + 6.0 / zb**3)


def green_solution(z_A: float, m: MediumResponse, d: float,
                   cfg: QuadratureConfig | None = None, splits=None,
                   core=None) -> GreenSolution:
    """Integrate both sectors and keep every component separately.

    Parameters
    ----------
    z_A, m, d
        Atom height, medium and slab thickness (reduced units).
    cfg : QuadratureConfig, optional
    splits : sequence of float, optional
        Extra evanescent split points in ``q``; when omitted and pole guiding
        is active they come from :func:`planar_qed.spp.pole_proximity`.
    core : module, optional
        Quadrature core override (``_backend.core`` or ``_backend.pure``).
    """
    cfg = cfg or QuadratureConfig()
    _check_inputs(z_A, m, d)
    core = core or _backend.core
    if splits is None:
        splits = ()
        if d > 0 and cfg.use_poles(m):
            from .spp import pole_proximity
            splits = tuple(pole_proximity(m, d))
    splits = tuple(splits)

    eps, mu = complex(m.eps), complex(m.mu)
    d = float(d)
    z_A = float(z_A)

    def run(sector, pts):
        res, err, n, worst, ok = core.adaptive(
            sector, pts, z_A, eps, mu, d, cfg.rel_tol, cfg.abs_tol,
            cfg.max_subdivisions,
        )
        if not ok:
            name = "propagating" if sector == PROPAGATING else "evanescent"
            raise ConvergenceError(
                f"{name} sector did not converge in {cfg.max_subdivisions} "
                f"subdivisions (z_A={z_A}, eps={eps}, mu={mu}, d={d}); "
                f"worst subinterval {worst}",
                worst_interval=worst,
                error=err,
            )
        return res, err, n

    prop, perr, n1 = run(PROPAGATING, _propagating_breakpoints(z_A))
    b_max = evanescent_cutoff(z_A, cfg)
    evan, eerr, n2 = run(EVANESCENT, _evanescent_breakpoints(z_A, m, d, b_max, splits))
    for _ in range(20):
        tail = _tail_estimate(z_A, m, d, b_max, core)
        allowed = np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(prop + evan))
        if np.all(tail <= allowed):
            break
        extra, xerr, n3 = run(EVANESCENT, np.array([b_max, 2.0 * b_max]))
        evan = evan + extra
        eerr = eerr + xerr
        n2 += n3
        b_max *= 2.0
    else:
        raise ConvergenceError(
            f"evanescent tail still above tolerance at b_max={b_max}",
            worst_interval=(b_max, math.inf),
        )
    return GreenSolution(prop, evan, perr + eerr, n1 + n2, b_max, splits)


def green_scattering_diag(z_A: float, m: MediumResponse, d: float,
                          cfg: QuadratureConfig | None = None) -> GreenDiag:
    """Dimensionless scattering Green tensor ``(g_xx, g_zz)`` at height ``z_A``."""
    return green_solution(z_A, m, d, cfg).diag


def _oracle_reflection(q2, b, eps, mu, d):
    if d == 0:
        # the formulas collapse to the mirror values (and read 0/0 at beta = 0)
        one = np.ones_like(q2, dtype=complex)
        return -one, one
    b1 = np.sqrt(eps * mu - q2 + 0j)
    b1 = np.where(b1.imag < 0, -b1, b1)
    x = np.exp(2j * b1 * d)
    r21s = (mu * b - b1) / (mu * b + b1)
    r21p = (eps * b - b1) / (eps * b + b1)
    rs = (r21s - x) / (1 - r21s * x)
    rp = (r21p + x) / (1 + r21p * x)
    return rs, rp


def _trapezoid(f_of, lo, hi, n_nodes, chunk=200_000):
    h = (hi - lo) / (n_nodes - 1)
    acc = np.zeros(2, dtype=complex)
    for start in range(0, n_nodes, chunk):
        idx = np.arange(start, min(start + chunk, n_nodes))
        x = lo + h * idx
        w = np.where((idx == 0) | (idx == n_nodes - 1), 0.5, 1.0)
        acc += (w[:, None] * f_of(x)).sum(axis=0)
    return acc * h


def oracle_green(z_A: float, m: MediumResponse, d: float,
                 n_nodes: int = 1_000_000,
                 cutoff_factor: float = 40.0) -> GreenDiag:
    """Fixed-step composite trapezoid evaluation of the same Green tensor.

    Uses the reflection coefficients exactly as written (no cancellation-free
    rearrangement) and ``n_nodes`` equally spaced points per sector.  Meant as
    an independent check for tests, not for production sweeps.
    """
    _check_inputs(z_A, m, d)
    if n_nodes < 10_000:
        raise ValidationError("oracle needs at least 1e4 nodes per sector")
    eps, mu = complex(m.eps), complex(m.mu)

    def prop(t):
        q2 = 1.0 - t * t
        rs, rp = _oracle_reflection(q2, t + 0j, eps, mu, d)
        w = 1j / (8 * np.pi) * np.exp(2j * t * z_A)
        return np.stack([w * (rs - t * t * rp), w * 2 * q2 * rp], axis=1)

    def evan(b):
        q2 = 1.0 + b * b
        rs, rp = _oracle_reflection(q2, 1j * b, eps, mu, d)
        w = np.exp(-2.0 * b * z_A) / (8 * np.pi)
        return np.stack([w * (rs + b * b * rp), w * 2 * q2 * rp], axis=1)

    b_max = max(cutoff_factor / (2.0 * z_A), 10.0)
    with np.errstate(all="ignore"):
        total = _trapezoid(prop, 0.0, 1.0, n_nodes) + _trapezoid(evan, 0.0, b_max, n_nodes)
    return GreenDiag(complex(total[0]), complex(total[1]))
