"""Resonant van der Waals potential, force and decay rate of an excited atom.

Only the resonant part of the Casimir-Polder shift is computed; the
off-resonant part is neglected, so results describe the excited atom over
times short compared with its lifetime.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from . import asymptotics, ideal
from .errors import InternalConsistencyError, ValidationError
from .green import QuadratureConfig, green_solution
from .units import DipoleOrientation, MediumResponse

BACKENDS = ("auto", "numeric", "ideal", "near_surface", "interface")
RATE_TOLERANCE = 1e-9
_FOUR_PI_3 = 3.0 * math.pi


@dataclass(frozen=True)
class ObservablePoint:
    """All observables at one atom height.

    ``s_part_re`` and ``p_part_re`` split ``potential`` by polarization;
    ``s_part_im`` and ``p_part_im`` split ``rate - 1`` the same way.
    """

    z_A: float
    potential: float
    force: float
    rate: float
    backend: str
    s_part_re: float
    p_part_re: float
    s_part_im: float
    p_part_im: float
    advisory: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def resolve_backend(m: MediumResponse, d: float, backend: str = "auto") -> str:
    """Pick the evaluation path for a medium.

    ``auto`` sends lossy media to the numerical quadrature and lossless ones
    to the closed forms (a bare mirror for ``d = 0``, the superlens slab for
    ``eps = mu = -1``).  Any other lossless medium is rejected.
    """
    if backend not in BACKENDS:
        raise ValidationError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    if backend != "auto":
        if backend == "ideal" and not (m.is_ideal_lhm or d == 0):
            raise ValidationError("ideal backend needs eps = mu = -1 or d = 0")
        return backend
    if not m.lossless:
        return "numeric"
    if m.is_ideal_lhm or d == 0:
        return "ideal"
    raise ValidationError(
        "lossless media other than eps = mu = -1 are not supported; "
        "add a small positive imaginary part"
    )


def _checked_rate(rate: float, scale: float) -> float:
    if rate >= 0:
        return rate
    if rate > -RATE_TOLERANCE * max(1.0, scale):
        return 0.0
    raise InternalConsistencyError(
        f"negative decay rate {rate!r}: branch or quadrature failure"
    )


def _numeric(z_A, m, d, o, cfg):
    sol = green_solution(z_A, m, d, cfg)
    gs, gp, gz = sol.gxx_s, sol.gxx_p, sol.gzz
    pp, pz = o.p_par, o.p_perp
    s_re = -_FOUR_PI_3 * pp * gs.real
    p_re = -_FOUR_PI_3 * (pp * gp.real + pz * gz.real)
    s_im = 2 * _FOUR_PI_3 * pp * gs.imag
    p_im = 2 * _FOUR_PI_3 * (pp * gp.imag + pz * gz.imag)
    force = _FOUR_PI_3 * (pp * sol.dgxx.real + pz * sol.dgzz.real)
    return s_re + p_re, force, 1.0 + s_im + p_im, (s_re, p_re, s_im, p_im)


def _ideal_s_part(zt):
    # s-polarized piece of g_xx for a perfect mirror: -e^{i zt} / (8 pi zt)
    if abs(zt) < ideal.SERIES_CUTOFF:
        im = -(1.0 - zt * zt / 6.0) / (8.0 * math.pi)
        return complex(math.nan, im)
    return -complex(math.cos(zt), math.sin(zt)) / (8.0 * math.pi * zt)


def _ideal(z_A, m, d, o):
    d_eff = 0.0 if d == 0 else d
    rate = ideal.ideal_decay(z_A, d_eff, o)
    gi = ideal.ideal_green(z_A, d_eff, imag_only=True)
    zt = 2.0 * (z_A - d_eff)
    s = _ideal_s_part(zt)
    s_im = 6.0 * math.pi * o.p_par * s.imag
    p_im = (rate - 1.0) - s_im
    if z_A <= d_eff:
        # real parts diverge: the caller asked for the rate only
        return math.nan, math.nan, rate, (math.nan, math.nan, s_im, p_im), gi
    u = ideal.ideal_potential(z_A, d_eff, o)
    f = ideal.ideal_force(z_A, d_eff, o)
    s_re = -_FOUR_PI_3 * o.p_par * s.real
    return u, f, rate, (s_re, u - s_re, s_im, p_im), gi


def _near_surface(z_A, m, d, o):
    u = asymptotics.near_surface_potential(z_A, m, d, o)
    f = asymptotics.near_surface_force(z_A, m, d, o)
    g = asymptotics.near_surface_decay(z_A, m, d, o)
    return u.value, f.value, g.value, (u.s_part, u.p_part, g.s_part, g.p_part)


def _interface(z_A, m, o):
    lim = asymptotics.interface_limits(z_A, m, o)
    return lim.potential, lim.force, lim.rate, (0.0, lim.potential, 0.0, lim.rate - 1.0)


def evaluate(z_A: float, m: MediumResponse, d: float, o: DipoleOrientation,
             cfg: QuadratureConfig | None = None, backend: str = "auto",
             lattice_scale: float | None = None,
             rate_only: bool = False) -> ObservablePoint:
    """Potential, force and decay rate at height ``z_A``.

    Parameters
    ----------
    z_A : float
        Atom height above the slab surface, in units of c/omega_10.
    m : MediumResponse
    d : float
        Slab thickness; ``0`` is a bare perfect mirror.
    o : DipoleOrientation
    cfg : QuadratureConfig, optional
        Tolerances for the numerical backend.
    backend : {'auto', 'numeric', 'ideal', 'near_surface', 'interface'}
    lattice_scale : float, optional
        When given, points with ``z_A`` below it carry an advisory that the
        macroscopic description may not hold.
    rate_only : bool
        Allow the ideal backend at ``z_A <= d``; potential, force and the real
        parts are then NaN.

    Returns
    -------
    ObservablePoint
    """
    if not z_A > 0 or not math.isfinite(z_A):
        raise ValidationError(f"atom height must be finite and > 0, got {z_A!r}")
    if not d >= 0:
        raise ValidationError(f"slab thickness must be >= 0, got {d!r}")
    name = resolve_backend(m, d, backend)
    if name == "numeric":
        u, f, rate, parts = _numeric(z_A, m, d, o, cfg)
    elif name == "ideal":
        d_eff = 0.0 if d == 0 else d
        if z_A <= d_eff and not rate_only:
            ideal.ideal_potential(z_A, d_eff, o)  # raises DivergentPotentialError
        u, f, rate, parts, _ = _ideal(z_A, m, d, o)
    elif name == "near_surface":
        u, f, rate, parts = _near_surface(z_A, m, d, o)
    else:
        u, f, rate, parts = _interface(z_A, m, o)
    rate = _checked_rate(rate, abs(parts[2]) + abs(parts[3]))
    advisory = None
    if lattice_scale is not None and z_A < lattice_scale:
        advisory = (f"z_A={z_A} is below the lattice scale {lattice_scale}; "
                    "the macroscopic medium description may not apply")
    return ObservablePoint(float(z_A), float(u), float(f), float(rate), name,
                           *(float(p) for p in parts), advisory=advisory)


def vdw_potential(z_A: float, m: MediumResponse, d: float, o: DipoleOrientation,
                  cfg: QuadratureConfig | None = None, backend: str = "auto") -> float:
    """Resonant potential U/(hbar Gamma_0)."""
    return evaluate(z_A, m, d, o, cfg, backend).potential


def vdw_force(z_A: float, m: MediumResponse, d: float, o: DipoleOrientation,
              cfg: QuadratureConfig | None = None, backend: str = "auto") -> float:
    """Force -dU/dz_A in units of hbar Gamma_0 omega_10 / c; positive pushes away."""
    return evaluate(z_A, m, d, o, cfg, backend).force


def decay_rate(z_A: float, m: MediumResponse, d: float, o: DipoleOrientation,
               cfg: QuadratureConfig | None = None, backend: str = "auto") -> float:
    """Normalized spontaneous decay rate Gamma/Gamma_0 (never negative)."""
    return evaluate(z_A, m, d, o, cfg, backend, rate_only=True).rate
