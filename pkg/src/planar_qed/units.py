"""Physical inputs and the reduced-unit convention.

All internal quantities use c = omega_10 = 1: lengths are in units of
c/omega_10, transverse wavenumbers in omega_10/c, potentials in hbar*Gamma_0,
forces in hbar*Gamma_0*omega_10/c and decay rates in Gamma_0.  The
dimensionless scattering Green tensor is g = (c/omega_10) * G, so that

    U / (hbar Gamma_0)  = -3 pi (p_par Re g_xx + p_perp Re g_zz)
    Gamma / Gamma_0     = 1 + 6 pi (p_par Im g_xx + p_perp Im g_zz)

Only the SI conversion helpers below know about hbar and the speed of light.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _const

from .errors import ActiveMediumError, ValidationError

HBAR = _const.hbar
K_BOLTZMANN = _const.k
SPEED_OF_LIGHT = _const.c
G_EARTH = 9.81


@dataclass(frozen=True)
class MediumResponse:
    """Relative permittivity and permeability at the atomic transition."""

    eps: complex
    mu: complex

    def __post_init__(self):
        object.__setattr__(self, "eps", complex(self.eps))
        object.__setattr__(self, "mu", complex(self.mu))

    @property
    def lossless(self) -> bool:
        return self.eps.imag == 0.0 and self.mu.imag == 0.0

    @property
    def k1_squared(self) -> complex:
        """Squared in-medium wavenumber in units of (omega_10/c)**2."""
        return self.eps * self.mu

    @property
    def is_ideal_lhm(self) -> bool:
        """True for the exactly lossless superlens medium eps = mu = -1."""
        return self.eps == -1 and self.mu == -1

    @property
    def min_absorption(self) -> float:
        return min(self.eps.imag, self.mu.imag)


def validate_medium(eps, mu) -> MediumResponse:
    """Check passivity and build a :class:`MediumResponse`.

    Raises
    ------
    ActiveMediumError
        If ``Im eps < 0`` or ``Im mu < 0``.
    """
    m = MediumResponse(eps, mu)
    for name, value in (("eps", m.eps), ("mu", m.mu)):
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ValidationError(f"{name} must be finite, got {value!r}")
        if value.imag < 0:
            raise ActiveMediumError(
                f"Im({name}) = {value.imag!r} < 0: active media are not supported"
            )
    return m


def lhm(eta: float) -> MediumResponse:
    """Left-handed medium eps = mu = -1 + i*eta used throughout the figures."""
    return validate_medium(complex(-1.0, eta), complex(-1.0, eta))


@dataclass(frozen=True)
class Geometry:
    """Slab thickness ``d`` and atom height ``z_A`` above the slab surface."""

    d: float
    z_A: float

    def __post_init__(self):
        if not self.d >= 0:
            raise ValidationError(f"slab thickness must be >= 0, got {self.d!r}")
        if not self.z_A > 0:
            raise ValidationError(f"atom height must be > 0, got {self.z_A!r}")


@dataclass(frozen=True)
class DipoleOrientation:
    """Fractional weights of the parallel and perpendicular dipole components."""

    p_par: float
    p_perp: float

    def __post_init__(self):
        for name, v in (("p_par", self.p_par), ("p_perp", self.p_perp)):
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {v!r}")
        if abs(self.p_par + self.p_perp - 1.0) > 1e-12:
            raise ValidationError(
                f"p_par + p_perp must equal 1, got {self.p_par + self.p_perp!r}"
            )

    @classmethod
    def parallel(cls) -> "DipoleOrientation":
        return cls(1.0, 0.0)

    @classmethod
    def perpendicular(cls) -> "DipoleOrientation":
        return cls(0.0, 1.0)

    @classmethod
    def random(cls) -> "DipoleOrientation":
        """Isotropic average over dipole directions."""
        return cls(2.0 / 3.0, 1.0 / 3.0)

    @classmethod
    def from_name(cls, name: str) -> "DipoleOrientation":
        presets = {
            "parallel": cls.parallel,
            "perpendicular": cls.perpendicular,
            "random": cls.random,
        }
        try:
            return presets[name]()
        except KeyError:
            pass
        try:
            p_par = float(name)
        except ValueError:
            raise ValidationError(
                f"unknown orientation {name!r}; use parallel, perpendicular, "
                "random or a number p_par in [0, 1]"
            ) from None
        return cls(p_par, 1.0 - p_par)


@dataclass(frozen=True)
class AtomSI:
    """SI scales of the atom: free-space decay rate, wavelength and mass."""

    gamma0: float
    lambda10: float
    mass: float

    def __post_init__(self):
        for name in ("gamma0", "lambda10", "mass"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValidationError(f"{name} must be positive, got {v!r}")

    @property
    def omega10(self) -> float:
        return 2.0 * math.pi * SPEED_OF_LIGHT / self.lambda10

    @property
    def energy_unit(self) -> float:
        """hbar * Gamma_0 in joule."""
        return HBAR * self.gamma0

    @property
    def force_unit(self) -> float:
        """hbar * Gamma_0 * omega_10 / c in newton."""
        return HBAR * self.gamma0 * self.omega10 / SPEED_OF_LIGHT

    @property
    def length_unit(self) -> float:
        """c / omega_10 in metre."""
        return SPEED_OF_LIGHT / self.omega10


HYDROGEN_LIKE = AtomSI(gamma0=6e8, lambda10=1e-7, mass=1.67e-27)


def to_si(u_reduced: float, atom: AtomSI) -> float:
    """Reduced potential (units hbar*Gamma_0) to joule."""
    return u_reduced * atom.energy_unit


def from_si(u_joule: float, atom: AtomSI) -> float:
    return u_joule / atom.energy_unit


def force_to_si(f_reduced: float, atom: AtomSI) -> float:
    """Reduced force (units hbar*Gamma_0*omega_10/c) to newton."""
    return f_reduced * atom.force_unit


def force_from_si(f_newton: float, atom: AtomSI) -> float:
    return f_newton / atom.force_unit
