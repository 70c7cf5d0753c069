"""Resonant van der Waals potential, force and decay rate of an excited atom
in front of an absorbing (possibly left-handed) slab backed by a perfect mirror.

Everything is in reduced units with c = omega_10 = 1; see :mod:`planar_qed.units`.
"""
__version__ = "0.1.0"

from ._backend import COMPILED, NAME as CORE_NAME
from .analysis import (BarrierReport, SweepSpec, find_barrier, levitation_check,
                       sweep, trap_check)
from .asymptotics import (interface_limits, near_surface_decay,
                          near_surface_force, near_surface_potential)
from .errors import (ActiveMediumError, ConvergenceError, DivergentPotentialError,
                     InternalConsistencyError, LosslessMediumError, NearPoleError,
                     PlanarQEDError, ValidationError)
from .green import GreenDiag, QuadratureConfig, green_scattering_diag, oracle_green
from .ideal import ideal_decay, ideal_force, ideal_green, ideal_potential
from .kernel import ReflectionPair, beta, beta1, fresnel_r21, layer_reflection
from .observables import ObservablePoint, decay_rate, evaluate, vdw_force, vdw_potential
from .spp import PoleRecord, find_poles, pole_proximity
from .units import (HYDROGEN_LIKE, AtomSI, DipoleOrientation, Geometry,
                    MediumResponse, force_to_si, lhm, to_si, validate_medium)

__all__ = [name for name in dir() if not name.startswith("_")]
