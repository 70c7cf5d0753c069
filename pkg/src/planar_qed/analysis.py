"""Barrier detection, levitation and trapping estimates, and z_A sweeps."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import partial

import numpy as np
from scipy import optimize

from .errors import ValidationError
from .green import QuadratureConfig
from .observables import ObservablePoint, evaluate
from .units import (G_EARTH, K_BOLTZMANN, AtomSI, DipoleOrientation,
                    MediumResponse, force_to_si, to_si)

# Largest value the propagating (radiative) sector alone can give the
# potential of either dipole orientation, since |r| <= 1 for a passive slab.
# Interior maxima below this are retarded oscillations, not barriers.
MIN_BARRIER_HEIGHT = 0.5
RANDOM = DipoleOrientation.random()


@dataclass(frozen=True)
class SweepSpec:
    """Grid of atom heights, ``linear`` or ``log`` spaced."""

    z_min: float
    z_max: float
    n_points: int
    grid: str = "linear"

    def __post_init__(self):
        if not (0 < self.z_min < self.z_max) or not math.isfinite(self.z_max):
            raise ValidationError(
                f"sweep needs 0 < z_min < z_max, got {self.z_min!r}, {self.z_max!r}"
            )
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise ValidationError(f"sweep needs n_points >= 2, got {self.n_points!r}")
        if self.grid not in ("linear", "log"):
            raise ValidationError(f"grid must be 'linear' or 'log', got {self.grid!r}")

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        """Parse ``min:max:count[:log]``."""
        parts = text.split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] not in ("log", "linear")):
            raise ValidationError(f"malformed sweep {text!r}; expected min:max:count[:log]")
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ValidationError(f"malformed sweep {text!r}") from None
        return cls(lo, hi, n, parts[3] if len(parts) == 4 else "linear")

    def points(self) -> np.ndarray:
        if self.grid == "log":
            return np.geomspace(self.z_min, self.z_max, self.n_points)
        return np.linspace(self.z_min, self.z_max, self.n_points)


def default_jobs() -> int:
    raw = os.environ.get("PLANAR_QED_JOBS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise ValidationError(f"PLANAR_QED_JOBS must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise ValidationError(f"PLANAR_QED_JOBS must be >= 1, got {jobs}")
    return jobs


def sweep(zs, m: MediumResponse, d: float, o: DipoleOrientation,
          cfg: QuadratureConfig | None = None, backend: str = "auto",
          jobs: int = 1, rate_only: bool = False) -> list[ObservablePoint]:
    """Evaluate :func:`planar_qed.observables.evaluate` over ``zs``.

    With ``jobs > 1`` the points run in a process pool; the returned list
    is always in the order of ``zs``.
    """
    fn = partial(_point, m=m, d=d, o=o, cfg=cfg, backend=backend, rate_only=rate_only)
    zs = [float(z) for z in zs]
    if jobs <= 1 or len(zs) < 2:
        return [fn(z) for z in zs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, zs, chunksize=max(1, len(zs) // (4 * jobs))))


def _point(z, m, d, o, cfg, backend, rate_only):
    return evaluate(z, m, d, o, cfg, backend, rate_only=rate_only)


@dataclass(frozen=True)
class BarrierReport:
    """Outcome of a barrier search; lengths and energies in reduced units.

    ``peak_force_inward`` is the largest repulsive force beyond the peak,
    the quantity that must beat gravity for levitation.
    """

    exists: bool
    z_peak: float | None = None
    height: float | None = None
    peak_force_inward: float | None = None
    well_depth_beyond: float | None = None
    at_boundary: bool = False
    scanned_max: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def find_barrier(m: MediumResponse, d: float, o: DipoleOrientation,
                 spec: SweepSpec, cfg: QuadratureConfig | None = None,
                 backend: str = "auto", jobs: int = 1,
                 min_height: float = MIN_BARRIER_HEIGHT) -> BarrierReport:
    """Scan U(z_A) for a positive interior maximum and refine it.

    Parameters
    ----------
    m, d, o
        Medium, slab thickness and dipole orientation.
    spec : SweepSpec
        Scan grid.
    cfg : QuadratureConfig, optional
    backend : str
        Passed to :func:`planar_qed.observables.evaluate`.
    jobs : int
        Worker processes for the scan.
    min_height : float
        Smallest interior maximum (in hbar*Gamma_0) counted as a barrier.

    Returns
    -------
    BarrierReport
        ``exists`` is False when U stays below ``min_height`` or when the
        largest value sits on the first or last grid point (``at_boundary``).
    """
    zs = spec.points()
    pts = sweep(zs, m, d, o, cfg, backend, jobs)
    u = np.array([p.potential for p in pts])
    f = np.array([p.force for p in pts])
    i = int(np.argmax(u))
    if i == 0 or i == len(zs) - 1:
        return BarrierReport(False, at_boundary=bool(u[i] > 0), scanned_max=float(u[i]))
    if u[i] <= 0 or u[i] < min_height:
        return BarrierReport(False, scanned_max=float(u[i]))

    def force(z):
        return evaluate(z, m, d, o, cfg, backend).force

    # F = -dU/dz goes from negative to positive across a maximum of U
    lo, hi = zs[i - 1], zs[i + 1]
    if f[i] < 0:
        lo = zs[i]
    elif f[i] > 0:
        hi = zs[i]
    else:
        lo = hi = zs[i]
    if lo == hi:
        z_peak = float(lo)
    elif force(lo) * force(hi) < 0:
        z_peak = optimize.brentq(force, lo, hi, xtol=1e-12, rtol=1e-14)
    else:
        res = optimize.minimize_scalar(
            lambda z: -evaluate(z, m, d, o, cfg, backend).potential,
            bracket=(zs[i - 1], zs[i], zs[i + 1]), method="golden",
            options={"xtol": 1e-6},
        )
        z_peak = float(res.x)
    height = evaluate(z_peak, m, d, o, cfg, backend).potential

    beyond = np.nonzero(zs > z_peak)[0]
    j = beyond[int(np.argmax(f[beyond]))]
    peak_force = float(f[j])
    if 0 < j < len(zs) - 1 and zs[j - 1] > z_peak:
        res = optimize.minimize_scalar(
            lambda z: -force(z), bounds=(zs[j - 1], zs[j + 1]), method="bounded",
            options={"xatol": 1e-6},
        )
        peak_force = max(peak_force, -float(res.fun))
    well = max(0.0, -float(u[beyond].min()))
    return BarrierReport(True, float(z_peak), float(height), max(peak_force, 0.0),
                         well, False, float(u[i]))


@dataclass(frozen=True)
class LevitationRecord:
    applicable: bool
    feasible: bool
    force_si: float | None = None
    weight_si: float | None = None
    margin: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def levitation_check(report: BarrierReport, atom: AtomSI,
                     g: float = G_EARTH) -> LevitationRecord:
    """Compare the repulsive barrier force with the weight ``m g``."""
    if not report.exists:
        return LevitationRecord(False, False)
    if not g > 0:
        raise ValidationError(f"g must be positive, got {g!r}")
    force = force_to_si(report.peak_force_inward, atom)
    weight = atom.mass * g
    margin = force / weight
    return LevitationRecord(True, margin >= 1.0, force, weight, margin)


@dataclass(frozen=True)
class TrapRecord:
    applicable: bool
    traps: bool
    barrier_si: float | None = None
    thermal_energy_si: float | None = None
    margin: float | None = None
    evaporative: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["margin"] is not None and math.isinf(d["margin"]):
            d["margin"] = "inf"
        return d


def trap_check(report: BarrierReport, atom: AtomSI, temperature: float) -> TrapRecord:
    """Compare the barrier height with the mean kinetic energy 3 k_B T / 2.

    ``evaporative`` marks margins in (1, 3): the fast tail of the thermal
    distribution still escapes over the barrier.
    """
    if not (temperature > 0 and math.isfinite(temperature)):
        raise ValidationError(f"temperature must be positive, got {temperature!r}")
    if not report.exists:
        return TrapRecord(False, False)
    barrier = to_si(report.height, atom)
    thermal = 1.5 * K_BOLTZMANN * temperature
    margin = barrier / thermal if thermal > 0 else math.inf
    return TrapRecord(True, margin > 1.0, barrier, thermal, margin, 1.0 < margin < 3.0)
