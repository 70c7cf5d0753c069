import math

import pytest

from planar_qed.errors import ActiveMediumError, ValidationError
from planar_qed.units import (HBAR, HYDROGEN_LIKE, AtomSI, DipoleOrientation,
                              Geometry, MediumResponse, force_from_si, force_to_si,
                              from_si, lhm, to_si, validate_medium)


def test_lossy_lhm_is_valid():
    m = validate_medium(-1 + 1e-3j, -1 + 1e-3j)
    assert not m.lossless
    assert m.min_absorption == pytest.approx(1e-3)


def test_vacuum_is_lossless():
    m = validate_medium(1 + 0j, 1 + 0j)
    assert m.lossless and not m.is_ideal_lhm


def test_ideal_lhm_flag():
    assert validate_medium(-1, -1).is_ideal_lhm


@pytest.mark.parametrize("eps,mu", [(-1 - 1e-3j, -1), (1, 2 - 1e-9j)])
def test_active_medium_rejected(eps, mu):
    with pytest.raises(ActiveMediumError):
        validate_medium(eps, mu)


def test_non_finite_medium_rejected():
    with pytest.raises(ValidationError):
        validate_medium(complex(math.nan, 0), 1)


def test_energy_unit_hydrogen_like():
    # hbar * 6e8 / s with hbar = 1.0546e-34 J s
    assert to_si(1.0, HYDROGEN_LIKE) == pytest.approx(6.33e-26, rel=1e-3)
    assert to_si(0.0, HYDROGEN_LIKE) == 0.0


def test_force_unit():
    # hbar Gamma0 * 2 pi / lambda
    expected = 1.054571817e-34 * 6e8 * 2 * math.pi / 1e-7
    assert force_to_si(1.0, HYDROGEN_LIKE) == pytest.approx(expected, rel=1e-9)


def test_force_scale_of_barrier_example():
    # a reduced force of ~25 corresponds to 1e-16 N for the hydrogen-like atom
    assert force_to_si(25.0, HYDROGEN_LIKE) == pytest.approx(1e-16, rel=0.01)


@pytest.mark.parametrize("v", [1e-30, -3.7, 1.0, 4879.3, 1e12])
def test_round_trips(v):
    assert from_si(to_si(v, HYDROGEN_LIKE), HYDROGEN_LIKE) == pytest.approx(v, rel=1e-12)
    assert force_from_si(force_to_si(v, HYDROGEN_LIKE), HYDROGEN_LIKE) == pytest.approx(v, rel=1e-12)


def test_hbar_is_codata():
    assert HBAR == pytest.approx(1.054571817e-34, rel=1e-10)


@pytest.mark.parametrize("kw", [dict(gamma0=0, lambda10=1e-7, mass=1),
                                dict(gamma0=1, lambda10=-1, mass=1),
                                dict(gamma0=1, lambda10=1, mass=math.inf)])
def test_atom_must_be_positive(kw):
    with pytest.raises(ValidationError):
        AtomSI(**kw)


def test_orientation_sum_enforced():
    with pytest.raises(ValidationError):
        DipoleOrientation(0.5, 0.6)
    with pytest.raises(ValidationError):
        DipoleOrientation(1.2, -0.2)
    o = DipoleOrientation.random()
    assert o.p_par + o.p_perp == pytest.approx(1.0, abs=1e-15)


def test_orientation_from_name():
    assert DipoleOrientation.from_name("perpendicular") == DipoleOrientation(0.0, 1.0)
    assert DipoleOrientation.from_name("0.25") == DipoleOrientation(0.25, 0.75)
    with pytest.raises(ValidationError):
        DipoleOrientation.from_name("diagonal")


def test_geometry_validation():
    Geometry(0.0, 0.1)
    with pytest.raises(ValidationError):
        Geometry(-1.0, 0.1)
    with pytest.raises(ValidationError):
        Geometry(1.0, 0.0)


def test_lhm_helper():
    assert lhm(1e-3) == MediumResponse(-1 + 1e-3j, -1 + 1e-3j)
