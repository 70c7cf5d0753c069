import pytest

from planar_qed.units import DipoleOrientation, lhm

PAR = DipoleOrientation.parallel()
PERP = DipoleOrientation.perpendicular()


@pytest.fixture
def par():
    return PAR


@pytest.fixture
def perp():
    return PERP


@pytest.fixture
def lhm_1e3():
    return lhm(1e-3)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
