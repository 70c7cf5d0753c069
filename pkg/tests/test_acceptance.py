"""Acceptance suite: one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) for the eleven lines
alone; under pytest they are repeated in the terminal summary.
"""
import cmath
import math
import warnings

import numpy as np
import pytest

from planar_qed import ideal
from planar_qed.analysis import SweepSpec, find_barrier, levitation_check, trap_check
from planar_qed.asymptotics import (im_rp, im_rs, interface_limits, near_surface_decay,
                                    near_surface_potential, re_rp, re_rs)
from planar_qed.green import green_solution, oracle_green
from planar_qed.kernel import beta1
from planar_qed.observables import decay_rate, evaluate
from planar_qed.spp import RESIDUAL_TOL, find_poles
from planar_qed.units import (HYDROGEN_LIKE, K_BOLTZMANN, DipoleOrientation,
                              MediumResponse, force_to_si, lhm)

PAR = DipoleOrientation.parallel()
PERP = DipoleOrientation.perpendicular()
D = 5.0
SCAN = SweepSpec(0.05, 5.0, 100)
MG_QUOTED = 3e-26  # N, the weight figure quoted for the hydrogen-like atom
N_DRAWS = 1000

RESULTS: dict[int, str] = {}


def report(n, ok, detail):
    line = f"CRITERION {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_c01_focal_point_decay():
    worst = 0.0
    for d in (1.0, 5.0, 9.0):
        for o, want in ((PAR, 0.0), (PERP, 2.0)):
            worst = max(worst, abs(decay_rate(d, MediumResponse(-1 + 0j, -1 + 0j), d, o)
                                   - want))
    report(1, worst <= 1e-12, f"focal-point |rate - {{0, 2}}| max = {worst:.2e} (tol 1e-12)")


def test_c02_mirror_reduction():
    worst = 0.0
    for m in (lhm(1e-3), MediumResponse(2 + 0.1j, 1 + 0j)):
        for z in np.linspace(0.1, 10.0, 50):
            for o in (PAR, PERP):
                p = evaluate(z, m, 0.0, o, backend="numeric")
                for got, want in ((p.potential, ideal.ideal_potential(z, 0.0, o)),
                                  (p.rate, ideal.ideal_decay(z, 0.0, o))):
                    worst = max(worst, abs(got - want) / abs(want))
    report(2, worst <= 1e-8, f"d = 0 numeric vs mirror closed form, max rel = {worst:.2e}")


def _ideal_gap(eta, o, zs):
    m = lhm(eta)
    du = max(abs(evaluate(z, m, D, o).potential - ideal.ideal_potential(z, D, o)) for z in zs)
    dg = max(abs(decay_rate(z, m, D, o) - ideal.ideal_decay(z, D, o)) for z in zs)
    return du, dg


def test_c03_ideal_limit_convergence():
    zs = np.linspace(7.0, 10.0, 61)
    ok, parts = True, []
    for o, name in ((PAR, "par"), (PERP, "perp")):
        gaps = [_ideal_gap(eta, o, zs) for eta in (1e-2, 1e-3, 1e-4)]
        amp_u = max(abs(ideal.ideal_potential(z, D, o)) for z in zs)
        amp_g = max(abs(ideal.ideal_decay(z, D, o)) for z in zs)
        mono = all(a[k] > b[k] for a, b in zip(gaps, gaps[1:]) for k in (0, 1))
        du, dg = gaps[-1]
        # 2% of the natural units hbar*Gamma_0 and Gamma_0
        ok &= mono and du < 0.02 and dg < 0.02
        parts.append(f"{name}: monotone={mono} |dU|={du:.2e} ({du / amp_u:.1%} of max|U|) "
                     f"|dG|={dg:.2e} ({dg / amp_g:.1%} of max G)")
    report(3, ok, "; ".join(parts))


@pytest.fixture(scope="module")
def barriers():
    out = {}
    for eta in (1e-1, 1e-2, 1e-3, 1e-4):
        for o, name in ((PAR, "par"), (PERP, "perp")):
            out[eta, name] = find_barrier(lhm(eta), D, o, SCAN)
    return out


def test_c04_barrier_phenomenology(barriers):
    present = all(barriers[eta, "par"].exists for eta in (1e-3, 1e-4))
    absent_lossy = not barriers[1e-1, "par"].exists
    absent_perp = not any(barriers[eta, "perp"].exists for eta in (1e-1, 1e-2, 1e-3, 1e-4))
    heights = []
    for d in (3.0, 5.0, 7.0, 10.0):
        r = find_barrier(lhm(1e-3), d, PAR, SCAN)
        heights.append(r.height if r.exists else 0.0)
    k = int(np.argmax(heights))
    non_mono = 0 < k < len(heights) - 1
    ok = present and absent_lossy and absent_perp and non_mono
    report(4, ok, f"par barrier at 1e-3/1e-4={present}, none at 1e-1={absent_lossy}, "
                  f"none for perp={absent_perp}, heights(d=3,5,7,10)="
                  f"{[round(h, 3) for h in heights]}")


def test_c05_trap_estimate():
    r = find_barrier(lhm(2e-6), 9.0, PAR, SCAN)
    rec = trap_check(r, HYDROGEN_LIKE, 10.0)
    thermal = 1.5 * K_BOLTZMANN * 10.0
    ok = r.exists and 1.5e-22 <= rec.barrier_si <= 4.5e-22 and rec.barrier_si > thermal
    report(5, ok, f"barrier = {rec.barrier_si:.3e} J (window 1.5e-22..4.5e-22), "
                  f"3kT/2 = {thermal:.3e} J, traps={rec.traps}")


def test_c06_force_magnitude(barriers):
    forces = {}
    for eta in (1e-3, 1e-4):
        rep = barriers[eta, "par"]
        forces[eta] = force_to_si(rep.peak_force_inward, HYDROGEN_LIKE)
        assert levitation_check(rep, HYDROGEN_LIKE).feasible
    near = any(1e-16 / 5 <= f <= 5e-16 for f in forces.values())
    heavy = all(f > MG_QUOTED for f in forces.values())
    report(6, near and heavy,
           ", ".join(f"eta={k:g}: {v:.2e} N" for k, v in forces.items())
           + f" (target 1e-16 N within x5; all > {MG_QUOTED:g} N)")


def test_c07_oracle_equivalence():
    worst = 0.0
    for z in (0.2, 0.5, 1.0, 3.0, 8.0):
        for eta in (1e-1, 3e-2, 1e-2, 3e-3, 1e-3):
            m = lhm(eta)
            a, b = green_solution(z, m, D).diag, oracle_green(z, m, D)
            worst = max(worst, abs(a.gxx - b.gxx) / abs(b.gxx),
                        abs(a.gzz - b.gzz) / abs(b.gzz))
    report(7, worst <= 1e-6, f"5x5 grid vs 1e6-node trapezoid, max rel = {worst:.2e}")


def test_c08_asymptotic_matching():
    worst = 0.0
    for eta in (1e-2, 1e-3):
        m = lhm(eta)
        for o in (PAR, PERP):
            p = evaluate(0.01, m, D, o)
            ns_u = near_surface_potential(0.01, m, D, o).value
            ns_g = near_surface_decay(0.01, m, D, o).value
            worst = max(worst, abs(ns_u - p.potential) / abs(p.potential),
                        abs(ns_g - p.rate) / abs(p.rate))
    thick = 0.0
    m = MediumResponse(-1 + 0.01j, 1 + 0j)
    # the mirror behind a finite slab adds an s term of relative size ~ z^3 / d
    for z in (0.003, 0.01, 0.03):
        for o in (PAR, PERP):
            lim = interface_limits(z, m, o)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                u = near_surface_potential(z, m, 1e3, o).value
                g = near_surface_decay(z, m, 1e3, o).value
            thick = max(thick, abs(u - lim.potential) / abs(lim.potential),
                        abs(g - lim.rate) / abs(lim.rate))
    report(8, worst <= 0.05 and thick <= 1e-6,
           f"near-surface vs numerics max rel = {worst:.2e} (tol 5%); "
           f"thick slab vs interface max rel = {thick:.2e} (tol 1e-6)")


def test_c09_force_consistency():
    rng = np.random.default_rng(20240917)
    worst, h = 0.0, 1e-4
    for _ in range(10):
        eta = 10 ** rng.uniform(-4, -1)
        d = rng.uniform(1.0, 10.0)
        z = rng.uniform(0.3, 10.0)
        p = rng.uniform()
        m, o = lhm(eta), DipoleOrientation(p, 1 - p)
        f = evaluate(z, m, d, o).force
        fd = -(evaluate(z + h, m, d, o).potential - evaluate(z - h, m, d, o).potential) / (2 * h)
        worst = max(worst, abs(f - fd) / abs(f))
    report(9, worst <= 1e-6, f"analytic vs central difference, max rel = {worst:.2e}")


def test_c10_spp_properties():
    m = lhm(1e-3)
    s, p = find_poles(m, D, "s"), find_poles(m, D, "p")
    resid = max(r.residual for r in s + p)
    s_up = all(r.q_pole.imag > 0 for r in s)
    p_down = all(r.q_pole.imag < 0 for r in p)
    widths = []
    for eta in (1e-1, 1e-2, 1e-3, 1e-4):
        poles = find_poles(lhm(eta), D, "p")
        widths.append(min(abs(r.q_pole.imag) for r in poles) if poles else math.inf)
    mono = all(a > b for a, b in zip(widths, widths[1:]))
    ok = resid < RESIDUAL_TOL and s_up and p_down and mono
    report(10, ok, f"residual max {resid:.1e}; all s in upper half={s_up}; "
                   f"all p in lower half={p_down}; leading |Im q| over eta 1e-1..1e-4 = "
                   f"{[round(w, 4) for w in widths]} monotone={mono}")


def _branch_violations(rng):
    bad = 0
    n = 0
    while n < N_DRAWS:
        eps = complex(rng.uniform(-5, 5), rng.uniform(1e-6, 3))
        mu = complex(rng.uniform(-5, 5), rng.uniform(0, 3))
        if abs(eps) < 1e-3 or abs(mu) < 1e-3:
            continue
        n += 1
        m = MediumResponse(eps, mu)
        q = rng.uniform(0, 50)
        b1 = beta1(q, m)
        k2 = m.k1_squared
        if not b1.imag > 0:
            bad += 1
        elif k2.imag != 0 and abs(b1.real) > 1e-12 * abs(b1) and \
                np.sign(b1.real) != np.sign(k2.imag):
            bad += 1
        # independent reference: principal root flipped into the upper half
        ref = cmath.sqrt(k2 - q * q)
        ref = ref if ref.imag > 0 else -ref
        if abs(b1 - ref) > 1e-12 * max(1.0, abs(ref)):
            bad += 1
    return bad


def _big(rng):
    v = rng.uniform(1.0, 20.0) * cmath.exp(1j * rng.uniform(0, math.pi))
    return complex(v.real, abs(v.imag) + rng.uniform(1e-9, 1.0))


def test_c11_property_suites():
    rng = np.random.default_rng(11)
    counts = {}
    etas = [10 ** (-1 - k / 4) for k in range(17)]
    bad = bad_aff = 0
    for _ in range(N_DRAWS):
        eta = etas[rng.integers(len(etas))]
        d = rng.integers(0, 21) / 2
        z = rng.uniform(0.05, 20.0)
        w = rng.uniform()
        m = lhm(eta)
        if decay_rate(z, m, d, DipoleOrientation(w, 1 - w)) < 0:
            bad += 1
    counts["rate>=0"] = bad
    counts["branch"] = _branch_violations(rng)

    p_bad = s_bad = im_bad = 0
    for _ in range(N_DRAWS):
        q, d = rng.uniform(1e-4, 100.0), rng.uniform(0, 20.0)
        p_bad += re_rp(q, _big(rng), d) < 0
        s_bad += re_rs(q, _big(rng), d) > 0
        m = complex(rng.uniform(-20, 20), rng.uniform(1e-9, 5))
        im_bad += (im_rs(q, m, d) < 0) + (im_rp(q, m, d) < 0)
    counts["Re rp>=0 (|eps|>=1)"] = int(p_bad)
    counts["Re rs<=0 (|mu|>=1)"] = int(s_bad)
    counts["Im r>=0"] = int(im_bad)

    for _ in range(N_DRAWS):
        eta = etas[rng.integers(len(etas))]
        d = rng.integers(0, 21) / 2
        z = rng.uniform(0.05, 20.0)
        w = rng.uniform()
        m = lhm(eta)
        a, b = evaluate(z, m, d, PAR), evaluate(z, m, d, PERP)
        mix = evaluate(z, m, d, DipoleOrientation(w, 1 - w))
        for k in ("potential", "force", "rate"):
            va, vb = getattr(a, k), getattr(b, k)
            if abs(getattr(mix, k) - (w * va + (1 - w) * vb)) > \
                    1e-12 * (abs(va) + abs(vb)):
                bad_aff += 1
                break
    counts["affinity"] = bad_aff
    ok = all(v == 0 for v in counts.values())
    report(11, ok, f"violations over {N_DRAWS} draws each: {counts}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
