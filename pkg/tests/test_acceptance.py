"""Acceptance suite: one test per criterion, each printing a PASS line.

The PDE-based criteria (5-7) run full simulations and dominate the runtime
(a few minutes total).
"""

import math
import time

import numpy as np
import pytest

import ucwaves as uw
from ucwaves.errors import DomainError, NoLocusError, UCWavesError
from ucwaves.kinetics import Branch, GAMMA_MAX
from ucwaves.pde import x_grid
from ucwaves.phaseplane import Verdict
from ucwaves.riemann import WaveKind

GAMMA6 = 1.0 / math.sqrt(6.0)


def _report(n, text):
    print(f"\n[criterion {n}] PASS - {text}")


def _locus_grid(gamma, n_per_branch):
    at = uw.a_tilde(gamma)
    grid = np.linspace(0.5, at, n_per_branch)
    return [uw.locus_point(float(a), gamma, br)
            for br in (Branch.PLUS, Branch.MINUS) for a in grid]


def test_criterion_1_kinetic_locus_self_consistency():
    t0 = time.time()
    for frac in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6):
        gamma = frac * GAMMA_MAX
        for p in _locus_grid(gamma, 50):
            assert abs(p.u_minus + p.u_zero + p.u_plus) <= 1e-12
            assert abs(p.u_zero - math.sqrt(2) * gamma / (3 * math.sqrt(p.s))) <= 1e-10
            q = p.u_plus**2 + p.u_minus * p.u_plus + p.u_minus**2
            res = (p.u_minus + p.u_plus) * math.sqrt(1 - q) + math.sqrt(2) / 3 * gamma
            assert abs(res) <= 1e-10
    elapsed = time.time() - t0
    assert elapsed < 1.0
    _report(1, f"locus identities on 6 gammas x 100 points ({elapsed:.2f}s)")


def test_criterion_2_endpoint_identity():
    for frac in (0.1, 0.25, 0.4, 0.55, 0.666, 0.8, 0.95):
        gamma = frac * GAMMA_MAX
        lo, hi = uw.u_plus_bounds(gamma)
        assert abs(uw.locus_point(0.5, gamma, Branch.PLUS).u_plus - lo) <= 1e-12
        assert abs(uw.locus_point(0.5, gamma, Branch.MINUS).u_plus - hi) <= 1e-12
    lo, hi = uw.u_plus_bounds(GAMMA6)
    assert lo == pytest.approx(-1.07869, abs=1e-5)
    assert hi == pytest.approx(-0.41202, abs=1e-5)
    _report(2, "a=1/2 locus endpoints equal the closed-form bounds")


def test_criterion_3_shooting_verification():
    t0 = time.time()
    at = uw.a_tilde(GAMMA6)
    points = [uw.locus_point(float(a), GAMMA6, br)
              for br in (Branch.PLUS, Branch.MINUS)
              for a in np.linspace(0.52, at - 1e-3, 10)]
    assert len(points) == 20
    for p in points:
        prob = uw.TWProblem.from_kinetic_point(p)
        res = uw.shoot_unstable(prob, p.u_minus, p.u_plus)
        assert res.verdict is Verdict.CONNECTS, p
        assert res.terminal_distance < 1e-6
        assert uw.parabola_residual(res, p.u_minus, p.u_plus) < 1e-5
        for fac in (1.05, 0.95):
            up = p.u_plus * fac
            s = uw.rh_speed(p.u_minus, up)
            try:
                bad = uw.shoot_unstable(uw.TWProblem(GAMMA6, s, p.u_minus),
                                        p.u_minus, up)
                assert bad.verdict is not Verdict.CONNECTS, (p, fac)
            except UCWavesError:
                pass  # perturbed equilibrium stopped being a saddle
    elapsed = time.time() - t0
    assert elapsed < 30.0
    _report(3, f"20 connections verified, 40 perturbations rejected ({elapsed:.1f}s)")


def test_criterion_4_discriminant_sign_structure():
    t0 = time.time()
    a_vals = np.linspace(0.501, 0.999, 200)
    g_vals = np.linspace(0.005, 0.70, 200)
    for g in g_vals:
        d = uw.discriminant(a_vals, g)
        if g >= GAMMA_MAX:
            inside = np.zeros_like(a_vals, dtype=bool)
        else:
            inside = a_vals < uw.a_tilde(g)
        mism = (d > 0) != inside
        # permit disagreement only within roundoff of the boundary
        assert np.all(np.abs(d[mism]) < 1e-12), g
    at = uw.a_tilde(GAMMA6)
    assert at == pytest.approx(0.66096, abs=1e-5)
    lo, hi = 0.5, 0.999
    for _ in range(80):  # bisection oracle on D(., gamma) = 0
        mid = 0.5 * (lo + hi)
        if uw.discriminant(mid, GAMMA6) > 0:
            lo = mid
        else:
            hi = mid
    assert at == pytest.approx(0.5 * (lo + hi), abs=1e-10)
    elapsed = time.time() - t0
    assert elapsed < 1.0
    _report(4, f"D>0 exactly on the predicted region, 200x200 grid ({elapsed:.2f}s)")


def test_criterion_5_fig4_reproduction():
    t0 = time.time()
    u_m = uw.kinetic_u_minus(-0.8, GAMMA6)
    s_lax = uw.rh_speed(0.4, u_m)
    s_uc = uw.rh_speed(u_m, -0.8)
    cfg = uw.SimConfig(beta=0.1, mu=0.06, x_min=-30.0, x_max=60.0, nx=4001,
                       t_end=50.0, dt=0.01,
                       initial=uw.SmoothedRiemann(0.4, -0.8, GAMMA6))
    res = uw.simulate(cfg, snapshot_times=np.arange(25.0, 50.0 + 1e-9, 1.0))
    rep = uw.detect_fronts(res.final)
    assert len(rep.fronts) == 2, rep
    plateau_vals = [p.value for p in rep.plateaus]
    assert any(abs(v - 0.4) <= 0.004 for v in plateau_vals)
    assert any(abs(v + 0.8) <= 0.008 for v in plateau_vals)
    mid = [v for v in plateau_vals if abs(v - u_m) <= 0.01 * u_m]
    assert mid, plateau_vals
    fits = uw.fit_front_speeds(cfg, res, transient="exp")
    assert len(fits) == 2
    speeds = sorted(f.speed for f in fits)
    assert abs(speeds[0] - s_lax) <= 0.02 * s_lax, speeds
    assert abs(speeds[1] - s_uc) <= 0.02 * s_uc, speeds
    elapsed = time.time() - t0
    assert elapsed < 120.0
    _report(5, f"two fronts, plateau {mid[0]:.5f} (target {u_m:.5f}), speeds "
               f"{speeds[0]:.4f}/{speeds[1]:.4f} vs {s_lax:.4f}/{s_uc:.4f} "
               f"({elapsed:.0f}s)")


# (u_L, u_R, x_min, x_max, nx, t_end, dt, transient-model)
_CROSS_CASES = [
    (0.4, -0.8, -30.0, 60.0, 3001, 50.0, 0.015, "exp"),       # S-Sigma
    (-0.4, 0.8, -60.0, 30.0, 3001, 50.0, 0.015, "exp"),       # mirrored S-Sigma
    (0.55, -0.8, -15.0, 30.0, 1501, 30.0, 0.02, "linear"),    # R-Sigma
    (0.52, -0.7, -12.0, 34.0, 1601, 40.0, 0.02, "exp"),       # R-Sigma
    (None, -0.7, -15.0, 30.0, 1501, 30.0, 0.02, "linear"),    # pure Sigma
    (0.3, 0.1, -10.0, 32.0, 1401, 20.0, 0.02, "linear"),      # R
    (0.1, 0.3, -10.0, 32.0, 1401, 25.0, 0.02, "linear"),      # S
    (-0.1, -0.4, -10.0, 28.0, 1301, 25.0, 0.02, "linear"),    # S, convex side
    (-0.3, -0.1, -10.0, 32.0, 1401, 20.0, 0.02, "linear"),    # R, minus side
    (0.2, 0.6, -10.0, 25.0, 1201, 25.0, 0.02, "linear"),      # S, up-jump
]


def test_criterion_6_riemann_pde_cross_validation():
    t0 = time.time()
    patterns = set()
    for (ul, ur, x_min, x_max, nx, t_end, dt, transient) in _CROSS_CASES:
        if ul is None:
            ul = uw.kinetic_u_minus(ur, GAMMA6)
        sol = uw.solve(ul, ur, GAMMA6)
        patterns.add(sol.pattern)
        cfg = uw.SimConfig(beta=0.1, mu=0.06, x_min=x_min, x_max=x_max, nx=nx,
                           t_end=t_end, dt=dt,
                           initial=uw.SmoothedRiemann(ul, ur, GAMMA6))
        snaps = np.arange(0.5 * t_end, t_end + 1e-9, max(1.0, t_end / 25.0))
        res = uw.simulate(cfg, snapshot_times=snaps)
        plateaus = [p.value for p in uw.detect_fronts(res.final).plateaus]
        for state in sol.states:
            assert any(abs(d - state) <= 0.01 * abs(state) for d in plateaus), \
                (ul, ur, state, plateaus)
        shock_speeds = [w.speed_range[0] for w in sol.waves
                        if w.kind is not WaveKind.RAREFACTION]
        fitted = [f.speed for f in
                  uw.fit_front_speeds(cfg, res, transient=transient)]
        for s in shock_speeds:
            assert any(abs(d - s) <= 0.02 * abs(s) for d in fitted), \
                (ul, ur, s, fitted)
    assert "R" in patterns and "S" in patterns
    assert any("Σ" in p for p in patterns)
    elapsed = time.time() - t0
    assert elapsed < 1200.0
    _report(6, f"10 Riemann solutions cross-validated against the PDE, "
               f"patterns {sorted(patterns)} ({elapsed:.0f}s)")


def test_criterion_7_dispersion_relation():
    t0 = time.time()
    # decay rates for three resolved wavenumbers (beta, mu > 0)
    beta, mu, ubar, eps = 0.5, 1.0, 0.0, 1e-6
    nx = 512
    modes = (1, 2, 3)

    def seeded(x):
        return ubar + sum(eps * np.sin(k * x) for k in modes)

    cfg = uw.SimConfig(beta=beta, mu=mu, x_min=0.0, x_max=2.0 * np.pi, nx=nx,
                       t_end=1.0, dt=0.002, bc=uw.BoundaryCondition.PERIODIC,
                       initial=uw.CustomProfile(seeded))
    res = uw.simulate(cfg)
    a0 = np.abs(np.fft.rfft(uw.initial_profile(cfg).u - ubar))
    a1 = np.abs(np.fft.rfft(res.final.u - ubar))
    for k in modes:
        rate = math.log(a1[k] / a0[k]) / cfg.t_end
        lam = uw.dispersion_lambda(ubar, beta, mu, float(k)).real
        assert abs(rate - lam) <= 0.05 * abs(lam), (k, rate, lam)

    # mu < 0: growth beyond the pole wavenumber 1/sqrt(-mu) = 1.5
    beta2, mu2 = 0.3, -4.0 / 9.0

    def seeded2(x):
        return 1e-6 * (np.sin(x) + np.sin(2 * x))

    cfg2 = uw.SimConfig(beta=beta2, mu=mu2, x_min=0.0, x_max=2.0 * np.pi,
                        nx=nx, t_end=2.0, dt=0.002,
                        bc=uw.BoundaryCondition.PERIODIC,
                        initial=uw.CustomProfile(seeded2))
    res2 = uw.simulate(cfg2)
    b0 = np.abs(np.fft.rfft(uw.initial_profile(cfg2).u))
    b1 = np.abs(np.fft.rfft(res2.final.u))
    assert uw.dispersion_lambda(0.0, beta2, mu2, 2.0).real > 0
    assert b1[2] > 5.0 * b0[2]   # xi = 2 > 1.5 grows
    assert b1[1] < b0[1]         # xi = 1 < 1.5 decays
    elapsed = time.time() - t0
    assert elapsed < 60.0
    _report(7, f"decay rates within 5% for xi in {modes}; growing mode "
               f"observed for mu < 0 ({elapsed:.0f}s)")


def test_criterion_8_psystem():
    t0 = time.time()
    b_grid = [-0.95, -0.9, -0.85, -0.8, -0.75, -0.7, -0.65, -0.6, -0.55]
    a_grid = [0.5, 1.0, 2.0, 4.0]
    for b in b_grid:
        for A in a_grid:
            p = uw.psys_locus(b, A)
            assert abs(p.u_zero + p.u_plus + p.u_minus) <= 1e-12
            assert abs(p.s**2 - (p.u_plus**2 + p.u_plus * p.u_minus
                                 + p.u_minus**2)) <= 1e-12 * max(1.0, p.s**2)
            assert abs(p.k - 1.0 / math.sqrt(-2.0 * A * p.s)) <= 1e-12 * p.k
            assert abs(abs(p.s) * p.k - 1.5 * (p.u_minus + p.u_plus)) <= 1e-10
            assert p.s**2 < 3 * p.u_minus**2 and p.s**2 < 3 * p.u_plus**2
            assert abs((p.v_plus - p.v_minus) + p.s * (p.u_plus - p.u_minus)) == 0.0
            res = uw.psys_shoot(p)
            assert res.verdict is Verdict.CONNECTS, (b, A)
            span = abs(p.u_minus - p.u_plus)
            height = abs(1.5 * (p.u_minus + p.u_plus) / p.s) * span**2 / 4.0
            assert uw.psys_parabola_residual(res, p) < 1e-5 * max(1.0, height)
            for fac in (1.05, 0.95):
                up = p.u_plus * fac
                s = -math.sqrt(up**2 + up * p.u_minus + p.u_minus**2)
                from dataclasses import replace
                q = replace(p, u_plus=up, s=s, u_zero=-(p.u_minus + up),
                            k=1.0 / math.sqrt(-2.0 * A * s))
                try:
                    assert uw.psys_shoot(q).verdict is not Verdict.CONNECTS
                except UCWavesError:
                    pass
    for A in a_grid:
        assert abs(uw.psys_locus(-0.5, A).u_minus
                   - 4.0 * math.sqrt(3.0) / (9.0 * A)) <= 1e-12
    # reference point, oracle = direct evaluation of the closed forms
    b, A = -0.6, 4.0
    um_o = 2.0 / (9.0 * (1.0 + b) ** 2) * math.sqrt(b * b + b + 1.0) / A
    up_o = b * um_o
    s_o = -math.sqrt(up_o**2 + up_o * um_o + um_o**2)
    k_o = 1.0 / math.sqrt(-2.0 * A * s_o)
    p = uw.psys_locus(b, A)
    assert p.u_minus == pytest.approx(um_o, abs=1e-5)
    assert p.u_plus == pytest.approx(up_o, abs=1e-5)
    assert p.s == pytest.approx(s_o, abs=1e-5)
    assert p.k == pytest.approx(k_o, abs=1e-5)
    assert (um_o, up_o, s_o) == pytest.approx(
        (0.302702, -0.181621, -0.263890), abs=2e-6)
    elapsed = time.time() - t0
    assert elapsed < 30.0
    _report(8, f"36 locus points verified incl. shooting and rejections "
               f"({elapsed:.0f}s)")


def test_criterion_9_odd_symmetry():
    t0 = time.time()
    rng = np.random.default_rng(3)
    us = rng.uniform(-1.5, 1.5, size=40)
    assert np.allclose(uw.flux(-us), -uw.flux(us), atol=1e-15)
    assert np.allclose(uw.char_speed(-us), uw.char_speed(us), atol=1e-15)
    for ul, ur in rng.uniform(-1.2, 1.2, size=(60, 2)):
        a = uw.classify_shock(ul, ur)
        b = uw.classify_shock(-ul, -ur)
        assert a.kind is b.kind and abs(a.speed - b.speed) < 1e-14
        sa = uw.solve(float(ul), float(ur), GAMMA6)
        sb = uw.solve(float(-ul), float(-ur), GAMMA6)
        assert sa.pattern == sb.pattern
        assert [w.kind for w in sa.waves] == [w.kind for w in sb.waves]
    # mirrored kinetic pairs satisfy the mirrored pairing equation
    for a_par in (0.55, 0.6, 0.65):
        p = uw.locus_point(a_par, GAMMA6, Branch.MINUS)
        um, up = -p.u_minus, -p.u_plus  # mirrored connection (u_- < 0)
        q = up**2 + um * up + um**2
        res = (um + up) * math.sqrt(1 - q) - math.sqrt(2) / 3 * GAMMA6
        assert abs(res) < 1e-12
    # both p-system symmetries preserve locus membership
    for b in (-0.9, -0.7, -0.55):
        for A in (0.5, 2.0):
            p = uw.psys_locus(b, A)
            for which in ("odd", "a_flip"):
                q = uw.psys_symmetry(p, which)
                assert abs(q.u_zero + q.u_plus + q.u_minus) <= 1e-12
                assert abs(q.s**2 - (q.u_plus**2 + q.u_plus * q.u_minus
                                     + q.u_minus**2)) <= 1e-12
                assert abs(q.k**2 - (-1.0 / (2.0 * q.A * q.s))) <= 1e-12
                assert q.s * q.A < 0
                assert abs((q.v_plus - q.v_minus)
                           + q.s * (q.u_plus - q.u_minus)) <= 1e-14
                assert uw.psys_symmetry(q, which) == p
    elapsed = time.time() - t0
    assert elapsed < 1.0
    _report(9, f"odd-symmetry suite over scalar ops, Riemann map and "
               f"p-system ({elapsed:.2f}s)")
