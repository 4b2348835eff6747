"""Fixed-step RK4 integrator: accuracy, sampling, halting, conservation."""

import numpy as np
import pytest

from wormsim import fluid
from wormsim.core import (
    DefenseKind,
    ScenarioParams,
    TrajectorySource,
    conservation_error,
    validate_trajectory,
)
from wormsim.integrate import IntegratorConfig, integrate, validate_config


# --- configuration ------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs,message",
    [
        (dict(t_end_itu=0.0), "t_end_itu"),
        (dict(t_end_itu=-1.0), "t_end_itu"),
        (dict(t_end_itu=10.0, dt_itu=0.0), "dt_itu"),
        (dict(t_end_itu=10.0, dt_itu=0.02), "dt_itu"),
        (dict(t_end_itu=10.0, sample_stride=0), "sample_stride"),
    ],
)
def test_config_validation(kwargs, message):
    with pytest.raises(ValueError, match=message):
        validate_config(IntegratorConfig(**kwargs))


def test_default_step_accepted():
    cfg = IntegratorConfig(t_end_itu=5.0)
    assert validate_config(cfg) is cfg
    assert cfg.dt_itu == 0.001
    assert cfg.sample_stride == 10


# --- sampling grid ------------------------------------------------------


def test_sample_times_follow_stride(codered_nopatch):
    traj = integrate(codered_nopatch, IntegratorConfig(t_end_itu=1.0))
    assert traj.t_itu[0] == 0.0
    assert traj.t_itu[-1] == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(np.diff(traj.t_itu), 0.01, rtol=1e-9)
    assert traj.source is TrajectorySource.INTEGRATED


def test_stride_does_not_change_states(codered_p2p_g2):
    a = integrate(codered_p2p_g2, IntegratorConfig(t_end_itu=8.0, sample_stride=10))
    b = integrate(codered_p2p_g2, IntegratorConfig(t_end_itu=8.0, sample_stride=7))
    at = {round(float(t), 9): (s, i) for t, s, i in zip(a.t_itu, a.s, a.i)}
    bt = {round(float(t), 9): (s, i) for t, s, i in zip(b.t_itu, b.s, b.i)}
    shared = sorted(set(at) & set(bt))
    assert len(shared) > 50
    assert all(at[t] == bt[t] for t in shared)


# --- accuracy against closed forms --------------------------------------


def test_matches_no_patch_sigmoid(codered_nopatch):
    traj = integrate(codered_nopatch, IntegratorConfig(t_end_itu=16.0))
    ref = fluid.closed_form_no_patch(traj.t_itu, codered_nopatch)
    assert np.max(np.abs(traj.i - ref) / ref) < 1e-3


def test_matches_fixed_servers_closed_form(codered_fixed):
    win = fluid.fixed_validity_window(codered_fixed)
    traj = integrate(codered_fixed, IntegratorConfig(t_end_itu=win))
    mask = traj.t_itu <= win
    ref = fluid.closed_form_fixed(traj.t_itu[mask], codered_fixed)
    assert np.max(np.abs(traj.i[mask] - ref) / ref) < 1e-3


def test_matches_p2p_closed_form(codered_p2p_g2):
    traj = integrate(codered_p2p_g2, IntegratorConfig(t_end_itu=9.0))
    ref = fluid.closed_form_p2p(traj.t_itu, codered_p2p_g2)
    assert np.max(np.abs(traj.i - ref) / ref) < 1e-3


def test_fourth_order_convergence(codered_nopatch):
    errs = []
    for dt in (0.008, 0.004, 0.002):
        traj = integrate(
            codered_nopatch,
            IntegratorConfig(t_end_itu=12.0, dt_itu=dt, sample_stride=1),
        )
        ref = fluid.closed_form_no_patch(traj.t_itu, codered_nopatch)
        errs.append(np.max(np.abs(traj.i - ref)))
    # halving dt should cut the error by ~2^4
    assert errs[0] / errs[1] > 12.0
    assert errs[1] / errs[2] > 12.0


# --- halting ------------------------------------------------------------


def test_no_patch_never_halts(codered_nopatch):
    traj = integrate(codered_nopatch, IntegratorConfig(t_end_itu=20.0))
    assert traj.halt_itu is None
    assert np.all(np.diff(traj.i) >= 0)


def test_p2p_halts_at_sub_host_extinction(codered_p2p_g1, codered_p2p_g2):
    traj = integrate(codered_p2p_g1, IntegratorConfig(t_end_itu=40.0))
    assert traj.halt_itu == pytest.approx(23.642, abs=2e-2)
    assert traj.i[-1] < 0.5
    assert traj.t_itu[-1] == pytest.approx(traj.halt_itu)
    traj = integrate(codered_p2p_g2, IntegratorConfig(t_end_itu=40.0))
    assert traj.halt_itu == pytest.approx(9.818, abs=1e-2)


def test_fixed_servers_halts_near_validity_window(codered_fixed):
    traj = integrate(codered_fixed, IntegratorConfig(t_end_itu=60.0))
    win = fluid.fixed_validity_window(codered_fixed)
    assert traj.halt_itu == pytest.approx(win, abs=0.05)


def test_dominant_patching_runs_to_zero(desk_fixed):
    traj = integrate(desk_fixed, IntegratorConfig(t_end_itu=48.0))
    assert traj.halt_itu is not None
    assert traj.i[-1] < 0.5
    assert float(np.min(traj.s)) >= 0.0
    assert float(np.min(traj.p)) >= 0.0


# --- conservation and validity ------------------------------------------


@pytest.mark.parametrize(
    "fixture,t_end",
    [
        ("codered_nopatch", 16.0),
        ("codered_fixed", 50.0),
        ("codered_p2p_g1", 30.0),
        ("codered_p2p_g2", 12.0),
    ],
)
def test_integrated_trajectories_conserve_hosts(request, fixture, t_end):
    params = request.getfixturevalue(fixture)
    traj = integrate(params, IntegratorConfig(t_end_itu=t_end))
    assert conservation_error(traj) <= 1e-9 * params.n_hosts
    assert validate_trajectory(traj) is traj
