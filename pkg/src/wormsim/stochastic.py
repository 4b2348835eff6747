"""Exact stochastic (continuous-time Markov chain) worm simulation.

Events are competing exponential clocks on integer host counts:

  * infection at total rate S*I/N,
  * fixed-servers patching at rate gamma * min(p_bar, S + I),
  * peer-to-peer patching at rate (gamma/N) * (S + I) * P,

with each patch landing on an infected host with probability I/(S+I).
A run records its state on a fixed sampling grid; between events the
state is constant, and an absorbed run (no clock can fire again) holds
its final state until the horizon.

For the undefended worm the jump chain is deterministic (every event is
an infection), so runs reduce to a cumulative sum of exponential
holding times and are generated vectorized.  Monitor-hit processes are
sampled exactly from their conditional law given the infection path:
hits form a Poisson process whose intensity is (M/N) * I(t), so first
hits come from inverting the cumulative hazard and hit counts from
independent Poisson increments.

Randomness comes from numpy's counter-based Philox generator; run k of
an ensemble uses key seed + k, making every run independently
reproducible and the ensemble independent of execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DefenseKind,
    ScenarioParams,
    Trajectory,
    TrajectorySource,
)


@dataclass(frozen=True)
class StochasticConfig:
    """Simulation horizon, sampling grid, and RNG seeding (times in ITU)."""

    t_end_itu: float
    seed: int
    sample_dt_itu: float = 0.05
    runs: int = 1


@dataclass
class EnsembleResult:
    """Per-grid-point mean and spread over an ensemble of runs."""

    mean: Trajectory
    s_std: np.ndarray
    i_std: np.ndarray
    p_std: np.ndarray
    runs_used: int
    extinct_before_end: int


def validate_config(config: StochasticConfig) -> StochasticConfig:
    if not np.isfinite(config.t_end_itu) or config.t_end_itu <= 0.0:
        raise ValueError("t_end_itu must be positive")
    if not np.isfinite(config.sample_dt_itu) or config.sample_dt_itu <= 0.0:
        raise ValueError("sample_dt_itu must be positive")
    if not isinstance(config.runs, int) or config.runs < 1:
        raise ValueError("runs must be an integer >= 1")
    if not isinstance(config.seed, int) or config.seed < 0:
        raise ValueError("seed must be a non-negative integer")
    return config


def _rng(key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=key))


def _grid(config: StochasticConfig) -> np.ndarray:
    n_pts = int(math.floor(config.t_end_itu / config.sample_dt_itu + 1e-9)) + 1
    return np.arange(n_pts) * config.sample_dt_itu


class _UniformBuffer:
    """Block-buffered uniforms; one Generator call per 2^14 draws."""

    __slots__ = ("gen", "buf", "k")

    def __init__(self, gen: np.random.Generator):
        self.gen = gen
        self.buf = gen.random(16384)
        self.k = 0

    def next(self) -> float:
        if self.k == 16384:
            self.buf = self.gen.random(16384)
            self.k = 0
        u = self.buf[self.k]
        self.k += 1
        return u


def _infection_jumps(params: ScenarioParams, gen: np.random.Generator) -> np.ndarray:
    """Jump times of the undefended worm: I rises by 1 at each entry."""
    n, i0 = params.n_hosts, params.i0
    if i0 == 0:
        return np.empty(0)
    levels = np.arange(i0, n, dtype=float)
    rates = levels * (n - levels) / n
    return np.cumsum(gen.exponential(1.0, size=n - i0) / rates)


def _run_no_patch(params: ScenarioParams, gen, grid):
    jumps = _infection_jumps(params, gen)
    i = params.i0 + np.searchsorted(jumps, grid, side="right").astype(float)
    s = params.n_hosts - i
    p = np.zeros_like(i)
    halt = None
    if len(jumps) and jumps[-1] <= grid[-1]:
        halt = float(jumps[-1])  # fully infected: nothing left to happen
    return s, i, p, halt, False


def _run_patched(params: ScenarioParams, gen, grid):
    n = params.n_hosts
    g = params.gamma
    pb = params.p_bar
    is_fixed = params.defense is DefenseKind.FIXED_SERVERS
    s = n - params.i0 - pb
    i = params.i0
    p = pb
    out_s = np.empty(len(grid))
    out_i = np.empty(len(grid))
    out_p = np.empty(len(grid))
    gi = 0
    t = 0.0
    t_end = float(grid[-1])
    buf = _UniformBuffer(gen)
    halt = None
    while True:
        unpatched = s + i
        rate_infect = s * i / n
        if is_fixed:
            rate_patch = g * (pb if unpatched >= pb else unpatched)
        else:
            rate_patch = g / n * unpatched * p
        total = rate_infect + rate_patch
        if total <= 0.0:
            halt = t if t > 0.0 else None  # absorbed; state frozen
            t_next = math.inf
        else:
            t_next = t + -math.log1p(-buf.next()) / total
        while gi < len(grid) and grid[gi] < t_next:
            out_s[gi] = s
            out_i[gi] = i
            out_p[gi] = p
            gi += 1
        if gi == len(grid) or t_next > t_end:
            break
        t = t_next
        # One uniform picks the event and, for patches, the target:
        # conditional on landing in the patch band, the offset is again
        # uniform, so it reuses cleanly for the infected/susceptible split.
        u = buf.next() * total
        if u < rate_infect:
            s -= 1
            i += 1
        else:
            v = (u - rate_infect) / rate_patch * unpatched
            if v < i:
                i -= 1
            else:
                s -= 1
            p += 1
    return out_s, out_i, out_p, halt, i == 0


def _run(params: ScenarioParams, run_key: int, grid: np.ndarray):
    gen = _rng(run_key)
    if params.defense is DefenseKind.NO_PATCHING:
        return _run_no_patch(params, gen, grid)
    return _run_patched(params, gen, grid)


def simulate(params: ScenarioParams, config: StochasticConfig) -> Trajectory:
    """One exact stochastic run, sampled on the configured grid.

    Identical (params, config) always produce a bit-identical
    trajectory; the run is driven by Philox key config.seed.
    """
    validate_config(config)
    grid = _grid(config)
    s, i, p, halt, _ = _run(params, config.seed, grid)
    return Trajectory(
        t_itu=grid, s=s, i=i, p=p, params=params,
        source=TrajectorySource.STOCHASTIC_RUN, halt_itu=halt,
    )


def ensemble(params: ScenarioParams, config: StochasticConfig) -> EnsembleResult:
    """config.runs independent runs driven by keys seed, seed+1, ...

    Returns the per-grid-point mean trajectory and standard deviation
    (population convention), plus how many runs saw their infection hit
    zero before the horizon.  Results depend only on (params, config),
    never on the order runs complete.
    """
    validate_config(config)
    grid = _grid(config)
    acc = np.zeros((3, len(grid)))
    acc_sq = np.zeros((3, len(grid)))
    extinct = 0
    for k in range(config.runs):
        s, i, p, _, inf_extinct = _run(params, config.seed + k, grid)
        for row, arr in enumerate((s, i, p)):
            acc[row] += arr
            acc_sq[row] += arr * arr
        if inf_extinct:
            extinct += 1
    mean = acc / config.runs
    var = np.maximum(acc_sq / config.runs - mean * mean, 0.0)
    std = np.sqrt(var)
    mean_traj = Trajectory(
        t_itu=grid, s=mean[0], i=mean[1], p=mean[2], params=params,
        source=TrajectorySource.ENSEMBLE_MEAN,
    )
    return EnsembleResult(
        mean=mean_traj,
        s_std=std[0], i_std=std[1], p_std=std[2],
        runs_used=config.runs,
        extinct_before_end=extinct,
    )


# ---------------------------------------------------------------------------
# Network-telescope detection runs
# ---------------------------------------------------------------------------

def _check_monitors(params: ScenarioParams, monitors: int) -> None:
    if params.defense is not DefenseKind.NO_PATCHING:
        raise ValueError("detection runs model the undefended worm only")
    if not isinstance(monitors, (int, np.integer)) or isinstance(monitors, bool):
        raise ValueError("monitors must be an integer")
    if not 1 <= monitors <= params.n_hosts:
        raise ValueError("monitors must satisfy 1 <= monitors <= n_hosts")


def _hazard_at(times, jumps, i0, c):
    """Cumulative monitor-hit hazard c * integral of I over [0, t].

    I is piecewise constant, rising by 1 at each jump; the integral is
    evaluated exactly at each requested time.
    """
    # Integral of I at each jump time.
    levels = i0 + np.arange(len(jumps) + 1, dtype=float)  # I on each segment
    seg_starts = np.concatenate(([0.0], jumps))
    area_at_start = np.concatenate(
        ([0.0], np.cumsum(levels[:-1] * np.diff(seg_starts)))
    )
    idx = np.searchsorted(jumps, times, side="right")
    area = area_at_start[idx] + levels[idx] * (times - seg_starts[idx])
    return c * area


def detection_sim(
    params: ScenarioParams, monitors: int, config: StochasticConfig
) -> np.ndarray:
    """First monitor-hit time for each of config.runs undefended runs.

    Every infected host scans at rate 1 per ITU and each scan lands on
    the monitored set with probability monitors/N, so hits arrive at
    rate (monitors/N) * I(t).  The first hit is sampled exactly by
    inverting the cumulative hazard along the simulated infection path.
    Runs with no hit before the horizon report inf.
    """
    _check_monitors(params, monitors)
    validate_config(config)
    c = monitors / params.n_hosts
    t_end = config.t_end_itu
    out = np.empty(config.runs)
    for k in range(config.runs):
        gen = _rng(config.seed + k)
        jumps = _infection_jumps(params, gen)
        target = gen.exponential(1.0)
        jumps_in = jumps[jumps < t_end]
        h_jumps = _hazard_at(jumps_in, jumps, params.i0, c)
        j = int(np.searchsorted(h_jumps, target, side="right"))
        seg_start = 0.0 if j == 0 else float(jumps_in[j - 1])
        h_start = 0.0 if j == 0 else float(h_jumps[j - 1])
        level = params.i0 + j
        t_hit = seg_start + (target - h_start) / (c * level)
        out[k] = t_hit if t_hit <= t_end else np.inf
    return out


def monitor_scan_counts(
    params: ScenarioParams, monitors: int, config: StochasticConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative monitor-hit counts on the sampling grid, per run.

    Returns (grid, counts) with counts shaped (runs, len(grid)).  Hit
    counts over disjoint intervals are independent Poisson variables
    with mean equal to the hazard increment, sampled exactly.
    """
    _check_monitors(params, monitors)
    validate_config(config)
    grid = _grid(config)
    c = monitors / params.n_hosts
    counts = np.zeros((config.runs, len(grid)), dtype=np.int64)
    for k in range(config.runs):
        gen = _rng(config.seed + k)
        jumps = _infection_jumps(params, gen)
        hazard = _hazard_at(grid, jumps, params.i0, c)
        hits = gen.poisson(np.diff(hazard))
        counts[k, 1:] = np.cumsum(hits)
    return grid, counts
