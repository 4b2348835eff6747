"""Fighting a worm with a worm: peer-to-peer patch dissemination.

When every patched host redistributes the patch at rate gamma, the cure
spreads epidemically too.  The infected curve becomes a sharp spike: if
the patch outpaces the worm (gamma > 1) the peak collapses from
order-N to order N^(1/gamma) * stuff, e.g. sqrt(N) at gamma = 2.

Run: python demos/p2p_defense.py
"""

import math

from wormsim import (
    DefenseKind,
    IntegratorConfig,
    ScenarioParams,
    integrate,
    p2p_extinction_time,
    p2p_peak_infected,
    p2p_peak_time,
    trajectory_extinction,
    trajectory_peak,
)

CODERED = dict(n_hosts=360000, virulence=1.8, i0=25)


def run_case(gamma):
    params = ScenarioParams(
        defense=DefenseKind.PEER_TO_PEER, gamma=gamma, p_bar=10, **CODERED
    )
    traj = integrate(params, IntegratorConfig(t_end_itu=40.0))
    peak_tv, peak_i = trajectory_peak(traj)
    dieout = trajectory_extinction(traj, threshold=0.5)
    return params, peak_tv, peak_i, dieout


def main():
    print("=== Code Red vs a peer-to-peer patch (10 initial servers) ===\n")
    print(f"{'gamma':>5} {'peak t (h)':>10} {'peak infected':>13} "
          f"{'die-out (h)':>11}")
    for gamma in (1.0, 2.0):
        params, peak_tv, peak_i, dieout = run_case(gamma)
        print(f"{gamma:5.1f} {peak_tv.wallclock:10.2f} {peak_i:13,.0f} "
              f"{dieout.wallclock:11.2f}")
    print(
        "\nAgainst 25 fixed servers the same worm peaked at ~231,000"
        " infected and lingered for ~26 hours.  A patch that spreads at"
        " the worm's own rate (gamma=1) halves the peak; at twice the"
        " rate (gamma=2) the outbreak never reaches 2,000 hosts."
    )

    params = ScenarioParams(
        defense=DefenseKind.PEER_TO_PEER, gamma=2.0, p_bar=10, **CODERED
    )
    print("\nAnalytic predictors at gamma=2:")
    print(f"  peak time      {p2p_peak_time(params).itu:6.2f} ITU"
          f" = {p2p_peak_time(params).wallclock:.2f} h")
    print(f"  peak infected  {p2p_peak_infected(params):6.0f} hosts"
          " (closed-form spike height)")
    print(f"  extinction     {p2p_extinction_time(params).itu:6.2f} ITU"
          f" = {p2p_extinction_time(params).wallclock:.2f} h")

    print("\nPeak scaling check at gamma=2 (peak should grow like sqrt(N)):")
    print(f"{'N':>9} {'peak infected':>13} {'peak/sqrt(N)':>12}")
    for n in (10**4, 10**5, 10**6):
        p = ScenarioParams(
            n_hosts=n, virulence=1.0, i0=25,
            defense=DefenseKind.PEER_TO_PEER, gamma=2.0, p_bar=10,
        )
        traj = integrate(p, IntegratorConfig(t_end_itu=14.0))
        _tv, peak_i = trajectory_peak(traj)
        print(f"{n:9,} {peak_i:13,.0f} {peak_i / math.sqrt(n):12.3f}")
    print(
        "\nThe ratio is flat across two decades of N: once the cure is"
        " also an epidemic, scale stops helping the attacker."
    )


if __name__ == "__main__":
    main()
