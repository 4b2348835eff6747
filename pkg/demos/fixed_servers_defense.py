"""Fighting a worm with a fixed crew of patch servers.

A constant workforce of p_bar servers pushes patches to random hosts,
patched or not, so useful throughput is gamma * p_bar hosts per ITU
while targets remain.  Against a Code Red-scale worm the patch-down is
linear and slow: the worm still claims most of the network at the peak,
and eradication takes roughly N / (gamma * p_bar) time units.

The script compares the closed-form trajectory, a 4th-order integration,
and the analytic peak and extinction predictors.

Run: python demos/fixed_servers_defense.py
"""

import numpy as np

from wormsim import (
    DefenseKind,
    IntegratorConfig,
    ScenarioParams,
    closed_form_fixed,
    fixed_extinction_time,
    fixed_peak_time,
    fixed_validity_window,
    integrate,
    trajectory_extinction,
    trajectory_peak,
)


def main():
    params = ScenarioParams(
        n_hosts=360000, virulence=1.8, i0=25,
        defense=DefenseKind.FIXED_SERVERS, gamma=312.0, p_bar=25,
    )
    window = fixed_validity_window(params)
    print("=== Code Red vs 25 fixed patch servers ===")
    print(
        f"N=360000, 1.8 ITU/hour, I0=25, gamma*p_bar="
        f"{params.gamma * params.p_bar:.0f} patches/ITU\n"
    )

    traj = integrate(params, IntegratorConfig(t_end_itu=50.0))
    print("Closed form vs RK4 on the validity window:")
    print(f"{'t (ITU)':>8} {'closed form':>12} {'integrated':>12} {'rel err':>9}")
    for t in (2.0, 8.0, 13.4, 20.0, 35.0, 46.0):
        exact = float(closed_form_fixed(t, params))
        k = int(np.argmin(np.abs(traj.t_itu - t)))
        rel = abs(traj.i[k] - exact) / exact
        print(f"{t:8.1f} {exact:12.1f} {traj.i[k]:12.1f} {rel:9.1e}")

    peak_pred = fixed_peak_time(params)
    peak_tv, peak_i = trajectory_peak(traj)
    print(f"\nPeak-time predictor 2*ln(N/sqrt(g*Pb*I0)): {peak_pred.itu:6.2f} ITU"
          f" = {peak_pred.wallclock:5.2f} h")
    print(f"Measured fluid peak:                       {peak_tv.itu:6.2f} ITU"
          f" = {peak_tv.wallclock:5.2f} h, {peak_i:,.0f} infected")
    print(
        "The predictor keeps only the leading exponential balance, so it"
        " lands ~12% early here; both say the worm peaks above 200k hosts."
    )

    ext_pred = fixed_extinction_time(params)
    ext = trajectory_extinction(traj, threshold=float(params.p_bar))
    print(f"\nExtinction predictor (N-2*Pb)/(g*Pb): {ext_pred.itu:6.2f} ITU"
          f" = {ext_pred.wallclock:5.2f} h")
    print(f"Measured drop below {params.p_bar} infected:       {ext.itu:6.2f} ITU"
          f" = {ext.wallclock:5.2f} h")
    print(
        f"\nThe closed form is exact up to its validity window"
        f" ({window:.1f} ITU), where the last {params.p_bar} unpatched"
        " hosts remain; after that the workforce saturates and the tail"
        " decays exponentially."
    )
    print(
        "Verdict: a fixed crew eventually wins, but only after the worm"
        " has owned two thirds of the network, and eradication takes a"
        " full day."
    )


if __name__ == "__main__":
    main()
