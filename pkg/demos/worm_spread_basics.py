"""How fast an unchecked scanning worm owns a network.

Random scanning over an address space behaves like a simple epidemic:
every infected host finds fresh victims at a rate proportional to the
fraction still susceptible, so the infected count follows a logistic
sigmoid.  Working in infection time units (ITU, one unit = one expected
full scan pass per infected host) makes every worm the same curve; the
scan rate only rescales the clock back to wallclock.

Run: python demos/worm_spread_basics.py
"""

import numpy as np

from wormsim import (
    DefenseKind,
    ScenarioParams,
    closed_form_no_patch,
    spread_time,
)


def main():
    # Slammer-like scale: 85k vulnerable hosts, ~1.5 doublings worth of
    # scanning per minute, a single seed host.
    slammer = ScenarioParams(
        n_hosts=85000, virulence=1.5, i0=1, defense=DefenseKind.NO_PATCHING
    )
    print("=== Undefended worm, N=85000, 1.5 ITU/minute, I0=1 ===\n")

    times = np.array([0.0, 4.0, 8.0, 11.35, 12.0, 14.0, 16.0])
    infected = closed_form_no_patch(times, slammer)
    print(f"{'t (ITU)':>8} {'t (min)':>8} {'infected':>12} {'fraction':>9}")
    for t, i in zip(times, infected):
        print(f"{t:8.2f} {t / 1.5:8.2f} {i:12.1f} {i / 85000:9.4f}")

    print("\nTime to reach a fraction kappa of all hosts:")
    print(f"{'kappa':>6} {'t (ITU)':>9} {'t (min)':>8}")
    for kappa in (0.10, 0.50, 0.90, 0.99):
        tv = spread_time(slammer, kappa)
        print(f"{kappa:6.2f} {tv.itu:9.3f} {tv.wallclock:8.2f}")
    half = spread_time(slammer, 0.5)
    print(
        f"\nHalf the network falls in {half.itu:.2f} ITU = "
        f"{half.wallclock:.1f} minutes: the whole attack is over during"
        " a coffee break."
    )
    print(
        "Note the logit symmetry: kappa=0.10 and kappa=0.90 sit ln(9) ="
        f" {np.log(9.0):.3f} ITU either side of the midpoint."
    )

    # Same curve, slower clock: a Code Red-like worm at 1.8 ITU/hour.
    codered = ScenarioParams(
        n_hosts=360000, virulence=1.8, i0=25, defense=DefenseKind.NO_PATCHING
    )
    tv = spread_time(codered, 0.5)
    print(
        f"\nCode Red scale (N=360000, 1.8 ITU/hour, I0=25): half the"
        f" network in {tv.itu:.2f} ITU = {tv.wallclock:.1f} hours."
    )
    print("Only the wallclock changes; in ITU every worm rides one sigmoid.")


if __name__ == "__main__":
    main()
