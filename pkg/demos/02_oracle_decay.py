"""
Coherence decay from brute-force quadrature
===========================================

Integrate the phase factor over a Gaussian ion ensemble directly, with the
full (unexpanded-in-d) potential, and compare the 1/e time with the closed
forms on both sides of the lambda ~ d crossover.
"""

import math
import sys

from mtdecoherence import (
    EnsembleSpec,
    decay_curve,
    default_time_grid,
    oracle_tau,
    scenario_delta_v,
    tau_ion_broad_threshold,
    tau_ion_narrow_lambda,
)
from mtdecoherence.scenarios import get_scenario

sc = get_scenario("tegmark-mt-ion").params

# Narrow packet: the decay is a Gaussian envelope exp(-(t/tau)**2).
lam = 0.02 * sc.R
tau = tau_ion_narrow_lambda(sc, lam).seconds
curve = decay_curve(scenario_delta_v(sc, "ion"), EnsembleSpec(lam), default_time_grid(tau, 13))
print("t/tau     D(t)      exp(-(t/tau)^2)")
for t, d in zip(curve.times, curve.values):
    print(f"{t / tau:8.3f}  {d:.6f}  {math.exp(-((t / tau) ** 2)):.6f}")

# Ratio of oracle to closed form across lambda/d.
print("\nlambda/d  oracle/narrow  oracle/broad-threshold")
for ratio in (0.01, 0.05, 0.2, 1.0, 5.0, 30.0):
    lam = ratio * sc.R
    t_or = oracle_tau(sc, "ion", lam).seconds
    t_n = tau_ion_narrow_lambda(sc, lam).seconds
    t_b = tau_ion_broad_threshold(sc, lam).value
    print(f"{ratio:8g}  {t_or / t_n:13.3f}  {t_or / t_b:10.3f}")

# Optional figure, written to a file when matplotlib is around.
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

fig, ax = plt.subplots()
for ratio in (0.02, 1.0, 10.0):
    est, c = oracle_tau(sc, "ion", ratio * sc.R, return_curve=True)
    ax.semilogx([t / est.seconds for t in c.times[1:]], c.values[1:], label=f"lambda/d = {ratio:g}")
ax.axhline(math.exp(-1), ls=":", c="k")
ax.set_xlabel("t / tau_oracle")
ax.set_ylabel("D(t)")
ax.legend()
fig.savefig("oracle_decay.png", dpi=120)
print("\nwrote oracle_decay.png")
