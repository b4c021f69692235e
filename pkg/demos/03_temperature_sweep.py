"""
Temperature dependence and the regime crossover
===============================================

The narrow-packet decoherence time rises with temperature, the broad-packet
one falls. Which one applies depends on where the thermal wavelength sits
relative to the interaction distance; for a water ion 24 nm away the
switch happens around 5e-5 K.
"""

from mtdecoherence import crossover_temperature, temperature_sweep
from mtdecoherence.cli import sweep_csv
from mtdecoherence.scenarios import get_scenario

sc = get_scenario("tegmark-mt-ion").params
Tc = crossover_temperature(sc.M, sc.R)
print(f"crossover temperature: {Tc.value:.3e} K\n")

rows = temperature_sweep(sc, "ion", 1e-7, 1e3, 11, with_oracle=True)
print(f"{'T [K]':>10} {'lambda/d':>10} {'regime':>13} {'narrow':>11} {'broad':>11} {'oracle':>11}")
for r in rows:
    print(
        f"{r.T:10.2e} {r.ratio:10.2e} {r.regime.value:>13} "
        f"{r.tau_narrow:11.3e} {r.tau_broad:11.3e} {r.tau_oracle:11.3e}"
    )

# The same table as the CLI's CSV
print()
print(sweep_csv(rows[:3]), end="")
