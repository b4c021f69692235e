"""
Closed-form decoherence times
=============================

Evaluate the four decoherence-time formulas on the built-in microtubule
scenarios and look at which wavepacket regime body temperature falls in.
"""

from dataclasses import replace

from mtdecoherence import (
    tau_dipole_broad,
    tau_dipole_narrow,
    tau_ion_broad,
    tau_ion_narrow,
    thermal_wavelength,
)
from mtdecoherence.scenarios import get_scenario

ion = get_scenario("tegmark-mt-ion").params
dipole = get_scenario("hht-mt-dipole").params

# The water ion's thermal wavelength at 309 K is ~1e-11 m, far below the
# 24 nm interaction distance, so the narrow-packet forms are the relevant ones.
lam = thermal_wavelength(ion.M, ion.T)
print(f"thermal wavelength: {lam.value:.3e} m  (lambda/R = {lam.value / ion.R:.1e})")

for fn in (tau_ion_narrow, tau_ion_broad):
    est = fn(ion, scenario_id="tegmark-mt-ion")
    print(f"{est.method.value:<15} {est.seconds:.3e} s   regime {est.regime.value}")

for fn in (tau_dipole_narrow, tau_dipole_broad):
    est = fn(dipole, scenario_id="hht-mt-dipole")
    print(f"{est.method.value:<15} {est.seconds:.3e} s   regime {est.regime.value}")

# Narrow forms grow like sqrt(T); broad forms fall like 1/T (ion) and
# T**-1.5 (dipole). Cooling by a factor 100:
cold = replace(ion, T=ion.T / 100)
print("ion narrow, T/100:", f"{tau_ion_narrow(cold).seconds / tau_ion_narrow(ion).seconds:.3f} x")
print("ion broad,  T/100:", f"{tau_ion_broad(cold).seconds / tau_ion_broad(ion).seconds:.1f} x")
