"""
Harmonics the source does not supply
====================================

A load that draws current at orders absent from the voltage (and a dc
offset) cannot be handled by the in-band axes alone. In nonlinear mode that
current goes onto separate axes, where it adds apparent power but no
active power.
"""

# %%
import numpy as np

from gapower import HarmonicSeries, SamplingGrid, analyze, sample_series
from gapower.geompower import OutOfBandInLinearMode
from gapower.multivector import blade_label

grid = SamplingGrid(omega=2 * np.pi * 50, n_samples=1024)
u = sample_series(HarmonicSeries({1: (0.0, 325.0)}, grid.omega), grid)
i_lin = sample_series(HarmonicSeries({1: (4.0, 9.0)}, grid.omega), grid)
i_extra = sample_series(HarmonicSeries({0: (0.8, 0.0), 3: (1.5, -2.0), 5: (0.0, 1.2)}, grid.omega), grid)

# %%
# In the default (linear) mode the out-of-band part is rejected.
try:
    analyze([u], [i_lin + i_extra])
except OutOfBandInLinearMode as exc:
    print("linear mode:", exc)

# %%
# In nonlinear mode the injected current shows up as i_perp and nothing else
# changes.
nl = analyze([u], [i_lin + i_extra], nonlinear=True)
lin = analyze([u], [i_lin])
print("i_perp equals the injected current:", np.allclose(nl.decomposition.time_domain["perp"][0].samples, i_extra.samples))
for c in ("p", "q", "F", "f", "B", "b"):
    same = np.allclose(nl.decomposition[c].dense(), lin.decomposition[c].dense(), atol=1e-12)
    print(f"  i_{c:<4} unchanged: {same}")

# %%
# The extra planes pair voltage axes with the out-of-band current axis. They
# have no scalar part, so P is the same.
for key, s in nl.trace.m_perp.items():
    print(f"  M_perp[{blade_label(key)}] rms {np.sqrt(np.mean(s ** 2)):.2f}")
print("P nonlinear %.4f  P linear %.4f" % (nl.summary.P, lin.summary.P))
print("rms |i| nonlinear %.4f  linear %.4f" % (nl.summary.rms_i, lin.summary.rms_i))
