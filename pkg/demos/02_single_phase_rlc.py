"""
Two series RLC loads on a distorted supply
==========================================

Both loads draw 10 kW from ``100*sqrt(2)*(sin t + sin 3t)`` and neither
stores energy on average, yet their currents differ. The geometric power
and the current decomposition tell them apart.
"""

# %%
# The currents come from a plain phasor solution of each circuit, harmonic
# by harmonic.
import numpy as np

from gapower import analyze_scenario, classify_load, example1
from gapower.io import format_norms_table

for variant in "ab":
    scen = example1(variant)
    circ = scen.meta["circuit"]
    print(f"circuit {variant}: R={circ.R}, L={circ.L}, C={circ.C:.4f}")
    for h in scen.voltage[0].terms:
        print(f"  h={h}: Z = {circ.impedance(h, 1.0):.4f}")

# %%
# In circuit a the two harmonic currents recombine so that the current stays
# parallel to the voltage at every instant, leaving no bivector part.
a = analyze_scenario(example1("a"))
print("circuit a: max |M_q| =", max(np.abs(s).max() for s in a.trace.m_q.values()))
print("circuit a: P =", round(a.summary.P, 6), " Q =", round(a.summary.Q, 9))

# %%
# Circuit b has a quadrature power that swings with 2t but averages to zero.
# Its per-harmonic reactive powers cancel, so Q is zero while i_q is not.
b = analyze_scenario(example1("b"))
t = b.grid.t
print("circuit b: M_q(1,1h) = -8000 sin 2t:", np.allclose(b.trace.m_q[(0, 1)], -8000 * np.sin(2 * t)))
print("circuit b: P =", round(b.summary.P, 6), " Q =", round(b.summary.Q, 9))
print("circuit b plane tags:", classify_load(b.trace))

# %%
# RMS of the vector norm of every current component.
for name, res in (("a", a), ("b", b)):
    print(f"\ncircuit {name}")
    print(format_norms_table(res.decomposition))

# %%
# The instantaneous impedance of circuit a diverges where 1 + sin 2t = 0;
# those samples are flagged rather than divided through.
za = a.impedance(1)
print("\ncircuit a singular samples:", za.singular.tolist())
zb = b.impedance(1)
print("circuit b r(t) range: [%.3f, %.3f]" % (np.nanmin(zb.r), np.nanmax(zb.r)))
print("circuit b x(t) range: [%.3f, %.3f]" % (np.nanmin(zb.x), np.nanmax(zb.x)))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(2, 1, figsize=(6, 5), sharex=True)
    for ax, res, name in zip(axes, (a, b), "ab"):
        d = res.decomposition
        for c in ("p", "q", "F", "f"):
            ax.plot(t, d.time_domain[c][0].samples, label=f"i_{c}")
        ax.set_title(f"circuit {name}")
        ax.legend(ncol=4, fontsize=8)
    axes[-1].set_xlabel("t [s]")
    fig.tight_layout()
    fig.savefig("single_phase_rlc.png", dpi=120)
    print("wrote single_phase_rlc.png")
except ImportError:
    pass
