"""
One resistor on a balanced three-phase supply
=============================================

A balanced sinusoidal source feeds a single conductance ``G`` between phase
R and neutral. The active power is constant, there is no reactive power,
and still most of the current is not needed to carry that power.
"""

# %%
import numpy as np

from gapower import analyze_scenario, example2, project_time, sequence_split, vec_norm
from gapower.multivector import blade_label

scen = example2(U=230.0, omega=1.0, G=1.0)
res = analyze_scenario(scen)
t = scen.grid.t

# %%
# |u|^2 is 3U^2 at every instant, and M_p = G U^2 is constant.
print("|u|^2 / U^2 =", float(np.mean(vec_norm(res.u) ** 2)) / 230**2)
print("M_p constant:", np.ptp(res.trace.m_p) < 1e-9 * res.summary.P, " P =", round(res.summary.P, 6))

# %%
# The quadrature power lives only in planes that mix different phases. None
# of the per-phase (k, kh) planes appear, so Q is zero.
live = {blade_label(k): float(np.abs(s).max()) for k, s in res.trace.m_q.items() if np.abs(s).max() > 1e-6}
for label, peak in live.items():
    print(f"  M_q[{label:>6}] peak {peak:10.1f}")
print("Q =", res.summary.Q)

# %%
# The parallel current is the balanced set G/3 u. Everything else is i_q,
# which splits into a zero-sequence and a negative-sequence set.
d = res.decomposition
zero, neg, pos = sequence_split(d["q"])
i0 = np.vstack([s.samples for s in project_time(zero)])
ineg = np.vstack([s.samples for s in project_time(neg)])
print("i_p matches sqrt(2) G U/3 cos(t + phi_k):", np.allclose(np.vstack([s.samples for s in d.time_domain["p"]]), scen.meta["i_p"](t)))
print("i_0 matches closed form:", np.allclose(i0, scen.meta["i_0"](t)))
print("i_- matches closed form:", np.allclose(ineg, scen.meta["i_neg"](t)))
print("positive-sequence residue:", float(np.abs(pos.dense()).max()))
print("rms: i_p %.2f  i_q %.2f  i %.2f" % (d.rms["p"], d.rms["q"], d.rms_total))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(3, 1, figsize=(6, 6), sharex=True)
    for k, ax in enumerate(axes):
        ax.plot(t, d.time_domain["p"][k].samples, label="i_p")
        ax.plot(t, i0[k], label="i_0")
        ax.plot(t, ineg[k], label="i_-")
        ax.set_ylabel(f"phase {k + 1}")
    axes[0].legend(ncol=3, fontsize=8)
    axes[-1].set_xlabel("t [s]")
    fig.tight_layout()
    fig.savefig("unbalanced_three_phase.png", dpi=120)
    print("wrote unbalanced_three_phase.png")
except ImportError:
    pass
