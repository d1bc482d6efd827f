"""
Quadrature pairs and geometric vectors
======================================

Each phase waveform is paired with its Hilbert transform, and the pair
becomes two coordinates of a vector. This script shows the sign convention
and what the resulting vector looks like for a distorted supply.
"""

# %%
# The transform works on one sampled period through the DFT. A sine turns
# into a cosine, a cosine into a negative sine, and dc disappears.
import numpy as np

from gapower import PhaseSignal, SamplingGrid, build_voltage, hilbert, vec_norm

grid = SamplingGrid(omega=1.0, n_samples=64)
t = grid.t

for name, x in [("sin 3t", np.sin(3 * t)), ("cos 3t", np.cos(3 * t)), ("2 + sin t", 2 + np.sin(t))]:
    h = hilbert(PhaseSignal(grid, x)).samples
    print(f"H[{name:>9}] at t=0, pi/6: {h[0]: .3f}, {h[len(t) // 12 + 0]: .3f}")

# %%
# Applying it twice gives back the signal with a minus sign, minus its mean.
x = PhaseSignal(grid, 1.5 + np.sin(t) - 0.4 * np.cos(5 * t))
hh = hilbert(hilbert(x)).samples
print("max |H[H[x]] + (x - mean x)| =", np.abs(hh + x.samples - x.samples.mean()).max())

# %%
# A supply with a third harmonic. The vector carries u/sqrt(2) on the plain
# axis and H[u]/sqrt(2) on the hat axis.
u_t = 100 * np.sqrt(2) * (np.sin(t) + np.sin(3 * t))
u = build_voltage([PhaseSignal(grid, u_t)])
print("axes:", [f"{a}" for a in u.axes])
print("plain axis equals 100(sin t + sin 3t):", np.allclose(u[0], 100 * (np.sin(t) + np.sin(3 * t))))
print("hat axis equals 100(cos t + cos 3t):  ", np.allclose(u[1], 100 * (np.cos(t) + np.cos(3 * t))))

# %%
# The vector norm is 200|cos t|. It touches zero twice per period, which is
# where the current decomposition has to be filled in by continuity.
norm = vec_norm(u)
print("norm at t=0:", round(float(norm[0]), 6), " norm at t=pi/2:", round(float(norm[16]), 9))

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 3))
    ax.plot(t, u[0], label="plain")
    ax.plot(t, u[1], label="hat")
    ax.plot(t, norm, "k--", label="|u|")
    ax.set_xlabel("t [s]")
    ax.legend()
    fig.tight_layout()
    fig.savefig("hilbert_and_vectors.png", dpi=120)
    print("wrote hilbert_and_vectors.png")
except ImportError:
    pass
