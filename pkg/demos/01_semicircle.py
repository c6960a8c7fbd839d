"""Erdos-Renyi spectra and the semicircle.

With every expected degree equal, the centred and sqrt(n p)-scaled adjacency
matrix has a spectrum that fills [-2, 2] with a semicircle.  Its even moments
are the Catalan numbers 1, 2, 5, 14, ...
"""

# %%
import numpy as np

from clspectra import MatrixKind, catalan, eigenvalues, histogram, make_constant, moments_dense, sample

ds = make_constant(2000, 0.01)
smp = sample(ds, seed=7)
print(f"n={smp.n}  edges={smp.num_edges}  expected degree={ds.w[0]:.1f}")

# %% The uncentred matrix keeps one outlier near sqrt(n p); centring removes it.
raw = eigenvalues(smp, MatrixKind.NORMALIZED)
cen = eigenvalues(smp, MatrixKind.CENTRALIZED)
print(f"largest eigenvalue  raw: {raw[-1]:.3f}   centred: {cen[-1]:.3f}")

# %% Moments of the centred matrix against Catalan numbers
m = moments_dense(smp, 8).moments
for k in (2, 4, 6, 8):
    print(f"m_{k} = {m[k - 1]:8.4f}   C_{k // 2} = {catalan(k // 2)}")
print("odd moments:", np.round(m[::2], 4))

# %% A coarse text histogram against the semicircle density
h = histogram(cen, 16)
for lo, hi, c in h.rows():
    x = (lo + hi) / 2
    density = np.sqrt(max(4 - x * x, 0)) / (2 * np.pi)
    expect = density * (hi - lo) * smp.n
    print(f"{lo:6.2f} {hi:6.2f} {c:5d} {'#' * (c // 10):30s} {expect:6.1f}")
