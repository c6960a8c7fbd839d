"""Bounding the top eigenvalue of A - E{A} for exponential expected degrees.

Degrees follow w_i = Delta exp(-alpha x_i) with x_i uniform on [0, 1].  The
limiting moments have a closed form; m_k^(1/k) and (n m_k)^(1/k) bracket the
largest eigenvalue in absolute value for any even k.
"""

# %%
from clspectra import MatrixKind, eigenvalues, exponential_moments, sample
from clspectra.degree_models import ExponentialParams, make_exponential
from clspectra.reproduce import exponential_bound_values

n, Delta, alpha = 1000, 10.0, 1.0
print("limiting m_2..m_10:", exponential_moments(alpha, 10).even_moments.round(3))

b = exponential_bound_values(n, Delta, alpha, k=20)
print(f"k=20: lower {b['lower']:.4f}  upper {b['upper']:.4f}")

# %% Sampled graphs land between the bounds
for seed in range(5):
    ds = make_exponential(n, ExponentialParams(Delta, alpha), seed=1000 + seed)
    top = eigenvalues(sample(ds, seed), MatrixKind.CENTRALIZED_UNNORMALIZED)[-1]
    print(f"seed {seed}: lambda_max = {top:.4f}")

# %% Larger k tightens the upper bound toward the lower one
for k in (4, 10, 20, 40):
    b = exponential_bound_values(n, Delta, alpha, k)
    print(f"k={k:2d}: [{b['lower']:.3f}, {b['upper']:.3f}]")
