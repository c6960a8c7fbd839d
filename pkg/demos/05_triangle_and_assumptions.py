"""Triangular law comparison and finite-n assumption diagnostics."""

# %%
import math

from clspectra import beta_critical, check_assumptions, limiting_moments, triangular_moments
from clspectra.degree_models import PowerLawParams, lambda_closed_form
from clspectra.distribution_analysis import powerlaw_kurtosis

# The power-law kurtosis crosses the triangle's 12/5 at one exponent
b_star = beta_critical()
print(f"critical exponent {b_star:.9f}  (2 + sqrt 6 = {2 + math.sqrt(6):.9f})")
for beta in (3.5, 4.0, b_star, 5.0, 6.0):
    print(f"beta={beta:.3f}: kurtosis {powerlaw_kurtosis(beta):.4f}")

# %% At the critical exponent the sixth moments still differ
p = PowerLawParams(b_star, 1.0, 1.0)
lam = [lambda_closed_form(p, k, asymptotic=True) for k in (1, 2, 3)]
m6 = limiting_moments(lam, 6, lambda_source="closed_form").m(6)
print(f"graph m6 = {m6:.4f}   triangle m6 = {triangular_moments(math.sqrt(24), 6):.4f}")

# %% Sparsity conditions judged along a ladder of sizes
ladder = [1000, 10_000, 100_000]
for model in (
    {"model": "constant", "p": "2*log(n)/n"},
    {"model": "constant", "p": 0.5},
    {"model": "exponential", "Delta_n": "log(n)", "alpha": 1.0},
):
    diag = check_assumptions(model, ladder)
    print(model, "->", diag.overall)
    for rec in diag.a3_trends.values():
        print(f"    {rec.assumption:8s} {rec.name:20s} slope {rec.slope:+.3f} {rec.verdict}")
