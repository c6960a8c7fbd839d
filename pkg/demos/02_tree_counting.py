"""Where the moment formula comes from: counting rooted ordered trees.

Each even moment m_2s is a weighted count of rooted ordered trees with s
edges.  Trees are grouped by their degree distribution r = (r_1, ..., r_s);
a group contributes tree_count(r) * prod Lambda_j^r_j.
"""

# %%
from clspectra import catalan, enumerate_Rs, limiting_moments
from clspectra.oracles import enumerate_ordered_trees, tree_counts_by_degree

for s in range(1, 6):
    groups = enumerate_Rs(s)
    print(f"s={s}: {len(enumerate_ordered_trees(s))} trees (Catalan {catalan(s)})")
    brute = tree_counts_by_degree(s)
    for t in groups:
        print(f"    r={t.r}  formula {t.tree_count:3d}  brute force {brute[t.r]:3d}")

# %% Heterogeneous degrees: a larger Lambda_2 fattens every higher moment
for lam2 in (1.0, 1.2, 1.5):
    lam = [1.0, lam2, lam2**2, lam2**3]
    m = limiting_moments(lam, 8).moments
    print(f"Lambda_2={lam2}: m_2..m_8 = {m[1]:.3f} {m[3]:.3f} {m[5]:.3f} {m[7]:.3f}")
