# %% [markdown]
# # State tomography from MUB measurements
# Measuring all d + 1 bases determines a density matrix. Exact outcome
# probabilities reconstruct it to rounding error; finite samples give an
# error that falls roughly as one over the square root of the shot count.

# %%
import numpy as np

from mubkit import build_family, family_projections, measure_probs, reconstruct_general, reconstruct_prime
from mubkit.tomography import random_density_matrix

rng = np.random.default_rng(0)

for p, n in [(3, 1), (2, 2), (3, 2)]:
    fam = build_family(p, n)
    projs = family_projections(fam)
    rho = random_density_matrix(fam.d, rng)

    def reconstruct(record):
        if n == 1:
            return reconstruct_prime(record, fam)
        return reconstruct_general(record, fam, projs)

    exact = np.linalg.norm(reconstruct(measure_probs(rho, fam, projections=projs)) - rho)
    print(f"d = {fam.d}: exact-probability error {exact:.1e}")
    for shots in (10**3, 10**5):
        record = measure_probs(rho, fam, shots=shots, seed=1, projections=projs)
        err = np.linalg.norm(reconstruct(record) - rho)
        print(f"    {shots:>6} shots per basis: error {err:.4f}")
