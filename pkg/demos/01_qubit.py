# %% [markdown]
# # One qubit
# For d = 2 the three commuting classes are spanned by sigma_z, i*sigma_y and
# sigma_x. Each class yields two rank-one projectors, and any two projectors
# from different classes overlap with trace 1/2.

# %%
import numpy as np

from mubkit import build_family, check_mub, extract_basis, family_projections, spin_matrix, SpinIndex

fam = build_family(2, 1)
for cls in fam:
    j, k = cls.generators[0]
    print(f"class {cls.label}: generator S_({j},{k}) =")
    print(spin_matrix(SpinIndex(2, j, k)).round(3))

# %% [markdown]
# The projectors are (I +- sigma) / 2, and the extracted vectors give the
# familiar Pauli eigenbases.

# %%
projs = family_projections(fam)
for pf in projs:
    basis = extract_basis(pf)
    print(pf.label, np.round(basis.vectors, 3).tolist())

# %%
report = check_mub(projs)
print("mutually unbiased:", report.passed, "worst cross deviation:", report.cross_max)
