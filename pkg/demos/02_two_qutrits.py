# %% [markdown]
# # Two qutrits
# With p = 3, n = 2 and the nonresidue D = 2 the field GF(9) is Z_3[x]/(x^2 - 2).
# Every nonzero vector (j1, k1, j2, k2) of Z_3^4 falls in exactly one of the
# ten commuting classes. The grid below lists the class of each vector with
# rows indexed by j1 j2 and columns by k1 k2.

# %%
from mubkit import build_family, verify_partition
from mubkit.classes import class_grid

fam = build_family(3, 2, D=2)
print("f =", fam.ctx.f)
rows, cols, cells = class_grid(fam)
print("     " + " ".join(f"{c:>3}" for c in cols))
for r, row in zip(rows, cells):
    print(f"{r:>4} " + " ".join(f"{c:>3}" for c in row))

# %% [markdown]
# A partition check confirms the classes are commuting subspaces covering
# all 80 nonzero vectors once.

# %%
report = verify_partition(fam)
print(report.passed, report.n_classes, report.nonzero_covered)
print("class of (1,1,1,1):", fam.lookup((1, 1, 1, 1)))
