# %% [markdown]
# # Coefficient triangles and row series
#
# Two polynomial families in t, whose coefficients form triangles a and b.
# Integrating the rows gives series that converge to the zeta(2) error sums.

# %%
from errsums import triangles

# %%
for kind in triangles.KINDS:
    tri = triangles.triangle(kind, 5)
    print(f"triangle {kind}")
    for nu, row in enumerate(tri.rows):
        print("  ", nu, row)

# %%
for kind in triangles.KINDS:
    print(kind, triangles.lemma_recurrence_check(kind, 40).status,
          triangles.binomial_formula_check(kind, 20).status)

# %%
print("alpha:", [str(v) for v in triangles.row_functionals("alpha", 6).values])
print("beta: ", [str(v) for v in triangles.row_functionals("beta", 6).values])

# %%
for which, n in (("alpha", 10_000), ("beta", 10_000), ("cube", 200)):
    s = triangles.thm_series(which, n)
    print(f"{which:5s} N={n:6d} {float(s.value):.10f}  ({s.method})")

# %%
# diagonals of b and their generating functions
print("central diagonal:", [triangles.central_b(n) for n in range(10)])
for d in (0, 1, 2):
    print(f"diagonal {d}:", triangles.diagonal_gf("b", d, 8), triangles.diagonal_check("b", d, 30).status)
