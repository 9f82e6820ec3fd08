# %% [markdown]
# # Apery-type fractions for zeta(2) and zeta(3)

# %%
from mpmath import nstr

from errsums import apery

# %%
for c in apery.CONSTANTS:
    pairs = [apery.apery_pair(c, n) for n in range(5)]
    print(c, "denominators", [int(p.den) for p in pairs])
    print(c, "recurrence", apery.verify_apery_recurrence(c, 50).status)

# %%
for constant, mode in (("zeta2", "signed"), ("zeta2", "absolute"), ("zeta3", "absolute")):
    rep = apery.errsum_apery(constant, mode, 256, "1e-40")
    print(f"{constant} {mode:8s} {rep.digits(20)}  terms {rep.terms_used}")

# %% [markdown]
# The same sums as double and triple integrals.  Gauss-Legendre on a graded
# grid gets about ten digits in 2D and a few digits in 3D.

# %%
for which in ("zeta2_signed", "zeta2_absolute", "zeta3"):
    q = apery.integral_crosscheck(which)
    print(f"{which:15s} {nstr(q.value, 12)}")
