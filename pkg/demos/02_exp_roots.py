# %% [markdown]
# # Roots of e
#
# The regular continued fraction of e^(1/l) has a simple periodic pattern.
# Its error sum has three independent evaluations that must agree.

# %%
from mpmath import mp, nstr

from errsums import exp_errsums
from errsums.cf_engine import convergents

# %%
print("partial quotients of e:      ", exp_errsums.exp_root_cf(1, 15))
print("partial quotients of e^(1/3):", exp_errsums.exp_root_cf(3, 15))

# %%
with mp.workprec(256):
    for l in (2, 3, 4, 5):
        vals = [exp_errsums.errsum_exp(l, m, 256, "1e-40").value for m in exp_errsums.EXP_METHODS]
        spread = max(vals) - min(vals)
        print(f"l={l}  {nstr(vals[0], 25)}  spread over routes {nstr(spread, 3)}")

# %% [markdown]
# Minor convergents of e, summed two ways, and the exact residuals
# q_n e - p_n written as integrals of polynomials against e^t.

# %%
with mp.workprec(256):
    d = exp_errsums.minor_convergent_sum_e(256, "1e-40", "direct").value
    w = exp_errsums.minor_convergent_sum_e(256, "1e-40", "weighted").value
    print("direct  ", nstr(d, 30))
    print("weighted", nstr(w, 30))

conv = list(convergents(exp_errsums.exp_root_cf(1, 12)))
for m in range(4):
    res = exp_errsums.cohn_residual(m, "3m+1")
    c = conv[3 * m + 1]
    print(f"m={m}: residual = {res.alpha} e + ({res.beta}),  convergent {c.p}/{c.q}")
