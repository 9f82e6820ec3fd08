# %% [markdown]
# # log(1+t) for rational t
#
# A three-term recurrence gives the convergents of a continued fraction for
# log(1+t).  The error sum has a closed form; at t = 1 it equals pi/4.

# %%
from fractions import Fraction

from mpmath import mp, nstr

from errsums import log1p
from errsums.oracles import const

# %%
for n in range(5):
    s = log1p.log1p_seq(1, n)
    print(n, s.A, s.B)

# %%
with mp.workprec(256):
    v = log1p.errsum_log1p(1, prec=256, tol="1e-45").value
    print("t = 1 error sum", nstr(v, 40))
    print("pi/4           ", nstr(const("pi", 256) / 4, 40))

# %%
with mp.workprec(256):
    for t in (Fraction(1, 2), Fraction(-2, 3), Fraction(9, 10), Fraction(-19, 20)):
        series = log1p.errsum_log1p(t, prec=256, tol="1e-35").value
        closed = log1p.log1p_closed_form(t, 256)
        print(f"t={str(t):6s} {nstr(series, 25)}  |series - closed| = {nstr(abs(series - closed), 3)}")

# %%
# the residual of each convergent as an integral, checked by quadrature
chk = log1p.lemma_integral_check(Fraction(1, 3), 6)
print("residual integral agrees:", chk.agrees, " quadrature error", f"{chk.error:.1e}")
