# %% [markdown]
# # Error sums for 1/pi and sqrt5/log(rho)
#
# Two continued fractions whose convergents are built from closed-form
# sequences.  The error sum adds up the signed distances between the constant
# and each convergent.

# %%
from mpmath import mp, nstr

from errsums import pi_logrho
from errsums.suites import convergent_identity

# %%
# the closed-form sequences reproduce the continued-fraction convergents exactly
for name in ("pi", "logrho"):
    rep = convergent_identity(name, 30)
    print(f"{name:7s} convergents match for n <= 30: {rep.passed}")

# %%
# first few terms of the sequences behind the 1/pi fraction
for n in range(5):
    s = pi_logrho.pi_seq(n)
    print(n, s.A, s.B, float(s.B / (4 * s.A)))

# %%
# series value, closed form and the integral representation side by side
with mp.workprec(256):
    rep = pi_logrho.errsum_pi(256, "1e-40")
    print("pi error sum    ", rep.digits(30), "terms", rep.terms_used)
    print("closed form     ", nstr(pi_logrho.pi_closed_form(256), 30))
    print("integral        ", nstr(pi_logrho.pi_u_integral().value, 15))

    rep = pi_logrho.errsum_logrho(256, "1e-40")
    print("logrho error sum", rep.digits(30), "terms", rep.terms_used)
    print("closed form     ", nstr(pi_logrho.logrho_closed_form(256), 30))
    print("integral        ", nstr(-pi_logrho.logrho_u_integral().value, 15))
