"""Verification suites: each returns status rows for the ``verify`` command.

A row records whether the claim is proven (a failure is a real bug) or only
observed (a failure is a warning), whether it held, and a short detail.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from mpmath import mp, mpf

from . import apery, exp_errsums, log1p, pi_logrho, triangles
from .cf_engine import gcf_convergents, gcf_numden
from .numkernel import CheckReport
from .oracles import QuadratureSpec, const, integrate

__all__ = ["SuiteRow", "SUITES", "run_suite", "convergent_identity", "DEFAULT_DATA_DIR"]

DEFAULT_DATA_DIR = Path(__file__).resolve().parents[2] / "data"

# fixed sample of t values for the log(1+t) recurrence sweep
RECURRENCE_TS = (
    Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(-1, 2), Fraction(-7, 9),
    Fraction(3, 4), Fraction(-1, 10), Fraction(2, 7), Fraction(-5, 6), Fraction(9, 10),
)  # fmt: skip


@dataclass(frozen=True)
class SuiteRow:
    name: str
    proven: bool
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "proven-pass" if self.proven else "empirical-pass"
        return "fail" if self.proven else "empirical-fail"


def _from_report(rep: CheckReport) -> SuiteRow:
    detail = f"checked {rep.checked}"
    if rep.first_failure is not None:
        detail += f"; first failure {rep.first_failure}"
    return SuiteRow(rep.claim, rep.proven, rep.passed, detail)


def _close(name: str, a, b, tol) -> SuiteRow:
    with mp.workprec(256):
        diff = abs(a - b)
        ok = diff < mpf(tol)
    return SuiteRow(name, True, bool(ok), f"|diff| = {mp.nstr(diff, 3)} (tol {tol})")


# ------------------------------------------------------------ recurrences


def convergent_identity(name: str, n_max: int) -> CheckReport:
    """Ratio of the closed-form sequences equals the continued-fraction convergent, n <= n_max."""
    rep = CheckReport(f"convergents({name})", 0, proven=True)
    if name == "pi":
        conv = list(gcf_convergents(pi_logrho.inverse_pi_cf_spec(), n_max + 1))
        pairs = ((n, pi_logrho.pi_seq(n).B / (4 * pi_logrho.pi_seq(n).A), conv[n]) for n in range(n_max + 1))
    elif name == "logrho":
        conv = list(gcf_convergents(pi_logrho.sqrt5_over_logrho_cf_spec(), n_max + 1))
        pairs = ((n, pi_logrho.logrho_seq(n).D / pi_logrho.logrho_seq(n).C, conv[n]) for n in range(n_max + 1))
    elif name in ("zeta2", "zeta3"):
        conv = list(gcf_convergents(apery.apery_cf_spec(name), n_max))
        pairs = (
            (n, apery.apery_pair(name, n).num / apery.apery_pair(name, n).den, conv[n - 1])
            for n in range(1, n_max + 1)
        )
    elif name.startswith("log1p"):
        t = Fraction(name.partition(":")[2] or 1)
        nd = gcf_numden(log1p.log1p_cf_spec(t), n_max)
        pairs = (
            (n, (log1p.log1p_seq(t, n).A, log1p.log1p_seq(t, n).B), nd[n]) for n in range(n_max + 1)
        )
    else:
        raise ValueError(f"no convergent identity named {name!r}")
    for n, mine, ref in pairs:
        if mine != ref:
            rep.first_failure = n
            return rep
        rep.checked += 1
    return rep


def suite_recurrences(max_n: int = 50, **_) -> list[SuiteRow]:
    rows = []
    for t in RECURRENCE_TS:
        rep = log1p.verify_recurrence(t, max_n)
        rows.append(_from_report(rep))
    for c in apery.CONSTANTS:
        rows.append(_from_report(apery.verify_apery_recurrence(c, max_n)))
    n_conv = min(max_n, 40)
    for name in ("pi", "logrho", "zeta2", "zeta3", "log1p:1", "log1p:1/2", "log1p:-1/3"):
        rows.append(_from_report(convergent_identity(name, n_conv)))
    return rows


# ------------------------------------------------------------ closed forms


def suite_closed_forms(prec: int = 256, **_) -> list[SuiteRow]:
    rows = []
    with mp.workprec(prec):
        rows.append(_close("errsum_pi = closed form", pi_logrho.errsum_pi(prec, "1e-40").value, pi_logrho.pi_closed_form(prec), "1e-35"))
        rows.append(_close("errsum_pi = -5.4333111067784", pi_logrho.errsum_pi(prec, "1e-30").value, mpf("-5.4333111067784"), "5e-13"))
        rows.append(_close("errsum_logrho = closed form", pi_logrho.errsum_logrho(prec, "1e-40").value, pi_logrho.logrho_closed_form(prec), "1e-35"))
        rows.append(_close("errsum_logrho = -0.1210649459927", pi_logrho.errsum_logrho(prec, "1e-30").value, mpf("-0.1210649459927"), "5e-13"))
        rows.append(_close("errsum_log1p(1) = pi/4", log1p.errsum_log1p(1, prec=prec, tol="1e-45").value, const("pi", prec) / 4, "1e-40"))
        for t in (Fraction(1, 2), Fraction(-1, 3), Fraction(2, 5)):
            a = log1p.errsum_log1p(t, prec=prec, tol="1e-35").value
            b = log1p.log1p_closed_form(t, prec)
            rows.append(_close(f"errsum_log1p({t}) series = closed form", a, b, "1e-30"))
        for l in (2, 3, 4, 5):
            vals = {m: exp_errsums.errsum_exp(l, m, prec, "1e-40").value for m in exp_errsums.EXP_METHODS}
            ms = list(vals)
            for i in range(len(ms)):
                for j in range(i + 1, len(ms)):
                    rows.append(_close(f"errsum_exp(l={l}) {ms[i]} = {ms[j]}", vals[ms[i]], vals[ms[j]], "1e-30"))
        d = exp_errsums.minor_convergent_sum_e(prec, "1e-40", "direct").value
        w = exp_errsums.minor_convergent_sum_e(prec, "1e-40", "weighted").value
        rows.append(_close("minor convergents of e: direct = weighted", d, w, "1e-25"))
    return rows


# ------------------------------------------------------------ integrals


def suite_integrals(prec: int = 128, **_) -> list[SuiteRow]:
    rows = []
    pu = pi_logrho.pi_u_integral()
    rows.append(_close("pi error sum as an integral", pu.value, pi_logrho.pi_closed_form(prec), max(pu.error, 1e-13)))
    lu = pi_logrho.logrho_u_integral()
    rows.append(_close("log rho error sum as an integral", -lu.value, pi_logrho.logrho_closed_form(prec), max(lu.error, 1e-13)))
    for which, key, tol in (
        ("zeta2_signed", ("zeta2", "signed"), 1e-5),
        ("zeta2_absolute", ("zeta2", "absolute"), 1e-5),
        ("zeta3", ("zeta3", "absolute"), 1e-3),
    ):
        q = apery.integral_crosscheck(which)
        direct = apery.errsum_apery(key[0], key[1], prec, "1e-30").value
        rows.append(_close(f"apery {which} integral", q.value, direct, tol))
    g = integrate(lambda t: np.exp(-t * t), QuadratureSpec(1, 20, 0, (None,)))
    rows.append(_close("integral of exp(-t^2) on [0,1]", g.value, mpf("0.7468241328"), "5e-11"))
    for t, n in ((Fraction(1), 3), (Fraction(-1, 2), 5), (Fraction(1, 3), 10)):
        chk = log1p.lemma_integral_check(t, n)
        rows.append(SuiteRow(f"log1p residual integral t={t} n={n}", True, bool(chk.agrees), f"quadrature error {chk.error:.1e}"))
    return rows


# ------------------------------------------------------------ triangles


def suite_triangles(max_n: int = 30, **_) -> list[SuiteRow]:
    rows = []
    for kind in "pq":
        rows.append(_from_report(triangles.generating_check(kind, max_n)))
    rows.append(_from_report(triangles.generating_check("r", min(max_n, 12))))
    for kind in triangles.KINDS:
        rows.append(_from_report(triangles.lemma_recurrence_check(kind, max(max_n, 3))))
        rows.extend(_from_report(r) for r in triangles.symmetry_and_rowsum_check(kind, max(max_n, 2)))
        rows.append(_from_report(triangles.binomial_formula_check(kind, min(max_n, 20))))
    for kind in ("alpha", "beta"):
        rows.append(_from_report(triangles.recurrence_replay(kind, max(4, min(max_n * 4, 200)))))
    return rows


def suite_genfuncs(max_n: int = 30, **_) -> list[SuiteRow]:
    rows = []
    for kind in triangles.KINDS:
        for d in (0, 1, 2):
            rows.append(_from_report(triangles.diagonal_check(kind, d, max_n)))
    for d in (1, 2):
        rows.append(_from_report(triangles.order2d_recurrence(d, min(max_n, 20))))
    rows.append(_from_report(triangles.a108626_specialization(min(max_n, 20))))
    return rows


# ------------------------------------------------------------ OEIS fixtures


def suite_oeis(data_dir: str | Path | None = None, count: int = 30, **_) -> list[SuiteRow]:
    from .oeis_bridge import BINDINGS, compare, read_bfile

    data_dir = Path(data_dir) if data_dir else DEFAULT_DATA_DIR
    rows = []
    for oeis_id, b in BINDINGS.items():
        if not b.enabled:
            continue
        path = data_dir / f"{oeis_id}.fixture.txt"
        if not path.exists():
            raise FileNotFoundError(f"missing b-file {path}")
        rep = compare(b, read_bfile(path), count)
        detail = f"matched {rep.matched}/{rep.compared} at offset {rep.offset_used}"
        if rep.first_mismatch:
            detail += f"; first mismatch {rep.first_mismatch}"
        # agreement with a database entry is an observation, not a theorem
        rows.append(SuiteRow(f"{oeis_id} ({b.name})", False, rep.ok, detail))
    return rows


SUITES = {
    "recurrences": suite_recurrences,
    "closed_forms": suite_closed_forms,
    "integrals": suite_integrals,
    "triangles": suite_triangles,
    "genfuncs": suite_genfuncs,
    "oeis": suite_oeis,
}


def run_suite(name: str, **config) -> list[SuiteRow]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**config)
