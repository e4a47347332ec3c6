"""Named runtime verification suites behind the command-line interface.

Each check returns a :class:`CheckResult`; a suite is a list of checks run
for a given m and cutoff.  The same checks back the pytest modules, so the
CLI report and the test suite cannot drift apart.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import characters as ch
from . import fermion as fm
from . import zhu
from .arith import bernoulli_number
from .qseries import QExpansion
from .specialfn import ThetaIndex, eisenstein, eta, frak_f2, g_series, theta, theta_deriv

SUITE_NAMES = ("theta", "characters", "zhu", "fermion", "all")

__all__ = ["CheckResult", "run_suite", "SUITE_NAMES"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _ok(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(passed), detail)


# ----------------------------------------------------------------------
# theta suite
# ----------------------------------------------------------------------


def _theta_suite(m: int, cutoff: Fraction, tolerance: float) -> List[CheckResult]:
    checks: List[CheckResult] = []
    k = Fraction(2 * m + 1, 2)
    indices = [ThetaIndex(Fraction(0), k), ThetaIndex(Fraction(2 * m + 1, 2), k)]
    for i in range(m):
        indices.append(ThetaIndex(Fraction(m - i), k))
        indices.append(ThetaIndex(Fraction(2 * (m - i) - 1, 2), k))

    ok = True
    for idx in indices:
        shifted = ThetaIndex(idx.j + 2 * idx.k, idx.k)
        if not (theta(idx, cutoff) - theta(shifted, cutoff)).is_zero():
            ok = False
        if not (theta_deriv(idx, cutoff) - theta_deriv(shifted, cutoff)).is_zero():
            ok = False
    checks.append(_ok("theta-periodicity-in-first-index", ok))

    ok = True
    for idx in indices:
        lhs = theta(idx, cutoff)
        rhs = theta((2 * idx.j, 4 * idx.k), cutoff) + theta(
            (2 * idx.j - 4 * idx.k, 4 * idx.k), cutoff
        )
        if not (lhs - rhs).is_zero():
            ok = False
    checks.append(_ok("theta-half-index-decomposition", ok))

    ok = True
    for idx in indices:
        if not idx.j_is_integer:
            continue
        lhs = theta(idx, cutoff) + g_series(idx, cutoff)
        rhs = theta((2 * idx.j, 4 * idx.k), cutoff).scale(2)
        if not (lhs - rhs).is_zero():
            ok = False
    checks.append(_ok("theta-plus-alternating-is-even-part", ok))

    import cmath
    import math

    worst = 0.0
    for idx in indices:
        phase = cmath.exp(1j * math.pi * float(idx.j * idx.j / (2 * idx.k) % 2))
        target = g_series(idx, cutoff) if idx.j_is_integer else theta(idx, cutoff)
        diff = theta(idx, cutoff).shift_tau() - target.scale(phase)
        worst = max(worst, diff.max_abs_coeff())
    checks.append(
        _ok("theta-shift-law", worst < 1e-12, f"max coefficient deviation {worst:.2e}")
    )

    # eta against the pentagonal-number expansion
    pent = {}
    j = 0
    while True:
        done = True
        for s in (j, -j):
            e = Fraction(1, 24) + Fraction(s * (3 * s - 1), 2)
            if e < cutoff:
                pent[e] = Fraction((-1) ** (s & 1))
                done = False
            if s == 0:
                break
        if done and j > 0:
            break
        j += 1
    ok = (eta(cutoff) - QExpansion(pent, cutoff=cutoff)).is_zero()
    checks.append(_ok("eta-pentagonal-expansion", ok))

    # f2 = eta(2 tau) / eta(tau) as exact series
    doubled = eta(Fraction(cutoff) / 2 + 1).double_exponents()
    ratio = doubled / eta(Fraction(cutoff) + 2)
    ok = (ratio.truncated(cutoff) - frak_f2(cutoff)).is_zero()
    checks.append(_ok("f2-is-eta-doubling-quotient", ok))

    ok = True
    for kk in (1, 2, 3):
        series = eisenstein(kk, "full", cutoff)
        for n in range(1, int(cutoff)):
            sigma = sum(d ** (2 * kk - 1) for d in range(1, n + 1) if n % d == 0)
            expected = Fraction(2 * sigma, math.factorial(2 * kk - 1))
            if series.coeff(n) != expected:
                ok = False
    checks.append(_ok("eisenstein-divisor-sum-coefficients", ok))
    return checks


# ----------------------------------------------------------------------
# characters suite
# ----------------------------------------------------------------------


def _is_nonneg_int_series(series: QExpansion) -> bool:
    return all(c.denominator == 1 and c >= 0 for _, c in series.terms)


def _is_int_series(series: QExpansion) -> bool:
    return all(c.denominator == 1 for _, c in series.terms)


def _characters_suite(m: int, cutoff: Fraction, tolerance: float) -> List[CheckResult]:
    checks: List[CheckResult] = []
    c = ch.central_charge(m)

    ok = True
    for label, flavor in ch.all_labels(m):
        series = ch.character_series(label, flavor, cutoff)
        if flavor == "character" and not _is_nonneg_int_series(series):
            ok = False
        if flavor == "supercharacter" and not _is_int_series(series):
            ok = False
    checks.append(_ok("character-integrality-and-positivity", ok))

    ok = True
    details = []
    for rec in zhu.classify_twisted(m):
        series = ch.twisted_char(ch.ModuleLabel(rec.family, rec.index, m), cutoff)
        lead = series.leading()
        expected_exp = rec.lowest_weight - c / 24
        if lead is None or lead[0] != expected_exp or lead[1] != rec.top_dim_graded:
            ok = False
            details.append(f"{rec.family}({rec.index})")
    checks.append(
        _ok(
            "twisted-leading-terms-match-classification",
            ok,
            "mismatches: " + ", ".join(details) if details else "",
        )
    )

    ok = True
    for i in range(m):
        lhs = ch.fock_char(i, m, cutoff)
        rhs = ch.twisted_char(ch.ModuleLabel("RLambda", i + 1, m), cutoff) + ch.twisted_char(
            ch.ModuleLabel("RPi", m - i, m), cutoff
        )
        if not (lhs - rhs).is_zero():
            ok = False
    top = (
        ch.fock_char(2 * m, m, cutoff)
        - ch.twisted_char(ch.ModuleLabel("RPi", m + 1, m), cutoff)
    ).is_zero()
    checks.append(_ok("fock-additivity", ok and top))

    ok = True
    N = 6
    for i in range(m):
        window = min(Fraction(cutoff), ch.conformal_weight(i, N, m) - c / 24)
        total = QExpansion.zero(cutoff)
        for n in range(N + 1):
            total = total + ch.ramond_irred_char(i, n, m, cutoff).scale(2 * n + 1)
        target = ch.twisted_char(ch.ModuleLabel("RLambda", i + 1, m), cutoff)
        diff = total - target
        if any(e < window and coeff != 0 for e, coeff in diff.terms):
            ok = False
    checks.append(_ok("ramond-telescoping-safe-window", ok))

    worst = 0.0
    shift_window = min(cutoff, Fraction(12))  # float phases scale with coefficient size
    for family, rng in (("SLambda", range(1, m + 2)), ("SPi", range(1, m + 1))):
        for index in rng:
            worst = max(
                worst,
                ch.super_vs_t_deviation(ch.ModuleLabel(family, index, m), shift_window),
            )
    checks.append(
        _ok(
            "supercharacter-shift-consistency",
            worst < 1e-12,
            f"max deviation {worst:.2e}",
        )
    )
    return checks


# ----------------------------------------------------------------------
# zhu suite
# ----------------------------------------------------------------------


def _zhu_suite(m: int, cutoff: Fraction, tolerance: float) -> List[CheckResult]:
    checks: List[CheckResult] = []
    for rel in zhu.relation_suite(m):
        checks.append(_ok(f"zhu-relation: {rel.name}", rel.passed, rel.detail))

    pts = 6 * m + 3
    ok = True
    for idx in range(pts):
        t = Fraction(idx - 3, 3) + Fraction(1, 7)
        if zhu.binomial_sum_lhs(t, m) != zhu.Fm(t, m):
            ok = False
    checks.append(_ok("screening-square-binomial-identity", ok, f"{pts} sample points"))

    records = zhu.classify_twisted(m)
    poly = zhu.fmr_polynomial(m)
    ok = len(records) == 2 * m + 1
    ok = ok and all(poly.eval_at(rec.lowest_weight) == 0 for rec in records)
    ok = ok and poly.eval_at(ch.central_charge(m) / 24) != 0
    checks.append(_ok("classification-weights-annihilated", ok))

    hab = zhu.hab_polynomial(m)
    rng = random.Random(20260808)
    ok = True
    for _ in range(20):
        t = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        eig = zhu.singlet_eigen(t, m)
        if hab.evaluate(eig.g0_squared, eig.h0_sq) != 0:
            ok = False
    checks.append(_ok("even-generator-relation-vanishes-on-spectrum", ok))
    return checks


# ----------------------------------------------------------------------
# fermion suite
# ----------------------------------------------------------------------


def _fermion_suite(m: int, cutoff: Fraction, tolerance: float) -> List[CheckResult]:
    checks: List[CheckResult] = []
    grade = 6
    fock_cut = grade + 10
    basis = [
        fm.FockVector({mono: 1}, fock_cut)
        for mono in fm.basis_monomials(grade)
    ]

    ok = True
    for a in range(-4, 5):
        for b in range(-4, 5):
            target = Fraction(1) if a + b == 0 else Fraction(0)
            for v in basis:
                lhs = fm.phi(a, fm.phi(b, v)) + fm.phi(b, fm.phi(a, v))
                if lhs.truncated:
                    continue
                if not (lhs - v.scale(target)).is_zero():
                    ok = False
    checks.append(_ok("clifford-anticommutators", ok))

    ok = True
    for v in basis:
        if not (fm.phi(0, fm.phi(0, v)) - v.scale(Fraction(1, 2))).is_zero():
            ok = False
    checks.append(_ok("zero-mode-squares-to-half", ok))

    ok = True
    for sign in (1, -1):
        v = fm.vacuum_pm(sign, fock_cut)
        from .arith import QuadRational

        eig = QuadRational(0, Fraction(sign, 2))
        if not (fm.phi(0, v) - v.scale(eig)).is_zero():
            ok = False
    checks.append(_ok("parity-ground-states-are-zero-mode-eigenvectors", ok))

    ok = True
    for v in basis:
        bracket = fm.virasoro_mode(1, fm.virasoro_mode(-1, v)) - fm.virasoro_mode(
            -1, fm.virasoro_mode(1, v)
        )
        if bracket.truncated:
            continue
        if not (bracket - fm.virasoro_mode(0, v).scale(2)).is_zero():
            ok = False
    checks.append(_ok("virasoro-bracket-l1-lm1", ok))

    ok = True
    for v in basis:
        if not (fm.virasoro_mode_quadratic(0, v) - fm.virasoro_mode(0, v)).is_zero():
            ok = False
    checks.append(_ok("quadratic-vs-diagonal-conformal-weight", ok))

    table_check = fm.cmn_generating_check(12)
    checks.append(
        _ok(
            "lowering-table-generating-function",
            table_check.matches,
            f"total degree {table_check.max_total_degree}",
        )
    )

    ok = True
    size = 8
    for a in range(size + 1):
        for b in range(size + 1):
            if fm.cmn(a, b) != -fm.cmn(b, a):
                ok = False
    checks.append(_ok("lowering-table-antisymmetry", ok))

    report = fm.delta_apply_to_omega()
    checks.append(
        _ok(
            "lowering-operator-on-conformal-vector",
            report.matches_conformal_correction and report.second_order_vanishes,
            "single (1/16) x^-2 component, second application vanishes",
        )
    )

    dim_cut = Fraction(12)
    lhs = fm.graded_dimension_M(dim_cut)
    rhs = frak_f2(dim_cut).scale(2)
    checks.append(_ok("twisted-module-graded-dimension", (lhs - rhs).is_zero()))

    half = fm.graded_dimension_M_half(dim_cut)
    checks.append(
        _ok(
            "parity-half-graded-dimension",
            (half - frak_f2(dim_cut)).is_zero() and (half.scale(2) - lhs).is_zero(),
        )
    )
    return checks


_SUITES: Dict[str, Callable[[int, Fraction, float], List[CheckResult]]] = {
    "theta": _theta_suite,
    "characters": _characters_suite,
    "zhu": _zhu_suite,
    "fermion": _fermion_suite,
}


def run_suite(
    name: str,
    m: int,
    cutoff=Fraction(30),
    tolerance: float = 1e-8,
    inject_fault: Optional[str] = None,
) -> List[CheckResult]:
    """Run one named suite (or all of them) and return the check results.

    ``inject_fault`` deliberately corrupts a constant in a synthetic check,
    exercising the failure-reporting path end to end.
    """
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    cutoff = Fraction(cutoff)
    names = ["theta", "characters", "zhu", "fermion"] if name == "all" else [name]
    results: List[CheckResult] = []
    for suite in names:
        results.extend(_SUITES[suite](m, cutoff, tolerance))
    if inject_fault is not None:
        corrupted = bernoulli_number(4) + Fraction(1, 30)
        results.append(
            _ok(
                f"injected-fault:{inject_fault}",
                corrupted == bernoulli_number(4),
                "deliberately corrupted constant, this check must fail",
            )
        )
    return results
