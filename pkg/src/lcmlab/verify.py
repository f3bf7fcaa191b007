"""Exhaustive consistency checks over small parameter grids.

Each check compares a fast path against a brute-force route and records the
(spec, n) of every disagreement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .constants import (
    corollary1_constant,
    corollary2_constant,
    residue_constant,
    theorem_constant,
)
from .lcm_engine import factor_window_sieve, lcm_fold, log_lcm, window_terms
from .ntk import ProgressionSpec, normalize, residue_set
from .primes import PrimeTable
from .residue_decomp import assemble_log_lcm, build_family, family_primes, finite_form_valid, member


@dataclass
class CheckResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checks - len(self.failures)}/{self.checks}"


def windows(l_max: int = 4) -> Iterator[tuple[int, int]]:
    for l in range(1, l_max + 1):
        for m in range(l):
            yield l, m


def oracle_specs(a_max: int = 6, b_lo: int = -5, b_hi: int = 6) -> Iterator[ProgressionSpec]:
    """Valid specs with gcd(a, b) > 1 included."""
    for a in range(1, a_max + 1):
        for b in range(b_lo, b_hi + 1):
            if a + b < 1:
                continue
            for l, m in windows():
                yield normalize(a, b, l, m)


def characterization_specs(a_max: int = 5, b_abs: int = 5) -> Iterator[ProgressionSpec]:
    return oracle_specs(a_max, -b_abs, b_abs)


def check_oracle(specs, n_max: int) -> CheckResult:
    res = CheckResult("sieve reconstruction == gcd-fold lcm")
    for spec in specs:
        for n in range(1, n_max + 1):
            res.checks += 1
            got = factor_window_sieve(spec, n).reconstruct()
            want = lcm_fold(window_terms(spec, n))
            if got != want:
                res.fail(f"{spec.as_dict()} n={n}: sieve={got} fold={want}")
    return res


def _brute_support(terms: np.ndarray, primes: np.ndarray) -> set[int]:
    if primes.size == 0:
        return set()
    hit = (terms[:, None] % primes[None, :] == 0).any(axis=0)
    return set(primes[hit].tolist())


def check_characterization(specs, n_max: int) -> tuple[CheckResult, CheckResult]:
    """Family membership vs brute divisibility, and the finite union vs the full one."""
    exact = CheckResult("family membership == brute-force divisibility")
    finite = CheckResult("finite union == full family where finite form is valid")
    specs = list(specs)
    top = max(s.a * s.l * n_max + s.b for s in specs)
    table = PrimeTable(top)
    for spec in specs:
        classes = residue_set(spec.a1)
        for n in range(1, n_max + 1):
            terms = np.asarray(window_terms(spec, n), dtype=np.int32)
            bound = int(terms[-1])
            primes = table.primes[: table.count_upto(bound)].astype(np.int32)
            primes = primes[np.gcd(primes, spec.a) == 1]
            brute = _brute_support(terms, primes)
            families = {r: build_family(spec, n, r) for r in classes}
            exact.checks += 1
            bad = [p for p in primes.tolist() if member(p, families[p % spec.a1 or spec.a1]) != (p in brute)]
            if bad:
                exact.fail(f"{spec.as_dict()} n={n}: disagree at primes {bad[:5]}")
            for r, fam in families.items():
                if not finite_form_valid(spec, n, r):
                    continue
                finite.checks += 1
                if family_primes(fam, table, finite=True) != family_primes(fam, table):
                    finite.fail(f"{spec.as_dict()} n={n} r={r}")
    return exact, finite


def check_assembly(specs, n_max: int, tol: float = 1e-6) -> CheckResult:
    res = CheckResult(f"class sums + correction + log d == log L (tol {tol:g})")
    for spec in specs:
        for n in range(1, n_max + 1):
            res.checks += 1
            parts = assemble_log_lcm(spec, n, "direct")
            want = log_lcm(factor_window_sieve(spec, n))
            if abs(parts.total - want) > tol:
                res.fail(f"{spec.as_dict()} n={n}: assembled={parts.total!r} sieve={want!r}")
    return res


def check_branch_boundary(a_max: int = 8, m_max: int = 6) -> CheckResult:
    res = CheckResult("forced ladder branch == l/r on the branch boundary")
    for a in range(1, a_max + 1):
        for r in residue_set(a):
            for m in range(1, m_max + 1):
                if ((a + r) * m) % r:
                    continue
                l = (a + r) * m // r
                res.checks += 1
                forced = residue_constant(r, a, l, m, force_case2=True)
                if forced != residue_constant(r, a, l, m) or forced * r != l:
                    res.fail(f"a={a} r={r} m={m} l={l}: forced={forced}")
    return res


def check_corollaries(a_max: int = 8, m_max: int = 4, l_max2: int = 12) -> CheckResult:
    res = CheckResult("corollary shortcuts == theorem constant")
    for a in range(1, a_max + 1):
        for m in range(m_max + 1):
            for l in range((a + 1) * m, (a + 1) * m + 9):
                if l <= m:
                    continue
                res.checks += 1
                want = theorem_constant(normalize(a, 1, l, m)).value
                got = corollary1_constant(a, l, m)
                if got != want:
                    res.fail(f"corollary 1 a={a} l={l} m={m}: {got} != {want}")
    for l in range(1, l_max2 + 1):
        for m in range(l):
            res.checks += 1
            want = theorem_constant(normalize(1, 0, l, m)).value
            got = corollary2_constant(l, m)
            if got != want:
                res.fail(f"corollary 2 l={l} m={m}: {got} != {want}")
    return res


def run_all(small: bool = False, log: Callable[[str], None] | None = None) -> list[CheckResult]:
    if small:
        oracle = list(oracle_specs(3, -2, 3))
        char = list(characterization_specs(3, 2))
        n_oracle, n_char = 12, 30
    else:
        oracle = list(oracle_specs())
        char = list(characterization_specs())
        n_oracle, n_char = 50, 200
    results = [
        check_oracle(oracle, n_oracle),
        *check_characterization(char, n_char),
        check_assembly(char, n_char),
        check_branch_boundary(),
        check_corollaries(),
    ]
    if log:
        for r in results:
            log(r.line())
    return results

