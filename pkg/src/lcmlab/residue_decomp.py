"""Prime support of a window, split by residue class mod a.

A prime p = r (mod a) divides some term of the window exactly when
p * (r' + a*i) lands in the term-value range (b + a*m*n, b + a*l*n] for some
i >= 0, where r * r' = b (mod a). Each i contributes one half-open interval
("rung") of candidate primes; small primes p <= (l-m)*n always divide some
term and form the base interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .constants import cap_K, theorem_constant
from .lcm_engine import (
    PrimePowerMap,
    factor_window_sieve,
    small_prime_exponents,
    squarefull_split,
    window,
)
from .ntk import ProgressionSpec, companion_residue, reduced, residue_set
from .primes import PrimeTable

METHODS = ("direct", "theta-intervals")


@dataclass(frozen=True)
class IntervalFamily:
    a: int
    r: int
    companion: int
    H: int
    n: int
    lo_term: int  # b + a*m*n, exclusive
    hi_term: int  # b + a*l*n, inclusive
    base_hi: int  # (l - m) * n
    i_max: int

    def rung_denominator(self, i: int) -> int:
        return self.companion + self.a * i

    def rung(self, i: int) -> tuple[Fraction, Fraction]:
        den = self.rung_denominator(i)
        return Fraction(self.lo_term, den), Fraction(self.hi_term, den)

    @property
    def rungs(self) -> list[tuple[Fraction, Fraction]]:
        return [self.rung(i) for i in range(self.i_max + 1)]

    @property
    def base(self) -> tuple[Fraction, Fraction]:
        return Fraction(0), Fraction(self.base_hi)


def build_family(spec: ProgressionSpec, n: int, r: int) -> IntervalFamily:
    """Interval family for primes = r (mod a1) on the reduced progression.

    Rungs run up to the first one whose upper endpoint drops below 2, or up
    to H if that is later, so the finite union over rungs 0..H is always
    available.
    """
    a, b0 = spec.a1, spec.b0
    if not 1 <= r <= a or math.gcd(r, a) != 1:
        raise ValueError(f"r={r} is not in R({a})")
    w = window(spec, n)
    rp = companion_residue(r, b0, a)
    H = cap_K(rp, a, spec.l, spec.m)
    lo_term = spec.b1 + a * w.index_lo
    hi_term = spec.b1 + a * w.index_hi
    i_max = 0
    while hi_term >= 2 * (rp + a * i_max):
        i_max += 1
    return IntervalFamily(
        a=a, r=r, companion=rp, H=H, n=n,
        lo_term=lo_term, hi_term=hi_term,
        base_hi=(spec.l - spec.m) * n,
        i_max=max(i_max, H),
    )


def member(p: int, family: IntervalFamily) -> bool:
    if p % family.a != family.r % family.a:
        raise ValueError(f"{p} is not congruent to {family.r} mod {family.a}")
    if p <= family.base_hi:
        return True
    # first rung whose lower endpoint lies below p
    rp, a = family.companion, family.a
    if p * rp > family.lo_term:
        i = 0
    else:
        i = (family.lo_term - p * rp) // (p * a) + 1
    return i <= family.i_max and p * (rp + a * i) <= family.hi_term


def finite_form_valid(spec: ProgressionSpec, n: int, r: int) -> bool:
    fam = build_family(spec, n, r)
    return fam.hi_term < fam.base_hi * fam.rung_denominator(fam.H + 1)


def _merge(intervals: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Coalesce overlapping or touching half-open intervals (lo, hi]."""
    merged: list[list[Fraction]] = []
    for lo, hi in sorted(i for i in intervals if i[1] > i[0]):
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return [(lo, hi) for lo, hi in merged]


def family_intervals(family: IntervalFamily, *, finite: bool = False) -> list[tuple[Fraction, Fraction]]:
    """Merged disjoint intervals covering the family.

    ``finite`` keeps only rungs 0..H, the form valid for large n.
    """
    top = family.H if finite else family.i_max
    pieces = [family.base]
    for i in range(top + 1):
        pieces.append(family.rung(i))
        # upper endpoints decrease in i: once one sits inside the base, all later ones do
        if family.hi_term <= family.base_hi * family.rung_denominator(i):
            break
    return _merge(pieces)


def family_primes(family: IntervalFamily, table: PrimeTable, *, finite: bool = False) -> set[int]:
    out: set[int] = set()
    for lo, hi in family_intervals(family, finite=finite):
        hi_int = min(math.floor(hi), table.limit)
        out.update(table.in_class(math.floor(lo), hi_int, family.a, family.r).tolist())
    return out


def theta(x, h: int, k: int, table: PrimeTable | None = None) -> float:
    """Sum of log p over primes p <= x with p = k (mod h)."""
    if h < 1 or math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1 with h >= 1, got h={h}, k={k}")
    top = math.floor(x)
    if top < 2:
        return 0.0
    if table is None:
        table = PrimeTable(top)
    return table.log_sum(0, top, h, k)


def residue_log_sum(
    spec: ProgressionSpec,
    n: int,
    r: int,
    method: str = "direct",
    *,
    table: PrimeTable | None = None,
    support: PrimePowerMap | None = None,
) -> float:
    """Sum of log p over primes p = r (mod a1) dividing the reduced window lcm.

    ``support`` may pass a precomputed prime-power map of the reduced window;
    ``table`` a prime table reaching b1 + a1*l*n.
    """
    if r not in residue_set(spec.a1):
        raise ValueError(f"r={r} is not in R({spec.a1})")
    if method == "direct":
        if support is None:
            support = factor_window_sieve(reduced(spec), n)
        return math.fsum(math.log(p) for p in support.entries if p % spec.a1 == r % spec.a1)
    if method == "theta-intervals":
        fam = build_family(spec, n, r)
        if table is None:
            table = PrimeTable(max(fam.hi_term, 2))
        return math.fsum(
            table.log_sum(math.floor(lo), math.floor(hi), spec.a1, r)
            for lo, hi in family_intervals(fam)
        )
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


@dataclass(frozen=True)
class Assembly:
    per_residue: dict[int, float]
    correction: float
    log_d: float

    @property
    def total(self) -> float:
        return math.fsum(list(self.per_residue.values()) + [self.correction, self.log_d])


def assemble_log_lcm(spec: ProgressionSpec, n: int, method: str = "direct", **sieve_kw) -> Assembly:
    """log L as class sums + squarefull correction + log d.

    ``direct`` reads both pieces off the reduced sieve map. ``theta-intervals``
    never factors the window: class sums come from interval families and the
    correction from prime-power congruences for p <= sqrt(b1 + a1*l*n).
    """
    red = reduced(spec)
    if method == "direct":
        support = factor_window_sieve(red, n, **sieve_kw)
        _, correction = squarefull_split(support, window(red, n).term_hi)
        sums = {
            r: residue_log_sum(red, n, r, "direct", support=support)
            for r in residue_set(red.a1)
        }
    elif method == "theta-intervals":
        table = PrimeTable(max(window(red, n).term_hi, 2))
        sums = {
            r: residue_log_sum(red, n, r, "theta-intervals", table=table)
            for r in residue_set(red.a1)
        }
        small = small_prime_exponents(red, n)
        correction = math.fsum((e - 1) * math.log(p) for p, e in small.entries.items() if e > 1)
    else:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    return Assembly(per_residue=sums, correction=correction, log_d=math.log(spec.d))


def estimate_log_lcm(spec: ProgressionSpec, n: int) -> float:
    """Main term n*A + log d; no sieving."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return n * float(theorem_constant(spec).value) + math.log(spec.d)
