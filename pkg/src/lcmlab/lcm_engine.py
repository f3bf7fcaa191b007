"""Exact lcm of a progression window: gcd-fold oracle and segmented sieve."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ntk import ProgressionSpec, factorize_small
from .primes import primes_upto

DEFAULT_SEGMENT = 1 << 20
_INT64_SAFE = 1 << 62


class ResourceError(RuntimeError):
    """Requested window exceeds the configured sieve budget."""


@dataclass(frozen=True)
class WindowInstance:
    spec: ProgressionSpec
    n: int
    index_lo: int
    index_hi: int
    term_lo: int
    term_hi: int

    @property
    def size(self) -> int:
        return self.index_hi - self.index_lo


def window(spec: ProgressionSpec, n: int) -> WindowInstance:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lo, hi = spec.m * n, spec.l * n
    return WindowInstance(spec, n, lo, hi, spec.term(lo + 1), spec.term(hi))


@dataclass
class PrimePowerMap:
    """L = prod p**e over ``entries``."""

    entries: dict[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, p: int) -> int:
        return self.entries[p]

    def __contains__(self, p: object) -> bool:
        return p in self.entries

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimePowerMap):
            return self.entries == other.entries
        if isinstance(other, dict):
            return self.entries == other
        return NotImplemented

    def items(self):
        return sorted(self.entries.items())

    def reconstruct(self) -> int:
        out = 1
        for p, e in self.entries.items():
            out *= p**e
        return out

    def restrict(self, modulus: int, residue: int) -> "PrimePowerMap":
        return PrimePowerMap(
            {p: e for p, e in self.entries.items() if p % modulus == residue % modulus}
        )


def window_terms(spec: ProgressionSpec, n: int) -> list[int]:
    w = window(spec, n)
    return [spec.a * i + spec.b for i in range(w.index_lo + 1, w.index_hi + 1)]


def lcm_fold(terms: list[int]) -> int:
    """Reference lcm by repeated x*y // gcd(x, y)."""
    if not terms:
        raise ValueError("lcm of an empty list is undefined here")
    acc = 1
    for t in terms:
        if t <= 0:
            raise ValueError(f"terms must be positive, got {t}")
        acc = acc * t // math.gcd(acc, t)
    return acc


def check_budget(spec: ProgressionSpec, n: int, max_bound: int | None) -> int:
    bound = window(spec, n).term_hi
    if max_bound is not None and bound > max_bound:
        raise ResourceError(
            f"largest window term b+aln={bound} exceeds sieve budget {max_bound}"
        )
    return bound


def _sieve_segment(a1: int, b1: int, start: int, stop: int, base: list[int]) -> dict[int, int]:
    """Prime powers of lcm{a1*i + b1 : start <= i <= stop}."""
    residual = np.arange(start, stop + 1, dtype=np.int64) * a1 + b1
    top = a1 * stop + b1
    found: dict[int, int] = {}
    for p in base:
        pk, k = p, 0
        while pk <= top:
            # a1*i + b1 = 0 (mod p^k)  <=>  i = -b1 / a1 (mod p^k)
            root = (-b1 * pow(a1, -1, pk)) % pk
            first = start + (root - start) % pk
            if first > stop:
                break
            residual[first - start :: pk] //= p
            k += 1
            pk *= p
        if k:
            found[p] = k
    # anything left above 1 has no factor <= sqrt(top), hence is prime
    rest = residual[residual > 1]
    for q in np.unique(rest).tolist():
        found[int(q)] = 1
    return found


def factor_window_sieve(
    spec: ProgressionSpec,
    n: int,
    *,
    segment_size: int = DEFAULT_SEGMENT,
    threads: int = 1,
    max_bound: int | None = None,
) -> PrimePowerMap:
    """Prime-power map of L_{m,l}(n) via a segmented factoring sieve.

    Works on the reduced progression a1*i + b1 and multiplies d back in.
    """
    w = window(spec, n)
    check_budget(spec, n, max_bound)
    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    a1, b1 = spec.a1, spec.b1
    top = a1 * w.index_hi + b1
    if top >= _INT64_SAFE:
        raise ResourceError(f"window terms up to {top} do not fit the int64 sieve")
    base = [p for p in primes_upto(math.isqrt(top)).tolist() if a1 % p]
    bounds = [
        (s, min(s + segment_size - 1, w.index_hi))
        for s in range(w.index_lo + 1, w.index_hi + 1, segment_size)
    ]

    def work(seg):
        return _sieve_segment(a1, b1, seg[0], seg[1], base)

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(seg) for seg in bounds]

    merged: dict[int, int] = {}
    for part in parts:
        for p, e in part.items():
            if e > merged.get(p, 0):
                merged[p] = e
    for p, e in factorize_small(spec.d).items():
        merged[p] = merged.get(p, 0) + e
    return PrimePowerMap(dict(sorted(merged.items())))


def small_prime_exponents(spec: ProgressionSpec, n: int) -> PrimePowerMap:
    """v_p(L) of the reduced window for primes p <= sqrt(b1 + a1*l*n).

    Decided per prime power by solving the congruence for the index, without
    touching the window terms.
    """
    w = window(spec, n)
    a1, b1 = spec.a1, spec.b1
    top = a1 * w.index_hi + b1
    out: dict[int, int] = {}
    for p in primes_upto(math.isqrt(top)).tolist():
        if a1 % p == 0:
            continue
        pk, k = p, 0
        while pk <= top:
            root = (-b1 * pow(a1, -1, pk)) % pk
            first = w.index_lo + 1 + (root - w.index_lo - 1) % pk
            if first > w.index_hi:
                break
            k += 1
            pk *= p
        if k:
            out[p] = k
    return PrimePowerMap(out)


def log_lcm(pmap: PrimePowerMap) -> float:
    return math.fsum(e * math.log(p) for p, e in pmap.entries.items())


def squarefull_split(pmap: PrimePowerMap, bound: int) -> tuple[float, float]:
    """(sum of log p over the support, sum of (e-1) log p).

    Raises ValueError if a repeated prime violates p^2 <= bound.
    """
    for p, e in pmap.entries.items():
        if e >= 2 and p * p > bound:
            raise ValueError(f"prime {p} has exponent {e} but p^2 > {bound}")
    first = math.fsum(math.log(p) for p in pmap.entries)
    correction = math.fsum((e - 1) * math.log(p) for p, e in pmap.entries.items() if e > 1)
    return first, correction
