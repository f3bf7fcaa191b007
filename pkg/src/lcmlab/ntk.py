"""Number-theory kernel: gcd, totients, reduced residues and progression specs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Exact rationals. Fraction keeps num/den reduced with den > 0 and compares
# by integer cross-multiplication, which is all the interval code needs.
Rational = Fraction


class SpecError(ValueError):
    """Raised when a progression specification violates its hypotheses."""


def gcd(x: int, y: int) -> int:
    return math.gcd(x, y)


def euler_phi(a: int) -> int:
    """Count of 1 <= r <= a with gcd(r, a) = 1, via trial factorization of a."""
    if a <= 0:
        raise ValueError(f"euler_phi needs a >= 1, got {a}")
    result = a
    rest = a
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            while rest % p == 0:
                rest //= p
            result -= result // p
        p += 1
    if rest > 1:
        result -= result // rest
    return result


def residue_set(a: int) -> list[int]:
    if a <= 0:
        raise ValueError(f"residue_set needs a >= 1, got {a}")
    return [r for r in range(1, a + 1) if math.gcd(r, a) == 1]


def companion_residue(r: int, b0: int, a: int) -> int:
    """Return the unique r' in R(a) with r * r' = b0 (mod a)."""
    if a <= 0:
        raise ValueError(f"modulus must be positive, got {a}")
    if math.gcd(r, a) != 1 or math.gcd(b0, a) != 1:
        raise ValueError(f"r={r} and b0={b0} must both be coprime to a={a}")
    if a == 1:
        return 1
    rp = (b0 * pow(r, -1, a)) % a
    # R(a) lives in [1, a]; a residue of 0 only occurs for a == 1
    return rp if rp else a


@dataclass(frozen=True)
class ProgressionSpec:
    """A window lcm{a*i + b : m*n < i <= l*n} together with its reduced form.

    ``d = gcd(a, b)``, ``(a1, b1) = (a/d, b/d)`` and ``b1 = b0 + q*a1`` with
    ``b0`` in R(a1). Build instances through :func:`normalize`.
    """

    a: int
    b: int
    l: int
    m: int
    d: int
    a1: int
    b1: int
    b0: int
    q: int

    def term(self, i: int) -> int:
        return self.a * i + self.b

    def reduced_term(self, i: int) -> int:
        return self.a1 * i + self.b1

    @property
    def is_reduced(self) -> bool:
        return self.d == 1

    def as_dict(self) -> dict[str, int]:
        return {
            "a": self.a, "b": self.b, "l": self.l, "m": self.m,
            "d": self.d, "a1": self.a1, "b1": self.b1, "b0": self.b0, "q": self.q,
        }


def normalize(a: int, b: int, l: int, m: int) -> ProgressionSpec:
    for name, value in (("a", a), ("b", b), ("l", l), ("m", m)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise SpecError(f"{name} must be an integer, got {value!r}")
    if a < 1:
        raise SpecError(f"hypothesis a >= 1 violated (a={a})")
    if a + b < 1:
        raise SpecError(f"hypothesis a + b >= 1 violated (a={a}, b={b})")
    if m < 0:
        raise SpecError(f"hypothesis m >= 0 violated (m={m})")
    if l <= m:
        raise SpecError(f"hypothesis l > m violated (l={l}, m={m})")
    d = math.gcd(a, b)
    a1, b1 = a // d, b // d
    # b0 in [1, a1]: for a1 == 1 this forces b0 = 1
    b0 = b1 % a1 or a1
    q = (b1 - b0) // a1
    return ProgressionSpec(a=a, b=b, l=l, m=m, d=d, a1=a1, b1=b1, b0=b0, q=q)


def factorize_small(x: int) -> dict[int, int]:
    """Trial-division factorization, only meant for small cofactors like d."""
    if x < 1:
        raise ValueError(f"cannot factor {x}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= x:
        while x % p == 0:
            out[p] = out.get(p, 0) + 1
            x //= p
        p += 1
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def reduced(spec: ProgressionSpec) -> ProgressionSpec:
    """The coprime progression a1*i + b1 over the same window."""
    return normalize(spec.a1, spec.b1, spec.l, spec.m)
