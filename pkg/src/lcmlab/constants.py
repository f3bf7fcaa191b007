"""Exact asymptotic constants for log lcm of arithmetic-progression windows.

Every value here is a :class:`fractions.Fraction`; floats only appear when a
caller renders a constant for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ntk import ProgressionSpec, euler_phi, residue_set


@dataclass(frozen=True)
class AsymptoticConstant:
    value: Fraction
    phi: int
    breakdown: dict[int, tuple[int, Fraction]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "A": str(self.value),
            "A_float": float(self.value),
            "phi": self.phi,
            "breakdown": {
                str(r): {"K": k, "A_r": str(ar), "A_r_float": float(ar)}
                for r, (k, ar) in sorted(self.breakdown.items())
            },
        }


def _check_residue(r: int, a: int) -> None:
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    if not 1 <= r <= a or math.gcd(r, a) != 1:
        raise ValueError(f"r={r} is not in the reduced residue system of a={a}")


def _check_window(l: int, m: int) -> None:
    if not l > m >= 0:
        raise ValueError(f"need l > m >= 0, got l={l}, m={m}")


def cap_K(r: int, a: int, l: int, m: int) -> int:
    """floor((a*l - (l-m)*r) / (a*(l-m))), floor toward -infinity."""
    _check_residue(r, a)
    _check_window(l, m)
    return (a * l - (l - m) * r) // (a * (l - m))


def first_branch(r: int, a: int, l: int, m: int) -> bool:
    """True when l >= (a+r)m/r, tested as l*r >= (a+r)*m."""
    return l * r >= (a + r) * m


def residue_constant(r: int, a: int, l: int, m: int, *, force_case2: bool = False) -> Fraction:
    """A_r for residue r mod a.

    ``force_case2`` evaluates the second (ladder) branch regardless of the
    branch test; only meaningful for checking agreement at the boundary.
    """
    _check_residue(r, a)
    _check_window(l, m)
    if first_branch(r, a, l, m) and not force_case2:
        return Fraction(l, r)
    k = cap_K(r, a, l, m)
    total = sum((Fraction(l - m, r + a * i) for i in range(k)), Fraction(0))
    return total + Fraction(l, r + a * k)


def _constant(a: int, l: int, m: int) -> AsymptoticConstant:
    phi = euler_phi(a)
    breakdown: dict[int, tuple[int, Fraction]] = {}
    for r in residue_set(a):
        breakdown[r] = (cap_K(r, a, l, m), residue_constant(r, a, l, m))
    value = Fraction(a, phi) * sum((ar for _, ar in breakdown.values()), Fraction(0))
    return AsymptoticConstant(value=value, phi=phi, breakdown=breakdown)


def theorem_constant(spec: ProgressionSpec) -> AsymptoticConstant:
    """Constant A for the reduced progression; it does not depend on b."""
    return _constant(spec.a1, spec.l, spec.m)


def corollary1_constant(a: int, l: int, m: int) -> Fraction:
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    _check_window(l, m)
    if l < (a + 1) * m:
        raise ValueError(f"shortcut needs l >= (a+1)m, got a={a}, l={l}, m={m}")
    harmonic = sum((Fraction(1, r) for r in residue_set(a)), Fraction(0))
    return Fraction(a * l, euler_phi(a)) * harmonic


def corollary2_constant(l: int, m: int) -> Fraction:
    _check_window(l, m)
    if l >= 2 * m:
        return Fraction(l)
    gap = l - m
    head = Fraction(l, l // gap)
    return head + gap * sum((Fraction(1, i) for i in range(1, m // gap + 1)), Fraction(0))


def display(value: Fraction) -> str:
    """12 significant digits, display only."""
    return f"{float(value):.12g}"
