"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately written with tiny local helpers rather than
the package's series machinery: partition counts come from Euler's
recurrence, theta sums from plain loops over a generous window, and series
products from dict convolution.  Exponents are offsets on an explicit
lattice so the oracles cannot silently share a bug with the code under test.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List


def partitions_into_distinct_parts(limit: int) -> List[int]:
    """Counts of partitions of 0..limit into distinct positive parts."""
    counts = [0] * (limit + 1)
    counts[0] = 1
    for part in range(1, limit + 1):
        for g in range(limit, part - 1, -1):
            counts[g] += counts[g - part]
    return counts


def partition_counts(limit: int) -> List[int]:
    """Unrestricted partition counts p(0..limit) via the pentagonal recurrence."""
    p = [1] + [0] * limit
    for n in range(1, limit + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = 1 if k % 2 else -1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def pentagonal_eta_terms(cutoff: Fraction) -> Dict[Fraction, int]:
    """Exponent -> coefficient map of the eta product below cutoff."""
    out: Dict[Fraction, int] = {}
    k = 0
    while True:
        added = False
        for s in ([k] if k == 0 else [k, -k]):
            e = Fraction(1, 24) + Fraction(s * (3 * s - 1), 2)
            if e < cutoff:
                out[e] = (-1) ** (abs(s) % 2)
                added = True
        if not added and k > 0:
            break
        k += 1
    return out


def divisor_power_sum(n: int, power: int) -> int:
    return sum(d ** power for d in range(1, n + 1) if n % d == 0)


def convolve(a: Dict[Fraction, Fraction], b: Dict[Fraction, Fraction], cutoff: Fraction) -> Dict[Fraction, Fraction]:
    out: Dict[Fraction, Fraction] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            if e < cutoff:
                out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def w_algebra_char_oracle(kind: str, s: int, p: int, cutoff: Fraction) -> Dict[Fraction, Fraction]:
    """Closed-form triplet algebra W(p) character as an exponent map.

    In the normalization where the z-derivative theta sum is
    D_{j,p} = sum_n (p n + j/2) q^{(2pn+j)^2/4p}  (the (1/2 pi i) d/dz scaling):

      Lambda(s):  [ (s/p) Theta_{p-s,p} + (2/p) D_{p-s,p} ] / eta
      Pi(s):      [ (s/p) Theta_{s,p}   - (2/p) D_{s,p}   ] / eta

    1/eta is expanded with Euler's partition recurrence, independently of
    the package's product and reciprocal code.
    """
    if kind not in ("Lambda", "Pi"):
        raise ValueError(kind)
    j = p - s if kind == "Lambda" else s
    sign = 1 if kind == "Lambda" else -1
    theta_map: Dict[Fraction, Fraction] = {}
    n = 0
    while True:
        hit = False
        for nn in ([0] if n == 0 else [n, -n]):
            t = 2 * p * nn + j
            e = Fraction(t * t, 4 * p)
            if e < cutoff + 2:
                w = Fraction(s, p) + sign * Fraction(2, p) * Fraction(t, 2)
                theta_map[e] = theta_map.get(e, Fraction(0)) + w
                hit = True
        if not hit and n > 0:
            break
        n += 1
    limit = int(cutoff + 2)
    pc = partition_counts(limit + 1)
    eta_inv = {
        Fraction(-1, 24) + g: Fraction(pc[g]) for g in range(limit + 1)
    }
    full = convolve(theta_map, eta_inv, cutoff)
    return full
