"""Half-period theta constants and companion modular q-series.

Conventions, all at elliptic variable z = 0:

* ``theta((j, k))``     is ``sum_n q^{(2kn+j)^2 / 4k}``,
* ``theta_deriv``       inserts the factor ``(2kn+j)`` (the normalized
  z-derivative ``(1/pi i) d/dz`` at z = 0),
* ``g_series``/``g_deriv`` are the alternating-sign analogues with ``(-1)^n``,
  defined for integer j,
* ``eta`` is ``q^{1/24} prod (1 - q^n)``, and ``frak_f``, ``frak_f1``,
  ``frak_f2`` are the companion products
  ``q^{-1/48} prod (1 + q^{n+1/2})``, ``q^{-1/48} prod (1 - q^{n-1/2})``,
  ``q^{1/24} prod (1 + q^n)``.

Summation windows are computed by exact integer square-root bracketing on
scaled values; no floating point enters any exact expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple, Union

from .arith import bernoulli_number, bernoulli_poly_at
from .qseries import QExpansion, QSeriesError, product_expansion

IndexLike = Union["ThetaIndex", Tuple]

EISENSTEIN_VARIANTS = ("full", "level2-one", "level2-zero")

__all__ = [
    "ThetaIndex",
    "theta",
    "theta_deriv",
    "g_series",
    "g_deriv",
    "eta",
    "frak_f",
    "frak_f1",
    "frak_f2",
    "eisenstein",
    "EISENSTEIN_VARIANTS",
]


@dataclass(frozen=True)
class ThetaIndex:
    """Index pair (j, k) with j, k half-integers and k > 0.

    ``canonical_j`` reduces j modulo 2k (theta constants are 2k-periodic in
    j); the raw j is retained since derivative coefficients depend on it.
    """

    j: Fraction
    k: Fraction

    def __post_init__(self):
        object.__setattr__(self, "j", Fraction(self.j))
        object.__setattr__(self, "k", Fraction(self.k))
        if self.k <= 0:
            raise ValueError("theta index requires k > 0")
        if (2 * self.j).denominator != 1 or (2 * self.k).denominator != 1:
            raise ValueError("theta index entries must be half-integers")

    @property
    def canonical_j(self) -> Fraction:
        return self.j % (2 * self.k)

    @property
    def j_is_integer(self) -> bool:
        return self.j.denominator == 1


def _as_index(idx: IndexLike) -> ThetaIndex:
    if isinstance(idx, ThetaIndex):
        return idx
    j, k = idx
    return ThetaIndex(Fraction(j), Fraction(k))


def _index_window(j: Fraction, k: Fraction, cutoff: Fraction) -> range:
    """All integers n with (2kn + j)^2 / 4k < cutoff, via exact isqrt bounds."""
    bound = 4 * k * cutoff
    if bound <= 0:
        return range(0)
    two_k = 2 * k
    lattice = math.lcm(two_k.denominator, j.denominator)
    step = int(two_k * lattice)
    base = int(j * lattice)
    # (step*n + base)^2 < bound * lattice^2, over integers
    top = bound * lattice * lattice
    limit = (top.numerator - 1) // top.denominator
    if limit < 0:
        return range(0)
    root = math.isqrt(limit)
    lo = -((root + base) // step)
    hi = (root - base) // step
    return range(lo, hi + 1)


def theta(idx: IndexLike, cutoff) -> QExpansion:
    """Theta constant: multiplicity-counting sum of q^{(2kn+j)^2/4k} below cutoff."""
    idx = _as_index(idx)
    cutoff = Fraction(cutoff)
    if cutoff <= 0:
        raise QSeriesError("theta cutoff must be positive")
    acc: Dict[Fraction, Fraction] = {}
    for n in _index_window(idx.j, idx.k, cutoff):
        t = 2 * idx.k * n + idx.j
        e = t * t / (4 * idx.k)
        acc[e] = acc.get(e, Fraction(0)) + 1
    return QExpansion(acc, cutoff=cutoff)


def theta_deriv(idx: IndexLike, cutoff) -> QExpansion:
    """Derivative theta constant: coefficient (2kn+j) at exponent (2kn+j)^2/4k."""
    idx = _as_index(idx)
    cutoff = Fraction(cutoff)
    if cutoff <= 0:
        raise QSeriesError("theta cutoff must be positive")
    acc: Dict[Fraction, Fraction] = {}
    for n in _index_window(idx.j, idx.k, cutoff):
        t = 2 * idx.k * n + idx.j
        e = t * t / (4 * idx.k)
        acc[e] = acc.get(e, Fraction(0)) + t
    return QExpansion(acc, cutoff=cutoff)


def _require_integer_j(idx: ThetaIndex) -> None:
    if not idx.j_is_integer:
        raise ValueError("alternating theta series require an integer first index")


def g_series(idx: IndexLike, cutoff) -> QExpansion:
    """Alternating theta constant: sign (-1)^n on each lattice summand."""
    idx = _as_index(idx)
    _require_integer_j(idx)
    cutoff = Fraction(cutoff)
    if cutoff <= 0:
        raise QSeriesError("theta cutoff must be positive")
    acc: Dict[Fraction, Fraction] = {}
    for n in _index_window(idx.j, idx.k, cutoff):
        t = 2 * idx.k * n + idx.j
        e = t * t / (4 * idx.k)
        acc[e] = acc.get(e, Fraction(0)) + (-1) ** (n & 1)
    return QExpansion(acc, cutoff=cutoff)


def g_deriv(idx: IndexLike, cutoff) -> QExpansion:
    """Alternating derivative theta constant: coefficient (-1)^n (2kn+j)."""
    idx = _as_index(idx)
    _require_integer_j(idx)
    cutoff = Fraction(cutoff)
    if cutoff <= 0:
        raise QSeriesError("theta cutoff must be positive")
    acc: Dict[Fraction, Fraction] = {}
    for n in _index_window(idx.j, idx.k, cutoff):
        t = 2 * idx.k * n + idx.j
        e = t * t / (4 * idx.k)
        acc[e] = acc.get(e, Fraction(0)) + (-1) ** (n & 1) * t
    return QExpansion(acc, cutoff=cutoff)


@lru_cache(maxsize=None)
def eta(cutoff) -> QExpansion:
    """Dedekind eta product q^{1/24} prod_{n>=1} (1 - q^n)."""
    return product_expansion(-1, 0, Fraction(1, 24), Fraction(cutoff))


@lru_cache(maxsize=None)
def frak_f(cutoff) -> QExpansion:
    """q^{-1/48} prod_{n>=0} (1 + q^{n+1/2})."""
    return product_expansion(1, Fraction(1, 2), Fraction(-1, 48), Fraction(cutoff))


@lru_cache(maxsize=None)
def frak_f1(cutoff) -> QExpansion:
    """q^{-1/48} prod_{n>=1} (1 - q^{n-1/2})."""
    return product_expansion(-1, Fraction(1, 2), Fraction(-1, 48), Fraction(cutoff))


@lru_cache(maxsize=None)
def frak_f2(cutoff) -> QExpansion:
    """q^{1/24} prod_{n>=1} (1 + q^n)."""
    return product_expansion(1, 0, Fraction(1, 24), Fraction(cutoff))


def eisenstein(k: int, variant: str, cutoff) -> QExpansion:
    """Weight-2k Eisenstein series in one of three normalizations.

    ``full``        -B_2k/(2k)! + (2/(2k-1)!) sum n^{2k-1} q^n / (1 - q^n)
    ``level2-one``  +B_2k/(2k)! + (2/(2k-1)!) sum n^{2k-1} q^n / (1 + q^n)
    ``level2-zero`` B_2k(1/2)/(2k)!
                    + (2/(2k-1)!) sum (n-1/2)^{2k-1} q^{n-1/2} / (1 + q^{n-1/2})

    Each Lambert factor is expanded exactly as a geometric series below the
    cutoff, with early exit once the base exponent passes the cutoff.
    """
    if k < 1:
        raise ValueError("eisenstein weight index must be >= 1")
    if variant not in EISENSTEIN_VARIANTS:
        raise ValueError(f"variant must be one of {EISENSTEIN_VARIANTS}")
    cutoff = Fraction(cutoff)
    fact = math.factorial(2 * k)
    norm = Fraction(2, math.factorial(2 * k - 1))
    acc: Dict[Fraction, Fraction] = {}
    if variant == "full":
        acc[Fraction(0)] = -bernoulli_number(2 * k) / fact
        n = 1
        while Fraction(n) < cutoff:
            weight = norm * Fraction(n) ** (2 * k - 1)
            e = Fraction(n)
            while e < cutoff:
                acc[e] = acc.get(e, Fraction(0)) + weight
                e += n
            n += 1
    elif variant == "level2-one":
        acc[Fraction(0)] = bernoulli_number(2 * k) / fact
        n = 1
        while Fraction(n) < cutoff:
            weight = norm * Fraction(n) ** (2 * k - 1)
            e = Fraction(n)
            sign = 1
            while e < cutoff:
                acc[e] = acc.get(e, Fraction(0)) + sign * weight
                e += n
                sign = -sign
            n += 1
    else:
        acc[Fraction(0)] = bernoulli_poly_at(2 * k, Fraction(1, 2)) / fact
        n = 1
        while Fraction(2 * n - 1, 2) < cutoff:
            base = Fraction(2 * n - 1, 2)
            weight = norm * base ** (2 * k - 1)
            e = base
            sign = 1
            while e < cutoff:
                acc[e] = acc.get(e, Fraction(0)) + sign * weight
                e += base
                sign = -sign
            n += 1
    return QExpansion(acc, cutoff=cutoff)
