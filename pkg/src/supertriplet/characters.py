"""Graded dimensions of the N=1 super triplet algebra family.

For a fixed integer m >= 1 (lattice norm 2m+1), this module builds the
q-expansions of

* the 2m+1 parity-twisted irreducible characters (families ``RLambda`` and
  ``RPi``),
* the 2m+1 untwisted irreducible characters and their supercharacters
  (families ``SLambda`` and ``SPi``),
* irreducible highest-weight characters of the Ramond superconformal
  algebra on the weight grid h(2i+2, 2n+1),
* lattice Fock module characters, and
* the derived triplet algebra W(2m+1) characters obtained by rescaling the
  modular variable (the "bridge" table).

Everything here is exact: coefficients are rationals (in fact integers for
all characters) and exponents are rationals on an m-dependent lattice.

Twisted characters are graded over both parity eigenspaces; the two halves
are exactly equal, so the split characters are available through a halving
flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Literal, Optional, Tuple

from .qseries import QExpansion
from .specialfn import ThetaIndex, eta, frak_f, frak_f1, frak_f2, g_deriv, g_series, theta, theta_deriv

Family = Literal["RLambda", "RPi", "SLambda", "SPi"]
Flavor = Literal["character", "supercharacter"]

TWISTED_FAMILIES = ("RLambda", "RPi")
UNTWISTED_FAMILIES = ("SLambda", "SPi")

__all__ = [
    "ModuleLabel",
    "central_charge",
    "conformal_weight",
    "twisted_char",
    "untwisted_char",
    "ramond_irred_char",
    "fock_char",
    "triplet_char_bridge",
    "super_vs_t_deviation",
    "all_labels",
    "char_table_rows",
]


def _index_range(family: str, m: int) -> range:
    if family == "RLambda" or family == "SPi":
        return range(1, m + 1)
    if family == "RPi" or family == "SLambda":
        return range(1, m + 2)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class ModuleLabel:
    """Label of an irreducible module: family, 1-based index, and m."""

    family: Family
    index: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.family not in TWISTED_FAMILIES + UNTWISTED_FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        rng = _index_range(self.family, self.m)
        if self.index not in rng:
            raise ValueError(
                f"{self.family} index must lie in [{rng.start}, {rng.stop - 1}] "
                f"for m={self.m}, got {self.index}"
            )

    @property
    def twisted(self) -> bool:
        return self.family in TWISTED_FAMILIES


def central_charge(m: int) -> Fraction:
    """Central charge 3/2 - 12 m^2 / (2m+1)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return Fraction(3, 2) - Fraction(12 * m * m, 2 * m + 1)


def conformal_weight(i: int, n: int, m: int) -> Fraction:
    """Weight-grid entry h(2i+2, 2n+1); the second argument may be negative.

    h = ((2i+2 - (2n+1)(2m+1))^2 - 4 m^2) / (8 (2m+1)) + 1/16.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    p = 2 * m + 1
    a = 2 * i + 2 - (2 * n + 1) * p
    return Fraction(a * a - 4 * m * m, 8 * p) + Fraction(1, 16)


# ----------------------------------------------------------------------
# shared eta-quotient prefactors, built with margin then truncated
# ----------------------------------------------------------------------

_PAD = Fraction(2)


@lru_cache(maxsize=None)
def _quotient(tag: str, cutoff: Fraction) -> QExpansion:
    build = cutoff + _PAD
    if tag == "f2/eta":
        num = frak_f2(build)
    elif tag == "f/eta":
        num = frak_f(build)
    elif tag == "f1/eta":
        num = frak_f1(build)
    else:
        raise ValueError(tag)
    return (num / eta(build)).truncated(cutoff)


def _theta_k(m: int) -> Fraction:
    return Fraction(2 * m + 1, 2)


def twisted_char(label: ModuleLabel, cutoff, halve: bool = False) -> QExpansion:
    """Character of a parity-twisted irreducible module, graded over both parities.

    With ``halve=True`` returns the character of either single-parity half
    (the two halves coincide).
    """
    if not label.twisted:
        raise ValueError("twisted_char expects an RLambda or RPi label")
    cutoff = Fraction(cutoff)
    m, p = label.m, 2 * label.m + 1
    k = _theta_k(m)
    build = cutoff + 1
    pref = _quotient("f2/eta", build)
    if label.family == "RLambda":
        i = label.index - 1
        idx = ThetaIndex(Fraction(2 * (m - i) - 1, 2), k)
        body = theta(idx, build) * Fraction(2 * i + 2, p) + theta_deriv(idx, build) * Fraction(2, p)
    elif label.index == m + 1:
        idx = ThetaIndex(Fraction(2 * m + 1, 2), k)
        body = theta(idx, build)
    else:
        i = m - label.index
        idx = ThetaIndex(Fraction(2 * (m - i) - 1, 2), k)
        body = theta(idx, build) * Fraction(2 * m - 2 * i - 1, p) - theta_deriv(idx, build) * Fraction(2, p)
    out = (pref * body).scale(1 if halve else 2).truncated(cutoff)
    return out


def untwisted_char(
    label: ModuleLabel, flavor: Flavor, cutoff
) -> QExpansion:
    """Character or supercharacter of an untwisted irreducible module."""
    if label.twisted:
        raise ValueError("untwisted_char expects an SLambda or SPi label")
    if flavor not in ("character", "supercharacter"):
        raise ValueError("flavor must be 'character' or 'supercharacter'")
    cutoff = Fraction(cutoff)
    m, p = label.m, 2 * label.m + 1
    k = _theta_k(m)
    build = cutoff + 1
    if flavor == "character":
        pref = _quotient("f/eta", build)
        series, series_deriv = theta, theta_deriv
    else:
        pref = _quotient("f1/eta", build)
        series, series_deriv = g_series, g_deriv
    if label.family == "SLambda" and label.index == m + 1:
        body = series(ThetaIndex(Fraction(0), k), build)
    elif label.family == "SLambda":
        i = label.index - 1
        idx = ThetaIndex(Fraction(m - i), k)
        body = series(idx, build) * Fraction(2 * i + 1, p) + series_deriv(idx, build) * Fraction(2, p)
    else:
        i = m - label.index
        idx = ThetaIndex(Fraction(m - i), k)
        body = series(idx, build) * Fraction(2 * m - 2 * i, p) - series_deriv(idx, build) * Fraction(2, p)
    return (pref * body).truncated(cutoff)


def ramond_irred_char(i: int, n: int, m: int, cutoff, halve: bool = False) -> QExpansion:
    """Graded character of the irreducible Ramond highest-weight module
    on the grid row (i, second index 2n+1).

    The expansion is 2 q^{-c/24} (f2/eta) (q^{h1} - q^{h2}) where h1, h2 are
    the grid weights at second index 2n+1 and -(2n+1), ordered so that the
    subtracted power is the larger one.  For negative second index this
    ordering makes the label (i, n) equivalent to (i, -n-1); see the module
    docs for why that convention is a choice rather than a consequence.
    """
    if not 0 <= i <= 2 * m:
        raise ValueError(f"grid row i must lie in [0, {2 * m}] for m={m}")
    cutoff = Fraction(cutoff)
    h1 = conformal_weight(i, n, m)
    h2 = conformal_weight(i, -n - 1, m)
    if h1 > h2:
        h1, h2 = h2, h1
    c = central_charge(m)
    build = cutoff + 1
    pref = _quotient("f2/eta", build)
    body = QExpansion([(h1 - c / 24, 1), (h2 - c / 24, -1)])
    return (pref * body).scale(1 if halve else 2).truncated(cutoff)


def fock_char(i: int, m: int, cutoff) -> QExpansion:
    """Character of the i-th twisted lattice Fock module, 0 <= i <= 2m.

    Built from first principles: lowest weights minus c/24 run over
    (t - m)^2 / (2 (2m+1)) with t = 1/2 + i + n (2m+1), n over the integers,
    each Fock summand contributing 2 q^{h - c/24} f2/eta.
    """
    if not 0 <= i <= 2 * m:
        raise ValueError(f"Fock index must lie in [0, {2 * m}] for m={m}")
    cutoff = Fraction(cutoff)
    p = 2 * m + 1
    build = cutoff + 1
    acc: Dict[Fraction, Fraction] = {}
    n = 0
    # walk outward from n = 0 in both directions; exponents grow quadratically
    while True:
        t = Fraction(1, 2) + i + n * p
        e = (t - m) ** 2 / (2 * p)
        if e >= build:
            break
        acc[e] = acc.get(e, Fraction(0)) + 2
        n += 1
    n = -1
    while True:
        t = Fraction(1, 2) + i + n * p
        e = (t - m) ** 2 / (2 * p)
        if e >= build:
            break
        acc[e] = acc.get(e, Fraction(0)) + 2
        n -= 1
    lattice_part = QExpansion(acc, cutoff=build)
    return (_quotient("f2/eta", build) * lattice_part).truncated(cutoff)


# ----------------------------------------------------------------------
# bridge to the triplet algebra W(2m+1)
# ----------------------------------------------------------------------


def triplet_char_bridge(m: int, cutoff) -> Dict[str, Dict[int, QExpansion]]:
    """Derived triplet algebra W(2m+1) characters, indexed 1..2m+1.

    The four defining relations, read at the doubled modular variable:

    * Lambda(2i+2) from the twisted RLambda(i+1) character times f/2,
    * Lambda(2i+1) from the untwisted SLambda(i+1) character times f2,
    * Pi(2m-2i+1)  from the twisted RPi(m+1-i) character times f/2,
    * Pi(2m-2i)    from the untwisted SPi(m-i) character times f2.

    Every entry is exact below ``cutoff`` with integer coefficients.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    cutoff = Fraction(cutoff)
    half_cut = cutoff / 2 + 1
    f = frak_f(half_cut)
    f2 = frak_f2(half_cut)
    lam: Dict[int, QExpansion] = {}
    pi: Dict[int, QExpansion] = {}
    for i in range(m):
        chi = twisted_char(ModuleLabel("RLambda", i + 1, m), half_cut)
        lam[2 * i + 2] = (f * chi / 2).double_exponents().truncated(cutoff)
    for i in range(m + 1):
        chi = twisted_char(ModuleLabel("RPi", m + 1 - i, m), half_cut)
        pi[2 * m - 2 * i + 1] = (f * chi / 2).double_exponents().truncated(cutoff)
    for i in range(m + 1):
        chi = untwisted_char(ModuleLabel("SLambda", i + 1, m), "character", half_cut)
        lam[2 * i + 1] = (f2 * chi).double_exponents().truncated(cutoff)
    for i in range(m):
        chi = untwisted_char(ModuleLabel("SPi", m - i, m), "character", half_cut)
        pi[2 * m - 2 * i] = (f2 * chi).double_exponents().truncated(cutoff)
    return {"Lambda": lam, "Pi": pi}


def super_vs_t_deviation(label: ModuleLabel, cutoff) -> float:
    """Max coefficient deviation between the tau -> tau+1 image of a character
    and the phase-rotated supercharacter of the same module.

    The expected identity: with lowest exponent L = h - c/24, the shifted
    character equals eps e^{2 pi i L} times the supercharacter, where the
    even and odd subspaces sit at integer and half-integer offsets from L
    and eps is the parity of the lowest level (the sign of the
    supercharacter's leading coefficient; the SPi modules have odd tops).
    """
    import cmath
    import math as _math

    chi = untwisted_char(label, "character", cutoff)
    schi = untwisted_char(label, "supercharacter", cutoff)
    lead = chi.min_exponent
    if lead is None:
        return 0.0
    eps = 1 if schi.leading()[1] > 0 else -1
    phase = eps * cmath.exp(2j * _math.pi * float(lead - _math.floor(lead)))
    diff = chi.shift_tau() - schi.scale(phase)
    return diff.max_abs_coeff()


# ----------------------------------------------------------------------
# tables and export
# ----------------------------------------------------------------------


def all_labels(m: int) -> List[Tuple[ModuleLabel, Flavor]]:
    """All character rows for a given m: twisted, untwisted, supercharacters."""
    rows: List[Tuple[ModuleLabel, Flavor]] = []
    for family in TWISTED_FAMILIES:
        for index in _index_range(family, m):
            rows.append((ModuleLabel(family, index, m), "character"))
    for flavor in ("character", "supercharacter"):
        for family in UNTWISTED_FAMILIES:
            for index in _index_range(family, m):
                rows.append((ModuleLabel(family, index, m), flavor))
    return rows


def character_series(label: ModuleLabel, flavor: Flavor, cutoff) -> QExpansion:
    if label.twisted:
        if flavor != "character":
            raise ValueError("twisted modules have no separate supercharacter row")
        return twisted_char(label, cutoff)
    return untwisted_char(label, flavor, cutoff)


def char_table_rows(m: int, cutoff, labels: Optional[Iterable[Tuple[ModuleLabel, Flavor]]] = None) -> List[dict]:
    """JSON-friendly character table: one row per (label, flavor)."""
    rows = []
    for label, flavor in labels if labels is not None else all_labels(m):
        series = character_series(label, flavor, cutoff)
        lead = series.min_exponent
        rows.append(
            {
                "family": label.family,
                "index": label.index,
                "flavor": flavor,
                "m": m,
                "leading_exponent": [str(lead.numerator), str(lead.denominator)]
                if lead is not None
                else None,
                "series": series.to_json_dict(),
            }
        )
    return rows
