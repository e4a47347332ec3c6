"""Truncated q-expansions with exact rational exponents.

A :class:`QExpansion` stores finitely many terms ``c_r q^r`` with strictly
increasing rational exponents together with a *cutoff*: every exponent below
the cutoff is represented exactly, everything at or above it has been
discarded.  A cutoff of ``None`` marks an exact expansion (a "polynomial")
with no truncation at all; infinite products and reciprocals always carry a
finite cutoff.

Coefficients live in one of two domains, exact rationals or complex floats.
Mixed arithmetic promotes exact to complex, never the reverse.  The phase
substitution ``tau -> tau + 1`` always lands in the complex domain: exact
cyclotomic coefficients would be disproportionate machinery for checks that
are numeric anyway.

Cutoff propagation: addition takes the minimum of the operand cutoffs, and a
product of ``A`` and ``B`` is exact below
``min(cutoff_A + minexp_B, cutoff_B + minexp_A)``.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

ExpLike = Union[Fraction, int, str]
CoeffLike = Union[Fraction, int, float, complex]

EXACT = "exact-rational"
COMPLEX = "complex-float"

__all__ = [
    "QExpansion",
    "QSeriesError",
    "CutoffUnderflowError",
    "EvalResult",
    "product_expansion",
    "EXACT",
    "COMPLEX",
]


class QSeriesError(ValueError):
    """Raised for structurally invalid q-expansion requests."""


class CutoffUnderflowError(QSeriesError):
    """Raised when an operation would leave no representable terms."""


class EvalResult(NamedTuple):
    value: complex
    error_bound: float


def _as_exp(e: ExpLike) -> Fraction:
    return Fraction(e)


def _min_cutoff(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class QExpansion:
    """Sorted, zero-free map exponent -> coefficient plus a truncation cutoff."""

    __slots__ = ("_terms", "_cutoff", "_domain")

    def __init__(
        self,
        terms: Union[Dict[ExpLike, CoeffLike], Iterable[Tuple[ExpLike, CoeffLike]]] = (),
        cutoff: Optional[ExpLike] = None,
        domain: Optional[str] = None,
    ) -> None:
        items = terms.items() if isinstance(terms, dict) else terms
        raw: List[Tuple[Fraction, CoeffLike]] = [(_as_exp(e), c) for e, c in items]
        if domain is None:
            domain = EXACT
            for _, c in raw:
                if isinstance(c, (float, complex)):
                    domain = COMPLEX
                    break
        if domain not in (EXACT, COMPLEX):
            raise QSeriesError(f"unknown coefficient domain {domain!r}")
        cut = _as_exp(cutoff) if cutoff is not None else None
        acc: Dict[Fraction, CoeffLike] = {}
        for e, c in raw:
            if cut is not None and e >= cut:
                continue
            acc[e] = acc.get(e, 0) + c
        cleaned: List[Tuple[Fraction, CoeffLike]] = []
        for e in sorted(acc):
            c = complex(acc[e]) if domain == COMPLEX else Fraction(acc[e])
            if c == 0:
                continue
            cleaned.append((e, c))
        object.__setattr__(self, "_terms", tuple(cleaned))
        object.__setattr__(self, "_cutoff", cut)
        object.__setattr__(self, "_domain", domain)

    def __setattr__(self, name, value):
        raise AttributeError("QExpansion is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, cutoff: Optional[ExpLike] = None, domain: str = EXACT) -> "QExpansion":
        return cls((), cutoff=cutoff, domain=domain)

    @classmethod
    def one(cls, cutoff: Optional[ExpLike] = None) -> "QExpansion":
        return cls.monomial(0, 1, cutoff)

    @classmethod
    def monomial(
        cls, exp: ExpLike, coeff: CoeffLike = 1, cutoff: Optional[ExpLike] = None
    ) -> "QExpansion":
        return cls(((exp, coeff),), cutoff=cutoff)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    @property
    def cutoff(self) -> Optional[Fraction]:
        return self._cutoff

    @property
    def domain(self) -> str:
        return self._domain

    @property
    def terms(self) -> Tuple[Tuple[Fraction, CoeffLike], ...]:
        return self._terms

    @property
    def min_exponent(self) -> Optional[Fraction]:
        return self._terms[0][0] if self._terms else None

    def leading(self) -> Optional[Tuple[Fraction, CoeffLike]]:
        return self._terms[0] if self._terms else None

    def coeff(self, exp: ExpLike) -> CoeffLike:
        e = _as_exp(exp)
        lo, hi = 0, len(self._terms)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._terms[mid][0] < e:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(self._terms) and self._terms[lo][0] == e:
            return self._terms[lo][1]
        return Fraction(0) if self._domain == EXACT else 0j

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Fraction, CoeffLike]]:
        return iter(self._terms)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for _, c in self._terms), default=0.0)

    # exponent floor used in cutoff propagation: for an empty series the
    # first unknown term can start at the cutoff itself
    def _exp_floor(self) -> Optional[Fraction]:
        if self._terms:
            return self._terms[0][0]
        return self._cutoff

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def _result_domain(self, other: "QExpansion") -> str:
        return COMPLEX if COMPLEX in (self._domain, other._domain) else EXACT

    def __add__(self, other) -> "QExpansion":
        if isinstance(other, (int, Fraction, float, complex)):
            other = QExpansion.monomial(0, other)
        if not isinstance(other, QExpansion):
            return NotImplemented
        cut = _min_cutoff(self._cutoff, other._cutoff)
        if cut is not None and self._terms and other._terms:
            lead = min(self._terms[0][0], other._terms[0][0])
            if cut <= lead:
                raise CutoffUnderflowError(
                    f"additive cutoff {cut} at or below leading exponent {lead}"
                )
        return QExpansion(
            list(self._terms) + list(other._terms),
            cutoff=cut,
            domain=self._result_domain(other),
        )

    __radd__ = __add__

    def __sub__(self, other) -> "QExpansion":
        if isinstance(other, (int, Fraction, float, complex)):
            other = QExpansion.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self) -> "QExpansion":
        return QExpansion(
            [(e, -c) for e, c in self._terms], cutoff=self._cutoff, domain=self._domain
        )

    def scale(self, scalar: CoeffLike) -> "QExpansion":
        domain = COMPLEX if isinstance(scalar, (float, complex)) else self._domain
        return QExpansion(
            [(e, c * scalar) for e, c in self._terms],
            cutoff=self._cutoff,
            domain=domain,
        )

    def __mul__(self, other) -> "QExpansion":
        if isinstance(other, (int, Fraction, float, complex)):
            return self.scale(other)
        if not isinstance(other, QExpansion):
            return NotImplemented
        if not self._terms and self._cutoff is None:
            return QExpansion.zero(None, self._result_domain(other))
        if not other._terms and other._cutoff is None:
            return QExpansion.zero(None, self._result_domain(other))
        candidates = []
        fa, fb = self._exp_floor(), other._exp_floor()
        if self._cutoff is not None and fb is not None:
            candidates.append(self._cutoff + fb)
        if other._cutoff is not None and fa is not None:
            candidates.append(other._cutoff + fa)
        cut = min(candidates) if candidates else None
        if self._terms and other._terms and cut is not None:
            lead = self._terms[0][0] + other._terms[0][0]
            if cut <= lead:
                raise CutoffUnderflowError(
                    f"product cutoff {cut} at or below leading exponent {lead}"
                )
        acc: Dict[Fraction, CoeffLike] = {}
        for ea, ca in self._terms:
            for eb, cb in other._terms:
                e = ea + eb
                if cut is not None and e >= cut:
                    break
                acc[e] = acc.get(e, 0) + ca * cb
        return QExpansion(acc, cutoff=cut, domain=self._result_domain(other))

    __rmul__ = __mul__

    def reciprocal(self) -> "QExpansion":
        """Multiplicative inverse ``1/self`` (Laurent leading term allowed).

        Exact below ``cutoff - 2*min_exponent``; the inversion runs a linear
        convolution on a common integer exponent lattice, so cost is linear
        in the lattice length times the number of stored terms.
        """
        if not self._terms:
            raise QSeriesError("cannot invert a series with no known terms")
        e0, c0 = self._terms[0]
        if len(self._terms) == 1:
            new_cut = self._cutoff - 2 * e0 if self._cutoff is not None else None
            inv = 1 / c0 if self._domain == EXACT else 1.0 / c0
            return QExpansion.monomial(-e0, inv, new_cut)
        if self._cutoff is None:
            raise QSeriesError("reciprocal of an exact multi-term series is not finite")
        rel_cut = self._cutoff - e0
        denoms = [(e - e0).denominator for e, _ in self._terms]
        denoms.append(rel_cut.denominator)
        scale = 1
        for d in denoms:
            scale = scale * d // math.gcd(scale, d)
        length = math.ceil(rel_cut * scale)
        support = []
        for e, c in self._terms[1:]:
            idx = int((e - e0) * scale)
            support.append((idx, c))
        zero = Fraction(0) if self._domain == EXACT else 0j
        inv0 = 1 / c0 if self._domain == EXACT else 1.0 / c0
        t: List[CoeffLike] = [zero] * max(length, 1)
        t[0] = inv0
        for n in range(1, length):
            acc = zero
            for j, s in support:
                if j > n:
                    break
                if t[n - j] != 0:
                    acc += s * t[n - j]
            if acc != 0:
                t[n] = -acc * inv0
        out = [
            (-e0 + Fraction(n, scale), c) for n, c in enumerate(t) if c != 0
        ]
        return QExpansion(out, cutoff=self._cutoff - 2 * e0, domain=self._domain)

    def __truediv__(self, other) -> "QExpansion":
        if isinstance(other, (int, Fraction, float, complex)):
            if other == 0:
                raise ZeroDivisionError("division of series by zero scalar")
            inv = Fraction(1, 1) / other if isinstance(other, (int, Fraction)) else 1.0 / other
            return self.scale(inv)
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self * other.reciprocal()

    # ------------------------------------------------------------------
    # substitutions and reshaping
    # ------------------------------------------------------------------

    def truncated(self, cutoff: ExpLike) -> "QExpansion":
        cut = _as_exp(cutoff)
        if self._cutoff is not None and cut > self._cutoff:
            raise QSeriesError(
                f"cannot extend cutoff {self._cutoff} to {cut}"
            )
        return QExpansion(self._terms, cutoff=cut, domain=self._domain)

    def shifted(self, delta: ExpLike) -> "QExpansion":
        """Multiply by q^delta: every exponent moves by ``delta``."""
        d = _as_exp(delta)
        cut = self._cutoff + d if self._cutoff is not None else None
        return QExpansion(
            [(e + d, c) for e, c in self._terms], cutoff=cut, domain=self._domain
        )

    def half_exponents(self) -> "QExpansion":
        """The substitution tau -> tau/2, i.e. q^r -> q^{r/2}."""
        cut = self._cutoff / 2 if self._cutoff is not None else None
        return QExpansion(
            [(e / 2, c) for e, c in self._terms], cutoff=cut, domain=self._domain
        )

    def double_exponents(self) -> "QExpansion":
        """The substitution tau -> 2 tau, inverse of :meth:`half_exponents`."""
        cut = self._cutoff * 2 if self._cutoff is not None else None
        return QExpansion(
            [(e * 2, c) for e, c in self._terms], cutoff=cut, domain=self._domain
        )

    def shift_tau(self) -> "QExpansion":
        """The substitution tau -> tau + 1: coefficient at q^r picks up e^{2 pi i r}.

        Always lands in the complex-float domain.
        """
        out = []
        for e, c in self._terms:
            phase = cmath.exp(2j * math.pi * float(e - math.floor(e)))
            out.append((e, complex(c) * phase))
        return QExpansion(out, cutoff=self._cutoff, domain=COMPLEX)

    # ------------------------------------------------------------------
    # numerics
    # ------------------------------------------------------------------

    def evaluate(self, tau: complex, growth_bound: float = 2.0 ** 64) -> EvalResult:
        """Sum the stored terms at ``q = e^{2 pi i tau}`` on the upper half plane.

        The error bound covers the discarded tail: ``growth_bound`` is a
        caller-supplied cap on coefficient magnitude, multiplied by the
        geometric tail |q|^cutoff / (1 - |q|).
        """
        tau = complex(tau)
        if tau.imag <= 0:
            raise QSeriesError("evaluation requires Im(tau) > 0")
        total = 0j
        for e, c in self._terms:
            total += complex(c) * cmath.exp(2j * math.pi * float(e) * tau)
        if self._cutoff is None:
            return EvalResult(total, 0.0)
        absq = math.exp(-2 * math.pi * tau.imag)
        try:
            tail = growth_bound * absq ** float(self._cutoff) / (1 - absq)
        except OverflowError:
            tail = math.inf
        return EvalResult(total, tail)

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_json_dict(self) -> dict:
        def frac_pair(x: Fraction) -> List[str]:
            return [str(x.numerator), str(x.denominator)]

        out: dict = {
            "domain": self._domain,
            "cutoff": frac_pair(self._cutoff) if self._cutoff is not None else None,
        }
        terms = []
        for e, c in self._terms:
            entry: dict = {"exp": frac_pair(e)}
            if self._domain == EXACT:
                entry["coef"] = frac_pair(c)
            else:
                entry["coef"] = {"re": c.real, "im": c.imag}
            terms.append(entry)
        out["terms"] = terms
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "QExpansion":
        domain = data.get("domain", EXACT)
        cut = data.get("cutoff")
        cutoff = Fraction(int(cut[0]), int(cut[1])) if cut is not None else None
        terms = []
        for entry in data["terms"]:
            e = Fraction(int(entry["exp"][0]), int(entry["exp"][1]))
            c = entry["coef"]
            if domain == EXACT:
                coeff: CoeffLike = Fraction(int(c[0]), int(c[1]))
            else:
                coeff = complex(c["re"], c["im"])
            terms.append((e, coeff))
        return cls(terms, cutoff=cutoff, domain=domain)

    # ------------------------------------------------------------------
    # comparison / display
    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return (
            self._terms == other._terms
            and self._cutoff == other._cutoff
            and self._domain == other._domain
        )

    def __hash__(self) -> int:
        return hash((self._terms, self._cutoff, self._domain))

    def __repr__(self) -> str:
        shown = ", ".join(f"{c}*q^{e}" for e, c in self._terms[:6])
        if len(self._terms) > 6:
            shown += ", ..."
        return f"QExpansion([{shown}], cutoff={self._cutoff})"


def product_expansion(
    sign: int,
    offset: ExpLike,
    prefactor_exp: ExpLike,
    cutoff: ExpLike,
) -> QExpansion:
    """Expand ``q^prefactor * prod_n (1 + sign q^{n + offset})`` below ``cutoff``.

    The product index starts at n = 1 for offset 0 and at n = 0 for offset
    1/2, so the first factor exponent is 1 or 1/2 respectively.
    """
    if sign not in (1, -1):
        raise QSeriesError("sign must be +1 or -1")
    offset = _as_exp(offset)
    if offset not in (Fraction(0), Fraction(1, 2)):
        raise QSeriesError("offset must be 0 or 1/2")
    prefactor_exp = _as_exp(prefactor_exp)
    cutoff = _as_exp(cutoff)
    if cutoff <= prefactor_exp:
        raise CutoffUnderflowError("cutoff must exceed the prefactor exponent")
    result = QExpansion.monomial(prefactor_exp, 1, cutoff)
    a = offset if offset else Fraction(1)
    while prefactor_exp + a < cutoff:
        result = result * QExpansion(((Fraction(0), 1), (a, sign)))
        a += 1
    return result
