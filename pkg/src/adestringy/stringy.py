"""Stringy E-function contributions, Euler numbers and Hodge numbers.

For a resolution with exceptional divisors ``D_j`` of discrepancy ``a_j``
the contribution of the singular point is

    sum over nonempty J of  H(D_J°) * prod_{j in J} (w - 1) / (w^(a_j + 1) - 1)

(the ``J = ∅`` term is ``H`` of the smooth locus and is left to the
caller when assembling a global E-function).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .exactalg import (
    ONE,
    Polynomial,
    RationalFunction,
    ZERO,
    cyclotomic,
    divisors,
    rf_as_polynomial,
    rf_dual,
    rf_limit_at_one,
)
from .catalog import StratifiedResolution

__all__ = [
    "Verdict",
    "HodgeNumbers",
    "StringyReport",
    "contribution_from_strata",
    "stringy_euler_direct",
    "assemble_global",
    "hodge_numbers",
    "duality_check",
    "make_report",
]

class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NA = "n/a"

    @classmethod
    def of(cls, ok: bool | None) -> "Verdict":
        if ok is None:
            return cls.NA
        return cls.PASS if ok else cls.FAIL


def contribution_from_strata(res: StratifiedResolution) -> RationalFunction:
    """Contribution of the singular point, summed over the strata of ``res``.

    Each factor ``(w - 1)/(w^(a+1) - 1)`` equals ``1/(1 + w + ... + w^a)``,
    a product of inverse cyclotomic polynomials, so the sum is taken over
    their least common multiple and reduced by trial division.
    """
    disc = {dv.id: dv.discrepancy for dv in res.divisors}
    groups: dict[tuple[int, ...], Polynomial] = defaultdict(lambda: ZERO)
    for s in res.strata:
        key = tuple(sorted(disc[i] + 1 for i in s.divisor_ids if disc[i] > 0))
        groups[key] = groups[key] + s.hodge
    num, mu = ZERO, Counter()
    for key in sorted(groups):
        num, mu = _add_reduced(num, mu, groups[key], _cyclotomic_exponents(key))
    if num.is_zero():
        return RationalFunction(0)
    den = ONE
    for d in sorted(mu):
        den = den * cyclotomic(d) ** mu[d]
    # the Phi_d are monic and irreducible, so this is already canonical
    return RationalFunction._raw(num, den)


def _add_reduced(n1: Polynomial, mu1: Counter, n2: Polynomial, mu2: Counter) -> tuple[Polynomial, Counter]:
    """``n1/Phi^mu1 + n2/Phi^mu2`` with every common cyclotomic factor cancelled."""
    lcm = mu1 | mu2
    num = ZERO
    for n, mu in ((n1, mu1), (n2, mu2)):
        for d, e in (lcm - mu).items():
            n = n * cyclotomic(d) ** e
        num = num + n
    if num.is_zero():
        return ZERO, Counter()
    for d in sorted(lcm):
        phi = cyclotomic(d)
        while lcm[d] and _has_cyclotomic_factor(num, d):
            num = num.exact_div(phi)
            lcm[d] -= 1
    return num, +lcm


def _has_cyclotomic_factor(p: Polynomial, d: int) -> bool:
    # Phi_d divides w^d - 1, so reduce modulo w^d - 1 first (a cheap fold)
    folded = [0] * d
    for i, c in enumerate(p.coeffs):
        folded[i % d] += c
    return Polynomial(folded).divmod_exact(cyclotomic(d))[1].is_zero()


def _cyclotomic_exponents(exponents: Iterable[int]) -> Counter:
    mu: Counter = Counter()
    for e in exponents:
        mu.update(d for d in divisors(e) if d > 1)
    return mu


def stringy_euler_direct(res: StratifiedResolution) -> Fraction:
    """``sum chi(D_J°) * prod 1/(a_j + 1)`` over the strata, exactly."""
    disc = {dv.id: dv.discrepancy for dv in res.divisors}
    total = Fraction(0)
    for s in res.strata:
        term = Fraction(s.hodge(1))
        for i in s.divisor_ids:
            term /= disc[i] + 1
        total += term
    return total


def assemble_global(smooth_part: Polynomial, contributions: Iterable[RationalFunction]) -> RationalFunction:
    """``E_st(X) = H(X minus Sing) + sum of the local contributions``."""
    total = RationalFunction(smooth_part)
    for contrib in contributions:
        total = total + contrib
    return total


@dataclass(frozen=True)
class HodgeNumbers:
    """Stringy Hodge numbers ``h^{p,p}`` of a polynomial E-function, with sanity verdicts."""

    values: tuple[int, ...]
    negative: tuple[int, ...]        # indices p with h^{p,p} < 0
    ends_are_one: bool               # h^{0,0} = h^{d,d} = 1
    palindromic: bool                # h^{p,p} = h^{d-p,d-p}

    @property
    def nonnegative(self) -> bool:
        return not self.negative


def hodge_numbers(E: Polynomial, d: int) -> HodgeNumbers:
    """Read the stringy Hodge numbers off ``E`` for a variety of dimension ``d``.

    In the univariate model only ``h^{p,p}`` occur, and the sign
    ``(-1)^{p+q}`` is always ``+1``.
    """
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    if E.degree is not None and E.degree > d:
        raise ValueError(f"degree {E.degree} exceeds dimension {d}")
    vals = tuple(E.coeffs) + (0,) * (d + 1 - len(E.coeffs))
    return HodgeNumbers(
        values=vals,
        negative=tuple(p for p, h in enumerate(vals) if h < 0),
        ends_are_one=vals[0] == 1 and vals[-1] == 1,
        palindromic=vals == vals[::-1],
    )


def duality_check(E: RationalFunction, d: int) -> bool:
    """``w^d E(1/w) == E(w)``."""
    return rf_dual(E, d) == E


@dataclass(frozen=True)
class StringyReport:
    source: str
    contribution: RationalFunction
    euler: Fraction
    is_polynomial: bool
    hodge_numbers: tuple[int, ...] | None
    checks: dict[str, Verdict] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not Verdict.FAIL for v in self.checks.values())

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "contribution": self.contribution.to_json(),
            "euler": f"{self.euler.numerator}/{self.euler.denominator}",
            "is_polynomial": self.is_polynomial,
            "hodge_numbers": list(self.hodge_numbers) if self.hodge_numbers is not None else None,
            "checks": {k: v.value for k, v in self.checks.items()},
        }


def make_report(source: str, value: RationalFunction, checks: dict[str, Verdict] | None = None,
                dim: int | None = None, projective: bool = False,
                euler_direct: Fraction | None = None) -> StringyReport:
    """Bundle a contribution or global E-function with its derived invariants.

    ``dim`` and ``projective`` enable the duality check and the
    ``h^{0,0} = h^{d,d} = 1`` check; without them these are ``n/a``.
    ``euler_direct`` (the stratum-wise Euler sum) is compared against the
    limit at ``w = 1``.
    """
    checks = dict(checks or {})
    euler = rf_limit_at_one(value)
    if euler_direct is not None:
        checks["euler_consistent"] = Verdict.of(euler == euler_direct)
    poly = rf_as_polynomial(value)
    hn = None
    if poly is not None:
        if projective and dim is not None:
            h = hodge_numbers(poly, dim)
            checks["hodge_ends"] = Verdict.of(h.ends_are_one)
            checks["hodge_symmetry"] = Verdict.of(h.palindromic)
        else:
            h = hodge_numbers(poly, poly.degree or 0)
        hn = h.values
        checks["nonnegative"] = Verdict.of(h.nonnegative)
    else:
        checks["nonnegative"] = Verdict.NA
    if projective and dim is not None:
        checks["duality"] = Verdict.of(duality_check(value, dim))
    else:
        checks["duality"] = Verdict.NA
    return StringyReport(source, value, euler, poly is not None, hn, checks)
