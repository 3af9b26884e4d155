"""Closed-form contributions of A-D-E singular points.

Every general row has the shape ``1 + (w - 1) * S(w) / (w^N - 1)`` where
``S`` is a sum of monomials whose exponents depend on ``k``, ``m`` and
the parity of ``m``.  A separate table gives the threefold (``m = 4``)
values directly, in the form the polynomiality classifier is phrased in.

This module deliberately does not look at the stratum data.
"""

from __future__ import annotations

from typing import Iterable

from .catalog import SingularitySpec
from .exactalg import ONE, Polynomial, RationalFunction, W, ZERO, monomial

__all__ = [
    "TABLES",
    "ClosedFormMismatch",
    "contribution_closed",
    "general_row",
    "m4_table",
    "classify_polynomiality",
]

TABLES = ("general", "m4_table", "auto")


class ClosedFormMismatch(AssertionError):
    """The general table and the threefold table disagree at m = 4."""


def _half(x: int) -> int:
    if x % 2:
        raise ArithmeticError(f"exponent {x}/2 is not an integer")
    return x // 2


def _terms(exponents: Iterable[int]) -> Polynomial:
    s = ZERO
    for e in exponents:
        s = s + monomial(e)
    return s


def _span(lo: int, hi: int, f) -> list[int]:
    # empty when hi < lo, e.g. sum_{i=2}^{k} for k = 1
    return [f(i) for i in range(lo, hi + 1)]


def _row_exponents(spec: SingularitySpec) -> tuple[int, list[int]]:
    """``(N, exponents of S)`` for the general row of ``spec``."""
    m, M = spec.m, spec.m - 3
    odd_m = m % 2 == 1
    fam, n, k = spec.family, spec.n, spec.k
    if fam == "A" and n % 2 == 0:
        N = (2 * k + 1) * M + 2
        ex = _span(2, k + 1, lambda i: (k + i) * M + 2) + _span(1, k, lambda i: i * M + 1)
        if odd_m:
            ex += _span(1, k, lambda i: (k + i) * M + _half(m + 1))
            ex += _span(1, k, lambda i: i * M + _half(m - 1))
        return N, ex
    if fam == "A":
        N = k * M + 1
        ex = _span(1, k, lambda i: i * M + 1)
        if odd_m:
            ex += _span(1, k - 1, lambda i: i * M + _half(m - 1))
        else:
            ex.append(_half(m) - 1)
        return N, ex
    if fam == "D" and n % 2 == 0:
        N = (2 * k - 1) * M + 1
        ex = _span(1, 2 * k - 1, lambda i: i * M + 1) + [k * M + 1]
        if not odd_m:
            ex += _span(0, k - 2, lambda i: (k + i) * M + _half(m))
            ex += _span(0, k - 1, lambda i: i * M + _half(m) - 1)
            ex.append(_half(m) - 1)
        return N, ex
    if fam == "D":
        N = 2 * k * M + 1
        ex = _span(1, 2 * k, lambda i: i * M + 1)
        if odd_m:
            ex.append(k * M + _half(m - 1))
        else:
            ex += _span(1, k - 1, lambda i: (k + i) * M + _half(m))
            ex += _span(0, k - 1, lambda i: i * M + _half(m) - 1)
        return N, ex
    if fam == "E6":
        N = 6 * m - 17
        ex = [6 * m - 17, 4 * m - 11, 3 * m - 8, m - 2]
        if odd_m:
            ex += [_half(9 * m - 25), _half(5 * m - 13)]
        else:
            ex += [_half(11 * m - 30), _half(3 * m - 8)]
        return N, ex
    if fam == "E7":
        N = 9 * m - 26
        ex = [9 * m - 26, 7 * m - 20, 6 * m - 17, 5 * m - 14, 4 * m - 11, 3 * m - 8, m - 2]
        if not odd_m:
            ex += [_half(x) for x in (17 * m - 48, 15 * m - 42, 11 * m - 30, 9 * m - 26,
                                      5 * m - 14, 3 * m - 8, m - 2)]
        return N, ex
    N = 15 * m - 44
    ex = [15 * m - 44, 12 * m - 35, 10 * m - 29, 9 * m - 26, 7 * m - 20, 6 * m - 17, 4 * m - 11, m - 2]
    if not odd_m:
        ex += [_half(x) for x in (29 * m - 84, 27 * m - 78, 23 * m - 66, 17 * m - 48,
                                  15 * m - 44, 9 * m - 26, 5 * m - 14, 3 * m - 8)]
    return N, ex


def _poly(*coeffs_desc: int) -> Polynomial:
    return Polynomial(reversed(coeffs_desc))


def m4_table(spec: SingularitySpec) -> RationalFunction:
    """Contribution of a threefold (``m = 4``) singular point."""
    if spec.m != 4:
        raise ValueError("the threefold table needs m = 4")
    w, fam, n, k = W, spec.family, spec.n, spec.k
    w2 = monomial(2)
    if fam == "A" and n % 2 == 0:
        frac = RationalFunction(w2 * (monomial(2 * k + 2) - monomial(k + 2) + monomial(k) - 1),
                                monomial(2 * k + 3) - 1)
        return 1 + frac
    if fam == "A":
        return RationalFunction(w + 1)
    if fam == "D" and n % 2 == 0:
        return RationalFunction(2 * w + 1)
    if fam == "D":
        frac = RationalFunction(w2 * (monomial(2 * k) - monomial(k + 1) + monomial(k - 1) - 1),
                                monomial(2 * k + 1) - 1)
        return w + 1 + frac
    if fam == "E6":
        return 1 + RationalFunction(w2 * _poly(2, -2, 1, 0, -1, 2, -2), monomial(7) - 1)
    if fam == "E7":
        return w + 1 + RationalFunction(w2 * _poly(1, -1, 0, 1, -1), monomial(5) - 1)
    return 1 + RationalFunction(w2 * _poly(2, -1, -1, 2, -2, 1, 1, -2), monomial(8) - 1)


def general_row(spec: SingularitySpec) -> RationalFunction:
    N, ex = _row_exponents(spec)
    for e in ex:
        if e < 0:
            raise ArithmeticError(f"negative exponent {e} for {spec}")
    return ONE + RationalFunction((W - 1) * _terms(ex), monomial(N) - 1)


def contribution_closed(spec: SingularitySpec, table: str = "auto") -> RationalFunction:
    """Closed-form contribution of ``spec``.

    ``table="auto"`` uses the general formula and, when ``m = 4``, also
    evaluates the threefold table and raises :class:`ClosedFormMismatch`
    if they differ.
    """
    if table not in TABLES:
        raise ValueError(f"table must be one of {TABLES}, got {table!r}")
    if table == "m4_table":
        return m4_table(spec)
    value = general_row(spec)
    if table == "auto" and spec.m == 4:
        other = m4_table(spec)
        if other != value:
            raise ClosedFormMismatch(f"{spec}: general formula {value} != threefold table {other}")
    return value


def classify_polynomiality(spec: SingularitySpec) -> bool:
    """Whether ``spec`` is one of the two polynomial cases of the classification.

    True exactly for threefold (``m = 4``) ``A_n`` with ``n`` odd and
    ``D_n`` with ``n`` even.  The classification concerns varieties of
    dimension at least 3; surfaces (``m = 3``) report False even though
    their crepant contributions ``1 + n w`` are polynomials.
    """
    return spec.m == 4 and ((spec.family == "A" and spec.n % 2 == 1)
                            or (spec.family == "D" and spec.n % 2 == 0))
