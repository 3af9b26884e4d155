"""Hodge-Deligne polynomials (in w = uv) of quadrics.

For ``r >= 2`` let ``Q_r = {x_1^2 + ... + x_r^2 = 0}``.  Then

* ``a_r`` is the polynomial of ``Q_r`` inside ``P^{r+1}`` (cone with a line vertex),
* ``b_r`` is the polynomial of ``Q_r`` inside ``P^r`` (cone with a point vertex),
* ``c_r`` is the polynomial of the smooth quadric ``Q_r`` inside ``P^{r-1}``,
* ``d_r`` is the polynomial of the affine quadric ``{x_1^2 + ... + x_r^2 + 1 = 0}``
  in ``A^r``.

Surface computations also need ``r = 1``, where the conventions
``a_1 = w + 1``, ``b_1 = 1`` and ``c_1 = 0`` apply.
"""

from __future__ import annotations

from enum import Enum

from .exactalg import ONE, ZERO, Polynomial, W, geom_sum, monomial

__all__ = ["QuadricKind", "quadric_hodge", "a", "b", "c", "d"]


class QuadricKind(Enum):
    A = "A"
    B = "B"
    C = "C"
    D_AFFINE = "D_affine"


_R1 = {
    QuadricKind.A: W + ONE,
    QuadricKind.B: ONE,
    QuadricKind.C: ZERO,
}


def quadric_hodge(kind: QuadricKind | str, r: int) -> Polynomial:
    kind = QuadricKind(kind) if not isinstance(kind, QuadricKind) else kind
    if r < 1:
        raise ValueError(f"quadric rank must be >= 1, got {r}")
    if r == 1:
        if kind is QuadricKind.D_AFFINE:
            raise ValueError("d_r is only defined for r >= 2")
        return _R1[kind]
    even = r % 2 == 0
    if kind is QuadricKind.A:
        p = geom_sum(r + 1)
        return p + monomial(r // 2 + 1) if even else p
    if kind is QuadricKind.B:
        p = geom_sum(r)
        return p + monomial(r // 2) if even else p
    if kind is QuadricKind.C:
        p = geom_sum(r - 1)
        return p + monomial(r // 2 - 1) if even else p
    if even:
        return monomial(r - 1) - monomial(r // 2 - 1)
    return monomial(r - 1) + monomial((r - 1) // 2)


def a(r: int) -> Polynomial:
    return quadric_hodge(QuadricKind.A, r)


def b(r: int) -> Polynomial:
    return quadric_hodge(QuadricKind.B, r)


def c(r: int) -> Polynomial:
    return quadric_hodge(QuadricKind.C, r)


def d(r: int) -> Polynomial:
    return quadric_hodge(QuadricKind.D_AFFINE, r)
