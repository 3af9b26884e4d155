"""Exact arithmetic in Z[w] and Q(w).

Polynomials are dense tuples of Python ints, lowest degree first; the
zero polynomial is the empty tuple.  Rational functions are always kept
in a canonical reduced form over Z so that equality and hashing work
field by field:

* gcd(num, den) is constant,
* the integer content shared by num and den is 1,
* den has a positive leading coefficient.

Every object is immutable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import gcd as _igcd
from typing import Iterable, Sequence, Union

__all__ = [
    "Polynomial",
    "RationalFunction",
    "PolyParseError",
    "W",
    "ZERO",
    "ONE",
    "geom_sum",
    "cyclotomic",
    "divisors",
    "monomial",
    "poly_arith",
    "poly_gcd",
    "rf_make",
    "rf_arith",
    "rf_as_polynomial",
    "rf_limit_at_one",
    "rf_dual",
    "parse_polynomial",
]


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Polynomial:
    """Dense polynomial in ``w`` with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``w**i``.  ``degree`` is ``None``
    for the zero polynomial, so it can never be used as an exponent by
    accident.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = _strip(coeffs)
        for c in cs:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coefficients must be int, got {type(c).__name__}")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "Polynomial":
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls._raw((c,) if c else ())

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = _igcd(g, c)
            if g == 1:
                break
        return g

    def primitive_part(self) -> "Polynomial":
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.coeffs[-1] < 0:
            g = -g
        if g == 1:
            return self
        return Polynomial._raw(tuple(c // g for c in self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Polynomial.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] += c
        return Polynomial._raw(_strip(res))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) * len(b) > 2048:
            return Polynomial._raw(_kronecker_mul(a, b))
        res = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    res[i + j] += x * y
        return Polynomial._raw(tuple(res))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``w**k``."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if not self.coeffs or k == 0:
            return self
        return Polynomial._raw((0,) * k + self.coeffs)

    def reversed(self) -> "Polynomial":
        """``w**deg * p(1/w)``."""
        return Polynomial(reversed(self.coeffs))

    # -- division -----------------------------------------------------

    def divmod_exact(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Division with remainder, valid when every quotient coefficient is integral.

        Raises ``ArithmeticError`` if a non-integral quotient coefficient
        shows up; use :meth:`pseudo_rem` for general inputs.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db, lb = len(other.coeffs) - 1, other.coeffs[-1]
        if len(r) - 1 < db:
            return ZERO, self
        q = [0] * (len(r) - db)
        b = other.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c == 0:
                continue
            qc, rem = divmod(c, lb)
            if rem:
                raise ArithmeticError("quotient is not integral")
            q[i - db] = qc
            for j in range(db + 1):
                r[i - db + j] -= qc * b[j]
        return Polynomial._raw(_strip(q)), Polynomial._raw(_strip(r))

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = self.divmod_exact(other)
        if r.coeffs:
            raise ArithmeticError("division is not exact")
        return q

    def pseudo_rem(self, other: "Polynomial") -> "Polynomial":
        """Remainder of ``lc(other)**(deg self - deg other + 1) * self`` by ``other``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        b = other.coeffs
        db, lb = len(b) - 1, b[-1]
        pending = max(len(r) - 1 - db + 1, 0)
        while len(r) - 1 >= db and r:
            c = r[-1]
            shift = len(r) - 1 - db
            r = [lb * x for x in r]
            for j in range(db + 1):
                r[shift + j] -= c * b[j]
            r = list(_strip(r))
            pending -= 1
        # steps skipped by degree drops still owe their factor of lc
        scale = lb ** pending
        return Polynomial._raw(tuple(scale * x for x in r))

    # -- comparison / display -----------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self, var: str = "w") -> str:
        """Descending powers, e.g. ``w^3 + 5w^2 - w - 2``."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mon = var if e == 1 else f"{var}^{e}"
                body = mon if a == 1 else f"{a}{mon}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_latex(self, var: str = "w") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mon = var if e == 1 else f"{var}^{{{e}}}"
                body = mon if a == 1 else f"{a}{mon}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f"{sign}{body}"
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Polynomial":
        if not isinstance(data, (list, tuple)):
            raise ValueError("polynomial must be a JSON array of coefficient strings")
        coeffs = []
        for i, c in enumerate(data):
            if isinstance(c, bool) or not isinstance(c, (str, int)):
                raise ValueError(f"coefficient {i} must be a decimal string")
            try:
                coeffs.append(int(c))
            except ValueError:
                raise ValueError(f"coefficient {i} is not an integer: {c!r}") from None
        return cls(coeffs)


def _kronecker_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Product via evaluation at a power of two and one big-integer multiply."""
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    x = y = 0
    for c in reversed(a):
        x = (x << bits) + c
    for c in reversed(b):
        y = (y << bits) + c
    z = x * y
    mask, half = (1 << bits) - 1, 1 << (bits - 1)
    out = []
    for _ in range(len(a) + len(b) - 1):
        r = z & mask
        if r >= half:
            r -= 1 << bits
        out.append(r)
        z = (z - r) >> bits
    return _strip(out)


ZERO = Polynomial._raw(())
ONE = Polynomial._raw((1,))
W = Polynomial._raw((0, 1))

PolyLike = Union[Polynomial, int]


def monomial(e: int, c: int = 1) -> Polynomial:
    """``c * w**e``; negative exponents are an error, not a silent zero."""
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    return Polynomial._raw((0,) * e + (c,)) if c else ZERO


def geom_sum(a: int) -> Polynomial:
    """``1 + w + ... + w**(a-1)``, i.e. ``(w**a - 1)/(w - 1)``."""
    if a < 1:
        raise ValueError(f"geom_sum needs a >= 1, got {a}")
    return Polynomial._raw((1,) * a)


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"divisors needs n >= 1, got {n}")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> Polynomial:
    """The n-th cyclotomic polynomial, from ``w**n - 1 = prod_{d | n} Phi_d``."""
    p = monomial(n) - ONE
    for d in divisors(n)[:-1]:
        p = p.exact_div(cyclotomic(d))
    return p


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial op {op!r}")


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """gcd over Z via the primitive pseudo-remainder sequence.

    Contents contribute their integer gcd; the result has positive
    leading coefficient, and gcd(0, 0) is 0.
    """
    if p.is_zero() or q.is_zero():
        g = q if p.is_zero() else p
        return -g if not g.is_zero() and g.leading < 0 else g
    cont = _igcd(p.content(), q.content())
    a, b = p.primitive_part(), q.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return Polynomial.constant(cont)
        a, b = b, a.pseudo_rem(b).primitive_part()
    return a * cont


class RationalFunction:
    """Element of Q(w) stored as a canonical quotient of integer polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyLike, den: PolyLike = 1):
        num = Polynomial._coerce(num)
        den = Polynomial._coerce(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("numerator and denominator must be Polynomial or int")
        n, d = _canonical(num, den)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _raw(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        f = object.__new__(cls)
        object.__setattr__(f, "num", num)
        object.__setattr__(f, "den", den)
        return f

    @staticmethod
    def _coerce(other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction._raw(other, ONE)
        if isinstance(other, int) and not isinstance(other, bool):
            return RationalFunction._raw(Polynomial.constant(other), ONE)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __call__(self, x):
        """Evaluate at a number; ``ZeroDivisionError`` at a pole."""
        d = self.den(Fraction(x))
        if d == 0:
            raise ZeroDivisionError(f"pole at w={x}")
        return Fraction(self.num(Fraction(x))) / d

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RationalFunction", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __str__(self):
        return self.to_text()

    def to_text(self, var: str = "w") -> str:
        if self.den == ONE:
            return self.num.to_text(var)
        n = self.num.to_text(var)
        if len([c for c in self.num.coeffs if c]) > 1:
            n = f"({n})"
        return f"{n}/({self.den.to_text(var)})"

    def to_latex(self, var: str = "w") -> str:
        if self.den == ONE:
            return self.num.to_latex(var)
        return f"\\frac{{{self.num.to_latex(var)}}}{{{self.den.to_latex(var)}}}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        if not isinstance(data, dict) or set(data) != {"num", "den"}:
            raise ValueError('rational function must be an object {"num": [...], "den": [...]}')
        return cls(Polynomial.from_json(data["num"]), Polynomial.from_json(data["den"]))


def _canonical(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return ZERO, ONE
    g = poly_gcd(num, den)
    if g.degree:
        num, den = num.exact_div(g), den.exact_div(g)
    c = _igcd(num.content(), den.content())
    if den.leading < 0:
        c = -c
    if c != 1:
        num = Polynomial._raw(tuple(x // c for x in num.coeffs))
        den = Polynomial._raw(tuple(x // c for x in den.coeffs))
    return num, den


def rf_make(num: PolyLike, den: PolyLike) -> RationalFunction:
    return RationalFunction(num, den)


def rf_arith(f, g, op: str) -> RationalFunction:
    f, g = RationalFunction._coerce(f), RationalFunction._coerce(g)
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "sub":
        return f - g
    if op == "div":
        return f / g
    raise ValueError(f"unknown rational function op {op!r}")


def rf_as_polynomial(f: RationalFunction) -> Polynomial | None:
    """The polynomial equal to ``f``, or ``None`` when ``f`` is not one."""
    return f.num if f.den == ONE else None


_W_MINUS_1 = Polynomial._raw((-1, 1))


def _strip_root_at_one(p: Polynomial) -> tuple[Polynomial, int]:
    k = 0
    while not p.is_zero() and p(1) == 0:
        p = p.exact_div(_W_MINUS_1)
        k += 1
    return p, k


def rf_limit_at_one(f: RationalFunction) -> Fraction:
    """Limit of ``f(w)`` as ``w -> 1``; ``ValueError`` if it does not exist."""
    if f.is_zero():
        return Fraction(0)
    num, kn = _strip_root_at_one(f.num)
    den, kd = _strip_root_at_one(f.den)
    if kd > kn:
        raise ValueError("pole at w=1: limit does not exist")
    if kn > kd:
        return Fraction(0)
    return Fraction(num(1), den(1))


def rf_dual(f: RationalFunction, d: int) -> RationalFunction:
    """``w**d * f(1/w)``."""
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    if f.is_zero():
        return f
    e = d - f.num.degree + f.den.degree
    num, den = f.num.reversed(), f.den.reversed()
    if e >= 0:
        num = num.shift(e)
    else:
        den = den.shift(-e)
    return RationalFunction(num, den)


class PolyParseError(ValueError):
    """Malformed polynomial text; carries a 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_polynomial(text: str, var: str = "w") -> Polynomial:
    """Parse a polynomial in ``w``.

    Accepts the JSON coefficient-array form, or expressions such as
    ``w^3 + 5w^2 - w - 2`` / ``w**3+5*w**2-w-2``.  Surrounding whitespace
    and newlines are ignored.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PolyParseError(exc.msg, exc.lineno, exc.colno) from None
        try:
            return Polynomial.from_json(data)
        except ValueError as exc:
            raise PolyParseError(str(exc), 1, 1) from None
    return _ExprParser(text, var).parse()


class _ExprParser:
    def __init__(self, text: str, var: str):
        self.text = text
        self.var = var
        self.pos = 0

    def _where(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def _fail(self, msg: str, pos: int | None = None):
        raise PolyParseError(msg, *self._where(pos))

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _int(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self._fail("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> Polynomial:
        result = ZERO
        if not self._peek():
            self._fail("empty polynomial")
        first = True
        while self._peek():
            ch = self._peek()
            sign = 1
            if ch in "+-":
                sign = -1 if ch == "-" else 1
                self.pos += 1
            elif not first:
                self._fail(f"expected '+' or '-', found {ch!r}")
            result = result + self._term() * sign
            first = False
        return result

    def _term(self) -> Polynomial:
        ch = self._peek()
        coeff = 1
        if ch.isdigit():
            coeff = self._int()
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                ch = self._peek()
                if not self.text.startswith(self.var, self.pos):
                    self._fail(f"expected {self.var!r} after '*'")
            if not self.text.startswith(self.var, self.pos):
                return Polynomial.constant(coeff)
        if not self.text.startswith(self.var, self.pos):
            self._fail(f"expected a term, found {ch!r}" if ch else "unexpected end of input")
        self.pos += len(self.var)
        exp = 1
        if self.text.startswith("**", self.pos):
            self.pos += 2
            exp = self._int()
        elif self._peek() == "^":
            self.pos += 1
            if self._peek() == "{":
                self.pos += 1
                exp = self._int()
                if self._peek() != "}":
                    self._fail("expected '}'")
                self.pos += 1
            else:
                exp = self._int()
        return monomial(exp, coeff)
