"""Exact univariate arithmetic over Q(q).

A :class:`Polynomial` is a dense ascending coefficient tuple over exact
rationals (``int`` or :class:`fractions.Fraction`; never floats).  A
:class:`RationalFunction` is a fully reduced quotient of two polynomials with
a monic denominator, so equality of values is structural equality of the
representation.

The module also provides the Chebyshev-like family ``Delta_k``: the
determinant of the k-by-k tridiagonal matrix with ``q`` on the diagonal and
``1`` on the off-diagonals.  It satisfies

    Delta_k = q*Delta_{k-1} - Delta_{k-2},   Delta_0 = 1,  Delta_{-1} = 0,

and, writing ``q = 2*cos(t)``, the closed form ``Delta_k = sin((k+1)t)/sin(t)``
(a rescaled Chebyshev polynomial of the second kind).  Its largest root is
``2*cos(pi/(k+1))``, the classical degeneracy parameter of the Markov form.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]

__all__ = [
    "Polynomial",
    "RationalFunction",
    "PoleError",
    "poly_arith",
    "poly_divrem",
    "poly_gcd",
    "ratfun_arith",
    "chebyshev",
    "chebyshev_root",
    "eval_at",
    "ZERO",
    "ONE",
    "Q",
    "RF_ZERO",
    "RF_ONE",
]


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at (or numerically near) a pole.

    ``magnitude`` carries ``|den(q0)|``: exactly zero on the exact path,
    the offending small absolute value on the float path.
    """

    def __init__(self, message: str, magnitude: float) -> None:
        super().__init__(message)
        self.magnitude = magnitude


def _exactify(c) -> Scalar:
    """Coerce a coefficient to canonical exact form (int preferred)."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):  # bool and int subclasses
        return int(c)
    raise TypeError(f"exact rational coefficient expected, got {type(c).__name__}")


# ---------------------------------------------------------------------------
# Kronecker-substitution kernels for integer-coefficient polynomials.
#
# A polynomial with integer coefficients is packed into a single big integer
# by evaluating at 2**width; CPython's big-integer multiplication then does
# the convolution.  Signed coefficients are recovered with balanced base-2**w
# digits, which is faithful whenever every true coefficient has magnitude
# below 2**(width-1).
# ---------------------------------------------------------------------------

_KRONECKER_THRESHOLD = 1024  # schoolbook below len(a)*len(b) of this size


def _pack(coeffs: Sequence[int], width: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << width) + c
    return acc


def _unpack(value: int, width: int, count: int) -> list[int] | None:
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    out = []
    for _ in range(count):
        digit = value & mask
        if digit >= half:
            digit -= 1 << width
        out.append(digit)
        value = (value - digit) >> width
    if value != 0:
        return None
    while out and out[-1] == 0:
        out.pop()
    return out


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Exact product of integer coefficient lists via packed big integers."""
    if not a or not b:
        return []
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = bound.bit_length() + 2
    out = _unpack(_pack(a, width) * _pack(b, width), width, len(a) + len(b) - 1)
    assert out is not None  # width was chosen from a proven coefficient bound
    return out


def _int_divexact(a: Sequence[int], b: Sequence[int]) -> list[int] | None:
    """Quotient of an exact division a = b*c, or None if b does not divide a.

    Works on packed integers: the polynomial identity holds at 2**width, so
    the integer quotient *is* the packed quotient.  The decoded candidate is
    verified by re-multiplication; on balanced-digit overflow the width is
    doubled and the division retried.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return []
    if len(a) < len(b):
        return None
    width = max(max(map(abs, a)).bit_length(), max(map(abs, b)).bit_length(), 1) + 66
    count = len(a) - len(b) + 1
    for _ in range(8):
        quotient, remainder = divmod(_pack(a, width), _pack(b, width))
        if remainder != 0:
            # an exact division a = b*c holds at 2**width as integers, so a
            # nonzero remainder proves b does not divide a over the integers
            return None
        c = _unpack(quotient, width, count)
        if c is not None and _int_mul(b, c) == list(a):
            return c
        # balanced-digit overflow: the true quotient coefficients exceed the
        # current digit range; widen and retry
        width *= 2
    # pathological case (e.g. divisible over Q but not over Z): settle it
    # with classical division
    quot, rem = Polynomial(tuple(a)).divrem(Polynomial(tuple(b)))
    if not rem.is_zero:
        return None
    return quot._int_coeffs()


def _int_content(coeffs: Sequence[int]) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _int_primitive(coeffs: Sequence[int]) -> list[int]:
    g = _int_content(coeffs)
    if g in (0, 1):
        return list(coeffs)
    return [c // g for c in coeffs]


def _int_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd of two integer coefficient lists (primitive PRS)."""
    a, b = _int_primitive(a), _int_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        lead = b[-1]
        r = list(a)
        while r and len(r) >= len(b):
            top = r[-1]
            r = [lead * c for c in r]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= top * c
            del r[-1]
            while r and r[-1] == 0:
                r.pop()
        a, b = b, _int_primitive(r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _clear_denominators(coeffs: Sequence[Scalar]) -> tuple[list[int], int]:
    """Return (integer coefficients, common denominator)."""
    denom = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
    if denom == 1:
        return [int(c) for c in coeffs], 1
    return [int(c * denom) for c in coeffs], denom


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial in q over exact rationals.

    ``coeffs[i]`` is the coefficient of ``q**i``; the tuple carries no
    trailing zeros and the zero polynomial is the empty tuple.

    >>> str(Polynomial((0, -2, 0, 1)))
    'q^3 - 2*q'
    >>> Polynomial((1, 1)) * Polynomial((-1, 1))
    Polynomial(coeffs=(-1, 0, 1))
    """

    coeffs: tuple[Scalar, ...]

    def __post_init__(self) -> None:
        cs = tuple(_exactify(c) for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar]) -> "Polynomial":
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1) -> "Polynomial":
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls((0,) * degree + (coeff,))

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def _int_coeffs(self) -> list[int] | None:
        if all(type(c) is int for c in self.coeffs):
            return list(self.coeffs)
        return None

    # -- ring operations -----------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(tuple(out))

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) * len(b) >= _KRONECKER_THRESHOLD:
            ia, ib = self._int_coeffs(), other._int_coeffs()
            if ia is not None and ib is not None:
                return Polynomial(tuple(_int_mul(ia, ib)))
        out = [0] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c == 0:
                continue
            for j, d in enumerate(b):
                out[i + j] += c * d
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def scaled(self, scalar: Scalar) -> "Polynomial":
        scalar = _exactify(scalar)
        if scalar == 0:
            return ZERO
        return Polynomial(tuple(c * scalar for c in self.coeffs))

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers live in RationalFunction")
        result, base, e = ONE, self, exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shifted(self, k: int) -> "Polynomial":
        """Multiply by q**k."""
        if self.is_zero:
            return self
        return Polynomial((0,) * k + self.coeffs)

    # -- division ------------------------------------------------------------

    def divrem(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Quotient and remainder with deg(remainder) < deg(divisor)."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dcs = divisor.coeffs
        lead = dcs[-1]
        qlen = max(0, len(rem) - len(dcs) + 1)
        quot = [0] * qlen
        while rem and len(rem) >= len(dcs):
            t = rem[-1] if lead == 1 else Fraction(rem[-1]) / lead
            shift = len(rem) - len(dcs)
            quot[shift] = t
            for i, c in enumerate(dcs):
                rem[shift + i] -= t * c
            del rem[-1]
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(tuple(quot)), Polynomial(tuple(rem))

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        return self.divrem(other)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, q0):
        """Horner evaluation: exact rational in, Fraction out; float in, float out."""
        if isinstance(q0, float):
            acc = 0.0
            for c in reversed(self.coeffs):
                acc = acc * q0 + c
            return acc
        if isinstance(q0, (int, Fraction)):
            return self._evaluate_exact(Fraction(q0))
        raise TypeError("evaluation point must be an exact rational or a float")

    def _evaluate_exact(self, q0: Fraction) -> Fraction:
        # integer Horner on p/r: value = sum c_i p^i r^(d-i) / (L * r^d),
        # after clearing coefficient denominators by L
        if not self.coeffs:
            return Fraction(0)
        ints, scale = _clear_denominators(self.coeffs)
        p, r = q0.numerator, q0.denominator
        acc = 0
        rpow = 1
        for c in reversed(ints):
            acc = acc * p + c * rpow
            rpow *= r
        # rpow is now r^(d+1); the value denominator uses r^d
        return Fraction(acc * r, scale * rpow)

    # -- rendering / serialization --------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if i == 0:
                body = f"{mag}"
            elif i == 1:
                body = "q" if mag == 1 else f"{mag}*q"
            else:
                body = f"q^{i}" if mag == 1 else f"{mag}*q^{i}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def to_json(self) -> dict:
        return {"coeffs": [str(Fraction(c)) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Polynomial":
        return cls(tuple(Fraction(s) for s in obj["coeffs"]))


ZERO = Polynomial(())
ONE = Polynomial((1,))
Q = Polynomial((0, 1))


def _coerce_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial((value,))
    return NotImplemented


def poly_arith(op: str, a: Polynomial, b=None) -> Polynomial:
    """Dispatch a ring operation by name: add, sub, mul, neg, scale."""
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"operation {op!r} needs a second operand")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * _coerce_poly(b)
    if op == "scale":
        return a.scaled(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_divrem(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Exact division with remainder: a = b*quotient + remainder."""
    return a.divrem(b)


def _divexact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Quotient of an exact division; raises if b does not divide a."""
    ia, ib = a._int_coeffs(), b._int_coeffs()
    if ia is not None and ib is not None:
        out = _int_divexact(ia, ib)
        if out is None:
            raise ArithmeticError("inexact polynomial division")
        return Polynomial(tuple(out))
    quot, rem = a.divrem(b)
    if not rem.is_zero:
        raise ArithmeticError("inexact polynomial division")
    return quot


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor via a primitive remainder sequence."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero:
        return _monic(b)
    if b.is_zero:
        return _monic(a)
    ia, _ = _clear_denominators(a.coeffs)
    ib, _ = _clear_denominators(b.coeffs)
    return _monic(Polynomial(tuple(_int_gcd(ia, ib))))


def _monic(p: Polynomial) -> Polynomial:
    lead = p.leading_coefficient
    if lead == 1:
        return p
    inv = Fraction(1, 1) / lead
    return p.scaled(inv)


@dataclass(frozen=True)
class RationalFunction:
    """Element of Q(q) in reduced normal form.

    Invariants (restored on construction): the denominator is monic and
    nonzero, gcd(num, den) is constant, and zero is represented as 0/1.
    Structural equality therefore decides equality of values.
    """

    num: Polynomial
    den: Polynomial

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            num, den = ZERO, ONE
        else:
            num, den = _reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, ONE)

    @classmethod
    def from_scalar(cls, c: Scalar) -> "RationalFunction":
        return cls(Polynomial((c,)), ONE)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == ONE

    # -- field operations ----------------------------------------------------

    def __add__(self, other) -> "RationalFunction":
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __rsub__(self, other) -> "RationalFunction":
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other) -> "RationalFunction":
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        other = _coerce_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    # -- evaluation / rendering ------------------------------------------------

    def evaluate(self, q0, *, pole_tolerance: float = 1e-12):
        """Evaluate at q0; raises PoleError at (or numerically near) a pole."""
        d = self.den.evaluate(q0)
        if isinstance(q0, float):
            if abs(d) < pole_tolerance:
                raise PoleError(f"pole near q = {q0!r}", abs(d))
            return self.num.evaluate(q0) / d
        if d == 0:
            raise PoleError(f"pole at q = {q0!r}", 0.0)
        return self.num.evaluate(q0) / d

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"{_wrap(self.num)}/{_wrap(self.den)}"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        return cls(Polynomial.from_json(obj["num"]), Polynomial.from_json(obj["den"]))


def _wrap(p: Polynomial) -> str:
    """Parenthesize operands that would read ambiguously inside a quotient."""
    text = str(p)
    return f"({text})" if (" " in text or "/" in text) else text


def _reduce(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    ni, nscale = _clear_denominators(num.coeffs)
    di, dscale = _clear_denominators(den.coeffs)
    g = _int_gcd(ni, di)
    if len(g) > 1:
        nq = _int_divexact(ni, g)
        dq = _int_divexact(di, g)
        assert nq is not None and dq is not None
        ni, di = nq, dq
    # scalar part: (dscale/nscale) carried onto the numerator, then the
    # denominator made monic
    scalar = Fraction(dscale, nscale) / Fraction(di[-1])
    num = Polynomial(tuple(ni)).scaled(scalar)
    den = Polynomial(tuple(di)).scaled(Fraction(1, 1) / di[-1])
    return num, den


def _coerce_ratfun(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value, ONE)
    if isinstance(value, (int, Fraction)):
        return RationalFunction(Polynomial((value,)), ONE)
    return NotImplemented


RF_ZERO = RationalFunction(ZERO, ONE)
RF_ONE = RationalFunction(ONE, ONE)


def ratfun_arith(op: str, a: RationalFunction, b=None) -> RationalFunction:
    """Dispatch a field operation by name: add, sub, mul, div, neg."""
    if op == "neg":
        return -a
    if b is None:
        raise ValueError(f"operation {op!r} needs a second operand")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown rational-function operation {op!r}")


# ---------------------------------------------------------------------------
# The Delta_k family.
# ---------------------------------------------------------------------------

_CHEB_LOCK = threading.Lock()
_CHEB: list[Polynomial] = [ZERO, ONE]  # index k+1 holds Delta_k, from k = -1


def chebyshev(k: int) -> Polynomial:
    """Delta_k by the three-term recursion, cached so repeat calls are O(1).

    >>> str(chebyshev(3))
    'q^3 - 2*q'
    """
    if k < -1:
        raise ValueError(f"Delta_k is defined for k >= -1, got {k}")
    if k + 1 < len(_CHEB):
        return _CHEB[k + 1]
    with _CHEB_LOCK:
        # single writer extends the table; readers only ever see filled slots
        while len(_CHEB) <= k + 1:
            _CHEB.append(Q * _CHEB[-1] - _CHEB[-2])
    return _CHEB[k + 1]


def chebyshev_root(m: int, bits: int = 256) -> Fraction:
    """Rational approximation of 2*cos(pi/(m+1)), the largest root of Delta_m.

    The result is within 2**-bits of the algebraic value, certified by exact
    sign-change bisection.  Exact for m = 1, 2 (the roots 0 and 1).  Supported
    for 1 <= m <= 64 (the float seed isolates the top root in that range).
    """
    if not 1 <= m <= 64:
        raise ValueError("m must be between 1 and 64")
    if m == 1:
        return Fraction(0)
    if m == 2:
        return Fraction(1)
    p = chebyshev(m)
    seed = 2.0 * math.cos(math.pi / (m + 1))
    # the gap to the next root 2cos(2*pi/(m+1)) exceeds 2e-3 for m <= 64,
    # so a +/-1e-3 window isolates the top root; certify by exact signs
    lo = Fraction(seed) - Fraction(1, 1000)
    hi = min(Fraction(2), Fraction(seed) + Fraction(1, 1000))
    flo, fhi = p.evaluate(lo), p.evaluate(hi)
    if not (flo < 0 < fhi):
        raise ArithmeticError("failed to isolate the principal root")
    for _ in range(bits + 2):
        mid = (lo + hi) / 2
        if p.evaluate(mid) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def eval_at(x, q0, *, pole_tolerance: float = 1e-12):
    """Evaluate a Polynomial or RationalFunction at q0.

    Exact rational q0 gives an exact Fraction; float q0 gives a float.  A
    rational function evaluated where the denominator (numerically) vanishes
    raises :class:`PoleError` carrying ``|den(q0)|``.
    """
    if isinstance(x, Polynomial):
        return x.evaluate(q0)
    if isinstance(x, RationalFunction):
        return x.evaluate(q0, pole_tolerance=pole_tolerance)
    raise TypeError("eval_at expects a Polynomial or RationalFunction")
