"""Exact scalar arithmetic for the deformed algebra.

Scalars are rational functions of the deformation parameter ``eps`` of the
special shape ``p(eps) / (1 + eps^2)^m`` with ``p`` a polynomial whose
coefficients are complex numbers with rational real and imaginary parts.
This class of functions is closed under the ring operations, under
conjugation (``eps`` is self-adjoint), and contains every phase
``e^{i s alpha}`` through the half-angle substitution ``eps = tan(alpha/2)``.

All arithmetic here is exact; floats only appear in :meth:`EpsScalar.eval`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union


class NotDivisible(ArithmeticError):
    """Exact division failed (nonzero remainder or non-unit divisor)."""


_RationalInput = Union[int, Fraction]


@dataclass(frozen=True)
class CRat:
    """A complex number with arbitrary-precision rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: "CRat | _RationalInput") -> "CRat":
        if isinstance(value, CRat):
            return value
        return CRat(Fraction(value), Fraction(0))

    def __add__(self, other: "CRat") -> "CRat":
        return CRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "CRat") -> "CRat":
        return CRat(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "CRat") -> "CRat":
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "CRat":
        return CRat(-self.re, -self.im)

    def __truediv__(self, other: "CRat") -> "CRat":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero scalar")
        return CRat(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


CR_ZERO = CRat()
CR_ONE = CRat(Fraction(1), Fraction(0))
CR_I = CRat(Fraction(0), Fraction(1))
CR_HALF = CRat(Fraction(1, 2), Fraction(0))


def _pstrip(coeffs: list) -> tuple:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def _padd(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else CR_ZERO
        y = b[i] if i < len(b) else CR_ZERO
        out.append(x + y)
    return _pstrip(out)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [CR_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _pstrip(out)


def _pdiv_circle(coeffs: tuple) -> Tuple[Optional[tuple], tuple]:
    """Divide a polynomial by (1 + x^2); return (quotient, remainder).

    The quotient is None when the remainder is nonzero.
    """
    work = list(coeffs)
    deg = len(work) - 1
    if deg < 2:
        rem = _pstrip(work)
        return ((), ()) if not rem else (None, rem)
    quot = [CR_ZERO] * (deg - 1)
    for i in range(deg, 1, -1):
        c = work[i]
        if c.is_zero():
            continue
        quot[i - 2] = quot[i - 2] + c
        work[i - 2] = work[i - 2] - c
        work[i] = CR_ZERO
    rem = _pstrip(work[:2])
    if rem:
        return None, rem
    return _pstrip(quot), ()


_CIRCLE = (CR_ONE, CR_ZERO, CR_ONE)  # 1 + x^2


class EpsScalar:
    """An element p(eps)/(1+eps^2)^m, kept in canonical form.

    Canonical means: trailing zero coefficients stripped, and either
    ``den_pow == 0`` or the numerator is not divisible by (1+eps^2).
    Equality and hashing act on the canonical data, so equal values
    compare equal regardless of how they were produced.
    """

    __slots__ = ("num", "den_pow")

    def __init__(self, coeffs: Iterable = (), den_pow: int = 0):
        coeffs = [c if isinstance(c, CRat) else CRat.of(c) for c in coeffs]
        num = _pstrip(coeffs)
        if den_pow < 0:
            num = _pmul(num, _ppow(_CIRCLE, -den_pow))
            den_pow = 0
        if not num:
            den_pow = 0
        while den_pow > 0:
            quot, rem = _pdiv_circle(num)
            if quot is None:
                break
            num = quot
            den_pow -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den_pow", den_pow)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("EpsScalar is immutable")

    @staticmethod
    def of(value: "EpsScalar | CRat | _RationalInput") -> "EpsScalar":
        if isinstance(value, EpsScalar):
            return value
        return EpsScalar((CRat.of(value),))

    # ring operations ---------------------------------------------------

    def __add__(self, other) -> "EpsScalar":
        other = EpsScalar.of(other)
        m = max(self.den_pow, other.den_pow)
        a = _pmul(self.num, _ppow(_CIRCLE, m - self.den_pow))
        b = _pmul(other.num, _ppow(_CIRCLE, m - other.den_pow))
        return EpsScalar(_padd(a, b), m)

    __radd__ = __add__

    def __sub__(self, other) -> "EpsScalar":
        return self + (-EpsScalar.of(other))

    def __rsub__(self, other) -> "EpsScalar":
        return EpsScalar.of(other) + (-self)

    def __neg__(self) -> "EpsScalar":
        return EpsScalar(tuple(-c for c in self.num), self.den_pow)

    def __mul__(self, other) -> "EpsScalar":
        other = EpsScalar.of(other)
        return EpsScalar(
            _pmul(self.num, other.num), self.den_pow + other.den_pow
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "EpsScalar":
        if n < 0:
            inv = self.try_inverse()
            if inv is None:
                raise NotDivisible("negative power of a non-unit scalar")
            return inv ** (-n)
        out = ES_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "EpsScalar":
        """Adjoint action: eps is self-adjoint, coefficients conjugate."""
        return EpsScalar(tuple(c.conjugate() for c in self.num), self.den_pow)

    def divide_by_eps(self) -> "EpsScalar":
        """Exact division by eps; raises NotDivisible if the constant
        coefficient of the numerator is nonzero."""
        if not self.num:
            return self
        if not self.num[0].is_zero():
            raise NotDivisible("scalar is not divisible by eps")
        return EpsScalar(self.num[1:], self.den_pow)

    def try_inverse(self) -> "EpsScalar | None":
        """Inverse when the value is a unit c*(1+eps^2)^j, else None."""
        num, extra = self.num, 0
        while len(num) > 2:
            quot, rem = _pdiv_circle(num)
            if quot is None:
                return None
            num, extra = quot, extra + 1
        if len(num) != 1:
            return None
        c = num[0]
        return EpsScalar((CR_ONE / c,), extra - self.den_pow)

    # queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def at_zero(self) -> CRat:
        """Exact value at eps = 0 (the commutative limit of a coefficient)."""
        return self.num[0] if self.num else CR_ZERO

    def eval(self, eps: float) -> complex:
        """Numeric value at a real eps."""
        acc = 0j
        for c in reversed(self.num):
            acc = acc * eps + complex(c)
        return acc / (1.0 + eps * eps) ** self.den_pow

    def eval_exact(self, eps: Fraction) -> CRat:
        """Exact value at a rational eps."""
        eps = Fraction(eps)
        point = CRat(eps, Fraction(0))
        acc = CR_ZERO
        for c in reversed(self.num):
            acc = acc * point + c
        den = CRat(1 + eps * eps, Fraction(0))
        out = acc
        for _ in range(self.den_pow):
            out = out / den
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpsScalar):
            if isinstance(other, (int, Fraction, CRat)):
                other = EpsScalar.of(other)
            else:
                return NotImplemented
        return self.num == other.num and self.den_pow == other.den_pow

    def __hash__(self) -> int:
        return hash((self.num, self.den_pow))

    def __str__(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for k, c in enumerate(self.num):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*eps")
            else:
                parts.append(f"{c}*eps^{k}")
        body = " + ".join(parts)
        if self.den_pow == 0:
            return body
        if len(parts) > 1:
            body = f"({body})"
        return f"{body}*(1+eps^2)^-{self.den_pow}"

    __repr__ = __str__


def _ppow(base: tuple, n: int) -> tuple:
    out = (CR_ONE,)
    for _ in range(n):
        out = _pmul(out, base)
    return out


ES_ZERO = EpsScalar()
ES_ONE = EpsScalar((CR_ONE,))
ES_EPS = EpsScalar((CR_ZERO, CR_ONE))
ES_I = EpsScalar((CR_I,))
# 1/(1 + eps^2), a generator of the scalar ring in its own right
ES_CIRCLE_INV = EpsScalar((CR_ONE,), 1)


def phase(s: int) -> EpsScalar:
    """e^{i s alpha} as an exact scalar, alpha the half-angle of eps.

    e^{i alpha} = (1 + i eps)^2 / (1 + eps^2); negative s conjugates.
    """
    if s == 0:
        return ES_ONE
    base = EpsScalar((CR_ONE, CR_I)) ** (2 * abs(s))
    out = EpsScalar(base.num, abs(s))
    return out if s > 0 else out.conjugate()


def sin_alpha() -> EpsScalar:
    """sin(alpha) = 2 eps / (1 + eps^2)."""
    return EpsScalar((CR_ZERO, CRat(Fraction(2), Fraction(0))), 1)


def cos_alpha() -> EpsScalar:
    """cos(alpha) = (1 - eps^2) / (1 + eps^2)."""
    return EpsScalar((CR_ONE, CR_ZERO, -CR_ONE), 1)
