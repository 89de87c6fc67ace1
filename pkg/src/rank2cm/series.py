"""Truncated formal power series over the rationals.

A :class:`PowerSeries` stores the coefficients of ``t^0 .. t^(prec-1)``.
Products silently drop every term of order ``>= prec``, so all ring
identities hold "up to prec".  Two series only combine when their
precisions agree; mixing precisions raises :class:`PrecisionError`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]

DEFAULT_PREC = 8


class PrecisionError(ValueError):
    """Raised when series of different precision are combined."""


class NotAUnitError(ArithmeticError):
    """Raised when inverting a series whose constant term is zero."""


class NotDivisibleError(ArithmeticError):
    """Raised by :meth:`PowerSeries.div_by_t` on a series with nonzero constant term."""


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty scalar string")
        if any(c in text for c in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class PowerSeries:
    """An element of Q[[t]] / (t^prec).

    Instances are immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[ScalarLike], prec: int | None = None):
        cs = [to_scalar(c) for c in coeffs]
        if prec is None:
            prec = len(cs)
        if prec < 1:
            raise ValueError("precision must be a positive integer")
        if len(cs) > prec:
            cs = cs[:prec]
        else:
            cs.extend([Fraction(0)] * (prec - len(cs)))
        self._c = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "PowerSeries":
        obj = object.__new__(cls)
        obj._c = coeffs
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, prec: int = DEFAULT_PREC) -> "PowerSeries":
        return cls((), prec)

    @classmethod
    def one(cls, prec: int = DEFAULT_PREC) -> "PowerSeries":
        return cls((1,), prec)

    @classmethod
    def const(cls, value: ScalarLike, prec: int = DEFAULT_PREC) -> "PowerSeries":
        return cls((value,), prec)

    @classmethod
    def monomial(cls, degree: int, coeff: ScalarLike = 1, prec: int = DEFAULT_PREC) -> "PowerSeries":
        """``coeff * t**degree``; vanishes when ``degree >= prec``."""
        if degree < 0:
            raise ValueError("negative degree")
        cs = [0] * min(degree, prec)
        if degree < prec:
            cs.append(coeff)
        return cls(cs, prec)

    @classmethod
    def t(cls, prec: int = DEFAULT_PREC) -> "PowerSeries":
        return cls.monomial(1, 1, prec)

    # accessors ----------------------------------------------------------

    @property
    def prec(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, i: int) -> Fraction:
        return self._c[i]

    def constant_term(self) -> Fraction:
        return self._c[0]

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_unit(self) -> bool:
        return self._c[0] != 0

    def valuation(self) -> int | None:
        """Order of the lowest nonzero term, ``None`` for the zero series."""
        for i, c in enumerate(self._c):
            if c:
                return i
        return None

    def divisible_by_t(self) -> bool:
        return self._c[0] == 0

    # precision handling ---------------------------------------------------

    def with_prec(self, prec: int) -> "PowerSeries":
        """Truncate, or pad with zero coefficients (treating the series as a polynomial)."""
        return PowerSeries(self._c, prec)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            if other.prec != self.prec:
                raise PrecisionError(f"precision mismatch: {self.prec} vs {other.prec}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return PowerSeries((other,), self.prec)
        return NotImplemented

    # ring operations ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PowerSeries._raw(tuple(a + b for a, b in zip(self._c, o._c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PowerSeries._raw(tuple(a - b for a, b in zip(self._c, o._c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return PowerSeries._raw(tuple(-a for a in self._c))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._c, o._c
        n = len(a)
        nz_a = [(i, x) for i, x in enumerate(a) if x]
        nz_b = [(j, y) for j, y in enumerate(b) if y]
        out = [0] * n
        for i, x in nz_a:
            for j, y in nz_b:
                k = i + j
                if k >= n:
                    break
                out[k] += x * y
        return PowerSeries._raw(tuple(Fraction(v) for v in out))

    __rmul__ = __mul__

    def scale(self, s: ScalarLike) -> "PowerSeries":
        s = to_scalar(s)
        return PowerSeries._raw(tuple(s * a for a in self._c))

    def shift(self, k: int = 1) -> "PowerSeries":
        """Multiply by ``t**k``."""
        if k < 0:
            raise ValueError("use div_by_t for negative shifts")
        n = self.prec
        return PowerSeries._raw((Fraction(0),) * min(k, n) + self._c[: max(n - k, 0)])

    def div_by_t(self) -> "PowerSeries":
        """Exact division by ``t``; the top coefficient becomes 0 (information below prec is lost)."""
        if self._c[0] != 0:
            raise NotDivisibleError(f"{self} is not divisible by t")
        return PowerSeries._raw(self._c[1:] + (Fraction(0),))

    def inverse(self) -> "PowerSeries":
        a0 = self._c[0]
        if a0 == 0:
            raise NotAUnitError(f"{self} is not a unit (constant term is zero)")
        n = self.prec
        inv0 = 1 / a0
        out = [inv0]
        for k in range(1, n):
            acc = Fraction(0)
            for j in range(1, k + 1):
                if self._c[j]:
                    acc += self._c[j] * out[k - j]
            out.append(-acc * inv0)
        return PowerSeries._raw(tuple(out))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        result = PowerSeries.one(self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # comparison / display -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self._c == other._c
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._c[0] == other and not any(self._c[1:])
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def to_strings(self) -> list[str]:
        return [format_scalar(c) for c in self._c]

    @classmethod
    def from_strings(cls, items: Sequence[str | int], prec: int | None = None) -> "PowerSeries":
        if isinstance(items, (str, bytes)):
            raise TypeError("a series is a list of coefficient strings, not a single string")
        return cls([to_scalar(s) for s in items], prec)

    def __repr__(self):
        return f"PowerSeries({self.to_strings()!r})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self._c):
            if not c:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if i == 0:
                terms.append(format_scalar(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"{format_scalar(c)}*{mon}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(t^{self.prec})"


def series(*coeffs: ScalarLike, prec: int = DEFAULT_PREC) -> PowerSeries:
    """Shorthand: ``series(1, 0, -1, prec=3)`` is ``1 - t^2``."""
    return PowerSeries(coeffs, prec)
