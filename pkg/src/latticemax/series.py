"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List


class Series:
    """Power series known modulo z^prec."""

    __slots__ = ("c", "prec")

    def __init__(self, coeffs: Iterable, prec: int):
        c = [Fraction(x) for x in coeffs][:prec]
        c += [Fraction(0)] * (prec - len(c))
        self.c: List[Fraction] = c
        self.prec = prec

    @classmethod
    def monomial(cls, k: int, prec: int, coeff=1) -> "Series":
        c = [0] * prec
        if k < prec:
            c[k] = coeff
        return cls(c, prec)

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k]

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series([other], self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        p = min(self.prec, o.prec)
        return Series([self.c[i] + o.c[i] for i in range(p)], p)

    __radd__ = __add__

    def __neg__(self):
        return Series([-x for x in self.c], self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            f = Fraction(other)
            return Series([x * f for x in self.c], self.prec)
        p = min(self.prec, other.prec)
        out = [Fraction(0)] * p
        for i, a in enumerate(self.c[:p]):
            if a:
                for j in range(p - i):
                    b = other.c[j]
                    if b:
                        out[i + j] += a * b
        return Series(out, p)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Series([1], self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "Series":
        if self.c[0] == 0:
            raise ZeroDivisionError("series has zero constant term")
        inv0 = 1 / self.c[0]
        out = [inv0]
        for n in range(1, self.prec):
            s = sum(self.c[k] * out[n - k] for k in range(1, n + 1))
            out.append(-s * inv0)
        return Series(out, self.prec)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def derivative(self) -> "Series":
        return Series([k * self.c[k] for k in range(1, self.prec)], self.prec - 1)

    def shift_down(self, k: int = 1) -> "Series":
        """Divide by z^k; the first k coefficients must vanish."""
        if any(self.c[:k]):
            raise ValueError("series is not divisible by z^k")
        return Series(self.c[k:], self.prec - k)

    def log(self) -> "Series":
        if self.c[0] != 1:
            raise ValueError("log needs constant term 1")
        # (log f)' = f'/f
        d = self.derivative() * Series(self.c[: self.prec - 1], self.prec - 1).inverse()
        return Series([0] + [d.c[k] / (k + 1) for k in range(self.prec - 1)], self.prec)

    def compose(self, inner: "Series") -> "Series":
        """self(inner(z)) for inner with zero constant term (Horner)."""
        if inner.c[0] != 0:
            raise ValueError("inner series needs zero constant term")
        p = min(self.prec, inner.prec)
        out = Series([0], p)
        for a in reversed(self.c[:p]):
            out = out * inner + a
        return out

    def __repr__(self):
        return f"Series({[str(x) for x in self.c]}, prec={self.prec})"
