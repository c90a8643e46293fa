# cython: language_level=3
"""Compiled exact-rational kernel.

A lean drop-in for fractions.Fraction covering exactly the operations the
package performs: construction from integers, field arithmetic, ordering,
hashing.  Values are immutable, always in lowest terms, denominator > 0.
Numerator and denominator stay arbitrary-precision Python ints; the win
over Fraction is the removal of its per-operation dispatch overhead.
"""

import numbers

from math import gcd as _gcd

cdef object _HASH_MOD = (1 << 61) - 1
cdef object _Rational = numbers.Rational


cdef inline Rat _coerce(object other):
    """Rat from an int or any other Rational; None when not coercible."""
    if isinstance(other, int):
        return _new(other, 1)
    if isinstance(other, _Rational):
        return _reduced(other.numerator, other.denominator)
    return None


cdef inline Rat _new(object num, object den):
    cdef Rat r = Rat.__new__(Rat)
    r._num = num
    r._den = den
    return r


cdef inline Rat _reduced(object num, object den):
    cdef object g
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if den < 0:
        num = -num
        den = -den
    g = _gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return _new(num, den)


cdef class Rat:
    cdef readonly object _num
    cdef readonly object _den

    def __init__(self, num=0, den=1):
        cdef Rat out
        if den == 1 and isinstance(num, Rat):
            self._num = (<Rat> num)._num
            self._den = (<Rat> num)._den
            return
        if not isinstance(num, int):
            if isinstance(num, numbers.Rational) and den == 1:
                self._num = num.numerator
                self._den = num.denominator
                return
            raise TypeError(f"rational from unsupported type {type(num).__name__}")
        if not isinstance(den, int):
            raise TypeError(f"rational denominator of unsupported type {type(den).__name__}")
        out = _reduced(num, den)
        self._num = out._num
        self._den = out._den

    @property
    def numerator(self):
        return self._num

    @property
    def denominator(self):
        return self._den

    # -- arithmetic ---------------------------------------------------
    # fast paths for Rat and int; any other Rational coerces on the miss path

    def __add__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            # num + k*den stays coprime with den
            return _new(self._num + other * self._den, self._den)
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        if self._den == o._den:
            return _reduced(self._num + o._num, self._den)
        return _reduced(self._num * o._den + o._num * self._den,
                        self._den * o._den)

    def __radd__(self, other):
        cdef Rat o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__add__(self)

    def __sub__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            return _new(self._num - other * self._den, self._den)
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        if self._den == o._den:
            return _reduced(self._num - o._num, self._den)
        return _reduced(self._num * o._den - o._num * self._den,
                        self._den * o._den)

    def __rsub__(self, other):
        cdef Rat o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        cdef Rat o
        cdef object g1, g2, n1, n2, d1, d2
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            g1 = _gcd(other, self._den)
            if g1 > 1:
                return _new(self._num * (other // g1), self._den // g1)
            return _new(self._num * other, self._den)
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        n1, d1 = self._num, self._den
        n2, d2 = o._num, o._den
        g1 = _gcd(n1, d2)
        if g1 > 1:
            n1 //= g1
            d2 //= g1
        g2 = _gcd(n2, d1)
        if g2 > 1:
            n2 //= g2
            d1 //= g2
        return _new(n1 * n2, d1 * d2)

    def __rmul__(self, other):
        cdef Rat o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__mul__(self)

    def __truediv__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            return _reduced(self._num, self._den * other)
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        return _reduced(self._num * o._den, self._den * o._num)

    def __rtruediv__(self, other):
        cdef Rat o = _coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return _new(-self._num, self._den)

    def __pos__(self):
        return self

    def __abs__(self):
        if self._num < 0:
            return _new(-self._num, self._den)
        return self

    # -- ordering -----------------------------------------------------

    def __eq__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
            return self._num == o._num and self._den == o._den
        if isinstance(other, int):
            return self._den == 1 and self._num == other
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            return self._num < other * self._den
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        return self._num * o._den < o._num * self._den

    def __le__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            return self._num <= other * self._den
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        return self._num * o._den <= o._num * self._den

    def __gt__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            return self._num > other * self._den
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        return self._num * o._den > o._num * self._den

    def __ge__(self, other):
        cdef Rat o
        if isinstance(other, Rat):
            o = <Rat> other
        elif isinstance(other, int):
            return self._num >= other * self._den
        else:
            o = _coerce(other)
            if o is None:
                return NotImplemented
        return self._num * o._den >= o._num * self._den

    def __hash__(self):
        # standard numeric hash, so hash(Rat(n)) == hash(n)
        cdef object dinv, h
        try:
            dinv = pow(self._den, -1, _HASH_MOD)
        except ValueError:
            return hash(float("inf")) if self._num >= 0 else hash(float("-inf"))
        h = abs(self._num) % _HASH_MOD * dinv % _HASH_MOD
        if self._num < 0:
            h = -h
        return -2 if h == -1 else h

    # -- conversions --------------------------------------------------

    def __bool__(self):
        return self._num != 0

    def __float__(self):
        return self._num / self._den

    def __int__(self):
        if self._num < 0:
            return -((-self._num) // self._den)
        return self._num // self._den

    def __trunc__(self):
        return self.__int__()

    def __floor__(self):
        return self._num // self._den

    def __reduce__(self):
        return (Rat, (self._num, self._den))

    def __repr__(self):
        return f"Rat({self._num}, {self._den})"

    def __str__(self):
        if self._den == 1:
            return str(self._num)
        return f"{self._num}/{self._den}"


numbers.Rational.register(Rat)
