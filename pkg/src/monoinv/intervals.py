"""Extended reals and intervals with exact endpoints."""

from __future__ import annotations

from dataclasses import dataclass

from monoinv.errors import EmptyInterval
from monoinv.exactnum import fmt_ratio, rat


class ExtendedReal:
    """A point of the extended real line: -inf, a rational, or +inf.

    Total order: NEG_INF < any finite < POS_INF; finite values compare as
    rationals.  Instances are immutable.
    """

    __slots__ = ("kind", "value")

    def __init__(self, kind, value=None):
        if kind not in (-1, 0, 1):
            raise ValueError("kind must be -1, 0 or 1")
        if (kind == 0) != (value is not None):
            raise ValueError("finite iff a value is given")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, v):
        raise AttributeError("ExtendedReal is immutable")

    @property
    def is_finite(self):
        return self.kind == 0

    @property
    def finite(self):
        if self.kind != 0:
            raise ValueError("not a finite value")
        return self.value

    def _key(self, other):
        if not isinstance(other, ExtendedReal):
            other = fin(other)
        return other

    def __eq__(self, other):
        if not isinstance(other, ExtendedReal):
            return NotImplemented
        if self.kind != other.kind:
            return False
        return self.kind != 0 or self.value == other.value

    def __hash__(self):
        return hash((self.kind, self.value))

    def __lt__(self, other):
        other = self._key(other)
        if self.kind != other.kind:
            return self.kind < other.kind
        return self.kind == 0 and self.value < other.value

    def __le__(self, other):
        other = self._key(other)
        if self.kind != other.kind:
            return self.kind < other.kind
        return self.kind != 0 or self.value <= other.value

    def __gt__(self, other):
        return not self.__le__(other)

    def __ge__(self, other):
        return not self.__lt__(other)

    def __neg__(self):
        if self.kind == 0:
            return fin(-self.value)
        return NEG_INF if self.kind == 1 else POS_INF

    def __add__(self, other):
        """Extended addition; inf + (-inf) is rejected."""
        other = self._key(other)
        if self.kind == 0 and other.kind == 0:
            return fin(self.value + other.value)
        if self.kind == 0:
            return other
        if other.kind == 0 or other.kind == self.kind:
            return self
        raise ValueError("inf - inf is undefined")

    def __sub__(self, other):
        return self.__add__(-self._key(other))

    def __repr__(self):
        if self.kind == -1:
            return "-inf"
        if self.kind == 1:
            return "inf"
        return fmt_ratio(self.value)


NEG_INF = ExtendedReal(-1)
POS_INF = ExtendedReal(1)


def fin(q):
    """Finite extended real from a rational (or int)."""
    if isinstance(q, int):
        q = rat(q)
    return ExtendedReal(0, q)


def as_er(x):
    return x if isinstance(x, ExtendedReal) else fin(x)


@dataclass(frozen=True)
class Interval:
    """An interval of the extended real line.

    Infinite endpoints are never closed.  The empty interval is normalized
    to the open (0, 0), so equality on intervals is structural.
    """

    lo: ExtendedReal
    hi: ExtendedReal
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if not self.lo.is_finite and self.lo_closed:
            raise ValueError("infinite endpoint cannot be closed")
        if not self.hi.is_finite and self.hi_closed:
            raise ValueError("infinite endpoint cannot be closed")
        if self.lo > self.hi:
            raise ValueError("interval endpoints out of order")
        if self.lo == self.hi and not (self.lo_closed and self.hi_closed):
            object.__setattr__(self, "lo", fin(0))
            object.__setattr__(self, "hi", fin(0))
            object.__setattr__(self, "lo_closed", False)
            object.__setattr__(self, "hi_closed", False)

    @property
    def is_empty(self):
        return self.lo == self.hi and not self.lo_closed

    def contains(self, x) -> bool:
        x = as_er(x)
        if self.is_empty:
            return False
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if x > self.hi or (x == self.hi and not self.hi_closed):
            return False
        return True

    def contains_interval(self, other: "Interval") -> bool:
        if other.is_empty:
            return True
        if other.lo < self.lo or (other.lo == self.lo and other.lo_closed and not self.lo_closed):
            return False
        if other.hi > self.hi or (other.hi == self.hi and other.hi_closed and not self.hi_closed):
            return False
        return True

    def closure(self) -> "Interval":
        if self.is_empty:
            return self
        return Interval(self.lo, self.hi,
                        self.lo.is_finite, self.hi.is_finite)

    def __repr__(self):
        if self.is_empty:
            return "Interval(empty)"
        lb = "[" if self.lo_closed else "("
        rb = "]" if self.hi_closed else ")"
        return f"Interval{lb}{self.lo}, {self.hi}{rb}"


REAL_LINE = Interval(NEG_INF, POS_INF)
EMPTY = Interval(fin(0), fin(0))


def open_iv(lo, hi) -> Interval:
    return Interval(as_er(lo), as_er(hi))


def closed_iv(lo, hi) -> Interval:
    lo, hi = as_er(lo), as_er(hi)
    return Interval(lo, hi, lo.is_finite, hi.is_finite)


def point_iv(x) -> Interval:
    x = as_er(x)
    return Interval(x, x, True, True)


def require_open_nonempty(iv: Interval, what: str = "interval") -> Interval:
    if iv.is_empty:
        raise EmptyInterval(f"{what} is empty")
    if iv.lo_closed or iv.hi_closed:
        raise ValueError(f"{what} must be open")
    return iv
