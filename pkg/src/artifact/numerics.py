"""Bit-size measures and half-open integer intervals."""

from enum import Enum

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int


def big(x):
    """Convert to the fast bignum type used for weights."""
    return mpz(x)


def complexity(x):
    """Number of bits needed to write down x (summed over vectors/matrices)."""
    if isinstance(x, (list, tuple)):
        return sum(complexity(y) for y in x)
    return x.bit_length()


def fdiv(a, b):
    return a // b


def cdiv(a, b):
    return -((-a) // b)


class Order(Enum):
    LESS = "<"
    GREATER = ">"
    INCOMPARABLE = "?"


class NotComparable(ValueError):
    pass


class Interval:
    """The half-open integer interval [lo, hi)."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        if not lo < hi:
            raise ValueError(f"empty interval [{lo}, {hi})")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x):
        return cls(x, x + 1)

    def is_point(self):
        return self.hi - self.lo == 1

    def __contains__(self, x):
        return self.lo <= x < self.hi

    def __eq__(self, other):
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((int(self.lo), int(self.hi)))

    def __repr__(self):
        if self.is_point():
            return f"{{{self.lo}}}"
        return f"[{self.lo}, {self.hi})"

    def __add__(self, other):
        return interval_arith(self, _as_interval(other), "+")

    __radd__ = __add__

    def __sub__(self, other):
        return interval_arith(self, _as_interval(other), "-")

    def __rsub__(self, other):
        return interval_arith(_as_interval(other), self, "-")

    def __mul__(self, other):
        if isinstance(other, Interval):
            return interval_arith(self, other, "*")
        return scale(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return Interval(1 - self.hi, 1 - self.lo)


def _as_interval(x):
    return x if isinstance(x, Interval) else Interval.point(x)


def point(x):
    return Interval.point(x)


def interval_lt(I, J):
    if I.hi <= J.lo:
        return Order.LESS
    if J.hi <= I.lo:
        return Order.GREATER
    return Order.INCOMPARABLE


def scale(I, c):
    """Smallest interval containing c*x for x in I."""
    if c >= 0:
        return Interval(c * I.lo, c * (I.hi - 1) + 1)
    return Interval(c * (I.hi - 1), c * I.lo + 1)


def interval_arith(I, J, op):
    a, b = I.lo, I.hi - 1
    c, d = J.lo, J.hi - 1
    if op == "+":
        return Interval(a + c, b + d + 1)
    if op == "-":
        return Interval(a - d, b - c + 1)
    if op == "*":
        ends = (a * c, a * d, b * c, b * d)
        return Interval(min(ends), max(ends) + 1)
    raise ValueError(f"unknown operator {op!r}")


def interval_fdiv(I, J):
    """Largest n >= 0 with n*J < I in the interval order (binary search)."""
    if J.lo < 1 or interval_lt(J, I) is not Order.LESS:
        raise NotComparable(f"{J!r} is not below {I!r}")
    top = J.hi - 1

    def fits(n):
        return n * top + 1 <= I.lo

    lo, hi = 1, 2
    while fits(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return lo


def shift(I, k):
    if k == 0:
        return I
    return Interval(I.lo >> k, -((-I.hi) >> k))


def interval_stats(I):
    return (complexity(I.lo) + complexity(I.hi), complexity_bound(I), uncertainty(I))


def complexity_bound(I):
    return complexity(I.hi - 1)


def uncertainty(I):
    """Bits of the width of the closed reading [lo, hi - 1]; zero on points."""
    return complexity(I.hi - 1 - I.lo)
