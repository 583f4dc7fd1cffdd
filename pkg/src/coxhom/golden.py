"""Exact arithmetic in Z[phi], phi the golden ratio.

Root coordinates for the pentagonal reflection groups live in this ring, so
closure computations stay exact instead of floating point.
"""

from __future__ import annotations

from functools import total_ordering


@total_ordering
class GoldenInt:
    """a + b*phi with integer a, b and phi**2 = phi + 1."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int = 0):
        self.a = a
        self.b = b

    @classmethod
    def coerce(cls, x) -> "GoldenInt":
        if isinstance(x, GoldenInt):
            return x
        if isinstance(x, int):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GoldenInt")

    def __add__(self, other):
        other = GoldenInt.coerce(other)
        return GoldenInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = GoldenInt.coerce(other)
        return GoldenInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return GoldenInt.coerce(other) - self

    def __mul__(self, other):
        other = GoldenInt.coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return GoldenInt(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def __neg__(self):
        return GoldenInt(-self.a, -self.b)

    def sign(self) -> int:
        """Exact sign of the real number a + b*phi."""
        # 2*(a + b*phi) = (2a + b) + b*sqrt(5)
        s, t = 2 * self.a + self.b, self.b
        if t == 0:
            return (s > 0) - (s < 0)
        if t > 0:
            if s >= 0:
                return 1
            return 1 if s * s < 5 * t * t else -1
        if s <= 0:
            return -1
        return -1 if s * s < 5 * t * t else 1

    def __eq__(self, other):
        if isinstance(other, int):
            other = GoldenInt(other)
        if not isinstance(other, GoldenInt):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __lt__(self, other):
        other = GoldenInt.coerce(other)
        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*phi"
        return f"{self.a}{self.b:+d}*phi"


PHI = GoldenInt(0, 1)
