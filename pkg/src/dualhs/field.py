"""Exact coefficient fields: the rationals and prime fields GF(p).

Elements are plain Python values (Fraction for Q, int in [0, p) for GF(p));
a Field object supplies the arithmetic.  Everything is exact, no floats.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ArithmeticError):
    pass


class Field:
    """Common interface for the two coefficient fields."""

    name: str

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    def random(self, rng):
        """Draw an element; for Q the draw is from a widening integer window."""
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if a != self.zero:
                return a

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class RationalField(Field):
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def random(self, rng):
        # no uniform measure on Q; small integers keep instances readable
        return Fraction(rng.randint(-20, 20))


class PrimeField(Field):
    """GF(p) with residues stored in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, min(p, 1 + int(p ** 0.5) + 1))):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp:{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise FieldError("division by zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        den = q.denominator % self.p
        if den == 0:
            raise FieldError(f"denominator {q.denominator} vanishes in GF({self.p})")
        return (q.numerator % self.p) * self.inv(den) % self.p

    def random(self, rng):
        return rng.randrange(self.p)


QQ = RationalField()

DEFAULT_PRIME = 32003


def field_from_name(name: str) -> Field:
    """Parse a field descriptor: "Q", "Fp", or "Fp:<prime>"."""
    if name == "Q":
        return QQ
    if name == "Fp":
        return PrimeField(DEFAULT_PRIME)
    if name.startswith("Fp:"):
        return PrimeField(int(name.split(":", 1)[1]))
    raise FieldError(f"unknown field {name!r}")
