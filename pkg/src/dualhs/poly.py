"""Multivariate polynomials with a total term order, over an exact field.

Monomials are exponent tuples.  A Poly stores its terms sorted strictly
descending in the ring order, with no zero coefficients, so equal
polynomials have identical representations.
"""

from __future__ import annotations

from fractions import Fraction

from .field import Field

ORDER_TAGS = ("grevlex", "lex", "grlex")


def order_key_fn(tag: str, nvars: int):
    """Sort key for monomials; larger key = larger monomial."""
    if tag == "lex":
        return lambda m: m
    if tag == "grlex":
        return lambda m: (sum(m), m)
    if tag == "grevlex":
        return lambda m: (sum(m), tuple(-e for e in reversed(m)))
    raise ValueError(f"unknown term order {tag!r}")


class RingSignature:
    """Variable names (highest first), coefficient field and term order."""

    __slots__ = ("vars", "field", "order", "_key")

    def __init__(self, variables, field: Field, order: str = "grevlex"):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")
        if order not in ORDER_TAGS:
            raise ValueError(f"unknown term order {order!r}")
        self.field = field
        self.order = order
        self._key = order_key_fn(order, len(self.vars))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def key(self, mono):
        return self._key(mono)

    def mono_str(self, mono) -> str:
        parts = []
        for name, e in zip(self.vars, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        return (isinstance(other, RingSignature) and self.vars == other.vars
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.vars, self.field, self.order))

    def __repr__(self):
        return f"RingSignature({','.join(self.vars)}; {self.field.name}; {self.order})"


# monomial helpers -----------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b) -> bool:
    """a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, assuming b | a."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a) -> int:
    return sum(a)


class Poly:
    """Canonical-form polynomial: terms ((mono, coeff), ...) strictly descending."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: RingSignature, terms):
        self.sig = sig
        self.terms = tuple(terms)

    # constructors ------------------------------------------------------

    @classmethod
    def from_dict(cls, sig, d: dict) -> "Poly":
        F = sig.field
        items = [(m, c) for m, c in d.items() if c != F.zero]
        items.sort(key=lambda mc: sig.key(mc[0]), reverse=True)
        return cls(sig, items)

    @classmethod
    def zero(cls, sig) -> "Poly":
        return cls(sig, ())

    @classmethod
    def const(cls, sig, c) -> "Poly":
        if c == sig.field.zero:
            return cls.zero(sig)
        return cls(sig, (((0,) * sig.nvars, c),))

    @classmethod
    def one(cls, sig) -> "Poly":
        return cls.const(sig, sig.field.one)

    @classmethod
    def variable(cls, sig, i: int) -> "Poly":
        mono = tuple(1 if j == i else 0 for j in range(sig.nvars))
        return cls(sig, ((mono, sig.field.one),))

    @classmethod
    def monomial(cls, sig, mono, c=None) -> "Poly":
        c = sig.field.one if c is None else c
        if c == sig.field.zero:
            return cls.zero(sig)
        return cls(sig, ((tuple(mono), c),))

    # predicates / accessors ---------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def leading_term(self):
        """(coefficient, monomial) of the order-maximal term; errors on 0."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m, c = self.terms[0]
        return c, m

    def leading_mono(self):
        return self.terms[0][0]

    def leading_coeff(self):
        return self.terms[0][1]

    def constant_coeff(self):
        zero_mono = (0,) * self.sig.nvars
        for m, c in self.terms:
            if m == zero_mono:
                return c
        return self.sig.field.zero

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_deg(m) for m, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {mono_deg(m) for m, _ in self.terms}
        return len(degs) == 1

    # arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.sig != other.sig:
            raise ValueError("signature mismatch")

    def add(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.sig.field
        d = dict(self.terms)
        for m, c in other.terms:
            nc = F.add(d.get(m, F.zero), c)
            if nc == F.zero:
                d.pop(m, None)
            else:
                d[m] = nc
        return Poly.from_dict(self.sig, d)

    def neg(self) -> "Poly":
        F = self.sig.field
        return Poly(self.sig, tuple((m, F.neg(c)) for m, c in self.terms))

    def sub(self, other: "Poly") -> "Poly":
        return self.add(other.neg())

    def mul(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.sig.field
        d: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                nc = F.add(d.get(m, F.zero), F.mul(c1, c2))
                if nc == F.zero:
                    d.pop(m, None)
                else:
                    d[m] = nc
        return Poly.from_dict(self.sig, d)

    def scale(self, c) -> "Poly":
        F = self.sig.field
        if c == F.zero:
            return Poly.zero(self.sig)
        return Poly(self.sig, tuple((m, F.mul(c, cf)) for m, cf in self.terms))

    def mul_term(self, mono, c) -> "Poly":
        F = self.sig.field
        if c == F.zero:
            return Poly.zero(self.sig)
        terms = tuple((mono_mul(m, mono), F.mul(c, cf)) for m, cf in self.terms)
        return Poly(self.sig, terms)  # order is multiplicative: sortedness kept

    def pow(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.one(self.sig)
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base) if n > 1 else base
            n >>= 1
        return out

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(self.sig.field.inv(self.leading_coeff()))

    # printing ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.sig.field
        parts = []
        zero_mono = (0,) * self.sig.nvars
        for i, (m, c) in enumerate(self.terms):
            cs = F.to_str(c)
            negative = cs.startswith("-")
            mag = cs[1:] if negative else cs
            if m == zero_mono:
                body = mag
            elif mag == "1":
                body = self.sig.mono_str(m)
            else:
                body = f"{mag}*{self.sig.mono_str(m)}"
            if i == 0:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self})"

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.sig == other.sig
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.sig, self.terms))


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    """Exact ring arithmetic; op in {add, sub, mul}."""
    if op == "add":
        return f.add(g)
    if op == "sub":
        return f.sub(g)
    if op == "mul":
        return f.mul(g)
    raise ValueError(f"unknown op {op!r}")


def coerce_coeff(field: Field, value) -> object:
    if isinstance(value, Fraction):
        return field.from_fraction(value)
    return field.from_int(value)
