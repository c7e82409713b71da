"""Exact scalar fields: the rationals and prime fields GF(p).

Rational elements are :class:`gmpy2.mpq` values, which are always kept in
lowest terms with a positive denominator; :class:`fractions.Fraction` inputs
are accepted and converted.  Prime-field elements are
:class:`Residue` instances.  Both support the ordinary arithmetic operators,
so matrix code is written once against ``+``, ``-``, ``*`` and ``/``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

from .errors import UsageError

__all__ = [
    "Field",
    "Rationals",
    "PrimeField",
    "Residue",
    "QQ",
    "GF",
    "add",
    "mul",
    "neg",
    "inv",
    "field_of",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Residue:
    """An element of GF(p), stored as its residue in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p
        if __debug__:
            assert 0 <= self.v < p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise UsageError(f"mixed fields GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        # extended Euclid on (v, p)
        r0, r1, s0, s1 = self.v, self.p, 1, 0
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return Residue(s0, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Residue({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


Element = Union[mpq, Residue]


class Field:
    """Common interface of the two supported scalar fields."""

    zero: Element
    one: Element

    def __call__(self, x) -> Element:
        raise NotImplementedError

    def parse(self, text: str) -> Element:
        raise NotImplementedError

    def format(self, x: Element) -> str:
        raise NotImplementedError

    def random(self, rng: random.Random, bound: int = 3) -> Element:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    @staticmethod
    def from_json(obj) -> "Field":
        if obj == "rational":
            return QQ
        if isinstance(obj, dict) and set(obj) == {"gfp"}:
            p = obj["gfp"]
            if not isinstance(p, int) or isinstance(p, bool):
                raise UsageError(f"gfp modulus must be an integer, got {p!r}")
            return GF(p)
        raise UsageError(f'field must be "rational" or {{"gfp": p}}, got {obj!r}')

    @staticmethod
    def from_name(name: str) -> "Field":
        """Parse the short command-line spelling: ``rational``/``q`` or ``gf<p>``."""
        name = name.strip().lower()
        if name in ("rational", "q", "qq"):
            return QQ
        if name.startswith("gf") and name[2:].isdigit():
            return GF(int(name[2:]))
        raise UsageError(f"unknown field {name!r}")


class Rationals(Field):
    zero = mpq(0)
    one = mpq(1)

    def __call__(self, x) -> mpq:
        if isinstance(x, mpq):
            return x
        if isinstance(x, Residue):
            raise UsageError("cannot coerce a GF(p) element into QQ")
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            raise UsageError("floating-point input is not exact; pass a string or Fraction")
        return mpq(x)

    def parse(self, text: str) -> mpq:
        text = text.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                value = mpq(int(num), int(den))
            else:
                value = mpq(int(num))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational number: {text!r}") from None
        return value

    def format(self, x: mpq) -> str:
        return str(x)

    def random(self, rng, bound=3):
        return mpq(rng.randint(-bound, bound))

    def contains(self, x):
        return isinstance(x, mpq)

    def to_json(self):
        return "rational"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise UsageError(f"modulus {p} is not prime")
        if p >= 2**31:
            raise UsageError(f"modulus {p} exceeds 2**31")
        self.p = p
        self.zero = Residue(0, p)
        self.one = Residue(1, p)

    def __call__(self, x) -> Residue:
        if isinstance(x, Residue):
            if x.p != self.p:
                raise UsageError(f"mixed fields GF({x.p}) and GF({self.p})")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (Fraction, mpq)):
            return Residue(int(x.numerator), self.p) / Residue(int(x.denominator), self.p)
        return Residue(int(x), self.p)

    def parse(self, text: str) -> Residue:
        text = text.strip()
        try:
            v = int(text)
        except ValueError:
            raise UsageError(f"not a residue: {text!r}") from None
        if not 0 <= v < self.p:
            raise UsageError(f"residue {v} outside [0, {self.p})")
        return Residue(v, self.p)

    def format(self, x: Residue) -> str:
        return str(x.v)

    def random(self, rng, bound=None):
        return Residue(rng.randrange(self.p), self.p)

    def contains(self, x):
        return isinstance(x, Residue) and x.p == self.p

    def to_json(self):
        return {"gfp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()
_prime_fields: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    """Return the (cached) prime field with ``p`` elements."""
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_of(x: Element) -> Field:
    if isinstance(x, (mpq, Fraction)):
        return QQ
    if isinstance(x, Residue):
        return GF(x.p)
    raise UsageError(f"not a field element: {x!r}")


def _same(a, b):
    if field_of(a) != field_of(b):
        raise UsageError(f"mixed-field operands {a!r} and {b!r}")


def add(a: Element, b: Element) -> Element:
    _same(a, b)
    return a + b


def mul(a: Element, b: Element) -> Element:
    _same(a, b)
    return a * b


def neg(a: Element) -> Element:
    field_of(a)
    return -a


def inv(a: Element) -> Element:
    if isinstance(a, Residue):
        return a.inverse()
    if isinstance(a, (mpq, Fraction)):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in QQ")
        return 1 / a
    raise UsageError(f"not a field element: {a!r}")
