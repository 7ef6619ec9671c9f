"""Exact coefficient fields.

Elements are plain Python values: ``int`` residues in ``[0, p)`` for prime
fields and :class:`fractions.Fraction` for the rationals. A field object
carries the arithmetic; elements carry no back-reference, which keeps
polynomial dictionaries and numpy arrays cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction

import gmpy2
import numpy as np

DEFAULT_PRIME = 65521
BENCH_PRIME = 2147483629  # largest prime below 2**31


class FieldError(ArithmeticError):
    pass


class PrimeField:
    """The prime field F_p for an odd prime p < 2**31."""

    kind = "prime"

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if p <= 2 or p >= 2**31 or not gmpy2.is_prime(p):
            raise FieldError(f"modulus {p} is not an odd prime below 2**31")
        self.p = p
        self.zero = 0
        self.one = 1
        self.dtype = np.int64

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def canon(self, a) -> int:
        if isinstance(a, Fraction):
            return self.div(a.numerator % self.p, a.denominator % self.p)
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return pow(int(a), -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.p)

    def random_elem(self, seed: int) -> int:
        return self.random_element(random.Random(seed))

    def from_str(self, text: str) -> int:
        return self.canon(Fraction(text))

    def to_str(self, a) -> str:
        return str(int(a))

    # -- array helpers used by the elimination kernels --

    def array(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def reduce(self, arr):
        return np.mod(arr, self.p)


class RationalField:
    """The rationals, with elements as reduced fractions."""

    kind = "rational"
    numerator_bound = 2**10

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.dtype = object

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def canon(self, a) -> Fraction:
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def is_zero(self, a) -> bool:
        return a == 0

    def random_element(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.numerator_bound, self.numerator_bound))

    def random_nonzero(self, rng: random.Random) -> Fraction:
        while True:
            a = self.random_element(rng)
            if a:
                return a

    def random_elem(self, seed: int) -> Fraction:
        return self.random_element(random.Random(seed))

    def from_str(self, text: str) -> Fraction:
        return Fraction(text)

    def to_str(self, a) -> str:
        return str(Fraction(a))

    def array(self, rows, cols):
        arr = np.empty((rows, cols), dtype=object)
        arr.fill(Fraction(0))
        return arr

    def reduce(self, arr):
        return arr


Field = PrimeField | RationalField


def make_field(spec: dict | None) -> Field:
    """Build a field from its document form, e.g. ``{"type": "prime", "p": 65521}``."""
    if spec is None:
        return PrimeField()
    kind = spec.get("type", "prime")
    if kind == "prime":
        return PrimeField(spec.get("p", DEFAULT_PRIME))
    if kind == "rational":
        return RationalField()
    raise FieldError(f"unknown field type {kind!r}")


def field_to_dict(field: Field) -> dict:
    if isinstance(field, PrimeField):
        return {"type": "prime", "p": field.p}
    return {"type": "rational"}
