"""Exact scalar arithmetic over the rationals or a prime field.

Scalars are stored as plain Python values so that polynomial and matrix code
can stay fast: ``int`` residues in ``[0, p)`` for a prime field and
:class:`fractions.Fraction` for the rationals.  :class:`FieldCtx` carries the
operations; :class:`FieldElem` is a thin operator-overloading wrapper for
callers who want to write ``a * b + c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from .errors import BadCharacteristic, ParseError, UnsupportedField

MERSENNE_31 = 2**31 - 1


@dataclass(frozen=True)
class FieldCtx:
    """Rationals (``kind == "Q"``) or the prime field ``F_p`` (``kind == "Fp"``)."""

    kind: str
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.modulus is not None:
                raise UnsupportedField("the rationals take no modulus")
        elif self.kind == "Fp":
            p = self.modulus
            if not isinstance(p, int) or p < 5 or not isprime(p):
                raise UnsupportedField(f"modulus must be a prime >= 5, got {p!r}")
        else:
            raise UnsupportedField(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldCtx:
        return cls("Q")

    @classmethod
    def prime(cls, p: int = MERSENNE_31) -> FieldCtx:
        return cls("Fp", p)

    @property
    def is_prime(self) -> bool:
        return self.kind == "Fp"

    @property
    def characteristic(self) -> int:
        return self.modulus if self.is_prime else 0

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F_{self.modulus}"

    # -- element construction -------------------------------------------------

    @property
    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction, FieldElem or decimal string into the field."""
        if isinstance(x, FieldElem):
            if x.ctx != self:
                raise UnsupportedField(f"element of {x.ctx} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.is_prime:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.modulus)) % self.modulus
            return int(x) % self.modulus
        return Fraction(x)

    def elem(self, x) -> FieldElem:
        return FieldElem(self(x), self)

    # -- arithmetic on raw values ---------------------------------------------

    def add(self, a, b):
        return (a + b) % self.modulus if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.is_prime else a - b

    def mul(self, a, b):
        return (a * b) % self.modulus if self.is_prime else a * b

    def neg(self, a):
        return (-a) % self.modulus if self.is_prime else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.modulus) if self.is_prime else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng):
        """Uniform element drawn with ``rng.randrange``; only prime fields have a uniform distribution."""
        if not self.is_prime:
            raise UnsupportedField("random sampling is only defined over prime fields")
        return rng.randrange(self.modulus)

    def require_nonzero(self, **constants: int) -> None:
        """Raise BadCharacteristic if any named integer vanishes in this field."""
        if not self.is_prime:
            return
        bad = [f"{name}={v}" for name, v in constants.items() if v % self.modulus == 0]
        if bad:
            raise BadCharacteristic(
                f"constants vanish modulo {self.modulus}: {', '.join(bad)}")

    # -- serialization --------------------------------------------------------

    def to_str(self, a) -> str:
        if self.is_prime:
            return str(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse(self, text: str):
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {text!r}") from exc
        if self.is_prime:
            if value.denominator % self.modulus == 0:
                raise ParseError(f"coefficient {text!r} has denominator divisible by p")
        return self(value)

    def to_dict(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.modulus}

    @classmethod
    def from_dict(cls, data) -> FieldCtx:
        if not isinstance(data, dict) or "kind" not in data:
            raise ParseError("field: expected an object with a 'kind' key")
        kind = data["kind"]
        try:
            if kind == "Q":
                return cls.rationals()
            if kind == "Fp":
                return cls.prime(int(data.get("p", MERSENNE_31)))
        except (TypeError, ValueError, UnsupportedField) as exc:
            raise ParseError(f"field.p: {exc}") from exc
        raise ParseError(f"field.kind: unknown kind {kind!r}")


@dataclass(frozen=True)
class FieldElem:
    value: object
    ctx: FieldCtx

    def _lift(self, other):
        return other.value if isinstance(other, FieldElem) else self.ctx(other)

    def __add__(self, other):
        return FieldElem(self.ctx.add(self.value, self._lift(other)), self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx.sub(self.value, self._lift(other)), self.ctx)

    def __rsub__(self, other):
        return FieldElem(self.ctx.sub(self._lift(other), self.value), self.ctx)

    def __mul__(self, other):
        return FieldElem(self.ctx.mul(self.value, self._lift(other)), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx.div(self.value, self._lift(other)), self.ctx)

    def __neg__(self):
        return FieldElem(self.ctx.neg(self.value), self.ctx)

    def inverse(self):
        return FieldElem(self.ctx.inv(self.value), self.ctx)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        try:
            return self.value == self.ctx(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.ctx.to_str(self.value)} in {self.ctx}"
