"""Exact scalar arithmetic over the rationals and over prime fields.

Rational scalars are plain ``fractions.Fraction`` values; prime-field
scalars are immutable ``Fp`` residues.  A ``FieldSpec`` names the field
in play and coerces, parses and formats scalars for it.  Every other
module treats scalars opaquely through ``+ - * / ==`` and truthiness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    """Malformed field declaration or scalar outside the field."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Fp:
    """Canonical residue in the field of ``p`` elements, 0 <= residue < p."""

    residue: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "residue", self.residue % self.p)

    def _check(self, other: "Fp") -> None:
        if self.p != other.p:
            raise FieldError(f"mixed characteristics {self.p} and {other.p}")

    def __add__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.residue + other.residue, self.p)

    def __sub__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.residue - other.residue, self.p)

    def __mul__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.residue * other.residue, self.p)

    def __neg__(self) -> "Fp":
        return Fp(-self.residue, self.p)

    def inverse(self) -> "Fp":
        if self.residue == 0:
            raise ZeroDivisionError(f"0 has no inverse in F{self.p}")
        return Fp(pow(self.residue, self.p - 2, self.p), self.p)

    def __truediv__(self, other: "Fp") -> "Fp":
        self._check(other)
        return self * other.inverse()

    def __bool__(self) -> bool:
        return self.residue != 0

    def __str__(self) -> str:
        return str(self.residue)


Scalar = Fraction | Fp


@dataclass(frozen=True)
class FieldSpec:
    """The base field of a computation: the rationals or a prime field F_p."""

    kind: str  # "rationals" | "prime_field"
    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise FieldError("the rationals have characteristic 0")
        elif self.kind == "prime_field":
            if not _is_prime(self.characteristic):
                raise FieldError(f"{self.characteristic} is not prime")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    def zero(self) -> Scalar:
        return self.coerce(0)

    def one(self) -> Scalar:
        return self.coerce(1)

    def coerce(self, value) -> Scalar:
        """Turn an int, Fraction, Fp or scalar string into a scalar of this field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.kind == "rationals":
            if isinstance(value, Fp):
                raise FieldError("prime-field residue used in a rational computation")
            return Fraction(value)
        if isinstance(value, Fp):
            if value.p != self.characteristic:
                raise FieldError(f"residue mod {value.p} used in F{self.characteristic}")
            return value
        if isinstance(value, Fraction):
            num = Fp(value.numerator, self.characteristic)
            den = Fp(value.denominator, self.characteristic)
            return num / den
        return Fp(int(value), self.characteristic)

    def parse(self, text: str) -> Scalar:
        """Parse ``n`` or ``n/d`` in this field; ``n/d`` means n * d^-1 in F_p."""
        text = text.strip()
        try:
            if "/" in text:
                num_text, den_text = text.split("/", 1)
                frac = Fraction(int(num_text), int(den_text))
            else:
                frac = Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse scalar {text!r}: {exc}") from exc
        try:
            return self.coerce(frac)
        except ZeroDivisionError as exc:
            raise FieldError(f"scalar {text!r} has no meaning in {self}: {exc}") from exc

    def format(self, value: Scalar) -> str:
        return str(value)

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "Q"
        return f"F{self.characteristic}"


QQ = FieldSpec("rationals")


def prime_field(p: int) -> FieldSpec:
    return FieldSpec("prime_field", p)


def parse_field(text: str) -> FieldSpec:
    """Read a field name: ``Q`` for the rationals, ``F<p>`` for a prime field."""
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("F") and text[1:].isdigit():
        return prime_field(int(text[1:]))
    raise FieldError(f"unknown field {text!r} (expected Q or F<p>)")
