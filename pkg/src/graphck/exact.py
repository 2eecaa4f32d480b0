"""Exact scalar arithmetic: rational phases, Gaussian rationals, polar coefficients.

Three coefficient modes coexist and never mix silently:

* ``gaussian`` -- a + b*i with rational a, b; closed under +, *, conjugation
  and multiplication by quarter-turn phases.
* ``polar``    -- m * exp(2*pi*i*t) with rational m, t; closed under *,
  conjugation and arbitrary rational phases, but sums only combine terms
  pointing in the same (or opposite) direction.
* ``complex``  -- machine complex numbers, compared against ``TOL``.

Anything that would leave the exactly-representable set of the current mode
raises :class:`ExactnessError` instead of silently rounding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

TOL = 1e-9

GAUSSIAN = "gaussian"
POLAR = "polar"
COMPLEX = "complex"

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class ExactnessError(ArithmeticError):
    """An operation left the exactly-representable set of the current mode."""


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected a rational value, got {x!r}")


@dataclass(frozen=True)
class Phase:
    """The unit scalar exp(2*pi*i*turn) with rational ``turn``, reduced mod 1."""

    turn: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "turn", _fraction(self.turn) % 1)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.turn + other.turn)

    def __pow__(self, n: int) -> "Phase":
        return Phase(self.turn * n)

    def conjugate(self) -> "Phase":
        return Phase(-self.turn)

    @property
    def is_one(self) -> bool:
        return self.turn == 0

    @property
    def value(self) -> complex:
        return cmath.rect(1.0, 2.0 * math.pi * float(self.turn))

    def __str__(self) -> str:
        return str(self.turn)


ONE_PHASE = Phase()


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex rational re + im*i."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _fraction(self.re))
        object.__setattr__(self, "im", _fraction(self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def modulus_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        imag = "i" if abs(self.im) == 1 else f"{abs(self.im)}i"
        imag = ("-" if self.im < 0 else "") + imag
        if self.re == 0:
            return imag
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{imag.lstrip('-')})"


@dataclass(frozen=True)
class PolarCoeff:
    """Exact mag * exp(2*pi*i*turn); canonical form keeps turn in [0, 1/2).

    Half-turn rotations fold into the sign of ``mag``, so negation and
    cancellation of opposite-phase terms stay exact.
    """

    mag: Fraction = Fraction(0)
    turn: Fraction = Fraction(0)

    def __post_init__(self):
        mag = _fraction(self.mag)
        turn = _fraction(self.turn) % 1
        if mag == 0:
            turn = Fraction(0)
        elif turn >= HALF:
            turn -= HALF
            mag = -mag
        object.__setattr__(self, "mag", mag)
        object.__setattr__(self, "turn", turn)

    @classmethod
    def from_phase(cls, ph: Phase) -> "PolarCoeff":
        return cls(Fraction(1), ph.turn)

    def __add__(self, other: "PolarCoeff") -> "PolarCoeff":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.turn != other.turn:
            raise ExactnessError(
                f"cannot add polar coefficients with distinct directions "
                f"{self.turn} and {other.turn}"
            )
        return PolarCoeff(self.mag + other.mag, self.turn)

    def __sub__(self, other: "PolarCoeff") -> "PolarCoeff":
        return self + (-other)

    def __neg__(self) -> "PolarCoeff":
        return PolarCoeff(-self.mag, self.turn)

    def __mul__(self, other: "PolarCoeff") -> "PolarCoeff":
        return PolarCoeff(self.mag * other.mag, self.turn + other.turn)

    def conjugate(self) -> "PolarCoeff":
        return PolarCoeff(self.mag, -self.turn)

    @property
    def is_zero(self) -> bool:
        return self.mag == 0

    @property
    def value(self) -> complex:
        return self.mag * cmath.rect(1.0, 2.0 * math.pi * float(self.turn))

    def __str__(self) -> str:
        if self.turn == 0:
            return str(self.mag)
        return f"{self.mag}@{self.turn}"


def mode_of(c) -> str:
    if isinstance(c, GaussianRational):
        return GAUSSIAN
    if isinstance(c, PolarCoeff):
        return POLAR
    if isinstance(c, complex):
        return COMPLEX
    raise TypeError(f"not a coefficient: {c!r}")


def join_modes(a: str, b: str) -> str:
    if a != b:
        raise ExactnessError(f"mixed coefficient modes: {a} and {b}")
    return a


_QUARTER_TURNS = {
    Fraction(0): lambda g: g,
    Fraction(1, 4): lambda g: GaussianRational(-g.im, g.re),
    Fraction(1, 2): lambda g: -g,
    Fraction(3, 4): lambda g: GaussianRational(g.im, -g.re),
}


def _gaussian_to_polar(g: GaussianRational) -> PolarCoeff:
    if g.im == 0:
        return PolarCoeff(g.re, Fraction(0))
    if g.re == 0:
        return PolarCoeff(g.im, QUARTER)
    raise ExactnessError(f"{g} has no exact polar form")


def _polar_to_gaussian(p: PolarCoeff) -> GaussianRational:
    if p.turn == 0:
        return GaussianRational(p.mag)
    if p.turn == QUARTER:
        return GaussianRational(Fraction(0), p.mag)
    raise ExactnessError(f"{p} has no exact Gaussian-rational form")


def coerce(value, mode: str):
    """Convert ``value`` into a coefficient of ``mode``; exact or ExactnessError."""
    if isinstance(value, Phase):
        if mode == GAUSSIAN:
            return _polar_to_gaussian(PolarCoeff.from_phase(value))
        if mode == POLAR:
            return PolarCoeff.from_phase(value)
        return value.value
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        if mode == GAUSSIAN:
            return GaussianRational(value)
        if mode == POLAR:
            return PolarCoeff(value)
        return complex(value)
    if isinstance(value, GaussianRational):
        if mode == GAUSSIAN:
            return value
        if mode == POLAR:
            return _gaussian_to_polar(value)
        return value.value
    if isinstance(value, PolarCoeff):
        if mode == POLAR:
            return value
        if mode == GAUSSIAN:
            return _polar_to_gaussian(value)
        return value.value
    if isinstance(value, (complex, float)):
        if mode == COMPLEX:
            return complex(value)
        raise ExactnessError("inexact value cannot enter an exact mode")
    raise TypeError(f"cannot interpret {value!r} as a coefficient")


def one(mode: str):
    return coerce(1, mode)


def add(a, b):
    if isinstance(a, complex) or isinstance(b, complex):
        return complex(a if isinstance(a, complex) else a.value) + complex(
            b if isinstance(b, complex) else b.value
        )
    join_modes(mode_of(a), mode_of(b))
    return a + b


def mul(a, b):
    if isinstance(a, complex) or isinstance(b, complex):
        return as_complex(a) * as_complex(b)
    join_modes(mode_of(a), mode_of(b))
    return a * b


def conjugate(c):
    if isinstance(c, complex):
        return c.conjugate()
    return c.conjugate()


def times_phase(c, ph):
    """Multiply a coefficient by a unit scalar (Phase, or complex in complex mode)."""
    if isinstance(ph, Phase):
        if ph.turn == 0:
            return c
        if isinstance(c, GaussianRational):
            rot = _QUARTER_TURNS.get(ph.turn)
            if rot is None:
                if c.is_zero:
                    return c
                raise ExactnessError(
                    f"phase {ph} is not a quarter turn; use polar or complex mode"
                )
            return rot(c)
        if isinstance(c, PolarCoeff):
            return PolarCoeff(c.mag, c.turn + ph.turn)
        if isinstance(c, complex):
            return c * ph.value
        raise TypeError(f"not a coefficient: {c!r}")
    if isinstance(ph, complex):
        if isinstance(c, complex):
            return c * ph
        raise ExactnessError("inexact phase on an exact coefficient")
    raise TypeError(f"not a phase: {ph!r}")


def is_zero(c) -> bool:
    if isinstance(c, complex):
        return abs(c) < TOL
    return c.is_zero


def as_complex(c) -> complex:
    if isinstance(c, complex):
        return c
    return c.value


def scalars_equal(a, b) -> bool:
    if isinstance(a, complex) or isinstance(b, complex):
        return abs(as_complex(a) - as_complex(b)) < TOL
    if type(a) is type(b):
        return a == b
    try:
        return coerce(a, mode_of(b)) == b
    except ExactnessError:
        return False


def is_one(c) -> bool:
    return scalars_equal(c, one(mode_of(c)))


def is_unit(c) -> bool:
    """Whether |c| == 1, exactly in exact modes and within TOL otherwise."""
    if isinstance(c, GaussianRational):
        return c.modulus_sq() == 1
    if isinstance(c, PolarCoeff):
        return abs(c.mag) == 1
    if isinstance(c, complex):
        return abs(abs(c) - 1.0) < TOL
    raise TypeError(f"not a coefficient: {c!r}")


def as_phase(c):
    """Return the Phase equal to a unit coefficient, or the coefficient itself
    when it is a unit with no exact rational direction (complex mode)."""
    if isinstance(c, PolarCoeff):
        if c.mag == 1:
            return Phase(c.turn)
        if c.mag == -1:
            return Phase(c.turn + HALF)
    if isinstance(c, GaussianRational):
        for turn, rot in _QUARTER_TURNS.items():
            if rot(GaussianRational(Fraction(1))) == c:
                return Phase(turn)
    if isinstance(c, complex) and is_unit(c):
        return c
    if is_unit(c):
        return c
    raise ExactnessError(f"{c} is not a unit scalar")
