"""Exact univariate polynomials and rational functions over the integers.

Coefficient lists are ascending: index ``i`` holds the coefficient of ``x**i``.
A ``RationalGF`` is always stored reduced, with integer content 1 and a
denominator whose lowest nonzero coefficient is positive, so two rational
functions are equal exactly when their fields are equal.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

from .errors import GrowthRateError, RatfunError, RationalDivisionError

_LOGGER = logging.getLogger(__name__)

_X = sympy.Symbol("x")
GROWTH_TOLERANCE = Fraction(1, 10**12)


@dataclass(frozen=True, slots=True)
class Polynomial:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> Polynomial:
        return cls((0,) * degree + (coeff,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        return gcd(*self.coeffs) if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        size = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial) -> Polynomial:
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def exact_div(self, k: int) -> Polynomial:
        return Polynomial(tuple(c // k for c in self.coeffs))

    def __str__(self) -> str:
        return format_polynomial(self)


_ONE_POLY = Polynomial((1,))


def _as_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, int):
        return Polynomial((value,))
    return Polynomial(tuple(value))


def _to_sympy(p: Polynomial) -> sympy.Poly:
    return sympy.Poly(list(reversed(p.coeffs)) or [0], _X, domain=sympy.ZZ)


def _from_sympy(poly: sympy.Poly) -> Polynomial:
    return Polynomial(tuple(int(c) for c in reversed(poly.all_coeffs())))


@lru_cache(maxsize=1 << 14)
def _normalize(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero:
        raise RationalDivisionError("denominator is the zero polynomial")
    if num.is_zero:
        return Polynomial(), _ONE_POLY
    if den.degree > 0 and num.degree > 0:
        _, num_sym, den_sym = _to_sympy(num).cofactors(_to_sympy(den))
        num, den = _from_sympy(num_sym), _from_sympy(den_sym)
    content = gcd(num.content(), den.content())
    lowest = next(c for c in den.coeffs if c != 0)
    if lowest < 0:
        content = -content
    if content != 1:
        num, den = num.exact_div(content), den.exact_div(content)
    return num, den


@dataclass(frozen=True, slots=True)
class RationalGF:
    """A reduced ratio ``num / den`` of integer polynomials."""

    num: Polynomial
    den: Polynomial = _ONE_POLY

    def __post_init__(self):
        num, den = _normalize(_as_poly(self.num), _as_poly(self.den))
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def from_coeffs(cls, num: Iterable[int], den: Iterable[int] = (1,)) -> RationalGF:
        return cls(Polynomial(tuple(num)), Polynomial(tuple(den)))

    @classmethod
    def from_json(cls, obj: dict) -> RationalGF:
        return cls.from_coeffs(obj["num"], obj["den"])

    def to_json(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other):
        return rf_add(self, _as_gf(other))

    __radd__ = __add__

    def __sub__(self, other):
        return rf_sub(self, _as_gf(other))

    def __rsub__(self, other):
        return rf_sub(_as_gf(other), self)

    def __mul__(self, other):
        return rf_mul(self, _as_gf(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rf_div(self, _as_gf(other))

    def __rtruediv__(self, other):
        return rf_div(_as_gf(other), self)

    def __neg__(self):
        return RationalGF(-self.num, self.den)

    def __str__(self) -> str:
        return format_gf(self)


ZERO = RationalGF(Polynomial())
ONE = RationalGF(_ONE_POLY)
X = RationalGF(Polynomial((0, 1)))


def _as_gf(value) -> RationalGF:
    if isinstance(value, RationalGF):
        return value
    if isinstance(value, int):
        return RationalGF(Polynomial((value,)))
    if isinstance(value, Polynomial):
        return RationalGF(value)
    raise TypeError(f"cannot combine RationalGF with {type(value).__name__}")


def rf_add(a: RationalGF, b: RationalGF) -> RationalGF:
    if a.den == b.den:
        return RationalGF(a.num + b.num, a.den)
    return RationalGF(a.num * b.den + b.num * a.den, a.den * b.den)


def rf_sub(a: RationalGF, b: RationalGF) -> RationalGF:
    return rf_add(a, -b)


def rf_mul(a: RationalGF, b: RationalGF) -> RationalGF:
    return RationalGF(a.num * b.num, a.den * b.den)


def rf_div(a: RationalGF, b: RationalGF) -> RationalGF:
    if b.is_zero:
        raise RationalDivisionError("division by the zero rational function")
    return RationalGF(a.num * b.den, a.den * b.num)


def series(f: RationalGF, nmax: int) -> list[int]:
    """Return the Taylor coefficients ``[a_0, ..., a_nmax]`` of ``f`` at 0."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    den = f.den.coeffs
    d0 = den[0]
    if d0 == 0:
        raise RatfunError(f"{format_gf(f)} has a pole at 0 and no power series")
    out: list[int] = []
    for n in range(nmax + 1):
        acc = f.num.coeff(n)
        for i in range(1, min(n, len(den) - 1) + 1):
            acc -= den[i] * out[n - i]
        q, r = divmod(acc, d0)
        if r:
            raise RatfunError(f"coefficient {n} of {format_gf(f)} is not an integer")
        out.append(q)
    return out


def linear_recurrence(f: RationalGF) -> tuple[list[int], int]:
    """Return ``(c, start)`` with ``a_n = sum(c[i-1] * a_{n-i})`` for every ``n >= start``."""
    den = f.den.coeffs
    if den[0] != 1:
        raise RatfunError("recurrence needs a denominator with constant term 1")
    return [-c for c in den[1:]], max(f.num.degree + 1, len(den) - 1)


def _smallest_positive_root(den: Polynomial) -> Fraction | None:
    # An isolating interval may end on a neighbouring root; only a degenerate
    # interval pins the root itself.
    sqf = _to_sympy(den).sqf_part()
    eps = sympy.Rational(GROWTH_TOLERANCE.numerator, GROWTH_TOLERANCE.denominator)
    candidates = [
        (Fraction(int(lo.p), int(lo.q)), Fraction(int(hi.p), int(hi.q)))
        for (lo, hi), _mult in sqf.intervals(inf=0, eps=eps)
        if hi > 0
    ]
    if not candidates:
        return None
    lo, hi = min(candidates)
    if lo == hi:
        return lo
    return (lo + hi) / 2


def growth_rate(f: RationalGF) -> float:
    """Exponential growth of the coefficients: 1/r for the smallest positive pole r.

    Polynomials (eventually-zero sequences) have growth 0.
    """
    if f.den.degree <= 0:
        return 0.0
    root = _smallest_positive_root(f.den)
    if root is None:
        raise GrowthRateError(f"denominator of {format_gf(f)} has no positive real root")
    _LOGGER.debug("dominant singularity of %s near %.15f", format_gf(f), float(root))
    return float(1 / root)


def format_polynomial(p: Polynomial, var: str = "x") -> str:
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for degree, c in enumerate(p.coeffs):
        if c == 0:
            continue
        magnitude = abs(c)
        if degree == 0:
            body = str(magnitude)
        else:
            mono = var if degree == 1 else f"{var}^{degree}"
            body = mono if magnitude == 1 else f"{magnitude}{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def _wrap(p: Polynomial) -> str:
    text = format_polynomial(p)
    terms = sum(1 for c in p.coeffs if c)
    return f"({text})" if terms > 1 else text


def format_gf(f: RationalGF) -> str:
    """Human-readable form, e.g. ``(x - x^2)/(1 - 2x)``."""
    if f.den == _ONE_POLY:
        return format_polynomial(f.num)
    return f"{_wrap(f.num)}/{_wrap(f.den)}"

