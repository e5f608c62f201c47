"""Exact dynamics of the interval map x -> {N/x} and its digit expansions.

Everything here is integer arithmetic on rationals: for x = p/q in lowest
terms the map sends p/q to (N*q mod p)/p, so orbits of rationals reach 0 in
finitely many steps and expansion digits come out exactly.  No floating
point is used anywhere in this module; the lossy double-precision shadow
iteration lives in :mod:`ncfrac.ergodic` and is for diagnostics only.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

__all__ = [
    "DEFAULT_MAX_TERMS",
    "Expansion",
    "digit",
    "evaluate",
    "expand",
    "fixed_point",
    "gauss_map",
    "orbit",
]

RationalLike = Union[Fraction, int]

#: Denominators grow at least like N**n, so deep expansions get expensive in
#: arbitrary precision; this cap keeps pathological inputs bounded.
DEFAULT_MAX_TERMS = 10_000


def check_index(N: int) -> int:
    """Validate the map index (a positive integer) and return it."""
    if isinstance(N, bool) or not isinstance(N, int):
        raise ValueError(f"map index must be a positive integer, got {N!r}")
    if N < 1:
        raise ValueError(f"map index must be >= 1, got {N}")
    return N


def _as_unit_rational(x: RationalLike, *, allow_zero: bool = True) -> Fraction:
    """Coerce x to an exact Fraction in [0, 1), rejecting floats outright."""
    if isinstance(x, float):
        raise TypeError(
            "floating-point input would silently break exactness; "
            "pass a Fraction (e.g. Fraction(2, 3))"
        )
    x = Fraction(x)
    if x < 0 or x >= 1:
        raise ValueError(f"point must lie in [0, 1), got {x}")
    if not allow_zero and x == 0:
        raise ValueError("point must be nonzero")
    return x


@dataclass(frozen=True)
class Expansion:
    """Digit sequence of a point under the index-N map.

    ``terminated`` is True iff the orbit reached 0, i.e. the input was a
    rational whose expansion is complete; the infinite-digit convention for
    rationals is represented by this flag, never by a sentinel value.
    """

    N: int
    coeffs: tuple[int, ...]
    terminated: bool

    def __post_init__(self) -> None:
        check_index(self.N)
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if any(a < self.N for a in self.coeffs):
            bad = next(a for a in self.coeffs if a < self.N)
            raise ValueError(f"inadmissible digit {bad} < N = {self.N}")

    def __len__(self) -> int:
        return len(self.coeffs)


def gauss_map(x: RationalLike, N: int) -> Fraction:
    """One exact step of the map: 0 -> 0, otherwise x -> fractional part of N/x.

    >>> gauss_map(Fraction(2, 3), 1)
    Fraction(1, 2)
    """
    check_index(N)
    x = _as_unit_rational(x)
    if x == 0:
        return Fraction(0)
    p, q = x.numerator, x.denominator
    return Fraction(N * q % p, p)


def digit(x: RationalLike, N: int) -> int:
    """Integer part of N/x, the next expansion digit; always >= N for x in (0, 1).

    Undefined at 0 (the orbit has terminated there); callers should consult
    :attr:`Expansion.terminated` instead of probing 0.
    """
    check_index(N)
    x = _as_unit_rational(x, allow_zero=False)
    return N * x.denominator // x.numerator


def orbit(x: RationalLike, N: int) -> Iterator[Fraction]:
    """Yield x, T(x), T^2(x), ... exactly, stopping after the first 0."""
    check_index(N)
    x = _as_unit_rational(x)
    p, q = x.numerator, x.denominator
    yield Fraction(p, q)
    while p != 0:
        r = N * q % p
        g = math.gcd(r, p)
        p, q = r // g, p // g
        yield Fraction(p, q)


def expand(x: RationalLike, N: int, max_terms: int = DEFAULT_MAX_TERMS) -> Expansion:
    """Digit expansion of x, stopping at termination or after max_terms digits.

    The remainder numerators decrease strictly, so every rational terminates.

    >>> expand(Fraction(2, 3), 1).coeffs
    (1, 2)
    """
    check_index(N)
    if max_terms < 0:
        raise ValueError(f"max_terms must be >= 0, got {max_terms}")
    x = _as_unit_rational(x)
    p, q = x.numerator, x.denominator
    coeffs = []
    while p != 0 and len(coeffs) < max_terms:
        a, r = divmod(N * q, p)
        coeffs.append(a)
        g = math.gcd(r, p)
        p, q = r // g, p // g
    return Expansion(N=N, coeffs=tuple(coeffs), terminated=p == 0)


def evaluate(coeffs: Sequence[int], N: int) -> Fraction:
    """Exact value of the finite fraction N/(a_1 + N/(a_2 + ...)), reduced.

    Every digit must be >= N.  The empty sequence evaluates to 0 so that
    expand/evaluate round-trip on all rationals in [0, 1), and the single
    digit [N] evaluates to the boundary value 1, which lies outside the
    map's domain but is still a valid finite fraction.
    """
    check_index(N)
    value = Fraction(0)
    for a in reversed(coeffs):
        try:
            a = operator.index(a)
        except TypeError:
            raise ValueError(f"digits must be integers, got {a!r}") from None
        if a < N:
            raise ValueError(f"inadmissible digit {a} < N = {N}")
        value = Fraction(N, a + value)
    return value


def fixed_point(N: int, p: int, digits: int = 50) -> Fraction:
    """Rational approximation of the period-one point [p, p, p, ...].

    Closed form (sqrt(p*p + 4N) - p) / 2, computed by integer square root so
    the result is within 10**-digits of the true fixed point.  Requires
    p >= N (smaller digits never occur in canonical expansions).

    >>> float(fixed_point(1, 1))  # doctest: +ELLIPSIS
    0.618033988...
    """
    check_index(N)
    if isinstance(p, bool) or not isinstance(p, int) or p < N:
        raise ValueError(f"digit p must be an integer >= N = {N}, got {p!r}")
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    scale = 10 ** (digits + 2)
    root = math.isqrt((p * p + 4 * N) * scale * scale)
    return Fraction(root - p * scale, 2 * scale)
