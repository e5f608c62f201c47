"""Unreduced convergent sequences and their exact integer invariants.

The three-term recursion A_n = a_n*A_{n-1} + N*A_{n-2} (same for B) is
seeded with A_0 = 0, B_0 = 1, A_1 = N, B_1 = a_1.  Those seeds are forced
by the one- and two-digit values N/a_1 and N*a_2/(a_1*a_2 + N) together
with the cross-product identity A_{n-1}*B_n - A_n*B_{n-1} = (-N)**n, which
the seeds satisfy at n = 1.  Convergents are kept unreduced; reduction
happens only in :func:`ncfrac.dynamics.evaluate`.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dynamics import RationalLike, check_index, expand

__all__ = [
    "Convergent",
    "ConvergentTrace",
    "approximation_rate",
    "convergent_sequence",
    "determinant_check",
    "error_bounds_check",
]


@dataclass(frozen=True)
class Convergent:
    """Unreduced numerator/denominator pair at depth n."""

    n: int
    A: int
    B: int

    def ratio(self) -> Fraction:
        if self.n == 0:
            return Fraction(0)
        return Fraction(self.A, self.B)


@dataclass(frozen=True)
class ConvergentTrace:
    """Convergents 0..len(coeffs) of a digit sequence, plus the source digits."""

    N: int
    coeffs: tuple[int, ...]
    convergents: tuple[Convergent, ...]

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    @property
    def final(self) -> Convergent:
        return self.convergents[-1]

    def ratio(self, n: int) -> Fraction:
        return self.convergents[n].ratio()


def convergent_sequence(coeffs: Sequence[int], N: int) -> ConvergentTrace:
    """Run the three-term recursion over admissible digits (all >= N).

    >>> t = convergent_sequence([1, 2], 1)
    >>> [(c.A, c.B) for c in t.convergents]
    [(0, 1), (1, 1), (2, 3)]
    """
    check_index(N)
    try:
        coeffs = tuple(operator.index(a) for a in coeffs)
    except TypeError:
        raise ValueError("digits must be integers") from None
    if not coeffs:
        raise ValueError("need at least one digit")
    for a in coeffs:
        if a < N:
            raise ValueError(f"inadmissible digit {a} (digits are integers >= N = {N})")
    out = [Convergent(0, 0, 1), Convergent(1, N, coeffs[0])]
    A2, A1 = 0, N
    B2, B1 = 1, coeffs[0]
    for n, a in enumerate(coeffs[1:], start=2):
        A2, A1 = A1, a * A1 + N * A2
        B2, B1 = B1, a * B1 + N * B2
        out.append(Convergent(n, A1, B1))
    return ConvergentTrace(N=N, coeffs=coeffs, convergents=tuple(out))


def determinant_check(trace: ConvergentTrace) -> bool:
    """True iff A_{n-1}*B_n - A_n*B_{n-1} == (-N)**n exactly at every n >= 1."""
    expected = 1
    for n in range(1, trace.depth + 1):
        expected *= -trace.N
        prev, cur = trace.convergents[n - 1], trace.convergents[n]
        if prev.A * cur.B - cur.A * prev.B != expected:
            return False
    return True


def approximation_rate(x: RationalLike, N: int, n: int) -> float:
    """Exponential accuracy -(1/n) * ln|x - A_n/B_n| of the depth-n convergent.

    The difference is formed exactly as a rational and only the final
    logarithm is floating point, so there is no cancellation.  Raises if the
    expansion of x terminates at or before depth n (the difference would be
    zero there).
    """
    check_index(N)
    if n < 1:
        raise ValueError(f"depth must be >= 1, got {n}")
    exp = expand(x, N, max_terms=n + 1)
    if exp.terminated and len(exp) <= n:
        raise ValueError(
            f"expansion of {x} terminates after {len(exp)} digits, before depth {n}"
        )
    trace = convergent_sequence(exp.coeffs[:n], N)
    x = Fraction(x)
    conv = trace.final
    num = abs(x.numerator * conv.B - x.denominator * conv.A)
    den = x.denominator * conv.B
    # big-int logs: math.log takes arbitrary-precision integers exactly
    return (math.log(den) - math.log(num)) / n


def error_bounds_check(trace: ConvergentTrace, x: RationalLike) -> bool:
    """Exact sandwich N**(n+1)/(4*B_{n+1}) < |B_n*x - A_n| <= N**n/B_n.

    Checks every n with both sides available (1 <= n < depth); at the final
    depth of a terminated expansion the residual is exactly zero, so only
    the upper bound applies and the strict lower bound is skipped.
    x must be the point whose expansion produced the trace.
    """
    x = Fraction(x)
    N = trace.N
    prefix = expand(x, N, max_terms=trace.depth)
    if prefix.coeffs[: trace.depth] != trace.coeffs:
        raise ValueError("trace digits do not match the expansion of x")
    p, q = x.numerator, x.denominator
    npow = N
    for n in range(1, trace.depth + 1):
        conv = trace.convergents[n]
        residual = Fraction(abs(conv.B * p - conv.A * q), q)
        if residual > Fraction(npow, conv.B):
            return False
        if n < trace.depth:
            nxt = trace.convergents[n + 1]
            if not Fraction(npow * N, 4 * nxt.B) < residual:
                return False
        npow *= N
    return True
