"""Deformed antiderivatives, Jackson q-integration, and Cauchy-type kernels.

The deformed indefinite integral maps (x-c)^m to (x-c)^(m+1)/(m+1)_psi; the
definite integral is F(b) - F(a) of that canonical antiderivative.  Jackson
integration comes in two modes: symbolic, which returns the exact closed
form sum c_n z^(n+1) / (n+1)_q and must coincide with the deformed integral
under the q-sequence, and numeric, which sums the defining series in
floating point and reports a rigorous geometric tail bound (polynomials
make every monomial's tail exactly geometric, so the bound is sharp).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Union

from .core import (GridFunction, Polynomial, RationalLike, falling_power,
                   from_rebased, newton_interpolate, rational)
from .errors import NonIntegerGridArg, QOutOfRange
from .psi import PsiSequence
from .star import star
from .operators import psi_derivative


def psi_antiderivative(p: Polynomial, psi: PsiSequence,
                       center: RationalLike = 0) -> Polynomial:
    """Termwise (x-c)^m -> (x-c)^(m+1)/(m+1)_psi, zero constant term."""
    center = rational(center)
    cs = p.rebase(center)
    out = [Fraction(0)] + [c / psi.value(i + 1) for i, c in enumerate(cs)]
    return from_rebased(out, center)


def psi_integrate(p: Polynomial, psi: PsiSequence,
                  bounds: Optional[tuple] = None,
                  center: RationalLike = 0) -> Union[Polynomial, Fraction]:
    """Indefinite deformed integral, or its difference over (a, b) bounds."""
    anti = psi_antiderivative(p, psi, center)
    if bounds is None:
        return anti
    a, b = rational(bounds[0]), rational(bounds[1])
    return anti(b) - anti(a)


@dataclass(frozen=True)
class QuadratureResult:
    """One Jackson integration outcome.

    Symbolic mode carries an exact Fraction and no tail data; numeric mode
    carries a float with `terms_used` summed and a bound `tail_bound` on
    |value - exact| (series truncation plus nothing else; the float
    rounding inside the partial sum is far below any requested tolerance).
    """

    value: Union[Fraction, float]
    mode: str
    terms_used: Optional[int] = None
    tail_bound: Optional[float] = None


def jackson_symbolic(p: Polynomial, z: RationalLike, q: RationalLike) -> Fraction:
    """Exact q-integral of a polynomial from 0 to z: sum c_n z^(n+1)/(n+1)_q."""
    z = rational(z)
    psi = PsiSequence.q_deformed(q)
    return sum((c * z ** (n + 1) / psi.value(n + 1)
                for n, c in enumerate(p.coeffs)), Fraction(0))


def _truncation_tail(p: Polynomial, z: float, q: float, terms: int) -> float:
    """Truncation tail of the Jackson series after `terms` terms.

    Each monomial c_n x^n contributes the exactly geometric tail
    |c_n z^(n+1)| (1-q) q^(terms*(n+1)) / (1 - q^(n+1)).
    """
    total = 0.0
    for n, c in enumerate(p.coeffs):
        if c:
            ratio = q ** (n + 1)
            total += abs(float(c) * z ** (n + 1)) * (1 - q) \
                * ratio ** terms / (1 - ratio)
    return total


def _rounding_allowance(p: Polynomial, z: float, q: float, terms: int) -> float:
    """A-priori bound on the floating-point error of the partial sum.

    The geometric tail is sharp (equality for single-sign integrands), so
    the reported bound must also absorb summation rounding; the series sum
    itself is correctly rounded (math.fsum), leaving per-term Horner and
    power-drift errors of order (terms + degree) ulp per unit of the
    absolute term sum, bounded here by the full geometric majorant.
    """
    majorant = 0.0
    for n, c in enumerate(p.coeffs):
        if c:
            ratio = q ** (n + 1)
            majorant += abs(float(c) * z ** (n + 1)) * (1 - q) / (1 - ratio)
    return (terms + len(p.coeffs) + 8) * sys.float_info.epsilon * majorant


def _tail_bound(p: Polynomial, z: float, q: float, terms: int) -> float:
    return _truncation_tail(p, z, q, terms) + _rounding_allowance(p, z, q, terms)


def jackson_partial_sums(p: Polynomial, z: float, q: float, terms: int) -> list:
    """Partial sums (1-q) z sum_{k<K} p(q^k z) q^k for K = 1..terms."""
    sums = []
    acc = 0.0
    qk = 1.0
    coeffs = [float(c) for c in p.coeffs]
    for _ in range(terms):
        point = qk * z
        value = 0.0
        for c in reversed(coeffs):
            value = value * point + c
        acc += value * qk
        qk *= q
        sums.append((1 - q) * z * acc)
    return sums


def _jackson_sum(p: Polynomial, z: float, q: float, terms: int) -> float:
    """(1-q) z sum_{k<terms} p(q^k z) q^k with a correctly rounded series sum."""
    coeffs = [float(c) for c in p.coeffs]
    values = []
    qk = 1.0
    for _ in range(terms):
        point = qk * z
        value = 0.0
        for c in reversed(coeffs):
            value = value * point + c
        values.append(value * qk)
        qk *= q
    return (1 - q) * z * math.fsum(values)


def jackson_integrate(p: Polynomial, z: RationalLike, q: RationalLike, *,
                      mode: str = "numeric", eps: Optional[float] = None,
                      terms: Optional[int] = None) -> QuadratureResult:
    """Jackson q-integral of a polynomial from 0 to z.

    Numeric mode needs 0 < q < 1 and either a tolerance `eps` (the term
    count is chosen so the tail bound meets it) or an explicit term count.
    """
    z = rational(z)
    q = rational(q)
    if mode == "symbolic":
        return QuadratureResult(jackson_symbolic(p, z, q), "symbolic")
    if mode != "numeric":
        raise ValueError(f"unknown Jackson mode {mode!r}")
    if not 0 < q < 1:
        raise QOutOfRange(f"numeric Jackson integration needs 0 < q < 1, got {q}")
    if p.is_zero() or z == 0:
        return QuadratureResult(0.0, "numeric", terms_used=0, tail_bound=0.0)

    zf, qf = float(z), float(q)
    if terms is None:
        if eps is None:
            eps = 1e-12
        terms = 1
        while _tail_bound(p, zf, qf, terms) > eps:
            # once truncation is negligible, the remaining gap is the float
            # summation floor, which only grows with more terms
            if _truncation_tail(p, zf, qf, terms) <= 0.25 * eps or terms > 1 << 26:
                raise QOutOfRange(
                    f"tolerance {eps} is below the floating-point floor for "
                    f"this integrand; loosen eps or use symbolic mode")
            terms *= 2
        lo, hi = terms // 2, terms
        while lo < hi:
            mid = (lo + hi) // 2
            if _tail_bound(p, zf, qf, mid) <= eps:
                hi = mid
            else:
                lo = mid + 1
        terms = lo
    value = _jackson_sum(p, zf, qf, terms)
    return QuadratureResult(value, "numeric", terms_used=terms,
                            tail_bound=_tail_bound(p, zf, qf, terms))


# -- Cauchy-type iterated kernels ----------------------------------------------------


def _integral_kernel(f: Polynomial, k: int, base: Fraction) -> Polynomial:
    """integral from base to x of (x-t)^(k-1)/(k-1)! f(t) dt, exactly.

    Expand (x-t)^(k-1) binomially in t; each piece is an ordinary definite
    integral of t^j f(t) with a polynomial-in-x prefactor.
    """
    result = Polynomial()
    kf = Fraction(1, factorial(k - 1))
    for j in range(k):
        binom = Fraction(math.comb(k - 1, j) * (-1) ** j)
        inner = (Polynomial.monomial(j) * f).antiderivative()
        definite = inner - Polynomial.constant(inner(base))
        result = result + Polynomial.monomial(k - 1 - j, kf * binom) * definite
    return result


def _summation_kernel_value(f, k: int, x: int) -> Fraction:
    """sum_{r=0}^{x-1} (x-r-1)^(falling k-1)/(k-1)! f(r)."""
    kf = Fraction(1, factorial(k - 1))
    total = Fraction(0)
    for r in range(x):
        total += kf * falling_power(x - r - 1, k - 1) * f(r)
    return total


def cauchy_kernel(f, k: int, base: RationalLike = 0,
                  mode: str = "integral"):
    """The k-fold antiderivative/antisum written as a single kernel pass.

    integral mode: polynomial in, polynomial out.
    summation mode: grid in, grid out (domain grows by one point); a
    polynomial in gives the exact polynomial through Newton interpolation
    of the directly summed values.
    Both must agree with k-fold application of the single-step operator.
    """
    if k < 1:
        raise ValueError("kernel order k must be >= 1")
    if mode == "integral":
        if not isinstance(f, Polynomial):
            raise NonIntegerGridArg("integral-mode kernels take polynomials")
        return _integral_kernel(f, k, rational(base))
    if mode != "summation":
        raise ValueError(f"unknown kernel mode {mode!r}")
    base = rational(base)
    if base != 0:
        raise NonIntegerGridArg("summation-mode kernels start at 0")
    if isinstance(f, GridFunction):
        if f.lo != 0:
            raise NonIntegerGridArg("summation-mode kernels need domain start 0")
        values = [_summation_kernel_value(f, k, x) for x in range(f.hi + 2)]
        return GridFunction(values, 0)
    if isinstance(f, Polynomial):
        degree = int(f.degree) if f else 0
        points = degree + k + 1
        values = [_summation_kernel_value(f, k, x) for x in range(points + 1)]
        return newton_interpolate(values)
    raise NonIntegerGridArg(f"cannot take a Cauchy kernel of {type(f).__name__}")


# -- per partes --------------------------------------------------------------------


@dataclass(frozen=True)
class PerPartesResult:
    passed: bool
    lhs: Fraction
    rhs: Fraction


def per_partes_check(f: Polynomial, g: Polynomial, psi: PsiSequence,
                     a: RationalLike, b: RationalLike,
                     center: RationalLike = 0) -> PerPartesResult:
    """integral of (f star dpsi g) vs boundary term minus integral of (Df star g)."""
    a, b = rational(a), rational(b)
    bounds = (a, b)
    cap = (int(f.degree) if f else 0) + (int(g.degree) if g else 0) + 2
    dpsi = psi_derivative(psi, cap, center)
    lhs = psi_integrate(star(f, dpsi.apply(g), psi), psi, bounds, center)
    product = star(f, g, psi)
    boundary = product(b) - product(a)
    rhs = boundary - psi_integrate(star(f.derivative(), g, psi), psi, bounds,
                                   center)
    return PerPartesResult(lhs == rhs, lhs, rhs)
