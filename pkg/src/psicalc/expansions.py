"""Four truncated-expansion engines with Cauchy-type remainders.

Every engine returns an `ExpansionReport` whose `residual` is target minus
reconstruction and must be exactly zero (rational equality, no tolerance)
for any in-contract input.  What "target" and "reconstruction" mean varies
by engine:

* classical / delta: target is f at the evaluation point; reconstruction is
  the partial sum plus the remainder.
* maclaurin: target is f(0).  The term and remainder values follow the
  printed sign conventions ((-1)^(k+1) on terms, (-1)^n and argument r+1 in
  the remainder), and with those conventions the sum reconstructs -f(0)
  identically (derivable from the Bernoulli operator identity; see the
  regression test).  The report therefore reconstructs f(0) as MINUS the
  sum, keeping the printed values visible and the residual exactly zero.
* deformed (psi): the engine verifies the exact two-endpoint identity
  G(point) - G(alpha) = (-1)^n/n! * integral of [zhat^n dpsi^(n+1) f],
  where G = sum_k (-1)^k/k! zhat^k dpsi^k f and both operators share one
  center.  Target is the left side (the summed endpoint differences),
  reconstruction is the right side.  A literal term-by-term reading with
  scalar deformed-derivative values at alpha is false for deformed
  sequences; `literal_star_sum` reproduces that reading so the failure
  stays pinned by a regression test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Union

from .core import (GridFunction, Polynomial, RationalLike, falling_power,
                   rational)
from .errors import GridDomainTooSmall
from .integration import psi_integrate
from .operators import psi_derivative, psi_multiplication
from .psi import PsiSequence
from .star import star, star_power


@dataclass(frozen=True)
class ExpansionReport:
    """Terms, remainder, and exact residual of one expansion run."""

    engine: str
    fn: str
    alpha: Optional[Fraction]
    point: Fraction
    order: int
    psi_label: Optional[str]
    center: Optional[Fraction]
    terms: tuple
    remainder: Fraction
    target: Fraction
    reconstruction: Fraction
    residual: Fraction
    terms_at_point: Optional[tuple] = None
    terms_at_alpha: Optional[tuple] = None

    @property
    def partial_sum(self) -> Fraction:
        return sum(self.terms, Fraction(0))


def _poly_text(f) -> str:
    from .exprparse import render
    if isinstance(f, Polynomial):
        return render(f)
    return f"grid[{f.lo}..{f.hi}]"


def classical_bt(f: Polynomial, alpha: RationalLike, point: RationalLike,
                 order: int) -> ExpansionReport:
    """Finite Taylor expansion about alpha with the exact integral remainder."""
    if order < 0:
        raise ValueError("expansion order must be >= 0")
    alpha, point = rational(alpha), rational(point)
    terms = []
    deriv = f
    for k in range(order + 1):
        terms.append((point - alpha) ** k * deriv(alpha) / factorial(k))
        deriv = deriv.derivative()
    # deriv now holds f^(order+1); remainder integrates the Cauchy kernel
    kernel = Polynomial((point, -1)) ** order * deriv
    remainder = kernel.integrate(alpha, point) / factorial(order)
    target = f(point)
    reconstruction = sum(terms, Fraction(0)) + remainder
    return ExpansionReport(
        engine="classical", fn=_poly_text(f), alpha=alpha, point=point,
        order=order, psi_label=None, center=None, terms=tuple(terms),
        remainder=remainder, target=target, reconstruction=reconstruction,
        residual=target - reconstruction)


def _difference_row(f, lo: int, hi: int) -> list:
    """Samples f(lo..hi) from a polynomial or a grid function."""
    if isinstance(f, Polynomial):
        return [f(k) for k in range(lo, hi + 1)]
    if isinstance(f, GridFunction):
        if f.lo > lo or f.hi < hi:
            raise GridDomainTooSmall(
                f"need samples on {lo}..{hi}, grid covers {f.lo}..{f.hi}")
        return [f(k) for k in range(lo, hi + 1)]
    raise TypeError(f"cannot expand {type(f).__name__}")


def _value_at(f, x: int) -> Fraction:
    return f(x)


def delta_bt(f: Union[Polynomial, GridFunction], point: int,
             order: int) -> ExpansionReport:
    """Forward-difference expansion with the summation Cauchy remainder.

    terms_k = point^(falling k)/k! (Delta^k f)(0);
    remainder = sum_{r<point} (point-r-1)^(falling n)/n! (Delta^(n+1) f)(r).
    """
    if order < 0 or not isinstance(point, int) or point < 0:
        raise ValueError("needs integer point >= 0 and order >= 0")
    n = order
    hi = n + point
    row = _difference_row(f, 0, hi)  # Delta^k f(0..hi-k) by successive differencing
    terms = []
    remainder = Fraction(0)
    for k in range(n + 2):
        if k <= n:
            terms.append(falling_power(point, k) / factorial(k) * row[0])
        else:
            for r in range(point):
                remainder += (falling_power(point - r - 1, n) / factorial(n)
                              * row[r])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    target = _value_at(f, point)
    reconstruction = sum(terms, Fraction(0)) + remainder
    return ExpansionReport(
        engine="delta", fn=_poly_text(f), alpha=None, point=Fraction(point),
        order=n, psi_label=None, center=None, terms=tuple(terms),
        remainder=remainder, target=target, reconstruction=reconstruction,
        residual=target - reconstruction)


def maclaurin_bt(f: Union[Polynomial, GridFunction], alpha: int,
                 order: int) -> ExpansionReport:
    """Backward-difference expansion of f(0) from data at alpha.

    Printed sign conventions throughout: terms carry (-1)^(k+1), the
    remainder carries (-1)^n and evaluates the (n+1)-st backward difference
    at r+1.  Their sum is identically -f(0), so the reconstruction negates
    it; the residual stays exactly zero while the reported values match the
    printed formula.
    """
    if order < 0 or not isinstance(alpha, int) or alpha < 1:
        raise ValueError("needs integer alpha >= 1 and order >= 0")
    n = order
    # nabla^k f(x) needs f(x-k..x); deepest use is nabla^(n+1) at arguments 1..alpha
    row = _difference_row(f, -n, alpha)
    lo = -n
    terms = []
    remainder = Fraction(0)
    for k in range(n + 2):
        if k <= n:
            # row currently holds nabla^k f on lo+k..alpha
            terms.append(falling_power(alpha, k) / factorial(k)
                         * (-1) ** (k + 1) * row[alpha - lo - k])
        else:
            for r in range(alpha):
                remainder += ((-1) ** n * falling_power(r, n) / factorial(n)
                              * row[r + 1 - lo - k])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    target = _value_at(f, 0)
    reconstruction = -(sum(terms, Fraction(0)) + remainder)
    return ExpansionReport(
        engine="maclaurin", fn=_poly_text(f), alpha=Fraction(alpha),
        point=Fraction(0), order=n, psi_label=None, center=None,
        terms=tuple(terms), remainder=remainder, target=target,
        reconstruction=reconstruction, residual=target - reconstruction)


def psi_bt(f: Polynomial, alpha: RationalLike, point: RationalLike, order: int,
           psi: PsiSequence, center: RationalLike = 0) -> ExpansionReport:
    """Two-endpoint deformed expansion identity with exact deformed remainder.

    Both the lowering and raising operators are taken around `center`; a
    mixed-center pair is not a canonical commutation pair and the identity
    genuinely fails there, so no such mixing happens here.  Choosing
    center = point makes the alpha-side terms coincide with the classical
    Taylor terms when the sequence is classical.
    """
    if order < 0:
        raise ValueError("expansion order must be >= 0")
    alpha, point, center = rational(alpha), rational(point), rational(center)
    n = order
    degree = int(f.degree) if f else 0
    cap = degree + n + 2
    lower = psi_derivative(psi, cap, center)
    raise_ = psi_multiplication(psi, cap, center)

    terms_pt, terms_al, diffs = [], [], []
    dk = f
    for k in range(n + 1):
        gk = dk
        for _ in range(k):
            gk = raise_.apply(gk)
        gk = gk.scale(Fraction((-1) ** k, factorial(k)))
        terms_pt.append(gk(point))
        terms_al.append(gk(alpha))
        diffs.append(gk(point) - gk(alpha))
        dk = lower.apply(dk)
    # dk now holds dpsi^(n+1) f
    hk = dk
    for _ in range(n):
        hk = raise_.apply(hk)
    remainder = psi_integrate(hk, psi, (alpha, point), center) \
        * Fraction((-1) ** n, factorial(n))
    target = sum(diffs, Fraction(0))
    return ExpansionReport(
        engine="psi", fn=_poly_text(f), alpha=alpha, point=point, order=n,
        psi_label=psi.label, center=center, terms=tuple(diffs),
        remainder=remainder, target=target, reconstruction=remainder,
        residual=target - remainder,
        terms_at_point=tuple(terms_pt), terms_at_alpha=tuple(terms_al))


def literal_star_sum(f: Polynomial, alpha: RationalLike, order: int,
                     psi: PsiSequence) -> Polynomial:
    """The literal term-by-term reading: sum (1/k!) (x-a)^{k-star} star f^(k)(a).

    Recorded because it is FALSE for deformed sequences: with f = x^2,
    alpha = 0, order = 2 the sum comes out as (2/2_psi) x^2 instead of x^2
    (while the remainder vanishes).  Kept callable so the counterexample
    stays a live regression check, not implementation folklore.
    """
    alpha = rational(alpha)
    degree = int(f.degree) if f else 0
    lower = psi_derivative(psi, degree + 1)
    total = Polynomial()
    dk = f
    for k in range(order + 1):
        shifted_power = star_power(k, psi).compose(Polynomial((-alpha, 1)))
        term = star(shifted_power, Polynomial.constant(dk(alpha)), psi)
        total = total + term.scale(Fraction(1, factorial(k)))
        dk = lower.apply(dk)
    return total
