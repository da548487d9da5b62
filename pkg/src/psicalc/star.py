"""The deformed star product, deformed powers of x, and the deformed exponential.

The product is operational: ``star(f, g) = f(xhat_psi) g``, substituting the
deformed multiplication operator for x in the left factor and applying the
result to the right factor.  It is bilinear, noncommutative, and (for
deformed sequences) non-associative; nothing here ever assumes otherwise.

Constants behave asymmetrically when 1_psi != 1: a constant *right* factor
picks up the printed 1/(1_psi) weight (x star 1 = x / 1_psi), while a
constant *left* factor acts as a plain scalar (1 star g = g).  The paper's
notation additionally asserts the symmetric rule alpha star x = alpha x /
1_psi, which is incompatible with the operational definition whenever
1_psi != 1; the operational reading is kept because every verified identity
(Leibniz, the exponential addition law, the Bernoulli engines) depends on
it.  Users of custom sequences with 1_psi != 1 should expect the asymmetry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

from .core import Polynomial, RationalLike, rational
from .errors import CapExceeded, UnknownAxiom
from .operators import (Counterexample, Verdict, psi_derivative,
                        psi_multiplication, substitute)
from .psi import PsiSequence


def _xhat_step(g: Polynomial, psi: PsiSequence) -> Polynomial:
    """One application of the deformed multiplication operator (center 0)."""
    out = [Fraction(0)] + [
        c * (d + 1) / psi.value(d + 1) for d, c in enumerate(g.coeffs)]
    return Polynomial(out)


def star(f: Polynomial, g: Polynomial, psi: PsiSequence,
         cap: Optional[int] = None) -> Polynomial:
    """f(xhat_psi) applied to g."""
    if cap is not None and f and g and f.degree + g.degree > cap:
        raise CapExceeded(
            f"star product degree {f.degree + g.degree} exceeds cap {cap}")
    result = Polynomial()
    current = g
    for m, c in enumerate(f.coeffs):
        if c:
            result = result + current.scale(c)
        if m < len(f.coeffs) - 1:
            current = _xhat_step(current, psi)
    return result


def star_power(n: int, psi: PsiSequence,
               applied_to: Optional[Polynomial] = None) -> Polynomial:
    """The n-th deformed power of x.

    Without an operand this is the plain polynomial (n!/n_psi!) x^n.  With
    an operand g it is the right-nested product x star (x star (... star g)),
    i.e. xhat_psi^n g — NOT the same as substituting the plain polynomial
    into the product, which would pick up an extra n!/n_psi! factor.
    """
    if n < 0:
        raise ValueError("deformed powers need n >= 0")
    if applied_to is None:
        return Polynomial.monomial(n, psi.star_coefficient(n))
    current = applied_to
    for _ in range(n):
        current = _xhat_step(current, psi)
    return current


@dataclass(frozen=True)
class StarSeries:
    """A truncated series tied to the deformation it was built under."""

    poly: Polynomial
    psi: PsiSequence
    truncation: int

    def coefficient(self, n: int) -> Fraction:
        return self.poly.coefficient(n)

    def star(self, other: "StarSeries") -> "StarSeries":
        if self.psi is not other.psi:
            raise ValueError("refusing to mix two different deformation contexts")
        n = min(self.truncation, other.truncation)
        product = star(self.poly, other.poly, self.psi)
        return StarSeries(Polynomial(product.coeffs[:n + 1]), self.psi, n)


def exp_psi(alpha: RationalLike, psi: PsiSequence, order: int) -> StarSeries:
    """Truncation of the deformed exponential: sum a^n x^n / n_psi!."""
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    alpha = rational(alpha)
    coeffs = [alpha ** n / psi.factorial(n) for n in range(order + 1)]
    return StarSeries(Polynomial(coeffs), psi, order)


def classical_exp(alpha: RationalLike, order: int) -> Polynomial:
    """Truncation of the ordinary exponential: sum a^n x^n / n!."""
    alpha = rational(alpha)
    return Polynomial([alpha ** n / Fraction(factorial(n))
                       for n in range(order + 1)])


# -- axiom suite -------------------------------------------------------------------


def random_polynomial(rng: random.Random, max_degree: int,
                      bound: int = 9) -> Polynomial:
    degree = rng.randint(0, max_degree)
    coeffs = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
              for _ in range(degree + 1)]
    return Polynomial(coeffs)


def _fail(name: str, where: str, lhs, rhs, checked: int) -> Verdict:
    return Verdict(name, False, checked=checked,
                   counterexample=Counterexample(where, lhs, rhs))


def _check_obs_a(psi, truncation, cases, rng):
    checked = 0
    dpsi = psi_derivative(psi, truncation + 1)
    for n in range(truncation + 1):
        lhs = dpsi.apply(star_power(n, psi))
        rhs = star_power(n - 1, psi).scale(n) if n else Polynomial()
        checked += 1
        if lhs != rhs:
            return _fail("obs-a", f"n={n}", lhs, rhs, checked)
    return Verdict("obs-a", True, checked=checked)


def _check_obs_c(psi, truncation, cases, rng):
    checked = 0
    pairs = [(Fraction(1), Fraction(1))]
    pairs += [(Fraction(rng.randint(-6, 6), rng.randint(1, 6)),
               Fraction(rng.randint(-6, 6), rng.randint(1, 6)))
              for _ in range(cases)]
    for a, b in pairs:
        lhs_full = star(classical_exp(a, truncation), exp_psi(b, psi, truncation).poly,
                        psi)
        lhs = Polynomial(lhs_full.coeffs[:truncation + 1])
        rhs = exp_psi(a + b, psi, truncation).poly
        checked += 1
        if lhs != rhs:
            return _fail("obs-c", f"alpha={a}, beta={b}", lhs, rhs, checked)
    return Verdict("obs-c", True, checked=checked)


def _leibniz_holds(f, g, psi):
    cap = (int(f.degree) if f else 0) + (int(g.degree) if g else 0) + 2
    dpsi = psi_derivative(psi, cap)
    lhs = dpsi.apply(star(f, g, psi))
    rhs = star(f.derivative(), g, psi) + star(f, dpsi.apply(g), psi)
    return lhs, rhs


def _check_obs_d(psi, truncation, cases, rng):
    checked = 0
    for k in range(min(truncation, 6) + 1):
        for n in range(min(truncation, 6) + 1):
            f = Polynomial.monomial(k)
            g = star_power(n, psi)
            lhs, rhs = _leibniz_holds(f, g, psi)
            checked += 1
            if lhs != rhs:
                return _fail("obs-d", f"k={k}, n={n}", lhs, rhs, checked)
    return Verdict("obs-d", True, checked=checked)


def _check_leibniz(psi, truncation, cases, rng):
    checked = 0
    for i in range(cases):
        f = random_polynomial(rng, min(truncation, 8))
        g = random_polynomial(rng, min(truncation, 8))
        lhs, rhs = _leibniz_holds(f, g, psi)
        checked += 1
        if lhs != rhs:
            return _fail("leibniz", f"case {i}: f={f.coeffs}, g={g.coeffs}",
                         lhs, rhs, checked)
    return Verdict("leibniz", True, checked=checked)


def _check_obs_f(psi, truncation, cases, rng):
    checked = 0
    for i in range(cases):
        f = random_polynomial(rng, min(truncation, 6))
        g = random_polynomial(rng, min(truncation, 6))
        cap = (int(f.degree) if f else 0) + (int(g.degree) if g else 0) + 2
        xhat = psi_multiplication(psi, cap)
        lhs = substitute(f, xhat).compose(substitute(g, xhat)).apply(Polynomial.one())
        g_tilde = star(g, Polynomial.one(), psi)
        rhs = star(f, g_tilde, psi)
        checked += 1
        if lhs != rhs:
            return _fail("obs-f", f"case {i}: f={f.coeffs}, g={g.coeffs}",
                         lhs, rhs, checked)
    return Verdict("obs-f", True, checked=checked)


def _check_star_power_law(psi, truncation, cases, rng):
    checked = 0
    top = min(truncation, 8)
    for n in range(top + 1):
        for k in range(top + 1):
            lhs = star(star_power(n, psi), star_power(k, psi), psi)
            rhs = star_power(n + k, psi).scale(psi.star_coefficient(n))
            checked += 1
            if lhs != rhs:
                return _fail("star-power-law", f"n={n}, k={k}", lhs, rhs, checked)
            if n != k and psi.star_coefficient(n) != psi.star_coefficient(k):
                swapped = star(star_power(k, psi), star_power(n, psi), psi)
                checked += 1
                if swapped == lhs:
                    return _fail("star-power-law",
                                 f"n={n}, k={k}: swapped product should differ",
                                 lhs, swapped, checked)
    return Verdict("star-power-law", True, checked=checked)


def _check_non_assoc(psi, truncation, cases, rng):
    # documented witness at q = 1/2, independent of the psi argument
    witness = PsiSequence.q_deformed(Fraction(1, 2))
    x = Polynomial.x()
    left = star(star(x, x, witness), x, witness)
    right = star(x, star(x, x, witness), witness)
    expected_left = Polynomial.monomial(3, Fraction(64, 21))
    expected_right = Polynomial.monomial(3, Fraction(16, 7))
    if left != expected_left or right != expected_right or left == right:
        return _fail("non-assoc", "((x*x)*x, x*(x*x)) at q=1/2", left, right, 1)
    return Verdict("non-assoc", True, checked=2,
                   note="64/21 x^3 vs 16/7 x^3")


_AXIOM_CHECKS = {
    "obs-a": _check_obs_a,
    "obs-c": _check_obs_c,
    "obs-d": _check_obs_d,
    "leibniz": _check_leibniz,
    "obs-f": _check_obs_f,
    "star-power-law": _check_star_power_law,
    "non-assoc": _check_non_assoc,
}


def axiom_names():
    return tuple(_AXIOM_CHECKS)


def verify_star_axiom(name: str, *, psi: Optional[PsiSequence] = None,
                      truncation: int = 8, cases: int = 100,
                      seed: int = 0) -> Verdict:
    """Run one registered star-product axiom check; see `axiom_names()`."""
    try:
        check = _AXIOM_CHECKS[name]
    except KeyError:
        raise UnknownAxiom(f"unknown axiom {name!r}; "
                           f"known: {', '.join(_AXIOM_CHECKS)}") from None
    return check(psi or PsiSequence.q_deformed(Fraction(1, 2)), truncation,
                 cases, random.Random(seed))
