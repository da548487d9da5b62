import random
from fractions import Fraction

import pytest

from psicalc import (GridFunction, Polynomial, PsiSequence, QOutOfRange,
                     cauchy_kernel, integral,
                     jackson_integrate, jackson_symbolic, per_partes_check,
                     psi_derivative, psi_integrate, summation)

from conftest import psi_test_set, rand_poly, rand_rational

Q12 = PsiSequence.q_deformed(Fraction(1, 2))


def test_psi_integrate_fixed_cases():
    assert psi_integrate(Polynomial.monomial(2), Q12) == \
        Polynomial.monomial(3, Fraction(4, 7))
    assert psi_integrate(Polynomial.x(), Q12, (0, 1)) == Fraction(2, 3)
    classical = PsiSequence.classical()
    assert psi_integrate(Polynomial.monomial(2, 3), classical) == \
        Polynomial.monomial(3)


def test_derivative_inverts_integral():
    rng = random.Random(3)
    for psi in psi_test_set():
        d = psi_derivative(psi, 18)
        for _ in range(12):
            p = rand_poly(rng, 16)
            assert d.apply(psi_integrate(p, psi)) == p


def test_integral_of_derivative_loses_center_value():
    rng = random.Random(8)
    for psi in psi_test_set():
        center = rand_rational(rng, 6)
        d = psi_derivative(psi, 12, center)
        for _ in range(6):
            p = rand_poly(rng, 10)
            back = psi_integrate(d.apply(p), psi, center=center)
            assert back == p - Polynomial.constant(p(center))


def test_jackson_symbolic_equals_psi_integral():
    rng = random.Random(12)
    for _ in range(40):
        q = Fraction(rng.randint(-9, 9), 10)
        if q in (0, 1) or 1 + q == 0:
            continue
        psi = PsiSequence.q_deformed(q)
        p = rand_poly(rng, 8)
        z = rand_rational(rng, 6)
        assert jackson_symbolic(p, z, q) == psi_integrate(p, psi, (0, z))


def test_jackson_symbolic_mode_result():
    r = jackson_integrate(Polynomial.monomial(2), 1, Fraction(1, 2),
                          mode="symbolic")
    assert r.value == Fraction(4, 7)
    assert r.mode == "symbolic" and r.tail_bound is None


def test_jackson_numeric_fixed_case():
    r = jackson_integrate(Polynomial.monomial(2), 1, Fraction(1, 2), eps=1e-12)
    assert abs(r.value - 4 / 7) <= r.tail_bound <= 1e-12
    assert abs(r.value - 4 / 7) < 1e-10


def test_jackson_numeric_within_bound_random():
    rng = random.Random(77)
    checked = 0
    while checked < 100:
        p = rand_poly(rng, 8)
        z = rand_rational(rng, 4)
        q = Fraction(rng.randint(1, 99), 100)
        scale = max([1.0] + [abs(float(c) * float(z) ** (n + 1))
                             for n, c in enumerate(p.coeffs)])
        eps = scale * 10.0 ** rng.randint(-11, -5)
        r = jackson_integrate(p, z, q, eps=eps)
        exact = jackson_symbolic(p, z, q)
        assert abs(r.value - float(exact)) <= r.tail_bound, (p.coeffs, z, q)
        assert r.tail_bound <= eps
        checked += 1


def test_jackson_classical_limit():
    r = jackson_integrate(Polynomial.monomial(2), 1, Fraction(999, 1000),
                          eps=1e-4)
    assert abs(r.value - Fraction(1, 3)) < 1e-3


def test_jackson_term_count_mode():
    r = jackson_integrate(Polynomial.monomial(2), 1, Fraction(1, 2), terms=20)
    assert r.terms_used == 20
    assert abs(r.value - 4 / 7) <= r.tail_bound


def test_jackson_rejects_bad_q():
    with pytest.raises(QOutOfRange):
        jackson_integrate(Polynomial.x(), 1, Fraction(3, 2))
    with pytest.raises(QOutOfRange):
        jackson_integrate(Polynomial.x(), 1, Fraction(-1, 2))


def test_jackson_zero_cases():
    r = jackson_integrate(Polynomial(), 1, Fraction(1, 2))
    assert r.value == 0.0 and r.tail_bound == 0.0
    r = jackson_integrate(Polynomial.x(), 0, Fraction(1, 2))
    assert r.value == 0.0


# -- Cauchy kernels -------------------------------------------------------------------


def test_integral_kernel_fixed_cases():
    assert cauchy_kernel(Polynomial.one(), 2, 0, "integral") == \
        Polynomial.monomial(2, Fraction(1, 2))
    p = Polynomial((1, 2, 3))
    anti = p.antiderivative()
    assert cauchy_kernel(p, 1, Fraction(1, 3), "integral") == \
        anti - Polynomial.constant(anti(Fraction(1, 3)))


def test_integral_kernel_equals_iterated_operator():
    rng = random.Random(21)
    for k in range(1, 6):
        for _ in range(6):
            p = rand_poly(rng, 6)
            base = rand_rational(rng, 4)
            single = integral(base, 6 + k)
            iterated = p
            for _ in range(k):
                iterated = single.apply(iterated)
            assert cauchy_kernel(p, k, base, "integral") == iterated, (k, base)


def test_summation_kernel_fixed_case():
    ones = GridFunction([1] * 6)
    out = cauchy_kernel(ones, 2, 0, "summation")
    assert out(3) == 3


def test_summation_kernel_equals_iterated_operator_on_grids():
    rng = random.Random(22)
    for k in range(1, 6):
        p = rand_poly(rng, 4)
        grid = GridFunction.sample(p, 9)
        direct = cauchy_kernel(grid, k, 0, "summation")
        iterated = grid
        for _ in range(k):
            iterated = iterated.partial_sums()
        for x in range(grid.hi + 2):
            assert direct(x) == iterated(x), (k, x)


def test_summation_kernel_polynomial_route():
    rng = random.Random(23)
    for k in range(1, 6):
        p = rand_poly(rng, 5)
        direct = cauchy_kernel(p, k, 0, "summation")
        op = summation(5 + k)
        iterated = p
        for _ in range(k):
            iterated = op.apply(iterated)
        assert direct == iterated, k


def test_kernel_degenerates_to_plain_integral():
    p = Polynomial((0, 0, 1))
    assert cauchy_kernel(p, 1, 0, "integral") == p.antiderivative()


# -- per partes --------------------------------------------------------------------


def test_per_partes_fixed_case():
    r = per_partes_check(Polynomial.x(), Polynomial.monomial(2), Q12, 0, 1)
    assert r.passed
    assert r.lhs == r.rhs == Fraction(8, 7)


def test_per_partes_constant_left_factor():
    g = Polynomial((1, 2, 3))
    r = per_partes_check(Polynomial.constant(5), g, Q12, 0, 2)
    assert r.passed
    # D(const) = 0 so both sides reduce to the boundary difference of 5*g
    product = Polynomial.constant(5) * g
    assert r.rhs == product(2) - product(0)


def test_per_partes_classical_reduction():
    r = per_partes_check(Polynomial.x(), Polynomial.x(),
                         PsiSequence.classical(), 0, 1)
    assert r.passed
    assert r.lhs == Fraction(1, 2)


def test_per_partes_random_triples():
    rng = random.Random(31)
    count = 0
    psis = psi_test_set()
    while count < 100:
        psi = psis[rng.randrange(len(psis))]
        f = rand_poly(rng, 6)
        g = rand_poly(rng, 6)
        a = rand_rational(rng, 5)
        b = rand_rational(rng, 5)
        r = per_partes_check(f, g, psi, a, b)
        assert r.passed, (psi.label, f.coeffs, g.coeffs, a, b)
        count += 1
