import random
from fractions import Fraction

import pytest

from psicalc import (CapExceeded, GridFunction, Polynomial, PsiSequence,
                     UnknownIdentity, backward_difference, combine, commutator,
                     derivative, divided_difference, evaluation,
                     forward_difference, identity, identity_names, integral,
                     multiplication_by_x, n_hat,
                     operator_action, psi_derivative,
                     psi_multiplication, q_dilation, shift_operator,
                     substitute, summation, verify_identity)

from conftest import psi_test_set, rand_poly

Q12 = PsiSequence.q_deformed(Fraction(1, 2))


def test_basic_actions():
    assert psi_derivative(Q12, 4).apply(Polynomial.monomial(3)) == \
        Polynomial.monomial(2, Fraction(7, 4))
    assert forward_difference(4).apply(Polynomial.monomial(2)) == Polynomial((1, 2))
    assert psi_multiplication(Q12, 4).apply(Polynomial.monomial(2)) == \
        Polynomial.monomial(3, Fraction(12, 7))
    assert backward_difference(4).apply(Polynomial.monomial(2)) == Polynomial((-1, 2))
    assert shift_operator(3, 4).apply(Polynomial.x()) == Polynomial((3, 1))
    assert q_dilation(Fraction(1, 2), 4).apply(Polynomial.monomial(2)) == \
        Polynomial.monomial(2, Fraction(1, 4))
    assert evaluation(2, 4).apply(Polynomial((1, 0, 1))) == Polynomial.constant(5)


def test_cap_enforced():
    op = derivative(3)
    with pytest.raises(CapExceeded):
        op.apply(Polynomial.monomial(4))
    with pytest.raises(CapExceeded):
        op.image(5)


def test_composition_cap_bookkeeping():
    # raising then lowering needs one degree of headroom, lowering then raising none
    up = multiplication_by_x(10)
    down = derivative(10)
    assert down.compose(up).cap == 9
    assert up.compose(down).cap == 10
    deep = up
    for _ in range(5):
        deep = up.compose(deep)
    assert deep.cap == 5  # each raising factor consumes one degree of headroom


def test_commutator_fixed_cases():
    assert commutator(psi_derivative(Q12, 4), psi_multiplication(Q12, 4)) \
        .apply(Polynomial.monomial(2)) == Polynomial.monomial(2)
    assert commutator(derivative(7), multiplication_by_x(7)) \
        .apply(Polynomial.monomial(5)) == Polynomial.monomial(5)


def test_combine_dispatch():
    ops = [derivative(6), multiplication_by_x(6)]
    assert combine(ops, "commutator").apply(Polynomial.monomial(3)) == \
        Polynomial.monomial(3)
    assert combine([derivative(6)], "scale", Fraction(1, 2)) \
        .apply(Polynomial.monomial(2)) == Polynomial.monomial(1)
    assert combine(ops, "compose").apply(Polynomial.x()) == Polynomial((0, 2))
    assert combine(ops, "add").apply(Polynomial.one()) == Polynomial.monomial(1)


def test_summation_operator_matches_direct_sums():
    # oracle: evaluate a x^n at integers by brute-force summation
    op = summation(8)
    rng = random.Random(1)
    for n in range(7):
        image = op.image(n)
        for x in range(0, 9):
            assert image(x) == sum(Fraction(k) ** n for k in range(x)), (n, x)
    for _ in range(10):
        p = rand_poly(rng, 6)
        ap = op.apply(p)
        for x in range(0, 8):
            assert ap(x) == sum(p(k) for k in range(x))


def test_summation_then_difference_is_identity_on_grid():
    grid = GridFunction.sample(Polynomial.monomial(2), 6)
    summed = grid.partial_sums()
    recovered = summed.delta()
    assert recovered(4) == 16
    assert recovered == grid


def test_integral_operator_vanishes_at_base():
    op = integral(Fraction(1, 2), 6)
    for m in range(6):
        img = op.image(m)
        assert img(Fraction(1, 2)) == 0
        assert img.derivative() == Polynomial.monomial(m)


def test_operator_action_dispatch():
    p = Polynomial.monomial(2)
    assert operator_action("Delta", p) == Polynomial((1, 2))
    grid = GridFunction.sample(p, 5)
    out = operator_action("Delta", grid)
    assert out(2) == 5
    with pytest.raises(UnknownIdentity):
        operator_action("D", grid)
    with pytest.raises(UnknownIdentity):
        operator_action("bogus", p)


def test_substitute_matches_polynomial_in_multiplication():
    # f(x-hat) applied to 1 is f itself when the operator is plain x-multiplication
    f = Polynomial((2, 0, Fraction(1, 3)))
    op = substitute(f, multiplication_by_x(4))
    assert op.apply(Polynomial.one()) == f


# -- registry ---------------------------------------------------------------------


def test_registry_names_complete():
    assert set(identity_names()) >= {
        "ghw", "telescoping", "one-minus-ab", "bernoulli-viskov",
        "jackson-rep", "psi-rep", "hist-eps0", "hist-div-diff",
        "hist-div-diff-printed"}


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify_identity("nope")


def test_ghw_across_sequences_and_centers():
    rng = random.Random(9)
    for psi in psi_test_set():
        center = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        assert verify_identity("ghw", psi=psi, center=center, max_degree=10).passed


def test_mixed_center_pair_is_not_canonical():
    # raising around 2 with lowering around 0: commutator differs from identity
    lower = psi_derivative(Q12, 8, 0)
    upper = psi_multiplication(Q12, 8, 2)
    comm = commutator(lower, upper)
    assert comm.apply(Polynomial.x()) != Polynomial.x()


def test_telescoping_both_pairs():
    assert verify_identity("telescoping", alpha=Fraction(1, 3), order=6,
                           max_degree=8).passed
    assert verify_identity("telescoping", pair="summation", order=6,
                           max_degree=8).passed


def test_telescoping_identity_on_grid():
    # grid-side check of the same identity for the (summation, delta) pair
    n = 3
    p = Polynomial((1, 2, 0, 1))
    m = 9
    f = GridFunction.sample(p, m)

    def a(g):
        return g.partial_sums()

    def b(g):
        return g.delta()

    def eps0(g):
        return GridFunction([g(0)] * len(g), g.lo)

    lhs = None
    for k in range(n + 1):
        term = f
        for _ in range(k):
            term = b(term)
        term = eps0(term)
        for _ in range(k):
            term = a(term)
        term = term.restrict(0, m)
        lhs = term if lhs is None else GridFunction(
            [lhs(i) + term(i) for i in range(m + 1)])
    rest = f
    for _ in range(n + 1):
        rest = b(rest)
    for _ in range(n + 1):
        rest = a(rest)
    rest = rest.restrict(0, m)
    for x in range(m + 1):
        assert lhs(x) == f(x) - rest(x)


def test_one_minus_ab_examples():
    assert verify_identity("one-minus-ab", alpha=1, max_degree=8).passed
    # direct check of the worked case: (1 - ab) x^2 with base 1 gives the constant 1
    a, b = integral(1, 4), derivative(4)
    out = (identity(4) - a.compose(b)).apply(Polynomial.monomial(2))
    assert out == Polynomial.one()


def test_bernoulli_viskov_representations():
    assert verify_identity("bernoulli-viskov", representation="classical",
                           y=2, order=1, max_degree=8).passed
    assert verify_identity("bernoulli-viskov", representation="delta",
                           order=4, max_degree=8).passed
    assert verify_identity("bernoulli-viskov", representation="psi", psi=Q12,
                           order=4, max_degree=8).passed
    assert verify_identity("bernoulli-viskov", representation="falling",
                           psi=Q12, order=3, max_degree=6).passed


def test_jackson_and_psi_representations():
    assert verify_identity("jackson-rep", q=Fraction(1, 2), max_degree=10).passed
    assert verify_identity("jackson-rep", q=Fraction(-2, 3), max_degree=10).passed
    for psi in psi_test_set():
        assert verify_identity("psi-rep", psi=psi, max_degree=10).passed


def test_historical_expansions():
    assert verify_identity("hist-eps0", max_degree=8).passed
    assert verify_identity("hist-div-diff", max_degree=8).passed
    printed = verify_identity("hist-div-diff-printed", max_degree=8)
    assert not printed.passed
    assert printed.counterexample.where == "x^2"
    # the unsigned sum gives (2^m - 1) x^(m-1): at m=2 that is 3x against x
    assert printed.counterexample.lhs == Polynomial.monomial(1, 3)
    assert printed.counterexample.rhs == Polynomial.monomial(1)


def test_hist_eps0_values_by_hand():
    # oracle: binomial identity sum (-1)^n C(m,n) = [m == 0]
    cap = 8
    lhs_images = []
    for m in range(cap + 1):
        total = Polynomial()
        p = Polynomial.monomial(m)
        dn = p
        import math
        for n in range(m + 1):
            total = total + Polynomial.monomial(n, Fraction((-1) ** n, math.factorial(n))) * dn
            dn = dn.derivative()
        lhs_images.append(total)
    assert lhs_images[0] == Polynomial.one()
    assert all(img == Polynomial() for img in lhs_images[1:])


def test_delta_compose_summation_on_grid_example():
    grid = GridFunction.sample(Polynomial.monomial(2), 6)
    assert grid.partial_sums().delta()(4) == 16


def test_n_hat_and_divided_difference_factorization():
    for psi in psi_test_set():
        lhs = n_hat(psi, 9).compose(divided_difference(10))
        rhs = psi_derivative(psi, 10)
        for m in range(10):
            assert lhs.image(m) == rhs.image(m)
