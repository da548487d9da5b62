"""Linear operators on the degree-capped polynomial space.

An operator is stored by its action on basis monomials and extended
linearly, so linearity holds by construction and identity checking reduces
to comparing images over the basis.  Caps bound the *input* degree; every
combinator recomputes the cap of its result so no silent truncation can
occur (a composition whose inner factor raises degrees past the outer
factor's cap is rejected with `CapExceeded`).

The registry at the bottom verifies the named operator identities
exhaustively on monomials (or on a shifted-center basis) up to a requested
degree and reports the first counterexample if one exists.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Optional

from .core import (GridFunction, Polynomial, RationalLike, from_rebased,
                   newton_interpolate, rational)
from .errors import CapExceeded, UnknownIdentity
from .psi import CLASSICAL, PsiSequence


@dataclass(frozen=True)
class Counterexample:
    where: str
    lhs: object
    rhs: object


@dataclass(frozen=True)
class Verdict:
    """Outcome of one identity/axiom check."""

    identity: str
    passed: bool
    checked: int = 0
    counterexample: Optional[Counterexample] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed


class LinearOperator:
    """Linear map on polynomials of degree <= cap.

    `degree_shift` is a bound d with deg(op @ x^m) <= m + d for all m; it is
    what the combinators use to keep composition caps honest.  Basis images
    are computed lazily and cached; the cache is lock-protected, so built
    operators may be shared across threads.
    """

    __slots__ = ("name", "cap", "degree_shift", "_action", "_images", "_lock")

    def __init__(self, name: str, cap: int, degree_shift: int,
                 action: Callable[[int], Polynomial]):
        if cap < 0:
            raise CapExceeded(f"operator {name!r} built with negative cap {cap}")
        self.name = name
        self.cap = cap
        self.degree_shift = degree_shift
        self._action = action
        self._images = {}
        self._lock = threading.Lock()

    def image(self, m: int) -> Polynomial:
        """Image of the basis monomial x^m."""
        if m < 0 or m > self.cap:
            raise CapExceeded(f"{self.name}: basis degree {m} outside cap {self.cap}")
        img = self._images.get(m)
        if img is None:
            img = self._action(m)
            if img.degree > m + self.degree_shift:
                raise AssertionError(
                    f"{self.name}: image of x^{m} breaks declared degree shift")
            with self._lock:
                self._images.setdefault(m, img)
        return self._images[m]

    def apply(self, p: Polynomial) -> Polynomial:
        if p.degree > self.cap:
            raise CapExceeded(
                f"{self.name}: input degree {p.degree} exceeds cap {self.cap}")
        result = Polynomial()
        for m, c in enumerate(p.coeffs):
            if c:
                result = result + self.image(m).scale(c)
        return result

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.apply(p)

    # -- combinators -----------------------------------------------------------

    def compose(self, inner: "LinearOperator") -> "LinearOperator":
        """self after inner."""
        cap = min(inner.cap, self.cap - inner.degree_shift)
        if cap < 0:
            raise CapExceeded(
                f"composition {self.name} . {inner.name} leaves no admissible degree")
        return LinearOperator(
            f"({self.name} . {inner.name})", cap,
            self.degree_shift + inner.degree_shift,
            lambda m: self.apply(inner.image(m)))

    def __mul__(self, other):
        if isinstance(other, LinearOperator):
            return self.compose(other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def scale(self, c: RationalLike) -> "LinearOperator":
        c = rational(c)
        return LinearOperator(f"({c}*{self.name})", self.cap, self.degree_shift,
                              lambda m: self.image(m).scale(c))

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        cap = min(self.cap, other.cap)
        shift = max(self.degree_shift, other.degree_shift)
        return LinearOperator(f"({self.name} + {other.name})", cap, shift,
                              lambda m: self.image(m) + other.image(m))

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return self + other.scale(-1)

    def __neg__(self) -> "LinearOperator":
        return self.scale(-1)

    def power(self, k: int) -> "LinearOperator":
        if k < 0:
            raise ValueError("operator powers must be >= 0")
        result = identity(self.cap)
        for _ in range(k):
            result = self.compose(result)
        return result

    def __repr__(self) -> str:
        return f"LinearOperator({self.name!r}, cap={self.cap})"


def commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    return a.compose(b) - b.compose(a)


def combine(ops, kind: str, c: RationalLike = 1) -> LinearOperator:
    """Fold operators by name: compose | add | scale | commutator."""
    ops = list(ops)
    if kind == "compose":
        result = ops[0]
        for op in ops[1:]:
            result = result.compose(op)
        return result
    if kind == "add":
        result = ops[0]
        for op in ops[1:]:
            result = result + op
        return result
    if kind == "scale":
        return ops[0].scale(c)
    if kind == "commutator":
        if len(ops) != 2:
            raise ValueError("commutator takes exactly two operators")
        return commutator(ops[0], ops[1])
    raise ValueError(f"unknown combinator {kind!r}")


# -- named operators ------------------------------------------------------------


def identity(cap: int) -> LinearOperator:
    return LinearOperator("1", cap, 0, lambda m: Polynomial.monomial(m))


def derivative(cap: int) -> LinearOperator:
    """D = d/dx."""
    return LinearOperator("D", cap, -1, lambda m: Polynomial.monomial(m).derivative())


def divided_difference(cap: int) -> LinearOperator:
    """x^m -> x^(m-1), constants -> 0 (degree lowering with unit weights)."""
    return LinearOperator(
        "d0", cap, -1,
        lambda m: Polynomial.monomial(m - 1) if m >= 1 else Polynomial())


def evaluation(alpha: RationalLike, cap: int) -> LinearOperator:
    """f -> f(alpha), as a constant polynomial."""
    alpha = rational(alpha)
    return LinearOperator(f"eval[{alpha}]", cap, 0,
                          lambda m: Polynomial.constant(alpha ** m))


def multiplication(p: Polynomial, cap: int) -> LinearOperator:
    """f -> p*f."""
    shift = int(p.degree) if p else 0
    return LinearOperator(f"mult[{p.coeffs}]", cap, shift,
                          lambda m: p * Polynomial.monomial(m))


def multiplication_by_x(cap: int) -> LinearOperator:
    return LinearOperator("x", cap, 1, lambda m: Polynomial.monomial(m + 1))


def shift_operator(a: RationalLike, cap: int) -> LinearOperator:
    """E^a: f(x) -> f(x+a)."""
    a = rational(a)
    inner = Polynomial((a, 1))
    return LinearOperator(f"E^{a}", cap, 0,
                          lambda m: Polynomial.monomial(m).compose(inner))


def forward_difference(cap: int) -> LinearOperator:
    """Delta = E^1 - 1 on polynomials."""
    return LinearOperator(
        "Delta", cap, -1,
        lambda m: Polynomial.monomial(m).compose(Polynomial((1, 1)))
        - Polynomial.monomial(m))


def backward_difference(cap: int) -> LinearOperator:
    """nabla = 1 - E^(-1) on polynomials."""
    return LinearOperator(
        "nabla", cap, -1,
        lambda m: Polynomial.monomial(m)
        - Polynomial.monomial(m).compose(Polynomial((-1, 1))))


def q_dilation(q: RationalLike, cap: int) -> LinearOperator:
    """Q: f(x) -> f(qx)."""
    q = rational(q)
    return LinearOperator(f"Q[{q}]", cap, 0,
                          lambda m: Polynomial.monomial(m, q ** m))


def n_hat(psi: PsiSequence, cap: int) -> LinearOperator:
    """Diagonal weight x^m -> (m+1)_psi x^m (the degree-lowering companion)."""
    return LinearOperator(f"nhat[{psi.label}]", cap, 0,
                          lambda m: Polynomial.monomial(m, psi.value(m + 1)))


def psi_derivative(psi: PsiSequence, cap: int,
                   center: RationalLike = 0) -> LinearOperator:
    """(x-c)^m -> m_psi (x-c)^(m-1)."""
    center = rational(center)

    def action(m: int) -> Polynomial:
        cs = Polynomial.monomial(m).rebase(center)
        out = [psi.value(i) * c for i, c in enumerate(cs)][1:]
        return from_rebased(out, center)

    return LinearOperator(f"dpsi[{psi.label};c={center}]", cap, -1, action)


def psi_multiplication(psi: PsiSequence, cap: int,
                       center: RationalLike = 0) -> LinearOperator:
    """(x-c)^m -> ((m+1)/(m+1)_psi) (x-c)^(m+1); center 0 is the deformed x-hat."""
    center = rational(center)

    def action(m: int) -> Polynomial:
        cs = Polynomial.monomial(m).rebase(center)
        out = [Fraction(0)] + [
            c * (i + 1) / psi.value(i + 1) for i, c in enumerate(cs)]
        return from_rebased(out, center)

    return LinearOperator(f"xpsi[{psi.label};c={center}]", cap, 1, action)


def summation(cap: int) -> LinearOperator:
    """a: the polynomial with (a f)(x) = sum_{k=0}^{x-1} f(k).

    Monomial images come from Newton's forward-difference form, evaluated
    on exact partial sums, so the result agrees with the defining sum at
    every nonnegative integer and is exact.
    """

    def action(m: int) -> Polynomial:
        mono = Polynomial.monomial(m)
        sums = [Fraction(0)]
        for k in range(m + 2):
            sums.append(sums[-1] + mono(k))
        # degree m+1 polynomial through (j, sums[j]) for j = 0..m+2
        return newton_interpolate(sums)

    return LinearOperator("a", cap, 1, action)


def integral(alpha: RationalLike, cap: int) -> LinearOperator:
    """f -> integral from alpha to x of f(t) dt (vanishes at alpha)."""
    alpha = rational(alpha)

    def action(m: int) -> Polynomial:
        anti = Polynomial.monomial(m).antiderivative()
        return anti - Polynomial.constant(anti(alpha))

    return LinearOperator(f"int[{alpha}]", cap, 1, action)


def psi_integral(psi: PsiSequence, cap: int,
                 center: RationalLike = 0) -> LinearOperator:
    """(x-c)^m -> (x-c)^(m+1) / (m+1)_psi, the right inverse of psi_derivative."""
    center = rational(center)

    def action(m: int) -> Polynomial:
        cs = Polynomial.monomial(m).rebase(center)
        out = [Fraction(0)] + [c / psi.value(i + 1) for i, c in enumerate(cs)]
        return from_rebased(out, center)

    return LinearOperator(f"ipsi[{psi.label};c={center}]", cap, 1, action)


def substitute(f: Polynomial, op: LinearOperator) -> LinearOperator:
    """f(op) = sum f_m op^m (op^0 = identity)."""
    result = identity(op.cap).scale(f.coefficient(0))
    power = identity(op.cap)
    for m in range(1, len(f.coeffs)):
        power = op.compose(power)
        c = f.coefficient(m)
        if c:
            result = result + power.scale(c)
    return result


# -- grid-side actions -----------------------------------------------------------

def grid_delta(f: GridFunction) -> GridFunction:
    return f.delta()


def grid_nabla(f: GridFunction) -> GridFunction:
    return f.nabla()


def grid_shift(f: GridFunction, a: int) -> GridFunction:
    return f.shifted(a)


def grid_summation(f: GridFunction) -> GridFunction:
    return f.partial_sums()


_GRID_ACTIONS = {
    "delta": lambda f, p: grid_delta(f),
    "nabla": lambda f, p: grid_nabla(f),
    "shift": lambda f, p: grid_shift(f, p["shift"]),
    "summation": lambda f, p: grid_summation(f),
}


def operator_action(name: str, operand, *, psi: Optional[PsiSequence] = None,
                    center: RationalLike = 0, shift: RationalLike = 0,
                    q: Optional[RationalLike] = None,
                    alpha: RationalLike = 0, cap: Optional[int] = None):
    """Apply a named operator to a polynomial or (where meaningful) a grid.

    Names: D, d0, eval, x, E, Delta, nabla, Q, nhat, dpsi, xpsi, a, int, ipsi.
    """
    if isinstance(operand, GridFunction):
        key = {"Delta": "delta", "nabla": "nabla", "E": "shift", "a": "summation"}.get(name)
        if key is None:
            raise UnknownIdentity(f"operator {name!r} does not act on grid functions")
        return _GRID_ACTIONS[key](operand, {"shift": int(shift)})

    if cap is None:
        cap = int(operand.degree) + 2 if operand else 2
    psi = psi or CLASSICAL
    factories = {
        "D": lambda: derivative(cap),
        "d0": lambda: divided_difference(cap),
        "eval": lambda: evaluation(alpha, cap),
        "x": lambda: multiplication_by_x(cap),
        "E": lambda: shift_operator(shift, cap),
        "Delta": lambda: forward_difference(cap),
        "nabla": lambda: backward_difference(cap),
        "Q": lambda: q_dilation(q if q is not None else Fraction(1, 2), cap),
        "nhat": lambda: n_hat(psi, cap),
        "dpsi": lambda: psi_derivative(psi, cap, center),
        "xpsi": lambda: psi_multiplication(psi, cap, center),
        "a": lambda: summation(cap),
        "int": lambda: integral(alpha, cap),
        "ipsi": lambda: psi_integral(psi, cap, center),
    }
    try:
        op = factories[name]()
    except KeyError:
        raise UnknownIdentity(f"unknown operator {name!r}") from None
    return op.apply(operand)


# -- identity checking -------------------------------------------------------------


def check_equal_on(lhs: LinearOperator, rhs: LinearOperator, basis,
                   identity_name: str) -> Verdict:
    """Compare two operators on a list of (label, polynomial) basis entries."""
    for label, p in basis:
        a = lhs.apply(p)
        b = rhs.apply(p)
        if a != b:
            return Verdict(identity_name, False, checked=len(basis),
                           counterexample=Counterexample(label, a, b))
    return Verdict(identity_name, True, checked=len(basis))


def monomial_basis(max_degree: int):
    return [(f"x^{m}", Polynomial.monomial(m)) for m in range(max_degree + 1)]


def centered_basis(center: Fraction, max_degree: int):
    return [(f"(x-{center})^{m}", from_rebased((0,) * m + (1,), center))
            for m in range(max_degree + 1)]


def bernoulli_pair_check(p_op: LinearOperator, q_op: LinearOperator, order: int,
                         basis, identity_name: str) -> Verdict:
    """p * sum_{k<=n} (-q)^k p^k / k!  ==  (-q)^n p^(n+1) / n!  for n = 0..order.

    Shared by the monomial-basis representations and the transported
    calculi; powers are built incrementally so the check stays cheap.
    """
    cap = min(p_op.cap, q_op.cap)
    acc = None
    qk = identity(cap)
    pk = identity(cap)
    checked = 0
    for n in range(order + 1):
        if n > 0:
            qk = q_op.compose(qk)
            pk = pk.compose(p_op)
        sign = Fraction((-1) ** n, factorial(n))
        term = qk.compose(pk).scale(sign)
        acc = term if acc is None else acc + term
        lhs = p_op.compose(acc)
        rhs = qk.compose(pk.compose(p_op)).scale(sign)
        verdict = check_equal_on(lhs, rhs, basis, identity_name)
        checked += verdict.checked
        if not verdict:
            return Verdict(identity_name, False, checked=checked,
                           counterexample=Counterexample(
                               f"n={n}, {verdict.counterexample.where}",
                               verdict.counterexample.lhs,
                               verdict.counterexample.rhs))
    return Verdict(identity_name, True, checked=checked)


def _check_ghw(*, psi: PsiSequence, center: Fraction, max_degree: int, **_):
    cap = max_degree + 2
    p_op = psi_derivative(psi, cap, center)
    q_op = psi_multiplication(psi, cap, center)
    return check_equal_on(commutator(p_op, q_op), identity(cap - 1),
                          centered_basis(center, max_degree), "ghw")


def _telescoping_ops(pair: str, alpha: Fraction, cap: int):
    if pair == "integral":
        return integral(alpha, cap), derivative(cap)
    if pair == "summation":
        return summation(cap), forward_difference(cap)
    raise UnknownIdentity(f"unknown telescoping pair {pair!r}")


def _check_telescoping(*, pair: Optional[str], alpha: Fraction, order: int,
                       max_degree: int, **_):
    pairs = [pair] if pair else ["integral", "summation"]
    cap = max_degree + order + 2
    total = 0
    for name in pairs:
        a, b = _telescoping_ops(name, alpha, cap)
        one = identity(cap)
        eps = one - a.compose(b)
        lhs = None
        ak = identity(cap)
        bk = identity(cap)
        for k in range(order + 1):
            if k > 0:
                ak = a.compose(ak)
                bk = bk.compose(b)
            term = ak.compose(eps).compose(bk)
            lhs = term if lhs is None else lhs + term
        rhs = one - ak.compose(a).compose(bk.compose(b))
        verdict = check_equal_on(lhs, rhs, monomial_basis(max_degree),
                                 "telescoping")
        total += verdict.checked
        if not verdict:
            return Verdict("telescoping", False, checked=total,
                           counterexample=verdict.counterexample,
                           note=f"pair={name}")
    return Verdict("telescoping", True, checked=total)


def _check_one_minus_ab(*, pair: Optional[str], alpha: Fraction,
                        max_degree: int, **_):
    pairs = [pair] if pair else ["integral", "summation"]
    cap = max_degree + 2
    total = 0
    for name in pairs:
        a, b = _telescoping_ops(name, alpha, cap)
        point = alpha if name == "integral" else Fraction(0)
        lhs = identity(cap) - a.compose(b)
        rhs = evaluation(point, cap)
        verdict = check_equal_on(lhs, rhs, monomial_basis(max_degree),
                                 "one-minus-ab")
        total += verdict.checked
        if not verdict:
            return Verdict("one-minus-ab", False, checked=total,
                           counterexample=verdict.counterexample,
                           note=f"pair={name}")
    return Verdict("one-minus-ab", True, checked=total)


def bernoulli_representation(name: str, psi: PsiSequence, y: Fraction,
                             center: Fraction, cap: int):
    """The named GHW pair used by the Bernoulli identity suite."""
    if name == "classical":
        return derivative(cap), multiplication(Polynomial((-y, 1)), cap)
    if name == "delta":
        return (forward_difference(cap),
                multiplication_by_x(cap).compose(shift_operator(-1, cap)))
    if name == "psi":
        return (psi_derivative(psi, cap, center),
                psi_multiplication(psi, cap, center))
    raise UnknownIdentity(f"unknown Bernoulli representation {name!r}")


def _check_bernoulli_viskov(*, representation: Optional[str], psi: PsiSequence,
                            y: Fraction, center: Fraction, order: int,
                            max_degree: int, **_):
    reps = [representation] if representation else ["classical", "delta", "psi",
                                                    "falling"]
    cap = max_degree + order + 3
    total = 0
    for name in reps:
        if name == "falling":
            # transported falling-power pair lives in the transport module
            from .transport import falling_power_basis, transported
            calc = transported(falling_power_basis(cap), psi)
            p_op, q_op = calc.lowering, calc.raising
            basis = [(f"q_{m}", calc.basis.polynomials[m])
                     for m in range(max_degree + 1)]
        else:
            p_op, q_op = bernoulli_representation(name, psi, y, center, cap)
            basis = (centered_basis(center, max_degree) if name == "psi"
                     else monomial_basis(max_degree))
        verdict = bernoulli_pair_check(p_op, q_op, order, basis,
                                       "bernoulli-viskov")
        total += verdict.checked
        if not verdict:
            return Verdict("bernoulli-viskov", False, checked=total,
                           counterexample=verdict.counterexample,
                           note=f"representation={name}")
    return Verdict("bernoulli-viskov", True, checked=total)


def _check_jackson_rep(*, psi: PsiSequence, q: Optional[Fraction],
                       max_degree: int, **_):
    if q is None:
        q = psi.q if psi.q is not None else Fraction(1, 2)
    cap = max_degree + 1
    lhs = (identity(cap) - q_dilation(q, cap).scale(q)) \
        .compose(divided_difference(cap)).scale(Fraction(1) / (1 - q))
    rhs = psi_derivative(PsiSequence.q_deformed(q), cap)
    return check_equal_on(lhs, rhs, monomial_basis(max_degree), "jackson-rep")


def _check_psi_rep(*, psi: PsiSequence, max_degree: int, **_):
    cap = max_degree + 1
    lhs = n_hat(psi, cap - 1).compose(divided_difference(cap))
    rhs = psi_derivative(psi, cap)
    return check_equal_on(lhs, rhs, monomial_basis(max_degree), "psi-rep")


def _historical_sum(cap: int, signed: bool, eps_form: bool) -> LinearOperator:
    """Multiply-and-differentiate expansions from the historical identities.

    eps_form:  sum_n (-1)^n (x^n / n!) D^n           (n from 0)
    otherwise: sum_n s_n   (x^(n-1) / n!) D^n        (n from 1),
               s_n = (-1)^(n-1) when `signed`, else 1 as printed.
    """
    acc = None
    dn = identity(cap)
    start = 0 if eps_form else 1
    for n in range(start, cap + 1):
        if n > 0:
            dn = derivative(cap).compose(dn)
        degree = n if eps_form else n - 1
        if eps_form:
            sign = Fraction((-1) ** n, factorial(n))
        else:
            sign = Fraction((-1) ** (n - 1) if signed else 1, factorial(n))
        term = multiplication(Polynomial.monomial(degree, sign), cap).compose(dn)
        acc = term if acc is None else acc + term
    return acc


def _check_hist_eps0(*, max_degree: int, **_):
    cap = max_degree
    lhs = _historical_sum(cap, signed=True, eps_form=True)
    return check_equal_on(lhs, evaluation(0, cap), monomial_basis(max_degree),
                          "hist-eps0")


def _check_hist_div_diff(*, max_degree: int, **_):
    cap = max_degree
    lhs = _historical_sum(cap, signed=True, eps_form=False)
    return check_equal_on(lhs, divided_difference(cap),
                          monomial_basis(max_degree), "hist-div-diff")


def _check_hist_div_diff_printed(*, max_degree: int, **_):
    cap = max_degree
    lhs = _historical_sum(cap, signed=False, eps_form=False)
    verdict = check_equal_on(lhs, divided_difference(cap),
                             monomial_basis(max_degree), "hist-div-diff-printed")
    if verdict.passed:
        return verdict
    return Verdict("hist-div-diff-printed", False, checked=verdict.checked,
                   counterexample=verdict.counterexample,
                   note="unsigned expansion, expected to fail")


_IDENTITY_CHECKS = {
    "ghw": _check_ghw,
    "telescoping": _check_telescoping,
    "one-minus-ab": _check_one_minus_ab,
    "bernoulli-viskov": _check_bernoulli_viskov,
    "jackson-rep": _check_jackson_rep,
    "psi-rep": _check_psi_rep,
    "hist-eps0": _check_hist_eps0,
    "hist-div-diff": _check_hist_div_diff,
    "hist-div-diff-printed": _check_hist_div_diff_printed,
}


def identity_names():
    return tuple(_IDENTITY_CHECKS)


def verify_identity(name: str, *, psi: Optional[PsiSequence] = None,
                    q: Optional[RationalLike] = None,
                    alpha: RationalLike = 0, center: RationalLike = 0,
                    y: RationalLike = 0, order: int = 6, max_degree: int = 10,
                    pair: Optional[str] = None,
                    representation: Optional[str] = None) -> Verdict:
    """Run one registered identity check; see `identity_names()`."""
    try:
        check = _IDENTITY_CHECKS[name]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {name!r}; "
                              f"known: {', '.join(_IDENTITY_CHECKS)}") from None
    return check(psi=psi or CLASSICAL,
                 q=rational(q) if q is not None else None,
                 alpha=rational(alpha), center=rational(center),
                 y=rational(y), order=order, max_degree=max_degree,
                 pair=pair, representation=representation)
