"""Exact-arithmetic substrate: rationals, dense polynomials, grid functions.

Scalars are `fractions.Fraction` throughout; nothing in this module ever
rounds.  Polynomials are dense coefficient tuples in the monomial basis with
no trailing zero, so equality is structural.  Grid functions hold exact
samples on a contiguous integer range.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import GridDomainTooSmall, NonIntegerGridArg

RationalLike = Union[Fraction, int, str]

#: Degree of the zero polynomial.
NEG_INF = float("-inf")


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Render in lowest terms as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(value))


def falling_power(x: RationalLike, n: int) -> Fraction:
    """x(x-1)...(x-n+1); the empty product (n = 0) is 1."""
    if n < 0:
        raise ValueError("falling power needs n >= 0")
    x = rational(x)
    result = Fraction(1)
    for j in range(n):
        result *= x - j
    return result


class Polynomial:
    """Dense univariate polynomial with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of x**i.  The tuple carries no trailing
    zero; the zero polynomial is the empty tuple and reports degree -inf.
    Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls((rational(c),))

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1) -> "Polynomial":
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls((0,) * degree + (rational(coeff),))

    # -- inspection --------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else NEG_INF

    def coefficient(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self._coeffs)!r})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self._coeffs))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if not self._coeffs or not other._coeffs:
                return Polynomial()
            out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, a in enumerate(self._coeffs):
                if a:
                    for j, b in enumerate(other._coeffs):
                        out[i + j] += a * b
            return Polynomial(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: RationalLike) -> "Polynomial":
        c = rational(c)
        return Polynomial(tuple(c * a for a in self._coeffs))

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("polynomial powers must be >= 0")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus-adjacent helpers ------------------------------------------

    def __call__(self, point: RationalLike) -> Fraction:
        """Evaluate by Horner accumulation."""
        point = rational(point)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * point + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(i * c for i, c in enumerate(self._coeffs))[1:])

    def antiderivative(self) -> "Polynomial":
        """Classical antiderivative with zero constant term."""
        return Polynomial((Fraction(0),) + tuple(
            c / (i + 1) for i, c in enumerate(self._coeffs)))

    def integrate(self, a: RationalLike, b: RationalLike) -> Fraction:
        f = self.antiderivative()
        return f(b) - f(a)

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(x)), computed by Horner over polynomials."""
        acc = Polynomial()
        for c in reversed(self._coeffs):
            acc = acc * inner + Polynomial.constant(c)
        return acc

    def rebase(self, center: RationalLike) -> tuple:
        """Coefficients c with self(x) = sum c[m] * (x - center)**m."""
        center = rational(center)
        if center == 0:
            return self._coeffs
        shifted = self.compose(Polynomial((center, 1)))
        return shifted.coeffs


def from_rebased(coeffs: Sequence[RationalLike], center: RationalLike) -> Polynomial:
    """Rebuild sum c[m] * (x - center)**m as a monomial-basis polynomial."""
    center = rational(center)
    p = Polynomial(coeffs)
    if center == 0:
        return p
    return p.compose(Polynomial((-center, 1)))


def falling_power_poly(n: int) -> Polynomial:
    """The polynomial x(x-1)...(x-n+1)."""
    if n < 0:
        raise ValueError("falling power needs n >= 0")
    p = Polynomial.one()
    for j in range(n):
        p = p * Polynomial((-j, 1))
    return p


def binomial_poly(k: int) -> Polynomial:
    """The polynomial x(x-1)...(x-k+1) / k!."""
    result = falling_power_poly(k)
    fact = 1
    for j in range(2, k + 1):
        fact *= j
    return result.scale(Fraction(1, fact))


def newton_interpolate(values: Sequence[RationalLike], lo: int = 0) -> Polynomial:
    """The unique polynomial of degree < len(values) through (lo+j, values[j]).

    Uses the forward-difference form, which is exact over the rationals.
    """
    diffs = [rational(v) for v in values]
    coeffs = []
    for _ in range(len(diffs)):
        coeffs.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    result = Polynomial()
    shift = Polynomial((-lo, 1))
    for k, c in enumerate(coeffs):
        if c:
            result = result + binomial_poly(k).compose(shift).scale(c)
    return result


class GridFunction:
    """Exact rational samples on a contiguous integer range [lo, hi].

    Plain constructions start at lo = 0 (values indexed 0..M); difference
    and shift operations may move the window, tracked through `lo`.
    Evaluation outside the window is an error, never extrapolation.
    """

    __slots__ = ("_values", "_lo")

    def __init__(self, values: Iterable[RationalLike], lo: int = 0):
        vals = tuple(rational(v) for v in values)
        if not vals:
            raise GridDomainTooSmall("a grid function needs at least one sample")
        if not isinstance(lo, int):
            raise NonIntegerGridArg(f"grid domain start must be an integer, got {lo!r}")
        self._values = vals
        self._lo = lo

    @classmethod
    def sample(cls, p: Polynomial, hi: int, lo: int = 0) -> "GridFunction":
        """Sample a polynomial at the integers lo..hi."""
        if hi < lo:
            raise GridDomainTooSmall(f"empty sampling range {lo}..{hi}")
        return cls(tuple(p(k) for k in range(lo, hi + 1)), lo)

    @property
    def lo(self) -> int:
        return self._lo

    @property
    def hi(self) -> int:
        return self._lo + len(self._values) - 1

    @property
    def values(self) -> tuple:
        return self._values

    def __len__(self) -> int:
        return len(self._values)

    def __call__(self, k: int) -> Fraction:
        if not isinstance(k, int):
            raise NonIntegerGridArg(f"grid functions take integer arguments, got {k!r}")
        if not self._lo <= k <= self.hi:
            raise GridDomainTooSmall(
                f"argument {k} outside grid domain {self._lo}..{self.hi}")
        return self._values[k - self._lo]

    def __eq__(self, other) -> bool:
        if isinstance(other, GridFunction):
            return self._lo == other._lo and self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._lo, self._values))

    def __repr__(self) -> str:
        return f"GridFunction({list(self._values)!r}, lo={self._lo})"

    def restrict(self, lo: int, hi: int) -> "GridFunction":
        if lo < self._lo or hi > self.hi or hi < lo:
            raise GridDomainTooSmall(
                f"cannot restrict {self._lo}..{self.hi} to {lo}..{hi}")
        return GridFunction(self._values[lo - self._lo:hi - self._lo + 1], lo)

    # -- difference calculus -------------------------------------------------

    def delta(self) -> "GridFunction":
        """Forward difference f(x+1) - f(x); the domain loses its top point."""
        if len(self._values) < 2:
            raise GridDomainTooSmall("forward difference needs at least two samples")
        v = self._values
        return GridFunction(tuple(v[i + 1] - v[i] for i in range(len(v) - 1)), self._lo)

    def nabla(self) -> "GridFunction":
        """Backward difference f(x) - f(x-1); the domain loses its bottom point."""
        if len(self._values) < 2:
            raise GridDomainTooSmall("backward difference needs at least two samples")
        v = self._values
        return GridFunction(tuple(v[i + 1] - v[i] for i in range(len(v) - 1)),
                            self._lo + 1)

    def shifted(self, a: int) -> "GridFunction":
        """E^a: x -> f(x+a), defined where x+a lies in the original domain."""
        if not isinstance(a, int):
            raise NonIntegerGridArg(f"shift amount must be an integer, got {a!r}")
        return GridFunction(self._values, self._lo - a)

    def partial_sums(self) -> "GridFunction":
        """(af)(x) = sum_{k=0}^{x-1} f(k); requires the domain to start at 0."""
        if self._lo != 0:
            raise GridDomainTooSmall(
                f"definite summation needs domain start 0, got {self._lo}")
        sums = [Fraction(0)]
        for v in self._values:
            sums.append(sums[-1] + v)
        return GridFunction(tuple(sums), 0)
