"""Deformation sequences n -> n_psi and their factorials.

A sequence is valid when n_psi != 0 for every n >= 1 (0_psi is fixed at 0, so
deformed derivatives annihilate constants).  The q-deformed family uses

    n_q = 1 + q + ... + q**(n-1) = (1 - q**n) / (1 - q),

the unique choice under which the deformed derivative coincides with the
operator (1 - q*Q)/(1 - q) applied after degree lowering, Q being dilation
x -> qx; see the `jackson-rep` identity in the operator registry.  For a
rational q, n_q can only vanish when q is -1 (n even), so validation of the
q family reduces to rejecting q = 1 and q = -1 up front.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import RationalLike, rational
from .errors import InvalidQ, PsiRangeError, ZeroPsiValue


class PsiSequence:
    """Immutable, lazily cached sequence n -> n_psi.

    Build one through the classmethods; `value`, `factorial`, and
    `star_coefficient` are safe for concurrent readers (the cache is
    lock-protected and append-only).
    """

    def __init__(self, label: str, fn: Callable[[int], Fraction],
                 limit: Optional[int] = None, q: Optional[Fraction] = None):
        self._label = label
        self._fn = fn
        self._limit = limit
        self._q = q
        self._values = [Fraction(0)]  # index n holds n_psi; 0_psi = 0
        self._factorials = [Fraction(1)]  # index n holds n_psi!
        self._lock = threading.Lock()

    # -- constructors --------------------------------------------------------

    @classmethod
    def classical(cls) -> "PsiSequence":
        """n_psi = n: ordinary calculus."""
        return cls("classical", lambda n: Fraction(n))

    @classmethod
    def q_deformed(cls, q: RationalLike) -> "PsiSequence":
        """n_psi = 1 + q + ... + q**(n-1) for a concrete rational q != 1."""
        q = rational(q)
        if q == 1:
            raise InvalidQ("q = 1 is the classical sequence; use classical()")
        if 1 + q == 0:
            raise ZeroPsiValue(2, "q = -1 gives 2_psi = 1 + q = 0")
        return cls(f"q:{q}", lambda n: (1 - q ** n) / (1 - q), q=q)

    @classmethod
    def from_values(cls, values: Sequence[RationalLike],
                    label: str = "custom") -> "PsiSequence":
        """Finite table: values[0] holds 1_psi.  Queries past the table error."""
        table = [rational(v) for v in values]
        for i, v in enumerate(table):
            if v == 0:
                raise ZeroPsiValue(i + 1)
        limit = len(table)

        def fn(n: int) -> Fraction:
            if n > limit:
                raise PsiRangeError(
                    f"sequence '{label}' defined only up to n={limit}, asked n={n}")
            return table[n - 1]

        return cls(label, fn, limit=limit)

    @classmethod
    def from_function(cls, fn: Callable[[int], RationalLike],
                      label: str = "custom-rule") -> "PsiSequence":
        """Unbounded custom sequence given by a rule; validated per query."""
        return cls(label, lambda n: rational(fn(n)))

    @classmethod
    def from_file(cls, path: str) -> "PsiSequence":
        """Load a finite table: one rational per line, line n holds n_psi.

        UTF-8; '#' starts a comment; blank lines are skipped.
        """
        values = []
        with open(path, "r", encoding="utf-8") as handle:
            for raw in handle:
                line = raw.split("#", 1)[0].strip()
                if line:
                    values.append(rational(line))
        if not values:
            raise PsiRangeError(f"sequence file {path!r} holds no values")
        return cls.from_values(values, label=f"file:{path}")

    # -- queries ---------------------------------------------------------------

    @property
    def label(self) -> str:
        return self._label

    @property
    def q(self) -> Optional[Fraction]:
        """The deformation parameter for q-sequences, else None."""
        return self._q

    @property
    def is_classical(self) -> bool:
        return self._label == "classical"

    def _extend(self, n: int) -> None:
        with self._lock:
            while len(self._values) <= n:
                k = len(self._values)
                v = self._fn(k)
                if v == 0:
                    raise ZeroPsiValue(k)
                self._values.append(v)
                self._factorials.append(self._factorials[-1] * v)

    def value(self, n: int) -> Fraction:
        """n_psi for n >= 0 (0_psi = 0)."""
        if n < 0:
            raise ValueError("sequence index must be >= 0")
        if n >= len(self._values):
            self._extend(n)
        return self._values[n]

    def factorial(self, n: int) -> Fraction:
        """n_psi! = product of k_psi for k = 1..n; the empty product is 1."""
        if n < 0:
            raise ValueError("factorial index must be >= 0")
        if n >= len(self._factorials):
            self._extend(n)
        return self._factorials[n]

    def star_coefficient(self, n: int) -> Fraction:
        """n! / n_psi!, the coefficient of the n-th deformed power of x."""
        ordinary = 1
        for k in range(2, n + 1):
            ordinary *= k
        return Fraction(ordinary) / self.factorial(n)

    def __repr__(self) -> str:
        return f"PsiSequence({self._label!r})"


#: Shared classical sequence (n_psi = n).
CLASSICAL = PsiSequence.classical()
