"""Exception hierarchy shared by every psicalc module."""


class PsiCalcError(Exception):
    """Base class for all psicalc errors."""


class ZeroPsiValue(PsiCalcError):
    """A deformation sequence produced n_psi = 0 for some n >= 1."""

    def __init__(self, n, message=None):
        self.n = n
        super().__init__(message or f"sequence value vanishes at n={n}")


class InvalidQ(PsiCalcError):
    """q = 1 was requested for a q-deformed sequence (use classical instead)."""


class PsiRangeError(PsiCalcError):
    """A finite custom sequence was queried beyond its usable range."""


class CapExceeded(PsiCalcError):
    """An operator was applied to, or combined for, degrees above its cap."""


class GridDomainTooSmall(PsiCalcError):
    """A grid function's domain cannot support the requested operation."""


class NonIntegerGridArg(PsiCalcError):
    """A grid operation received a non-integer argument."""


class QOutOfRange(PsiCalcError):
    """Numeric Jackson integration requires 0 < q < 1."""


class UnknownIdentity(PsiCalcError):
    """The operator identity registry has no entry under this name."""


class UnknownAxiom(PsiCalcError):
    """The star-product axiom registry has no entry under this name."""


class SingularBasis(PsiCalcError):
    """A graded basis violates its degree or invertibility requirements."""


class ExprSyntaxError(PsiCalcError):
    """Expression text failed to parse; `column` is 1-based."""

    def __init__(self, message, column):
        self.column = column
        super().__init__(f"{message} at column {column}")


class NegativeExponent(ExprSyntaxError):
    """`^` was given a negative exponent."""

    def __init__(self, column):
        super().__init__("negative exponent", column)
