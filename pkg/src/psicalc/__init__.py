"""psicalc: exact operator calculus over deformation sequences.

Exact-rational polynomials and grid functions, deformed derivatives and
their right-inverse integrals, the noncommutative star product, Jackson
q-integration with rigorous tail bounds, four expansion engines with
Cauchy-type remainders verified to exact-zero residual, and transport of
the whole calculus to arbitrary degree-graded bases.
"""

from .core import (GridFunction, Polynomial, falling_power,
                   falling_power_poly, format_rational, from_rebased,
                   newton_interpolate, rational)
from .errors import (CapExceeded, ExprSyntaxError, GridDomainTooSmall,
                     InvalidQ, NegativeExponent, NonIntegerGridArg,
                     PsiCalcError, PsiRangeError, QOutOfRange, SingularBasis,
                     UnknownAxiom, UnknownIdentity, ZeroPsiValue)
from .exprparse import parse_expr, render
from .expansions import (ExpansionReport, classical_bt, delta_bt,
                         literal_star_sum, maclaurin_bt, psi_bt)
from .integration import (PerPartesResult, QuadratureResult, cauchy_kernel,
                          jackson_integrate, jackson_symbolic,
                          per_partes_check, psi_antiderivative, psi_integrate)
from .operators import (Counterexample, LinearOperator, Verdict,
                        backward_difference, combine, commutator, derivative,
                        divided_difference, evaluation, forward_difference,
                        identity, identity_names, integral, multiplication,
                        multiplication_by_x, n_hat, operator_action,
                        psi_derivative, psi_integral, psi_multiplication,
                        q_dilation, shift_operator, substitute, summation,
                        verify_identity)
from .psi import CLASSICAL, PsiSequence
from .star import (StarSeries, axiom_names, classical_exp, exp_psi, star,
                   star_power, verify_star_axiom)
from .transport import (GradedBasis, TransportedCalculus, falling_power_basis,
                        monomial_basis_family, shifted_monomial_basis,
                        transport_suite_names, transported,
                        verify_transported)

__version__ = "0.1.0"
