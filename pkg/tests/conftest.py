import random
from fractions import Fraction

import pytest

from psicalc import Polynomial, PsiSequence


def make_custom_psi(seed: int, length: int = 48) -> PsiSequence:
    rng = random.Random(seed)
    values = []
    for _ in range(length):
        num = rng.choice([n for n in range(-9, 10) if n != 0])
        values.append(Fraction(num, rng.randint(1, 9)))
    return PsiSequence.from_values(values, label=f"custom-{seed}")


def psi_test_set():
    """classical, q = 1/2, 2, -1/3, and two seeded custom sequences."""
    return [
        PsiSequence.classical(),
        PsiSequence.q_deformed(Fraction(1, 2)),
        PsiSequence.q_deformed(Fraction(2)),
        PsiSequence.q_deformed(Fraction(-1, 3)),
        make_custom_psi(11),
        make_custom_psi(23),
    ]


@pytest.fixture(scope="session")
def psi_set():
    return psi_test_set()


def rand_poly(rng: random.Random, max_degree: int, bound: int = 9) -> Polynomial:
    degree = rng.randint(0, max_degree)
    return Polynomial([Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                       for _ in range(degree + 1)])


def rand_rational(rng: random.Random, bound: int = 20) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
