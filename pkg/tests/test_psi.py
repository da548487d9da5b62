from fractions import Fraction

import pytest

from psicalc import InvalidQ, PsiRangeError, PsiSequence, ZeroPsiValue

from conftest import make_custom_psi


def test_classical_values():
    psi = PsiSequence.classical()
    assert [psi.value(n) for n in range(1, 5)] == [1, 2, 3, 4]
    assert psi.factorial(4) == 24
    assert all(psi.star_coefficient(n) == 1 for n in range(9))


def test_q_half_values():
    psi = PsiSequence.q_deformed(Fraction(1, 2))
    assert [psi.value(n) for n in range(1, 5)] == \
        [1, Fraction(3, 2), Fraction(7, 4), Fraction(15, 8)]
    assert psi.factorial(3) == Fraction(21, 8)
    assert psi.star_coefficient(3) == Fraction(16, 7)


def test_q_sequence_is_geometric_sum():
    for q in (Fraction(2), Fraction(-1, 3), Fraction(5, 7)):
        psi = PsiSequence.q_deformed(q)
        for n in range(1, 12):
            assert psi.value(n) == sum(q ** k for k in range(n))


def test_q_one_rejected():
    with pytest.raises(InvalidQ):
        PsiSequence.q_deformed(1)


def test_q_minus_one_rejected_at_construction():
    with pytest.raises(ZeroPsiValue) as err:
        PsiSequence.q_deformed(-1)
    assert err.value.n == 2


def test_factorial_ratio_invariant():
    for psi in (PsiSequence.classical(), PsiSequence.q_deformed(Fraction(2)),
                make_custom_psi(3)):
        for n in range(1, 15):
            assert psi.factorial(n) / psi.factorial(n - 1) == psi.value(n)


def test_zero_psi_is_zero():
    assert PsiSequence.q_deformed(Fraction(1, 2)).value(0) == 0
    assert PsiSequence.classical().factorial(0) == 1


def test_nonzero_for_q_off_unit_circle():
    for q in (Fraction(1, 2), Fraction(2), Fraction(-1, 3), Fraction(-7, 2)):
        psi = PsiSequence.q_deformed(q)
        assert all(psi.value(n) != 0 for n in range(1, 40))


def test_custom_table_range_error():
    psi = PsiSequence.from_values([1, 2, 3])
    assert psi.value(3) == 3
    with pytest.raises(PsiRangeError):
        psi.value(4)


def test_custom_table_rejects_zero():
    with pytest.raises(ZeroPsiValue) as err:
        PsiSequence.from_values([1, 0, 3])
    assert err.value.n == 2


def test_custom_rule_lazy_zero_detection():
    psi = PsiSequence.from_function(lambda n: n - 3)
    assert psi.value(1) == -2
    with pytest.raises(ZeroPsiValue) as err:
        psi.value(5)
    assert err.value.n == 3


def test_file_format(tmp_path):
    path = tmp_path / "seq.psi"
    path.write_text("# a comment line\n1\n3/2   # trailing comment\n\n7/4\n",
                    encoding="utf-8")
    psi = PsiSequence.from_file(str(path))
    assert [psi.value(n) for n in range(1, 4)] == [1, Fraction(3, 2), Fraction(7, 4)]
    with pytest.raises(PsiRangeError):
        psi.value(4)


def test_file_empty_rejected(tmp_path):
    path = tmp_path / "empty.psi"
    path.write_text("# nothing here\n", encoding="utf-8")
    with pytest.raises(PsiRangeError):
        PsiSequence.from_file(str(path))


def test_concurrent_reads_consistent():
    import threading
    psi = PsiSequence.q_deformed(Fraction(1, 2))
    results = []

    def reader():
        results.append([psi.value(n) for n in range(1, 30)])

    threads = [threading.Thread(target=reader) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)
