from fractions import Fraction

import pytest

from powercentral import FiniteField, MatrixAlgebra, QuaternionAlgebra, RationalField

H = QuaternionAlgebra(-1, -1)
QQ = RationalField()


def quat(w, x=0, y=0, z=0, alg=H):
    return alg.element(tuple(Fraction(c) for c in (w, x, y, z)))


ONE, I, J, K = quat(1), quat(0, 1), quat(0, 0, 1), quat(0, 0, 0, 1)


@pytest.fixture
def gl2f2():
    return MatrixAlgebra(2, FiniteField(2))


@pytest.fixture
def gl2f3():
    return MatrixAlgebra(2, FiniteField(3))


@pytest.fixture
def m2q():
    return MatrixAlgebra(2, QQ)


def pytest_terminal_summary(terminalreporter):
    from tests import acceptance_results

    lines = acceptance_results.LINES
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
