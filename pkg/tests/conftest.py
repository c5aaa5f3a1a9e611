import pytest

from chainrot.tree import parse_literal

# reconstructed from the worked text around the rotation figures
FIG1_T = "9(3(2(1,·),7(5(4,6),8)),10)"
FIG1_T2 = "9(7(5(3(2(1,·),4),6),8),10)"  # after rot([7-5],3)
FIG1_TP = "9(3(2(1,·),5(4,7(6,8))),10)"  # after rotating 5 and 7

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fig_t():
    return parse_literal(FIG1_T)


@pytest.fixture
def fig_t2():
    return parse_literal(FIG1_T2)


@pytest.fixture
def fig_tp():
    return parse_literal(FIG1_TP)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
