import pytest

from flamekit.digraph import build_graph


@pytest.fixture
def G1():
    return build_graph("rab", "r", [("e1", "r", "a"), ("e2", "r", "b"), ("e3", "a", "b")])


@pytest.fixture
def G2():
    return build_graph("rab", "r", [("e1", "r", "a"), ("e2", "a", "b"), ("e3", "a", "b")])


@pytest.fixture
def D5():
    return build_graph(
        "rab", "r",
        [("e1", "r", "a"), ("e2", "r", "b"), ("e3", "a", "b"), ("e4", "a", "b"), ("e5", "r", "a")],
    )




ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
