import pytest

from coverforge import (Arrow, CoverTower, DiGraph, SAdicSystem, Substitution, sadic_to_cover,
                        with_consistent_weights)

ACCEPTANCE_LINES: list[str] = []


def stationary(rules: dict, depth: int) -> CoverTower:
    return sadic_to_cover(SAdicSystem.stationary(Substitution.from_dict(rules), depth))


TRIBONACCI_LIKE = {"1": "12", "2": "13", "3": "123"}
FIBONACCI = {"0": "01", "1": "0"}


def two_vertex_bounded_tower(depth: int) -> CoverTower:
    """Arrows 1..4 on vertices u, l: 1 is u->l, 2 is l->u, 3 loops at u, 4 loops at l;
    bonding 1->1, 2->23142, 3->1423, 4->2314 (indices shifted by one)."""
    g = DiGraph(["u", "l"], [Arrow("u", "l", 1, "1"), Arrow("l", "u", 1, "2"),
                             Arrow("u", "u", 1, "3"), Arrow("l", "l", 1, "4")])
    images = [(0,), (1, 2, 0, 3, 1), (0, 3, 1, 2), (1, 2, 0, 3)]
    return with_consistent_weights(CoverTower([g] * (depth + 1), [images] * depth))


@pytest.fixture
def tribonacci_like():
    return stationary(TRIBONACCI_LIKE, 6)


@pytest.fixture
def fibonacci():
    return stationary(FIBONACCI, 12)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
