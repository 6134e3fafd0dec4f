import pytest

from chamberiso.arrangement import Arrangement, generate
from chamberiso.chamber_graph import ChamberSet, build_graph
from chamberiso.strata import FaceLattice

# three generic lines: y = 1, y = x, y = -x; the triangle between them is (-, -, +)
THREE_LINES_ROWS = [((0, 1), 1), ((1, -1), 0), ((1, 1), 0)]


def triangle_set(lat):
    """The bounded triangle plus the two chambers across H1 and H2 from it."""
    g = lat.graph
    ids = [g.index_of(s) for s in [(-1, -1, 1), (1, -1, 1), (-1, 1, 1)]]
    return ChamberSet.from_ids(ids, g.n_vertices)


@pytest.fixture(scope="session")
def three_lines():
    return Arrangement.from_rows(2, THREE_LINES_ROWS)


@pytest.fixture(scope="session")
def three_lines_lattice(three_lines):
    return FaceLattice(three_lines)


@pytest.fixture(scope="session")
def random_d2n5():
    return generate("random", d=2, n=5, seed=1)


@pytest.fixture(scope="session")
def random_d3n6_lattice():
    return FaceLattice(generate("random", d=3, n=6, seed=2))


@pytest.fixture(scope="session")
def d2n5_graph(random_d2n5):
    return build_graph(random_d2n5)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(verdicts):
        terminalreporter.write_line(verdicts[number])
