import json
import pathlib

import pytest

from hcp3.graph_core import build_graph

DATA = pathlib.Path(__file__).parent / "data"


def load_corpus():
    with open(DATA / "corpus.json", encoding="utf-8") as fh:
        items = json.load(fh)
    return [(it["name"], build_graph(it["mode"], it["n"], it["edges"])) for it in items]


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Corpus graphs on at most six vertices."""
    return [(name, g) for name, g in corpus if g.n <= 6]


def cycle_graph(n, directed=False):
    return build_graph("directed" if directed else "undirected", n, [(i, (i + 1) % n) for i in range(n)])


# one line per acceptance criterion, printed at the end of the run
CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for the acceptance criterion of this test."""
    num = request.node.get_closest_marker("criterion").args[0]
    CRITERIA[num] = "FAIL (did not finish)"

    def record(status, detail=""):
        CRITERIA[num] = f"{status} {detail}".rstrip()

    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        terminalreporter.write_line(f"criterion {num}: {CRITERIA[num]}")
