import os

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from polyforge.incidence import IncidenceStructure, Sort

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def bipartite_structures(draw, max_points=7, max_lines=7):
    """Small random incidence structures (any girth)."""
    p = draw(st.integers(0, max_points))
    q = draw(st.integers(0, max_lines))
    points = [f"p{i}" for i in range(p)]
    lines = [f"l{j}" for j in range(q)]
    cells = [(a, b) for a in points for b in lines]
    chosen = draw(st.lists(st.sampled_from(cells), unique=True, max_size=len(cells))) if cells else []
    return IncidenceStructure(points, lines, chosen)


def to_networkx(s: IncidenceStructure) -> nx.Graph:
    g = nx.Graph()
    for x in s.ids:
        g.add_node(x, sort=s.sort(x).value)
    g.add_edges_from(s.incidences())
    return g


@pytest.fixture
def nxgraph():
    return to_networkx
