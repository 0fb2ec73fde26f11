import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from aesstab.graph import Graph, build_graph, complete_multipartite


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, k in zip(pairs, keep) if k])


def add_edges(g: Graph, extra) -> Graph:
    return build_graph(g.n, list(g.edges()) + list(extra))


@pytest.fixture
def k55e():
    # K_{5,5} plus one edge inside the first side
    return add_edges(complete_multipartite([5, 5]), [(0, 1)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


SUITE_LIMIT_S = 15 * 60
_START = None


def pytest_sessionstart(session):
    global _START
    import time
    _START = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    import time
    elapsed = time.perf_counter() - _START
    ok = elapsed <= SUITE_LIMIT_S
    reporter = session.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None:
        reporter.ensure_newline()
        reporter.write_line(f"[criterion 9] suite runtime {elapsed:.1f}s "
                            f"(limit {SUITE_LIMIT_S}s): {'PASS' if ok else 'FAIL'}")
    if not ok:
        session.exitstatus = 1
