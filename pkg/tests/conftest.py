import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spextral.containment import ForestPattern
from spextral.graph import Graph

settings.register_profile("default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=400, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def graph_with_sets(draw, max_n=10):
    g = draw(graphs(max_n=max_n))
    sub = st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n) if g.n else st.just(set())
    return g, draw(sub), draw(sub)


def patterns(max_order=8):
    stars = st.lists(st.integers(1, 4), max_size=2)
    paths = st.lists(st.integers(1, 5), max_size=2)
    return (
        st.builds(lambda s, p: ForestPattern(tuple(s), tuple(p)), stars, paths)
        .filter(lambda f: f.stars or f.paths)
        .filter(lambda f: f.total_order <= max_order)
    )


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import OUTCOMES
    except ImportError:
        return
    if not OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for outcome in sorted(OUTCOMES, key=lambda o: o.number):
        terminalreporter.write_line(outcome.line())
