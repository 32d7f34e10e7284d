"""Small DAG builders and strategies shared by the test modules."""
import itertools

from hypothesis import strategies as st

from degencount.families import complete_bipartite
from degencount.graph import Graph, OrientedDag


def single_source_k(k: int) -> OrientedDag:
    return OrientedDag.from_arcs(k, [(u, v) for u in range(k) for v in range(u + 1, k)])


def k34_from_three_side() -> OrientedDag:
    g = complete_bipartite(3, 4)
    return OrientedDag(g, g.edges())


def alternating_c6() -> OrientedDag:
    """Sources 0, 2, 4; sinks 1, 3, 5."""
    return OrientedDag.from_arcs(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)])


def directed_path(k: int) -> OrientedDag:
    return OrientedDag.from_arcs(k, [(i, i + 1) for i in range(k - 1)])


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)
