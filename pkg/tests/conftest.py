from __future__ import annotations

import itertools

from hypothesis import strategies as st

from geolab.graph import GameGraph


@st.composite
def undirected_graphs(draw, min_n: int = 0, max_n: int = 9, heights=st.just(1)) -> GameGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    hs = [draw(heights) for _ in range(n)]
    return GameGraph("undirected", hs, chosen)


@st.composite
def directed_graphs(draw, min_n: int = 1, max_n: int = 6) -> GameGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return GameGraph("directed", [1] * n, chosen)
