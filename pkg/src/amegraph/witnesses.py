"""Built-in verified witness graphs shipped with the package."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .graph import Graph, parse_graph

_NAMES = ("c5", "quad_weighted", "ame62", "ame44_grouped")


def load_witness(name: str) -> Graph:
    if name not in _NAMES:
        raise ValueError(f"unknown witness {name!r}; have {_NAMES}")
    text = resources.files("amegraph").joinpath(f"data/{name}.graph").read_text()
    return parse_graph(text)


def c5(p: int = 2) -> Graph:
    """Five-cycle, AME(5,p) for every prime p."""
    g = load_witness("c5")
    return Graph(p, g.adj) if p != g.p else g


def quad_weighted(p: int = 3) -> Graph:
    """Weighted four-cycle, AME(4,p) for every prime p >= 3."""
    if p < 3:
        raise ValueError("the weight-2 edge needs p >= 3")
    g = load_witness("quad_weighted")
    return Graph(p, g.adj) if p != g.p else g


def ame62() -> Graph:
    """Search-discovered AME(6,2) graph."""
    return load_witness("ame62")


def ame44_grouped() -> tuple[Graph, int]:
    """Search-discovered grouped AME(4,4) witness; returns (graph, group size)."""
    return load_witness("ame44_grouped"), 2


def small_ame(n: int, p: int) -> Graph:
    """AME(n,p) for the one- and two-edge cases n = 2, 3 (any prime)."""
    if n == 2:
        return Graph(p, np.array([[0, 1], [1, 0]]))
    if n == 3:
        return Graph(p, np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
    raise ValueError("small_ame covers n = 2 and n = 3 only")
