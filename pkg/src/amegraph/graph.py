"""Weighted graphs over Z_p, labeled graph states, and graph rewrites.

A Graph is (p, adjacency): a symmetric zero-diagonal matrix of edge
weights in [0, p), weight 0 meaning no edge. Vertices are 0-indexed in
the API; the text format and DOT export are 1-indexed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gfp


class SelfLoopError(ValueError):
    pass


class DuplicateEdgeError(ValueError):
    pass


class WeightRangeError(ValueError):
    pass


class InvalidRewriteError(ValueError):
    pass


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    p: int
    adj: np.ndarray

    def __post_init__(self):
        gfp.ensure_prime(self.p)
        a = np.asarray(self.adj, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if (a < 0).any() or (a >= self.p).any():
            raise WeightRangeError("weights must lie in [0, p)")
        if (a != a.T).any():
            raise ValueError("adjacency must be symmetric")
        if np.diag(a).any():
            raise SelfLoopError("diagonal must be zero")
        a = np.ascontiguousarray(a)
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def edges(self) -> list[tuple[int, int, int]]:
        """Nonzero edges (i, j, w) with i < j, ascending lexicographic."""
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                w = int(self.adj[i, j])
                if w:
                    out.append((i, j, w))
        return out

    def edge_count(self) -> int:
        return int(np.count_nonzero(np.triu(self.adj)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.p == other.p and self.adj.shape == other.adj.shape \
            and bool((self.adj == other.adj).all())

    def __hash__(self) -> int:
        return hash((self.p, self.adj.shape[0], self.adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(p={self.p}, n={self.n}, edges={self.edges()})"


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Graph plus a Z-power label vector, one residue per vertex."""

    graph: Graph
    label: np.ndarray

    def __post_init__(self):
        z = gfp.as_residues(self.label, self.graph.p)
        if z.shape != (self.graph.n,):
            raise ValueError("label length must equal vertex count")
        z.setflags(write=False)
        object.__setattr__(self, "label", z)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.graph == other.graph and bool((self.label == other.label).all())

    def __hash__(self) -> int:
        return hash((self.graph, self.label.tobytes()))


def empty_graph(p: int, n: int) -> Graph:
    return Graph(p, np.zeros((n, n), dtype=np.int64))


def graph_from_edges(p: int, n: int, edges) -> Graph:
    """Build a graph from (i, j, w) triples; zero-weight edges are dropped."""
    a = np.zeros((n, n), dtype=np.int64)
    seen = set()
    for i, j, w in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"vertex out of range in edge ({i}, {j})")
        if i == j:
            raise SelfLoopError(f"self loop at vertex {i}")
        if not (0 <= w < p):
            raise WeightRangeError(f"weight {w} outside [0, {p})")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdgeError(f"edge {key} given twice")
        seen.add(key)
        a[i, j] = a[j, i] = w
    return Graph(p, a)


def row_restrict(g: Graph, v: int, cut) -> np.ndarray:
    """Row v of the adjacency with the columns in `cut` deleted."""
    drop = set(cut)
    keep = [u for u in range(g.n) if u not in drop]
    return g.adj[v, keep].copy()


def truncate(g: Graph, cut) -> Graph:
    """Graph with the vertices in `cut` and their incident edges removed."""
    cut = set(cut)
    if len(cut) >= g.n and g.n > 0:
        raise ValueError("cannot truncate every vertex")
    keep = [u for u in range(g.n) if u not in cut]
    return Graph(g.p, g.adj[np.ix_(keep, keep)])


def op_mult(g: Graph, v: int, b: int) -> Graph:
    """Rewrite that multiplies every edge weight at vertex v by b != 0."""
    b = int(b) % g.p
    if b == 0:
        raise InvalidRewriteError("scale factor must be nonzero")
    a = g.adj.copy()
    a[v, :] = (a[v, :] * b) % g.p
    a[:, v] = (a[:, v] * b) % g.p
    return Graph(g.p, a)


def op_star(g: Graph, v: int, a_coef: int) -> Graph:
    """Rewrite A_jk -> A_jk + a * A_vj * A_vk for j != k.

    The diagonal stays zero and row/column v are untouched because
    A_vv = 0; a = 0 is the identity.
    """
    a_coef = int(a_coef) % g.p
    row = g.adj[v]
    upd = (g.adj + a_coef * np.outer(row, row)) % g.p
    upd[np.diag_indices(g.n)] = 0
    return Graph(g.p, upd)


def z_measure_symbolic(s: LabeledGraph, cut, outcomes) -> LabeledGraph:
    """Post-measurement labeled graph after Z-measuring the vertices in `cut`.

    The graph is truncated; the surviving label is the old label restricted
    to the survivors plus sum_i outcomes[i] * (row of measured vertex i with
    the cut columns deleted). Global phase is dropped.
    """
    g = s.graph
    cut = list(cut)
    out = gfp.as_residues(outcomes, g.p)
    if out.shape != (len(cut),):
        raise ValueError("one outcome per measured vertex required")
    keep = [u for u in range(g.n) if u not in set(cut)]
    label = s.label[keep].copy()
    for k, a in zip(cut, out):
        label = (label + a * row_restrict(g, k, cut)) % g.p
    return LabeledGraph(truncate(g, cut), label)


def permute(g: Graph, perm) -> Graph:
    """Relabeled graph: new vertex i is old vertex perm[i]."""
    perm = list(perm)
    if sorted(perm) != list(range(g.n)):
        raise ValueError("not a permutation of the vertices")
    return Graph(g.p, g.adj[np.ix_(perm, perm)])


@lru_cache(maxsize=8)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def _min_over_perms(g: Graph, perms: np.ndarray) -> Graph:
    mats = g.adj[perms[:, :, None], perms[:, None, :]]
    flat = mats.reshape(len(perms), -1)
    if g.p <= 255:
        small = flat.astype(np.uint8)
        best = min(range(len(perms)), key=lambda t: small[t].tobytes())
    else:
        best = min(range(len(perms)), key=lambda t: tuple(flat[t]))
    return Graph(g.p, mats[best])


def canonical_form(g: Graph) -> Graph:
    """Lexicographically minimal relabeling, exact via all n! permutations."""
    if g.n > 8:
        raise ValueError("canonical_form enumerates n! permutations; n <= 8 only")
    if g.n <= 1:
        return g
    return _min_over_perms(g, _all_perms(g.n))


@lru_cache(maxsize=8)
def _group_perms(gcount: int, gsize: int) -> np.ndarray:
    """Permutations that map consecutive size-gsize blocks onto blocks."""
    perms = []
    for sigma in itertools.permutations(range(gcount)):
        for taus in itertools.product(itertools.permutations(range(gsize)), repeat=gcount):
            perms.append(
                [sigma[t] * gsize + taus[t][o] for t in range(gcount) for o in range(gsize)]
            )
    return np.array(perms, dtype=np.int64)


def canonical_form_grouped(g: Graph, group_size: int) -> Graph:
    """Minimal relabeling over permutations preserving the group partition.

    Groups are the consecutive blocks of `group_size` vertices; the
    grouped-AME property is invariant under exactly these relabelings.
    """
    if g.n % group_size:
        raise ValueError("group size must divide the vertex count")
    gcount = g.n // group_size
    if group_size == 1:
        return canonical_form(g)
    if gcount > 5 or g.n > 12:
        raise ValueError("grouped canonical form is desk-scale only")
    return _min_over_perms(g, _group_perms(gcount, group_size))


@dataclass(frozen=True)
class CzCircuit:
    """Preparation circuit: all qudits in |0bar>, one CZ^w gate per edge."""

    p: int
    n: int
    gates: tuple[tuple[int, int, int], ...]


def circuit_from_graph(g: Graph) -> CzCircuit:
    return CzCircuit(g.p, g.n, tuple(g.edges()))


def format_circuit(c: CzCircuit) -> str:
    lines = ["PREP_ALL |0bar>"]
    lines += [f"CZ {i + 1} {j + 1} ^{w}" for i, j, w in c.gates]
    return "\n".join(lines) + "\n"


def format_graph(g: Graph) -> str:
    """Text format: `p n` header then one `i j w` line per edge, 1-indexed."""
    lines = [f"{g.p} {g.n}"]
    lines += [f"{i + 1} {j + 1} {w}" for i, j, w in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Inverse of format_graph; `#` comments and blank lines are ignored."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphFormatError("empty graph file")
    if len(rows[0]) != 2:
        raise GraphFormatError("header must be `p n`")
    try:
        p, n = int(rows[0][0]), int(rows[0][1])
        edges = []
        for parts in rows[1:]:
            if len(parts) != 3:
                raise GraphFormatError(f"bad edge line: {' '.join(parts)}")
            i, j, w = (int(x) for x in parts)
            edges.append((i - 1, j - 1, w))
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
    if n < 0:
        raise GraphFormatError("negative vertex count")
    return graph_from_edges(p, n, edges)


def format_graph_line(g: Graph) -> str:
    """One-line variant used for witness files: `p n i j w i j w ...`."""
    parts = [str(g.p), str(g.n)]
    for i, j, w in g.edges():
        parts += [str(i + 1), str(j + 1), str(w)]
    return " ".join(parts)


def parse_graph_line(line: str) -> Graph:
    toks = line.split()
    if len(toks) < 2 or (len(toks) - 2) % 3:
        raise GraphFormatError("expected `p n` plus (i, j, w) triples")
    p, n = int(toks[0]), int(toks[1])
    trip = [int(t) for t in toks[2:]]
    edges = [(trip[t] - 1, trip[t + 1] - 1, trip[t + 2]) for t in range(0, len(trip), 3)]
    return graph_from_edges(p, n, edges)


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def save_graph(g: Graph, path, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        fh.write(format_graph(g))


def to_dot(g: Graph) -> str:
    """DOT text with edge labels carrying the weights."""
    lines = ["graph G {"]
    lines += [f"  {v + 1};" for v in range(g.n)]
    lines += [f'  {i + 1} -- {j + 1} [label="{w}"];' for i, j, w in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
