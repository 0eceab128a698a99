"""High-throughput exhaustive and randomized search for AME graph states.

Graphs on n vertices are encoded as weight words over the C(n, 2) edge
slots in lexicographic order; an exhaustive run scans all base^E words
(base = p, or 2 under the weight-one restriction) as big-endian integers,
so sharding on the first t edge weights splits the id range into
contiguous blocks. The rank predicate is evaluated in bulk: for each cut
the relevant edge digits are gathered and looked up in a precomputed
"is full rank" table (bit-packed GF(2) elimination builds the p = 2
tables, batched Gauss-Jordan the rest), with survivors compacted after
every cut so almost all graphs are rejected after one or two lookups.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from . import gfp
from .entanglement import is_ame, is_ame_grouped
from .graph import Graph, canonical_form, canonical_form_grouped

_CHUNK = 1 << 16
_TABLE_CAP = 1 << 22


class BudgetExceededError(ValueError):
    pass


@dataclass
class SearchSpec:
    n: int
    p: int
    mode: str = "exhaustive"  # or "random"
    group_size: int = 1
    seed: int | None = None
    workers: int = 1
    samples: int = 10**6
    budget: int = 1 << 23
    weights_one: bool = False
    dense_bias: bool = False
    prune_zero_row: bool = False
    prune_rescale: bool = False
    prune_canonical: bool = False

    def __post_init__(self):
        gfp.ensure_prime(self.p)
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.n % self.group_size:
            raise ValueError("group size must divide the vertex count")
        if self.n // self.group_size < 2:
            raise ValueError("need at least two parties")

    @property
    def base(self) -> int:
        return 2 if self.weights_one else self.p

    @property
    def edge_slots(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass
class SearchResult:
    witnesses: list[Graph]
    examined: int
    pruned: int
    elapsed: float
    exhaustive: bool
    spec: SearchSpec = field(repr=False, default=None)

    @property
    def rate(self) -> float:
        """Predicate checks per second."""
        return self.examined / max(self.elapsed, 1e-9)

    def stats_line(self) -> str:
        return (
            f"examined={self.examined} pruned={self.pruned} "
            f"witnesses={len(self.witnesses)} rate={int(self.rate)}/s "
            f"exhaustive={'yes' if self.exhaustive else 'no'}"
        )


def _edge_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


@lru_cache(maxsize=None)
def _edge_index_map(n: int) -> dict[tuple[int, int], int]:
    return {e: t for t, e in enumerate(_edge_list(n))}


def _cut_sets(n: int, group_size: int) -> list[tuple[int, ...]]:
    """Vertex cuts the predicate must certify, complements deduplicated."""
    if group_size == 1:
        m = n // 2
        cuts = []
        for c in combinations(range(n), m):
            if 2 * m == n and 0 not in c:
                continue
            cuts.append(c)
        return cuts
    gcount = n // group_size
    half = gcount // 2
    cuts = []
    for chosen in combinations(range(gcount), half):
        if gcount % 2 == 0 and 0 not in chosen:
            continue
        cuts.append(tuple(v for t in chosen for v in range(t * group_size, (t + 1) * group_size)))
    return cuts


@lru_cache(maxsize=None)
def _rank_full_table(p: int, rows: int, cols: int) -> np.ndarray:
    """table[v] = True iff the (rows x cols) matrix packed into the base-p
    digits of v (row-major, digit 0 first) has full row rank."""
    total = p ** (rows * cols)
    if p == 2:
        # bit-packed elimination, the GF(2) fast path
        out = np.empty(total, dtype=bool)
        for v in range(total):
            packed = [(v >> (r * cols)) & ((1 << cols) - 1) for r in range(rows)]
            out[v] = gfp.rank_gf2(packed) == rows
        return out
    idx = np.arange(total)
    digits = np.empty((total, rows * cols), dtype=np.int16)
    for t in range(rows * cols):
        digits[:, t] = (idx // p**t) % p
    mats = digits.reshape(total, rows, cols)
    return gfp.rank_batch(mats, p) == rows


def _cut_plans(spec: SearchSpec):
    """Per cut: gather columns, expected rank, and lookup table if small."""
    n, p = spec.n, spec.p
    eidx = _edge_index_map(n)
    plans = []
    for cut in _cut_sets(n, spec.group_size):
        inside = set(cut)
        rest = [u for u in range(n) if u not in inside]
        cols = [eidx[(min(k, l), max(k, l))] for k in cut for l in rest]
        rows, width = len(cut), len(rest)
        table = None
        if p ** (rows * width) <= _TABLE_CAP:
            table = _rank_full_table(p, rows, width)
        plans.append((np.array(cols), rows, width, table))
    # most selective first is irrelevant by symmetry; keep deterministic order
    return plans


def _predicate_mask(weights: np.ndarray, spec: SearchSpec, plans) -> np.ndarray:
    """Boolean mask of rows of `weights` whose graphs pass every cut."""
    p = spec.p
    alive = np.arange(weights.shape[0])
    for cols, rows, width, table in plans:
        sub = weights[alive][:, cols].astype(np.int64)
        if table is not None:
            packed = sub @ (p ** np.arange(rows * width, dtype=np.int64))
            ok = table[packed]
        else:
            ok = gfp.rank_batch(sub.reshape(-1, rows, width), p) == rows
        alive = alive[ok]
        if alive.size == 0:
            break
    mask = np.zeros(weights.shape[0], dtype=bool)
    mask[alive] = True
    return mask


def _prune_mask(weights: np.ndarray, spec: SearchSpec) -> np.ndarray:
    """True where a pruning layer rejects the graph before the predicate."""
    n = spec.n
    eidx = _edge_index_map(n)
    pruned = np.zeros(weights.shape[0], dtype=bool)
    if spec.prune_zero_row:
        for v in range(n):
            inc = [eidx[(min(u, v), max(u, v))] for u in range(n) if u != v]
            pruned |= (weights[:, inc] == 0).all(axis=1)
    if spec.prune_rescale and spec.p > 2:
        # a graph is scale-normal when each vertex's first nonzero incident
        # weight (neighbors in ascending order) is 1; every rescaling orbit
        # contains exactly such representatives
        for v in range(n):
            inc = [eidx[(min(u, v), max(u, v))] for u in range(n) if u != v]
            wv = weights[:, inc]
            nz = wv != 0
            has = nz.any(axis=1)
            first = wv[np.arange(len(wv)), nz.argmax(axis=1)]
            pruned |= has & (first != 1)
    if spec.prune_canonical:
        if n > 6:
            raise ValueError("canonical pruning enumerates n! relabelings; n <= 6 only")
        base = spec.base
        powers = base ** np.arange(spec.edge_slots - 1, -1, -1, dtype=np.int64)
        ids = weights.astype(np.int64) @ powers
        best = ids.copy()
        edges = _edge_list(n)
        for perm in permutations(range(n)):
            if perm == tuple(range(n)):
                continue
            gather = [eidx[(min(perm[i], perm[j]), max(perm[i], perm[j]))] for i, j in edges]
            pid = weights[:, gather].astype(np.int64) @ powers
            np.minimum(best, pid, out=best)
        pruned |= best < ids
    return pruned


def _graph_from_weights(row: np.ndarray, spec: SearchSpec) -> Graph:
    a = np.zeros((spec.n, spec.n), dtype=np.int64)
    for t, (i, j) in enumerate(_edge_list(spec.n)):
        a[i, j] = a[j, i] = int(row[t])
    return Graph(spec.p, a)


def _weights_from_ids(ids: np.ndarray, spec: SearchSpec) -> np.ndarray:
    E = spec.edge_slots
    base = spec.base
    out = np.empty((ids.size, E), dtype=np.uint8)
    for e in range(E):
        out[:, e] = (ids // base ** (E - 1 - e)) % base
    return out


def _scan_ids(lo: int, hi: int, spec: SearchSpec, plans) -> tuple[list[int], int, int]:
    """Scan an id range; returns (witness ids, examined, pruned)."""
    wit: list[int] = []
    examined = 0
    pruned_total = 0
    for start in range(lo, hi, _CHUNK):
        ids = np.arange(start, min(start + _CHUNK, hi), dtype=np.int64)
        weights = _weights_from_ids(ids, spec)
        pruned = _prune_mask(weights, spec)
        keep = ~pruned
        pruned_total += int(pruned.sum())
        examined += int(keep.sum())
        mask = _predicate_mask(weights[keep], spec, plans)
        if mask.any():
            wit.extend(int(v) for v in ids[keep][mask])
    return wit, examined, pruned_total


def _dedupe_canonical(graphs: list[Graph], group_size: int = 1) -> list[Graph]:
    seen: dict[bytes, Graph] = {}
    for g in graphs:
        cf = canonical_form_grouped(g, group_size) if group_size > 1 else canonical_form(g)
        seen.setdefault(cf.adj.tobytes(), cf)
    return [seen[k] for k in sorted(seen)]


def enumerate_graphs(spec: SearchSpec) -> SearchResult:
    """Exhaustive scan of every weight assignment, deterministic witnesses.

    The witness list is the canonical forms of all passing graphs,
    deduplicated; it does not depend on worker count or shard order.
    """
    total = spec.base**spec.edge_slots
    if total > spec.budget:
        raise BudgetExceededError(f"{total} graphs exceed the budget of {spec.budget}")
    plans = _cut_plans(spec)
    t0 = time.perf_counter()

    shards = 1
    t_fixed = 0
    while shards < spec.workers and t_fixed < spec.edge_slots:
        shards *= spec.base
        t_fixed += 1
    step = total // shards
    bounds = [(s * step, total if s == shards - 1 else (s + 1) * step) for s in range(shards)]

    if spec.workers > 1 and len(bounds) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=spec.workers) as pool:
            parts = list(pool.map(lambda b: _scan_ids(b[0], b[1], spec, plans), bounds))
    else:
        parts = [_scan_ids(lo, hi, spec, plans) for lo, hi in bounds]

    wit_ids = [w for part in parts for w in part[0]]
    examined = sum(part[1] for part in parts)
    pruned = sum(part[2] for part in parts)
    graphs = [
        _graph_from_weights(_weights_from_ids(np.array([w]), spec)[0], spec) for w in wit_ids
    ]
    elapsed = time.perf_counter() - t0
    return SearchResult(_dedupe_canonical(graphs, spec.group_size), examined, pruned, elapsed, True, spec)


def _random_weights(rng: np.random.Generator, count: int, spec: SearchSpec) -> np.ndarray:
    if spec.weights_one:
        return rng.integers(0, 2, size=(count, spec.edge_slots), dtype=np.uint8)
    if spec.dense_bias:
        w = rng.integers(1, spec.p, size=(count, spec.edge_slots), dtype=np.uint8)
        w[rng.random((count, spec.edge_slots)) < 1.0 / (2 * spec.p)] = 0
        return w
    return rng.integers(0, spec.p, size=(count, spec.edge_slots), dtype=np.uint8)


def random_search(spec: SearchSpec) -> SearchResult:
    """Sample graphs until the predicate passes or the budget runs out.

    Stops at the first witness; reproducible for a fixed seed (worker
    count does not enter the sampling stream).
    """
    plans = _cut_plans(spec)
    rng = np.random.default_rng(spec.seed)
    t0 = time.perf_counter()
    examined = 0
    pruned_total = 0
    drawn = 0
    batch = 1 << 14
    while drawn < spec.samples:
        count = min(batch, spec.samples - drawn)
        weights = _random_weights(rng, count, spec)
        drawn += count
        pruned = _prune_mask(weights, spec)
        keep = ~pruned
        mask = np.zeros(count, dtype=bool)
        mask[keep] = _predicate_mask(weights[keep], spec, plans)
        if mask.any():
            first = int(mask.argmax())
            examined += int(keep[: first + 1].sum())
            pruned_total += int(pruned[: first + 1].sum())
            g = _graph_from_weights(weights[first], spec)
            elapsed = time.perf_counter() - t0
            cf = canonical_form_grouped(g, spec.group_size) if spec.group_size > 1 else canonical_form(g)
            return SearchResult([cf], examined, pruned_total, elapsed, False, spec)
        examined += int(keep.sum())
        pruned_total += int(pruned.sum())
    elapsed = time.perf_counter() - t0
    return SearchResult([], examined, pruned_total, elapsed, False, spec)


def grouped_search(n_parties: int, group_size: int, p: int, **kwargs) -> SearchResult:
    """Search for grouped-AME witnesses: n_parties groups of group_size qudits."""
    spec = SearchSpec(n=n_parties * group_size, p=p, group_size=group_size, **kwargs)
    return run(spec)


def run(spec: SearchSpec) -> SearchResult:
    if spec.mode == "exhaustive":
        return enumerate_graphs(spec)
    return random_search(spec)


def _reference_search(spec: SearchSpec) -> SearchResult:
    """Scalar reference path used to validate the vectorized engine."""
    if spec.mode != "exhaustive":
        raise ValueError("reference path is exhaustive only")
    total = spec.base**spec.edge_slots
    if total > spec.budget:
        raise BudgetExceededError(f"{total} graphs exceed the budget of {spec.budget}")
    groups = [
        tuple(range(t * spec.group_size, (t + 1) * spec.group_size))
        for t in range(spec.n // spec.group_size)
    ]
    t0 = time.perf_counter()
    witnesses = []
    examined = 0
    pruned_total = 0
    for gid in range(total):
        weights = _weights_from_ids(np.array([gid]), spec)
        if bool(_prune_mask(weights, spec)[0]):
            pruned_total += 1
            continue
        examined += 1
        g = _graph_from_weights(weights[0], spec)
        if spec.group_size == 1:
            ok = is_ame(g).is_ame if g.n >= 2 else False
        else:
            ok = is_ame_grouped(g, groups).is_ame
        if ok:
            witnesses.append(g)
    elapsed = time.perf_counter() - t0
    return SearchResult(_dedupe_canonical(witnesses, spec.group_size), examined, pruned_total, elapsed, True, spec)
