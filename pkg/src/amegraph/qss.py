"""Threshold and ramp quantum secret sharing on AME graph states.

An AME graph on 2m vertices yields an ((m, 2m-1)) threshold scheme: one
vertex plays the dealer, who teleports a p-dimensional secret onto the
remaining players by a generalized Bell measurement against their graph
qudit. With L dealers the same construction gives an (m, L, 2m-L) ramp
scheme carrying a p^L-dimensional secret. Everything here is simulated
densely, so fidelities and trace distances are exact up to float error.

Register conventions: secret ancillas are appended after the graph
qudits and consumed by the Bell measurements, leaving the players in
ascending vertex order. After the recovery unitary, register l holds
dealer l's secret coordinate (register 0 first).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gfp
from .entanglement import is_ame
from .graph import Graph, row_restrict, truncate
from .simulator import (
    StateVector,
    bell_measure,
    graph_state_amplitudes,
    omega_powers,
    reduced_density,
    ugh_matrix,
)


class NotAuthorizedError(ValueError):
    pass


def _check_scheme_graph(g: Graph) -> None:
    if g.n % 2:
        raise ValueError("scheme needs an even number of vertices")
    if not is_ame(g).is_ame:
        raise ValueError("graph is not absolutely maximally entangled")


@dataclass(frozen=True)
class ThresholdScheme:
    """((m, 2m-1)) scheme from an AME graph on 2m vertices."""

    graph: Graph
    dealer: int = 0

    def __post_init__(self):
        _check_scheme_graph(self.graph)
        if not 0 <= self.dealer < self.graph.n:
            raise ValueError("dealer must be a vertex")

    @property
    def m(self) -> int:
        return self.graph.n // 2

    @property
    def dealers(self) -> tuple[int, ...]:
        return (self.dealer,)

    @property
    def players(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if v != self.dealer)


@dataclass(frozen=True)
class RampScheme:
    """(m, L, 2m-L) ramp scheme: L dealers on an AME graph with 2m vertices."""

    graph: Graph
    dealers: tuple[int, ...]

    def __post_init__(self):
        _check_scheme_graph(self.graph)
        object.__setattr__(self, "dealers", tuple(sorted(self.dealers)))
        if len(set(self.dealers)) != len(self.dealers):
            raise ValueError("dealers must be distinct")
        if not all(0 <= d < self.graph.n for d in self.dealers):
            raise ValueError("dealers must be vertices")
        if not 1 <= len(self.dealers) <= self.graph.n // 2:
            raise ValueError("need 1 <= L <= m dealers")

    @property
    def m(self) -> int:
        return self.graph.n // 2

    @property
    def L(self) -> int:
        return len(self.dealers)

    @property
    def players(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.graph.n) if v not in set(self.dealers))


def random_secret(p: int, registers: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random pure secret on `registers` p-level registers."""
    v = rng.standard_normal(p**registers) + 1j * rng.standard_normal(p**registers)
    return v / np.linalg.norm(v)


def _secret_array(scheme, secret) -> np.ndarray:
    p = scheme.graph.p
    L = len(scheme.dealers)
    s = np.asarray(secret, dtype=np.complex128).reshape(-1)
    if s.shape != (p**L,):
        raise ValueError(f"secret must have {p**L} amplitudes")
    norm = np.linalg.norm(s)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("secret must be normalized")
    return s


def encode(scheme, secret, outcomes) -> StateVector:
    """Dense encoding: Bell-measure each (ancilla, dealer qudit) pair.

    `outcomes` is one (g, h) per dealer; every outcome occurs with
    probability exactly 1/p^2, which is asserted. The returned state
    lives on the players in ascending vertex order.
    """
    g = scheme.graph
    p, n = g.p, g.n
    dealers = list(scheme.dealers)
    L = len(dealers)
    outcomes = [tuple(o) for o in outcomes]
    if len(outcomes) != L:
        raise ValueError("one Bell outcome per dealer required")
    s = _secret_array(scheme, secret)

    amps = np.kron(s, graph_state_amplitudes(g))  # ancillas are qudits n..n+L-1
    state = StateVector(p, n + L, amps)
    labels = list(range(n)) + [("anc", l) for l in range(L)]
    for l, (bg, bh) in enumerate(outcomes):
        anc = labels.index(("anc", l))
        dl = labels.index(dealers[l])
        prob, state = bell_measure(state, (anc, dl), bg, bh)
        assert abs(prob - 1.0 / p**2) < 1e-9, "Bell outcomes must be uniform"
        removed = sorted((anc, dl), reverse=True)
        for r in removed:
            labels.pop(r)
    assert labels == list(scheme.players)
    return state


def encode_symbolic(scheme, secret, outcomes):
    """Labeled-graph superposition equal (up to global phase) to encode().

    Returns [(coefficient, LabeledGraph), ...] over the dealer coordinate
    tuples; coefficients fold in the Bell-outcome corrections.
    """
    from .graph import LabeledGraph

    g = scheme.graph
    p = g.p
    dealers = list(scheme.dealers)
    L = len(dealers)
    outcomes = [tuple(o) for o in outcomes]
    s = _secret_array(scheme, secret)
    w = omega_powers(p)
    rows = [row_restrict(g, d, dealers) for d in dealers]
    trunc = truncate(g, dealers)
    terms = []
    for flat in range(p**L):
        digits = [(flat // p**l) % p for l in range(L)]
        coeff = s[flat]
        label = np.zeros(trunc.n, dtype=np.int64)
        shifted = []
        for l, (bg, bh) in enumerate(outcomes):
            i = (digits[l] + bh) % p  # U_gh^dagger relabeling per dealer
            coeff = coeff * w[(-(digits[l]) * bg) % p]
            shifted.append(i)
            label = (label + i * rows[l]) % p
        # edges between dealers phase the branch by omega^(A_dd' i i')
        for a in range(L):
            for b in range(a + 1, L):
                coeff = coeff * w[(g.adj[dealers[a], dealers[b]] * shifted[a] * shifted[b]) % p]
        terms.append((coeff, LabeledGraph(trunc, label)))
    # the dealer rows are independent (AME), so all p^L labels are distinct
    # and the coefficients carry unit total weight
    return terms


def recovery_map(scheme, authorized) -> np.ndarray:
    """Unitary on the authorized players' qudits mapping labeled graph
    states to computational registers (dealer coordinates first).

    Requires |authorized| >= m; the defining rows are the dealer and
    traced-player adjacency rows restricted to the authorized columns,
    completed to a basis when the set is larger than minimal.
    """
    g = scheme.graph
    p = g.p
    dealers = list(scheme.dealers)
    B = sorted(authorized)
    if set(B) & set(dealers):
        raise ValueError("authorized set must not contain dealers")
    if not set(B) <= set(scheme.players):
        raise ValueError("authorized set must consist of players")
    if len(B) < scheme.m:
        raise NotAuthorizedError(f"need at least {scheme.m} players")
    traced = [v for v in scheme.players if v not in set(B)]
    removed = sorted(dealers + traced)
    rows = [row_restrict(g, d, removed) for d in dealers]
    rows += [row_restrict(g, k, removed) for k in traced]
    R = np.array(rows, dtype=np.int64) % p
    if gfp.mat_rank(R, p) != len(rows):
        raise NotAuthorizedError("restricted rows are dependent")  # non-AME only
    # complete to a basis of the label space with unit vectors
    full = R
    for t in range(len(B)):
        if full.shape[0] == len(B):
            break
        e = np.zeros((1, len(B)), dtype=np.int64)
        e[0, t] = 1
        cand = np.vstack([full, e])
        if gfp.mat_rank(cand, p) == cand.shape[0]:
            full = cand
    rinv = gfp.mat_inverse(full, p)

    sub = truncate(g, removed)
    base = graph_state_amplitudes(sub)
    dim = p ** len(B)
    digits = np.empty((dim, len(B)), dtype=np.int64)
    idx = np.arange(dim)
    for t in range(len(B)):
        digits[:, t] = (idx // p**t) % p
    labels = digits  # all label vectors, little-endian enumeration
    # row z of `phases` turns the base graph state into the label-z state
    phases = omega_powers(p)[(labels @ digits.T) % p]
    coords = (labels @ rinv) % p
    cidx = coords @ (p ** np.arange(len(B), dtype=np.int64))
    # a projection outcome with coordinates c comes with the phase
    # omega^(sum_{t<t'} A[v_t, v_t'] c_t c_t') from edges inside the
    # dealer-plus-traced set; V must absorb it to reach |c> exactly
    src = dealers + traced
    quad = np.zeros(dim, dtype=np.int64)
    for t in range(len(src)):
        for t2 in range(t + 1, len(src)):
            quad += int(g.adj[src[t], src[t2]]) * coords[:, t] * coords[:, t2]
    fix = np.conj(omega_powers(p)[quad % p])
    v = np.zeros((dim, dim), dtype=np.complex128)
    v[cidx, :] = fix[:, None] * np.conj(phases * base[None, :])
    return v


def _trace_to_registers(rho: np.ndarray, p: int, keep: int) -> np.ndarray:
    """Partial trace keeping the first `keep` little-endian registers."""
    lo = p**keep
    hi = rho.shape[0] // lo
    t = rho.reshape(hi, lo, hi, lo)
    return np.einsum("abad->bd", t)


def _recovered_state(scheme, secret, B, outcomes) -> np.ndarray:
    """Density matrix of the dealer registers after recovery on B."""
    g = scheme.graph
    p = g.p
    L = len(scheme.dealers)
    state = encode(scheme, secret, outcomes)
    B = sorted(B)
    positions = [scheme.players.index(b) for b in B]
    rho = reduced_density(state, positions)
    v = recovery_map(scheme, B)
    rho = v @ rho @ v.conj().T
    for l, (bg, bh) in enumerate(outcomes):
        if (bg % p, bh % p) != (0, 0):
            u = ugh_matrix(p, bg, bh)
            lift = np.kron(np.eye(p ** (len(B) - l - 1), dtype=np.complex128), u)
            lift = np.kron(lift, np.eye(p**l, dtype=np.complex128))
            rho = lift @ rho @ lift.conj().T
    return _trace_to_registers(rho, p, L)


def run_threshold(scheme: ThresholdScheme, secret, authorized, outcome=(0, 0)) -> float:
    """Encode, recover on `authorized`, undo the Bell correction; returns
    the fidelity of the recovered register with the secret."""
    s = _secret_array(scheme, secret)
    rho = _recovered_state(scheme, s, authorized, [tuple(outcome)])
    return float(np.real(np.vdot(s, rho @ s)))


def run_ramp(scheme: RampScheme, secrets, authorized) -> float:
    """Ramp recovery with all Bell outcomes fixed to (0, 0).

    `secrets` is either the joint p^L secret vector or a list of L
    per-dealer vectors (tensored little-endian, dealer 0 first). With
    L = 1 this is exactly the threshold path at outcome (0, 0).
    """
    if isinstance(secrets, (list, tuple)):
        s = np.array([1.0], dtype=np.complex128)
        for part in secrets:
            s = np.kron(np.asarray(part, dtype=np.complex128), s)
    else:
        s = np.asarray(secrets, dtype=np.complex128)
    s = _secret_array(scheme, s)
    rho = _recovered_state(scheme, s, authorized, [(0, 0)] * scheme.L)
    return float(np.real(np.vdot(s, rho @ s)))


def trace_distance(rho1: np.ndarray, rho2: np.ndarray) -> float:
    vals = np.linalg.eigvalsh(rho1 - rho2)
    return float(0.5 * np.abs(vals).sum())


def audit_forbidden(scheme, forbidden, trials: int, rng: np.random.Generator,
                    outcomes=None) -> float:
    """Max trace distance between a forbidden set's reduced states over
    `trials` random secret pairs; ~0 certifies the set learns nothing."""
    g = scheme.graph
    L = len(scheme.dealers)
    F = sorted(forbidden)
    if not set(F) <= set(scheme.players):
        raise ValueError("forbidden set must consist of players")
    if outcomes is None:
        outcomes = [(0, 0)] * L
    positions = [scheme.players.index(f) for f in F]
    worst = 0.0
    for _ in range(trials):
        rhos = []
        for _ in range(2):
            s = random_secret(g.p, L, rng)
            state = encode(scheme, s, outcomes)
            rhos.append(reduced_density(state, positions))
        worst = max(worst, trace_distance(rhos[0], rhos[1]))
    return worst
