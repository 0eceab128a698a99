import itertools

import numpy as np
import pytest

from amegraph import simulator as sim
from amegraph.graph import Graph, LabeledGraph, graph_from_edges, z_measure_symbolic
from amegraph.stabilizer import from_graph


def single_edge(p=2):
    return graph_from_edges(p, 2, [(0, 1, 1)])


def random_state(p, n, rng) -> sim.StateVector:
    v = rng.standard_normal(p**n) + 1j * rng.standard_normal(p**n)
    return sim.StateVector(p, n, v / np.linalg.norm(v))


def test_apply_z_on_basis():
    s = sim.basis_state(3, 1, [1])
    out = sim.apply_z(s, 0)
    assert np.isclose(out.amps[1], np.exp(2j * np.pi / 3))


def test_apply_x_wraps():
    s = sim.basis_state(3, 1, [2])
    out = sim.apply_x(s, 0)
    assert np.isclose(out.amps[0], 1.0)


def test_zx_commutation():
    rng = np.random.default_rng(1)
    for p in (2, 3, 5):
        s = random_state(p, 2, rng)
        zx = sim.apply_z(sim.apply_x(s, 0), 0)
        xz = sim.apply_x(sim.apply_z(s, 0), 0)
        assert np.allclose(zx.amps, np.exp(2j * np.pi / p) * xz.amps)


def test_cz_examples():
    s = sim.basis_state(2, 2, [1, 1])
    assert np.isclose(sim.apply_cz(s, 0, 1).amps[3], -1.0)
    t = sim.basis_state(3, 2, [1, 2])
    out = sim.apply_cz(t, 0, 1, power=2)
    # exponent 2*1*2 = 4 = 1 mod 3
    assert np.isclose(out.amps[m_idx(3, [1, 2])], np.exp(2j * np.pi / 3))
    rng = np.random.default_rng(2)
    s = random_state(3, 2, rng)
    assert np.allclose(sim.apply_cz(s, 0, 1).amps, sim.apply_cz(s, 1, 0).amps)


def m_idx(p, digits):
    return sum(d * p**i for i, d in enumerate(digits))


def test_gate_orders():
    rng = np.random.default_rng(3)
    for p in (2, 3):
        s = random_state(p, 2, rng)
        z = x = cz = s
        for _ in range(p):
            z = sim.apply_z(z, 0)
            x = sim.apply_x(x, 0)
            cz = sim.apply_cz(cz, 0, 1)
        assert np.allclose(z.amps, s.amps)
        assert np.allclose(x.amps, s.amps)
        assert np.allclose(cz.amps, s.amps)


def test_fourier_properties():
    for p in (2, 3, 5):
        f = sim.fourier_matrix(p)
        assert np.allclose(f @ f.conj().T, np.eye(p))
        # F maps |kbar> back to |k>
        for k in range(p):
            kbar = f.conj().T @ np.eye(p)[k]
            assert np.allclose(f @ kbar, np.eye(p)[k])


def test_single_edge_state():
    s = sim.build_graph_state(single_edge())
    want = np.array([1, 1, 1, -1], dtype=complex) / 2
    assert np.allclose(s.amps, want)


def test_labeled_states_orthogonal():
    g = graph_from_edges(2, 4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    states = {}
    for label in itertools.product(range(2), repeat=4):
        states[label] = sim.build_labeled(LabeledGraph(g, np.array(label)))
    labels = list(states)
    for a in labels:
        for b in labels:
            ov = abs(sim.overlap(states[a], states[b]))
            assert np.isclose(ov, 1.0 if a == b else 0.0, atol=1e-9)


def test_graph_state_stabilized_by_generators():
    rng = np.random.default_rng(4)
    for p in (2, 3):
        for n in (2, 3, 4):
            adj = rng.integers(0, p, size=(n, n))
            adj = (adj + adj.T) % p
            np.fill_diagonal(adj, 0)
            g = Graph(p, adj)
            s = sim.build_graph_state(g)
            for i in range(n):
                t = sim.apply_x(s, i)
                for j in range(n):
                    if adj[i, j]:
                        t = sim.apply_z(t, j, int(adj[i, j]))
                assert np.allclose(t.amps, s.amps)


def test_cz_order_invariance():
    g = graph_from_edges(3, 4, [(0, 1, 1), (0, 2, 1), (1, 3, 2), (2, 3, 1)])
    ref = sim.build_graph_state(g)
    rng = np.random.default_rng(5)
    s = sim.uniform_state(3, 4)
    edges = g.edges()
    for _ in range(5):
        order = rng.permutation(len(edges))
        t = s
        for k in order:
            i, j, w = edges[k]
            t = sim.apply_cz(t, i, j, w)
        assert np.allclose(t.amps, ref.amps)


def test_reduced_density_single_edge():
    s = sim.build_graph_state(single_edge(3))
    rho = sim.reduced_density(s, [0])
    assert np.allclose(rho, np.eye(3) / 3)
    assert np.isclose(sim.entropy_edits(rho, 3), 1.0)


def test_c5_ame_entropies():
    g = graph_from_edges(
        2, 5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)]
    )
    s = sim.build_graph_state(g)
    for cut in itertools.combinations(range(5), 2):
        rho = sim.reduced_density(s, list(cut))
        assert np.allclose(rho, np.eye(4) / 4, atol=1e-9)
        assert abs(sim.cut_entropy_edits(s, cut) - 2.0) < 1e-9


def test_c4_failing_cut_entropy():
    g = graph_from_edges(2, 4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    s = sim.build_graph_state(g)
    assert abs(sim.cut_entropy_edits(s, (0, 3)) - 1.0) < 1e-9


def test_entropy_symmetry():
    rng = np.random.default_rng(6)
    s = random_state(3, 4, rng)
    for cut in itertools.combinations(range(4), 2):
        comp = tuple(v for v in range(4) if v not in cut)
        assert abs(sim.cut_entropy_edits(s, cut) - sim.cut_entropy_edits(s, comp)) < 1e-9


def test_z_measure_dense_uniform_and_crosscheck():
    g = graph_from_edges(2, 4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    s = sim.build_graph_state(g)
    for q in range(4):
        for outcome in range(2):
            prob, post = sim.z_measure_dense(s, q, outcome)
            assert abs(prob - 0.5) < 1e-9
            sym = z_measure_symbolic(LabeledGraph(g, np.zeros(4, dtype=int)), (q,), (outcome,))
            assert abs(abs(sim.overlap(post, sim.build_labeled(sym))) - 1) < 1e-9


def test_z_measure_zero_probability():
    s = sim.basis_state(2, 1, [0])
    with pytest.raises(sim.ZeroProbabilityError):
        sim.z_measure_dense(s, 0, 1)


def test_bell_measure_standard_pair():
    # (|00> + |11>)/sqrt(2) projected on Psi_00 leaves certainty
    s = sim.bell_state(2, 0, 0)
    assert np.allclose(s.amps, np.array([1, 0, 0, 1]) / np.sqrt(2))
    two = sim.StateVector(2, 2, np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2))
    prob, _post = sim.bell_measure(two, (0, 1), 0, 0)
    assert abs(prob - 1.0) < 1e-9


def test_bell_basis_complete():
    for p in (2, 3, 5):
        acc = np.zeros((p * p, p * p), dtype=complex)
        for g in range(p):
            for h in range(p):
                v = sim.bell_state(p, g, h).amps
                acc += np.outer(v, v.conj())
        assert np.allclose(acc, np.eye(p * p), atol=1e-9)


def test_ugh_identity_and_unitarity():
    assert np.allclose(sim.ugh_matrix(2, 0, 0), np.eye(2))
    for p in (2, 3, 5):
        for g in range(p):
            for h in range(p):
                u = sim.ugh_matrix(p, g, h)
                assert np.allclose(u @ u.conj().T, np.eye(p))


def test_norm_preserved_by_unitaries():
    rng = np.random.default_rng(7)
    s = random_state(3, 3, rng)
    for out in (
        sim.apply_z(s, 1),
        sim.apply_x(s, 2, 2),
        sim.apply_f(s, 0),
        sim.apply_cz(s, 0, 2),
        sim.apply_ugh(s, 1, 2, 1),
    ):
        assert abs(np.vdot(out.amps, out.amps).real - 1) < 1e-9


def test_too_large_cap():
    g = graph_from_edges(2, 4, [(0, 1, 1)])
    with pytest.raises(sim.TooLargeError):
        sim.build_graph_state(g, cap=8)


def test_stabilizer_state_matches_graph_state():
    rng = np.random.default_rng(8)
    for p in (2, 3):
        for n in (2, 3):
            adj = rng.integers(0, p, size=(n, n))
            adj = (adj + adj.T) % p
            np.fill_diagonal(adj, 0)
            g = Graph(p, adj)
            m = from_graph(g)
            psi = sim.stabilizer_state(m.p, m.x, m.z)
            ref = sim.build_graph_state(g)
            assert abs(abs(sim.overlap(psi, ref)) - 1) < 1e-9


def test_format_state():
    s = sim.basis_state(2, 1, [0])
    lines = sim.format_state(s).splitlines()
    assert lines[0] == "2 1" and len(lines) == 3
