import numpy as np
import pytest

from amegraph import composite as comp
from amegraph.entanglement import is_ame
from amegraph.graph import save_graph
from amegraph.simulator import build_graph_state, cut_entropy_edits
from amegraph.witnesses import ame44_grouped, c5, quad_weighted


@pytest.mark.parametrize("d,factors", [(6, [2, 3]), (4, [2, 2]), (12, [2, 2, 3]),
                                       (2, [2]), (30, [2, 3, 5])])
def test_factorize(d, factors):
    assert comp.factorize(d) == factors


def test_factorize_rejects_small():
    with pytest.raises(ValueError):
        comp.factorize(1)


def test_build_ame_5_6():
    c = comp.build_composite(5, 6)
    assert [f.p for f in c.factors] == [2, 3]
    assert all(f.group_size == 1 for f in c.factors)
    rep = comp.verify_composite(c)
    assert rep.is_ame


def test_build_ame_4_4():
    c = comp.build_composite(4, 4)
    assert len(c.factors) == 1 and c.factors[0].group_size == 2
    rep = comp.verify_composite(c)
    assert rep.is_ame
    fr = rep.factors[0]
    assert sorted(fr.party_report.cut_ranks.values()) == [4, 4, 4]
    assert fr.ungrouped_report is not None and not fr.ungrouped_report.is_ame
    assert fr.ungrouped_report.witness is not None


def test_build_ame_4_2_missing():
    with pytest.raises(comp.MissingWitnessError):
        comp.build_composite(4, 2)


def test_build_checks_witness_shape():
    with pytest.raises(comp.MissingWitnessError):
        comp.build_composite(5, 6, {2: (c5(2), 1)})  # prime 3 missing
    with pytest.raises(comp.MissingWitnessError):
        comp.build_composite(4, 4, {2: (c5(2), 1)})  # wrong group size
    with pytest.raises(comp.MissingWitnessError):
        comp.build_composite(4, 6, {2: (c5(2), 1), 3: (c5(3), 1)})  # wrong n


def test_factor_order_independent_of_registry_order():
    a = comp.build_composite(5, 6, {3: (c5(3), 1), 2: (c5(2), 1)})
    b = comp.build_composite(5, 6, {2: (c5(2), 1), 3: (c5(3), 1)})
    assert [f.p for f in a.factors] == [f.p for f in b.factors] == [2, 3]


def test_single_factor_composite_is_plain_ame():
    c = comp.build_composite(4, 3)
    rep = comp.verify_composite(c)
    assert rep.is_ame
    assert rep.factors[0].ungrouped_report is None
    assert is_ame(c.factors[0].graph).is_ame


def test_entropy_additivity_ame44():
    g, gs = ame44_grouped()
    state = build_graph_state(g)
    for groups in [(0, 1), (0, 2), (0, 3)]:
        cut = [v for t in groups for v in range(t * gs, (t + 1) * gs)]
        # 4 qubit edits = 2 base-4 dits, maximal for half of four parties
        assert abs(cut_entropy_edits(state, cut) - 4.0) < 1e-6


def test_entropy_additivity_across_factors():
    # AME(5,6): a party cut carries rank*log2 + rank*log3 of entropy, read
    # off the literal tensor product of the two factor reductions
    import itertools

    from amegraph.entanglement import cut_edits
    from amegraph.simulator import entropy_edits, reduced_density

    c = comp.build_composite(5, 6)
    states = {f.p: build_graph_state(f.graph) for f in c.factors}
    for cut in itertools.combinations(range(5), 2):
        rhos = [reduced_density(states[f.p], list(cut)) for f in c.factors]
        joint = np.kron(rhos[0], rhos[1])
        joint_entropy = sum(
            -v * np.log(v) for v in np.linalg.eigvalsh(joint) if v > 1e-12
        )
        want = sum(
            cut_edits(f.graph, cut) * np.log(f.p) for f in c.factors
        )
        assert abs(joint_entropy - want) < 1e-6
        assert abs(entropy_edits(rhos[0], 2) - cut_edits(c.factors[0].graph, cut)) < 1e-6


def test_repeated_prime_needs_grouped_witness():
    # d = 9 has 3 twice; an ungrouped qutrit witness cannot cover it
    with pytest.raises(comp.MissingWitnessError):
        comp.build_composite(4, 9, {3: (quad_weighted(3), 1)})


def test_manifest_roundtrip(tmp_path):
    save_graph(c5(2), tmp_path / "f2.graph")
    save_graph(c5(3), tmp_path / "f3.graph")
    manifest = "factor 2 f2.graph groupsize 1\nfactor 3 f3.graph groupsize 1\n"
    c = comp.parse_manifest(manifest, tmp_path)
    assert c.n == 5 and c.d == 6
    rep = comp.verify_composite(c)
    text = comp.format_report(c, rep)
    assert text.splitlines()[0] == "COMPOSITE n=5 d=6"
    assert text.rstrip().endswith("RESULT pass")


def test_manifest_errors(tmp_path):
    save_graph(c5(2), tmp_path / "f2.graph")
    with pytest.raises(ValueError):
        comp.parse_manifest("factor 2 f2.graph\n", tmp_path)
    with pytest.raises(ValueError):
        comp.parse_manifest("", tmp_path)
    dup = "factor 2 f2.graph groupsize 1\nfactor 2 f2.graph groupsize 1\n"
    with pytest.raises(ValueError):
        comp.parse_manifest(dup, tmp_path)
