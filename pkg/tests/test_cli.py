import pytest

from amegraph.cli import main
from amegraph.graph import save_graph
from amegraph.witnesses import ame44_grouped, c5, quad_weighted


@pytest.fixture
def quad_file(tmp_path):
    path = tmp_path / "quad.graph"
    save_graph(quad_weighted(3), path)
    return str(path)


@pytest.fixture
def c4_file(tmp_path):
    from amegraph.graph import graph_from_edges

    path = tmp_path / "c4.graph"
    save_graph(graph_from_edges(2, 4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)]), path)
    return str(path)


def test_verify_ame_graph(quad_file, capsys):
    assert main(["verify", quad_file]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "AME yes"
    assert "CUT {1,2} RANK 2" in out


def test_verify_failing_graph(c4_file, capsys):
    assert main(["verify", c4_file]) == 1
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "AME no"
    assert out[1] == "WITNESS 1,4"
    assert out[-1] == "CUT {1,4} RANK 1"


def test_verify_oracle(quad_file, capsys):
    assert main(["verify", quad_file, "--oracle"]) == 0
    assert "ORACLE agree" in capsys.readouterr().out


def test_verify_full_records_small_cuts(quad_file, capsys):
    assert main(["verify", quad_file, "--full"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "CUT {1} RANK 1" in out and "CUT {1,2} RANK 2" in out


def test_verify_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.graph"
    bad.write_text("not a graph\n")
    assert main(["verify", str(bad)]) == 2


def test_verify_missing_file():
    assert main(["verify", "/nonexistent/g.graph"]) == 2


def test_unknown_flag_exits_2(quad_file):
    with pytest.raises(SystemExit) as exc:
        main(["verify", quad_file, "--bogus"])
    assert exc.value.code == 2


def test_entropy_cut(c4_file, capsys):
    assert main(["entropy", c4_file, "--cut", "1,4", "--oracle"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("CUT {1,4} RANK 1 ENTROPY 1.000000")


def test_entropy_all_halves(quad_file, capsys):
    assert main(["entropy", quad_file]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 6


def test_export_circuit(quad_file, capsys):
    assert main(["export", quad_file, "--circuit"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "PREP_ALL |0bar>"
    assert "CZ 2 4 ^2" in out


def test_export_dot(quad_file, capsys):
    assert main(["export", quad_file, "--dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph G {") and '[label="2"]' in out


def test_export_requires_format(quad_file):
    with pytest.raises(SystemExit) as exc:
        main(["export", quad_file])
    assert exc.value.code == 2


def test_search_stats_line(capsys):
    assert main(["search", "--n", "4", "--p", "2", "--stats"]) == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("examined=64 pruned=0 witnesses=0 rate=")
    assert out.endswith("exhaustive=yes")


def test_search_random_requires_seed(capsys):
    assert main(["search", "--n", "5", "--p", "2", "--mode", "random"]) == 2


def test_search_witness_file(tmp_path, capsys):
    out_path = tmp_path / "witnesses.txt"
    rc = main(["search", "--n", "5", "--p", "2", "--mode", "random",
               "--seed", "7", "--out", str(out_path), "--stats"])
    assert rc == 0
    lines = out_path.read_text().splitlines()
    assert lines[0].startswith("# search n=5 p=2 mode=random")
    from amegraph.graph import parse_graph_line
    from amegraph.entanglement import is_ame

    assert is_ame(parse_graph_line(lines[1])).is_ame


def test_code2graph(capsys):
    assert main(["code2graph", "hamming433", "--matrix"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "3 4 4"
    assert out[1] == "1 0 1 2 0 0 0 0"
    assert "3 4" in out  # graph header follows


def test_code2graph_rejects_non_ame_code(capsys):
    assert main(["code2graph", "grs:5,4,1"]) == 1
    assert capsys.readouterr().out.startswith("FAIL")


def test_code2graph_unknown(capsys):
    assert main(["code2graph", "mystery"]) == 2


def test_qss_threshold_audit(quad_file, capsys):
    rc = main(["qss", "--graph", quad_file, "--mode", "threshold",
               "--dealers", "1", "--check", "all", "--seed", "3", "--secrets", "2"])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert any(line.startswith("AUTH {2,3}") for line in out)
    assert any(line.startswith("FORBID {2}") for line in out)
    assert out[-1] == "ALL PASS"


def test_qss_rejects_not_ame(c4_file, capsys):
    assert main(["qss", "--graph", c4_file, "--mode", "threshold",
                 "--dealers", "1", "--seed", "1"]) == 2


def test_qss_ramp_audit(tmp_path, capsys):
    from amegraph.witnesses import ame62

    path = tmp_path / "a62.graph"
    save_graph(ame62(), path)
    rc = main(["qss", "--graph", str(path), "--mode", "ramp",
               "--dealers", "1,2", "--seed", "4", "--secrets", "2"])
    assert rc == 0
    assert capsys.readouterr().out.splitlines()[-1] == "ALL PASS"


def test_composite_verify(tmp_path, capsys):
    save_graph(c5(2), tmp_path / "f2.graph")
    save_graph(c5(3), tmp_path / "f3.graph")
    manifest = tmp_path / "ame56.manifest"
    manifest.write_text("factor 2 f2.graph groupsize 1\nfactor 3 f3.graph groupsize 1\n")
    assert main(["composite", "verify", str(manifest)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "COMPOSITE n=5 d=6"
    assert out[-1] == "RESULT pass"


def test_composite_verify_grouped(tmp_path, capsys):
    g, gs = ame44_grouped()
    save_graph(g, tmp_path / "f4.graph")
    manifest = tmp_path / "ame44.manifest"
    manifest.write_text("factor 2 f4.graph groupsize 2\n")
    assert main(["composite", "verify", str(manifest)]) == 0
    out = capsys.readouterr().out
    assert "UNGROUPED AME no" in out
    assert "UNGROUPED WITNESS" in out


def test_repro_single_criterion(capsys):
    assert main(["repro", "--criterion", "5"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "PASS 5 dimension-discriminator: rank mod 5 = 2, rank mod 7 = 1"


def test_repro_quick_skips_seven_qubits(capsys):
    assert main(["repro", "--criterion", "3", "--quick"]) == 0
    assert capsys.readouterr().out.startswith("SKIP 3")


def test_repro_criterion_out_of_range(capsys):
    assert main(["repro", "--criterion", "13"]) == 2


def test_search_grouped_cli(tmp_path, capsys):
    rc = main(["search", "--n", "4", "--p", "2", "--group-size", "2",
               "--mode", "random", "--seed", "2024", "--stats"])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("2 8 ")  # one witness line: p=2, eight vertices
    assert out[-1].endswith("exhaustive=no")


def test_code2graph_out_file(tmp_path, capsys):
    target = tmp_path / "g.graph"
    assert main(["code2graph", "grs:5,4,2", "--out", str(target)]) == 0
    from amegraph.entanglement import is_ame
    from amegraph.graph import load_graph

    assert is_ame(load_graph(target)).is_ame
