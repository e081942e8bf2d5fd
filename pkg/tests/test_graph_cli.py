import os

import pytest

from gorlink.cli import main
from gorlink.graph import LinkageGraph, build_graph, emit_dot, glicci_component
from gorlink.store import (
    load_certificates,
    parse_certificate,
    save_certificate,
    serialize_certificate,
    write_index,
)
from gorlink.tangent import verify_edge, replay_certificate


@pytest.fixture(scope="module")
def small_cert():
    cert = verify_edge((1, 3, 3, 1), 7, 101, seed=0)
    assert cert.verdict == "verified"
    return cert


def test_certificate_roundtrip(small_cert):
    text = serialize_certificate(small_cert)
    back = parse_certificate(text)
    assert serialize_certificate(back) == text
    assert back.h == small_cert.h and back.verdict == "verified"
    assert back.matrix == small_cert.matrix
    ok, _, dims = replay_certificate(back)
    assert ok and dims == (0, 18, 21)


def test_store_roundtrip(tmp_path, small_cert):
    path = save_certificate(small_cert, str(tmp_path))
    assert os.path.basename(path).startswith("edge_7_1_")
    certs, errors = load_certificates(str(tmp_path))
    assert len(certs) == 1 and not errors
    write_index(str(tmp_path))
    assert (tmp_path / "index.txt").read_text().startswith("1,3,3,1 d=7")


def test_inconclusive_certificate_roundtrip(tmp_path):
    # max_attempts=0 forces an inconclusive verdict with no witness data
    cert = verify_edge((1, 3, 3, 1), 7, 101, seed=0, max_attempts=0)
    assert cert.verdict == "inconclusive" and cert.matrix is None
    text = serialize_certificate(cert)
    back = parse_certificate(text)
    assert back.verdict == "inconclusive" and back.matrix is None
    assert serialize_certificate(back) == text
    ok, _, _ = replay_certificate(back)
    assert ok  # an inconclusive certificate replays as itself
    # and it contributes no edge to the graph
    save_certificate(cert, str(tmp_path))
    graph, report = build_graph(str(tmp_path))
    assert graph.edges == () and not report


def test_verify_edge_deterministic(small_cert):
    again = verify_edge((1, 3, 3, 1), 7, 101, seed=0)
    assert serialize_certificate(again) == serialize_certificate(small_cert)


def test_replay_detects_tampering(tmp_path, small_cert):
    path = save_certificate(small_cert, str(tmp_path))
    text = open(path).read()
    tampered = text.replace("hom_IX=0", "hom_IX=1")
    open(path, "w").write(tampered)
    certs, errors = load_certificates(str(tmp_path))
    assert not errors
    ok, _, dims = replay_certificate(certs[0])
    assert not ok and dims[0] == 0  # recomputation exposes the edit
    graph, report = build_graph(str(tmp_path), replay=True)
    assert graph.edges == ()
    assert any("replay mismatch" in line for line in report)


def test_store_skips_malformed_with_report(tmp_path, small_cert):
    save_certificate(small_cert, str(tmp_path))
    (tmp_path / "bogus.cert").write_text("not a certificate\n")
    certs, errors = load_certificates(str(tmp_path))
    assert len(certs) == 1
    assert len(errors) == 1 and errors[0][0] == "bogus.cert"


def test_empty_graph_component():
    graph = LinkageGraph([])
    assert glicci_component(graph) == {1}


def test_toy_component():
    graph = LinkageGraph([(2, 1, "1,1,1"), (3, 2, "1,2,1")])
    assert glicci_component(graph) == {1, 2, 3}


def test_component_monotone_under_more_edges():
    small = LinkageGraph([(2, 1, "1,1,1")])
    big = LinkageGraph([(2, 1, "1,1,1"), (3, 2, "1,2,1"), (5, 3, "1,3,3,1")])
    assert glicci_component(small) <= glicci_component(big)


def test_emit_dot_deterministic_and_parallel_edges():
    graph = LinkageGraph([(2, 1, "1,1,1"), (2, 1, "1,2,1")])
    text = emit_dot(graph)
    assert text == emit_dot(LinkageGraph([(2, 1, "1,2,1"), (2, 1, "1,1,1")]))
    assert text.count(" -- ") == 2  # parallel edges rendered separately
    assert '1 -- 2 [label="1,1,1"];' in text
    lines = text.splitlines()
    assert lines[0] == "graph linkage {" and lines[-1] == "}"
    assert "  1;" in lines and "  47;" in lines


def test_build_graph_from_store(tmp_path, small_cert):
    save_certificate(small_cert, str(tmp_path))
    graph, report = build_graph(str(tmp_path))
    assert not report
    assert graph.edges == ((7, 1, "1,3,3,1"),)
    comp = glicci_component(graph)
    assert comp == {1, 7}
    graph2, report2 = build_graph(str(tmp_path), replay=True)
    assert graph2 == graph and not report2


def _run_cli(args, capsys):
    status = main(args)
    out = capsys.readouterr().out
    return status, out


def test_cli_splitstats_exact(capsys):
    status, out = _run_cli(["splitstats", "exact", "--n", "6", "--k", "3"], capsys)
    assert status == 0
    assert out.strip() == "29/80 q^6 - 11/16 q^5 + 5/16 q^4 - 5/16 q^3 + 13/40 q^2"


def test_cli_splitstats_limit(capsys):
    status, out = _run_cli(["splitstats", "limit", "--n", "2", "--k", "1"], capsys)
    assert status == 0
    assert "1/2" in out and "0.500000" in out


def test_cli_hv(capsys):
    status, out = _run_cli(["hv", "parse", "--h", "1,3,6,10,6,3,1"], capsys)
    assert status == 0 and out.strip() == "kind=I s=3 c=4"
    status, out = _run_cli(["hv", "gdim", "--h", "1,3,6,10,6,3,1"], capsys)
    assert status == 0 and "gdim=63" in out
    status, out = _run_cli(["hv", "enumerate", "--smax", "6"], capsys)
    assert status == 0
    lines = out.strip().splitlines()
    assert "1,3,6,10,6,3,1 20 10 63 admissible" in lines
    assert max(int(line.split()[1]) for line in lines) == 47


def test_cli_hv_parse_invalid(capsys):
    status, out = _run_cli(["hv", "parse", "--h", "1,3,2,3,1"], capsys)
    assert status == 0 and out.strip() == "invalid"


def test_cli_link_verify_and_graph(tmp_path, capsys):
    store = str(tmp_path / "store")
    status, out = _run_cli(
        ["link", "verify", "--h", "1,3,3,1", "--d", "7", "--p", "101",
         "--seed", "0", "--store", store],
        capsys,
    )
    assert status == 0
    assert "seed: 0" in out and "verdict=verified" in out
    status, out = _run_cli(["graph", "glicci", "--store", store], capsys)
    assert status == 0 and "glicci: 1,7" in out
    out_file = str(tmp_path / "g.dot")
    status, _ = _run_cli(["graph", "dot", "--store", store, "--out", out_file], capsys)
    assert status == 0
    assert '1 -- 7 [label="1,3,3,1"];' in open(out_file).read()
    status, out = _run_cli(["link", "replay", "--store", store], capsys)
    assert status == 0 and "replay=ok" in out


def test_cli_exit_codes(tmp_path, capsys):
    # refuted candidate: exit 3 (or 2 if no witness appears)
    status, _ = _run_cli(
        ["link", "verify", "--h", "1,3,3,3,1", "--d", "7", "--p", "101",
         "--seed", "0", "--max-attempts", "6"],
        capsys,
    )
    assert status in (2, 3)
    # input error: exit 4
    status = main(["hv", "gdim", "--h", "1,3,2,3,1"])
    assert status == 4
    status = main(["link", "verify", "--h", "nonsense", "--d", "3"])
    assert status == 4


def test_cli_link_search_small(tmp_path, capsys):
    store = str(tmp_path / "store")
    status, out = _run_cli(
        ["link", "search", "--smax", "1", "--p", "101", "--seed", "1",
         "--store", store, "--max-attempts", "25"],
        capsys,
    )
    assert status == 0  # every s=1 candidate verifies
    graph, _ = build_graph(store)
    comp = glicci_component(graph)
    assert {1, 2, 3, 4} <= comp
