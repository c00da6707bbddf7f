import json

import pytest

from schur.cli import main, parse_chain

from conftest import system


@pytest.fixture(autouse=True)
def _in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kl_all_rows(capsys):
    code, out, _ = run(capsys, "kl", "--type", "A2", "--all")
    assert code == 0
    assert len(out.splitlines()) == 6


def test_kl_single(capsys):
    code, out, _ = run(capsys, "kl", "--type", "A2", "--w", "s1")
    assert out.strip() == "s1\tH_s1 + v*H_e"


def test_kl_json(capsys):
    code, out, _ = run(capsys, "kl", "--type", "A2", "--w", "s1", "--format", "json", "--no-cache")
    assert json.loads(out) == {"s1": {"e": {"1": 1}, "s1": {"0": 1}}}


def test_cosets_rows(capsys):
    code, out, _ = run(capsys, "cosets", "--type", "A2", "--I", "s1", "--J", "s2")
    assert code == 0
    assert len(out.splitlines()) == 3  # header and two cosets


def test_char_decompose(capsys):
    code, out, _ = run(capsys, "char", "--type", "A2", "--chain", "∅,{s1},∅,{s2},∅", "--decompose",
                       "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"p": "s1.s2", "coeff": {"0": 1}, "positive": True}]


def test_phi_table(capsys):
    code, out, _ = run(capsys, "phi", "--type", "A2", "--I", "s1", "--J", "", "--p", "e")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    degrees = sorted(int(line.split("\t")[1]) for line in lines[1:])
    assert degrees == [0, 2]


def test_schur_mult(capsys):
    code, out, _ = run(capsys, "schur-mult", "--type", "A2", "--I", "s1", "--J", "", "--K", "s1",
                       "--p", "e", "--q", "e", "--format", "json")
    assert code == 0
    # h_s h_s = (v + v^-1) h_s
    assert json.loads(out)["terms"] == [{"p_min": "e", "coeff": {"-1": 1, "1": 1}}]


def test_invariants_check(capsys):
    code, out, _ = run(capsys, "invariants", "--type", "A2", "--I", "s1", "--J", "s2", "--K", "s1",
                       "--deg-cap", "4", "--check")
    assert code == 0


def test_verify_all_a2(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A2", "--suite", "all", "--no-cache")
    assert code == 0
    assert "mismatch" not in out


def test_verify_json_report_shape(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A2", "--suite", "translation,poincare", "--format", "json")
    data = json.loads(out)
    assert data["ok"] and code == 0
    assert {r["suite"] for r in data["reports"]} == {"translation", "poincare"}
    assert all(set(r) >= {"claim", "status", "detail"} for r in data["reports"])


def test_verify_parallel_matches_serial(capsys):
    args = ["verify", "--type", "A2", "--suite", "cosets,poincare,pairing", "--no-cache"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "2")
    assert serial == parallel


@pytest.mark.parametrize("argv", [
    ["verify", "--type", "A2", "--suite", "nonsense"],
    ["kl", "--type", "", "--all"],
    ["kl", "--type", "Q7", "--all"],
    ["kl", "--type", "A2", "--w", "s9"],
    ["cosets", "--type", "A2", "--I", "s5"],
    ["char", "--type", "A2", "--chain", "{s1},{s2}"],
    ["char", "--type", "A2", "--chain", "{s1,∅"],
    ["phi", "--type", "I2(5)"],
    ["kl", "--type", "A2", "--all", "--jobs", "0"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("schur:")


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_cache_round_trip(capsys, tmp_path):
    cache = tmp_path / "kl.json"
    _, first, err1 = run(capsys, "kl", "--type", "A3", "--all", "--cache", str(cache), "--stats")
    data = cache.read_bytes()
    _, second, err2 = run(capsys, "kl", "--type", "A3", "--all", "--cache", str(cache), "--stats")
    assert first == second
    assert "kl_computed=0" not in err1 and "kl_computed=0" in err2
    assert cache.read_bytes() == data


def test_cache_spec_mismatch(capsys, tmp_path):
    cache = tmp_path / "kl.json"
    run(capsys, "kl", "--type", "A2", "--all", "--cache", str(cache))
    code, _, err = run(capsys, "kl", "--type", "B2", "--all", "--cache", str(cache))
    assert code == 3 and "different Coxeter system" in err


def test_default_cache_location(capsys, tmp_path):
    run(capsys, "kl", "--type", "A2", "--all")
    assert (tmp_path / "klcache.json").exists()


def test_chain_parsing(A2):
    assert parse_chain(A2, "∅,{s1,s2},{s1},") == [frozenset(), frozenset({0, 1}), frozenset({0}),
                                                  frozenset()]
