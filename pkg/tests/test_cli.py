import json
import os

import pytest

from preproj.cli import main
from preproj.config import build_config, load_config_file
from preproj.errors import InputError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_atlas_command(tmp_path, capsys):
    code, out, _ = run(
        capsys, "atlas", "--type", "A3", "--cache-dir", str(tmp_path / "c")
    )
    assert code == 0
    assert "12 indecomposables" in out
    assert "graded algebra dims: [3, 4, 3]" in out
    assert (tmp_path / "c" / "A3-p32003-v1" / "atlas.json").exists()


def test_atlas_out_flag(tmp_path, capsys):
    target = tmp_path / "atlas-copy.json"
    code, _, _ = run(
        capsys,
        "atlas", "--type", "A2", "--cache-dir", str(tmp_path / "c"), "--out", str(target),
    )
    assert code == 0
    cached = tmp_path / "c" / "A2-p32003-v1" / "atlas.json"
    assert target.read_bytes() == cached.read_bytes()


def test_graph_command(tmp_path, capsys):
    cache = str(tmp_path / "c")
    code, out, _ = run(capsys, "graph", "--type", "A3", "--kind", "mutation", "--cache-dir", cache)
    assert code == 0
    assert "14 vertices, 21 edges, 3-regular, connected" in out
    path = tmp_path / "c" / "A3-p32003-v1" / "graphs" / "mutation.json"
    assert json.loads(path.read_text())["r"] == 6


def test_tilting_graph_command(tmp_path, capsys):
    cache = str(tmp_path / "c")
    code, out, _ = run(
        capsys,
        "graph", "--type", "A3", "--kind", "tilting", "--rigid", "R1", "--cache-dir", cache,
        "--format", "dot",
    )
    assert code == 0
    assert "14 vertices, 21 edges" in out
    dot = (tmp_path / "c" / "A3-p32003-v1" / "graphs" / "tilting-R1.dot").read_text()
    assert dot.count(" -- ") == 21


def test_unknown_rigid_id_exits_2(tmp_path, capsys):
    code, _, err = run(
        capsys,
        "graph", "--type", "A3", "--kind", "tilting", "--rigid", "R99",
        "--cache-dir", str(tmp_path / "c"),
    )
    assert code == 2
    assert "R99" in err


def test_missing_rigid_flag_exits_2(tmp_path, capsys):
    code, _, _ = run(
        capsys, "graph", "--type", "A2", "--kind", "tilting", "--cache-dir", str(tmp_path / "c")
    )
    assert code == 2


def test_verify_command_passes(tmp_path, capsys):
    report = tmp_path / "report.jsonl"
    code, out, _ = run(
        capsys,
        "verify", "--suite", "connected", "--type", "A2",
        "--cache-dir", str(tmp_path / "c"), "--out", str(report),
    )
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert rec["suite"] == "connected" and rec["passed"]
    assert report.read_text().splitlines()[0] == out.splitlines()[0]


def test_verify_all_a2(tmp_path, capsys):
    code, out, _ = run(
        capsys, "verify", "--suite", "all", "--type", "A2", "--cache-dir", str(tmp_path / "c")
    )
    assert code == 0
    suites = [json.loads(line)["suite"] for line in out.splitlines()]
    assert suites == ["lemma21", "extbounds", "lemma37", "lemma22", "theorem1", "connected"]


def test_corrupt_cache_exits_2(tmp_path, capsys):
    root = tmp_path / "c" / "A2-p32003-v1"
    root.mkdir(parents=True)
    (root / "atlas.json").write_text('{"format_version": 99}')
    code, _, err = run(capsys, "atlas", "--type", "A2", "--cache-dir", str(tmp_path / "c"))
    assert code == 2
    assert "format_version" in err


def test_bad_flags_exit_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "engine.cfg"
    cfg.write_text("seed = 3\ncache_dir = {}\n# comment\njobs = 2\n".format(tmp_path / "c"))
    values = load_config_file(cfg)
    assert values == {"seed": 3, "cache_dir": str(tmp_path / "c"), "jobs": 2}
    code, out, _ = run(capsys, "atlas", "--type", "A2", "--config", str(cfg))
    assert code == 0
    assert (tmp_path / "c" / "A2-p32003-v1" / "atlas.json").exists()


def test_config_file_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("no_such_key = 1\n")
    with pytest.raises(InputError):
        load_config_file(cfg)


def test_cache_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PREPROJ_CACHE", str(tmp_path / "envcache"))
    cfg = build_config()
    assert cfg.cache_dir == str(tmp_path / "envcache")
    code, _, _ = run(capsys, "atlas", "--type", "A2")
    assert code == 0
    assert (tmp_path / "envcache" / "A2-p32003-v1" / "atlas.json").exists()


def test_flag_overrides_config_file(tmp_path):
    cfg = tmp_path / "engine.cfg"
    cfg.write_text("seed = 3\n")
    assert build_config(str(cfg), {"seed": 9}).seed == 9
    assert build_config(str(cfg), {"seed": None}).seed == 3


def test_config_rejects_composite_modulus():
    with pytest.raises(InputError):
        build_config(None, {"field_char": 15})
    with pytest.raises(InputError):
        build_config(None, {"cross_check_char": 2})


def test_parallel_jobs_give_same_reports(tmp_path, capsys):
    from preproj.config import Config
    from preproj.verify import suite_lemma37
    from tests.conftest import shared_atlas, shared_rigids

    atlas = shared_atlas("A2")
    rigids, _ = shared_rigids("A2")
    seq_report = suite_lemma37(atlas, rigids, range(2), Config(jobs=1))
    par_report = suite_lemma37(atlas, rigids, range(2), Config(jobs=2))
    assert seq_report == par_report


def test_second_invocation_reuses_cache(tmp_path, capsys):
    cache = str(tmp_path / "c")
    run(capsys, "atlas", "--type", "A2", "--cache-dir", cache)
    path = tmp_path / "c" / "A2-p32003-v1" / "atlas.json"
    first = path.read_bytes()
    stamp = path.stat().st_mtime_ns
    code, out, _ = run(capsys, "atlas", "--type", "A2", "--cache-dir", cache)
    assert code == 0 and "4 indecomposables" in out
    assert path.read_bytes() == first
    assert path.stat().st_mtime_ns == stamp  # loaded, not rebuilt
