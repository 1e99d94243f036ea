import json

import pytest

from juddian.cli import main
from juddian.config import RunConfig, load_config, parse_config_text
from juddian.emit import fmt


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly_examples(capsys):
    assert run(capsys, "poly", "2", "--eval", "0", "0")[:2] == (0, "4\n")
    assert run(capsys, "poly", "1", "--eval", "0.5", "0.5")[:2] == (0, "0\n")
    assert run(capsys, "poly", "1", "--eval", "1/3", "1")[1] == "1/3\n"
    code, out, _ = run(capsys, "poly", "3", "--restrict", "y")
    assert code == 0 and json.loads(out)["coeffs"] == ["-36", "49", "-14", "1"]
    code, out, _ = run(capsys, "poly", "3", "--restrict", "x")
    assert json.loads(out)["coeffs"] == ["-36", "108", "-54", "6"]
    code, out, _ = run(capsys, "poly", "2")
    rec = json.loads(out)
    assert rec["n"] == 2 and {"dx": 0, "dy": 0, "c": "4"} in rec["terms"]


def test_poly_cap_exceeded(capsys):
    code, out, err = run(capsys, "poly", "70")
    assert code == 2 and "cap" in err and out == ""
    assert run(capsys, "poly", "70", "--exact-cap", "80", "--eval", "0", "0")[0] == 0


def test_zeros_examples(capsys):
    code, out, _ = run(capsys, "zeros", "20", "0")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "k,alpha" and len(lines) == 21
    assert round(float(lines[1].split(",")[1]), 7) == 0.0705399
    _, out, _ = run(capsys, "zeros", "1", "0.25")
    (row,) = out.splitlines()[1:]
    assert float(row.split(",")[1]) == pytest.approx(0.75, abs=1e-12)
    _, out, _ = run(capsys, "zeros", "3", "0.5")
    vals = [float(r.split(",")[1]) for r in out.splitlines()[1:]]
    assert len(vals) == 3 and all(v > 0 for v in vals)


def test_zeros_range_keeps_global_index(capsys):
    _, out, _ = run(capsys, "zeros", "20", "0", "--range", "0.1", "1")
    assert [r.split(",")[0] for r in out.splitlines()[1:]] == ["2", "3"]


def test_zeros_rejects_negative_y(capsys):
    assert run(capsys, "zeros", "3", "-1")[0] == 2


def test_density(capsys):
    code, out, _ = run(capsys, "density", "0.5", "1", "1")
    assert code == 0
    header, row = out.splitlines()
    assert header == "N,delta,gamma,count,asymptotic,ratio"
    assert row.split(",")[3] == "1"
    _, out, _ = run(capsys, "density", "2", "0.25", "1000")
    assert 0 <= int(out.splitlines()[1].split(",")[3]) <= 1000


def test_density_json(capsys):
    _, out, _ = run(capsys, "density", "1", "1", "100", "10000", "--format", "json")
    recs = [json.loads(line) for line in out.splitlines()]
    assert [r["N"] for r in recs] == [100, 10000]


def test_doublejudd(capsys):
    code, out, _ = run(capsys, "doublejudd", "1", "7")
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "doublejudd", "1", "8")
    assert code == 0 and len(out.splitlines()) == 1
    code, out, _ = run(capsys, "doublejudd", "1", "20")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and [r["i"] for r in recs] == [2, 3]
    assert all(r["res_N"] < 1e-9 for r in recs)


def test_gscan(capsys):
    code, out, _ = run(capsys, "gscan", "0.1", "3.9", "100", "0.7", "0.4")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "z,g_plus,g_minus,converged,truncation_n"
    assert 95 <= len(lines) - 1 <= 100
    _, out, _ = run(capsys, "gscan", "1.1", "1.3", "1", "0.7", "0.4")
    assert len(out.splitlines()) == 2


def test_branch(capsys):
    code, out, _ = run(capsys, "branch", "1", "1", "--steps", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "y,x"
    vals = [float(v) for line in lines[1:] for v in line.split(",")]
    assert vals == pytest.approx([0, 1, 0.5, 0.5, 1, 0], abs=1e-12)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "oracle", "--n", "12")
    assert code == 0 and out.splitlines()[-1] == "ALL PASS"
    assert run(capsys, "verify", "weyl", "--N", "200", "--y", "2")[0] == 0
    assert run(capsys, "verify", "interlace", "--N", "100")[0] == 0


def test_verify_all_defaults(capsys):
    code, out, _ = run(capsys, "verify", "all")
    assert code == 0 and "ALL PASS" in out


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["zeros"])
    assert info.value.code == 2


def test_output_file_and_determinism(tmp_path):
    paths = []
    for threads in ("1", "3"):
        p = tmp_path / f"out{threads}.csv"
        assert main(["density", "0.5", "1", "10", "1000", "100000", "--threads", threads, "-o", str(p)]) == 0
        paths.append(p)
    assert paths[0].read_bytes() == paths[1].read_bytes()
    a = tmp_path / "a.jsonl"
    b = tmp_path / "b.jsonl"
    main(["doublejudd", "1", "25", "--threads", "1", "-o", str(a)])
    main(["doublejudd", "1", "25", "--threads", "4", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes() and a.read_text()


def test_config_file_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults for this run\nformat = json\nexact-cap = 5\n")
    code, _, err = run(capsys, "poly", "6", "--config", str(cfg))
    assert code == 2 and "cap" in err
    code, out, _ = run(capsys, "poly", "6", "--config", str(cfg), "--exact-cap", "6", "--eval", "0", "0")
    assert code == 0 and out == "518400\n"
    _, out, _ = run(capsys, "density", "0.5", "1", "1", "--config", str(cfg))
    assert json.loads(out)["count"] == 1


def test_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("frobnicate = 3\n")
    with pytest.raises(SystemExit) as info:
        main(["poly", "1", "--config", str(cfg)])
    assert info.value.code == 2


def test_config_parsing_and_validation():
    assert parse_config_text("threads=3\nbisect-tol = 1e-10  # tighter\noutput=none\n") == {
        "threads": 3,
        "bisect_tol": 1e-10,
        "output": None,
    }
    assert load_config(None, threads=None).threads is None
    assert load_config(None, threads=2).thread_count() == 2
    with pytest.raises(ValueError):
        RunConfig(pole_guard=0.0)
    with pytest.raises(ValueError):
        RunConfig(exact_cap=0)
    with pytest.raises(ValueError):
        parse_config_text("no equals sign")


def test_fmt():
    assert fmt(True) == "true"
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(3) == "3"
