import json


from wtred.cli import main
from wtred.css import read_css
from wtred.gf2 import read_text, write_text
from wtred import fixtures


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_hgp_from_fixture(tmp_path, capsys):
    report = tmp_path / "r.json"
    out_css = tmp_path / "code.css"
    rc = main([
        "build", "--input", "fixture:633", "--construction", "hgp",
        "--budget", "6", "--out-css", str(out_css), "--report", str(report),
    ])
    assert rc == 0
    body = json.loads(report.read_text())
    assert body["n"] == 45 and body["k"] == 9
    assert body["distance"]["d"] == 3 and body["distance"]["d_exact"]
    assert body["tool"] == "wtred" and "config_hash" in body
    code = read_css(out_css.read_text())
    assert code.n == 45


def test_build_lp_from_fixture(tmp_path, capsys):
    report = tmp_path / "r.json"
    rc = main(["build", "--input", "fixture:b1", "--construction", "lp",
               "--trials", "0", "--report", str(report)])
    assert rc == 0
    body = json.loads(report.read_text())
    assert body["n"] == 260 and body["k"] == 58


def test_build_rejects_empty_matrix(tmp_path, capsys):
    bad = tmp_path / "empty.txt"
    bad.write_text("0 0\n")
    rc, _, err = run(["build", "--input", str(bad), "--construction", "hgp"], capsys)
    assert rc == 1
    assert "empty" in err


def test_build_malformed_file_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 3\n1 0 1\n0 1\n")
    rc, _, err = run(["build", "--input", str(bad), "--construction", "hgp"], capsys)
    assert rc == 1
    assert "expected 6 entries" in err


def test_reduce_classical_report(tmp_path, capsys):
    report = tmp_path / "r.json"
    rc = main([
        "reduce", "--mode", "classical", "--input", "fixture:633",
        "--permute-trials", "20", "--construction", "hgp", "--budget", "9",
        "--report", str(report),
    ])
    assert rc == 0
    body = json.loads(report.read_text())
    assert body["k_preserved"] is True
    assert body["hgp"]["n"] == 117 and body["hgp"]["k"] == 9
    assert body["distance"]["best"] >= 4
    assert body["distance"]["permute_trials"] == 20
    assert body["residual_violations"] == {"rows": [], "cols": []}


def test_reduce_noop_flagged(tmp_path, capsys):
    mat = tmp_path / "light.txt"
    mat.write_text("2 4\n1 1 0 0\n0 0 1 1\n")
    report = tmp_path / "r.json"
    rc = main(["reduce", "--mode", "classical", "--input", str(mat), "--report", str(report)])
    assert rc == 0
    body = json.loads(report.read_text())
    assert "no-op" in body.get("note", "")


def test_reduce_quantum_qrm(tmp_path, capsys):
    report = tmp_path / "r.json"
    rc = main([
        "reduce", "--mode", "quantum", "--input", "fixture:qrm4",
        "--variant", "original", "--ell", "3",
        "--heights", "2,1,2,1,2,3,1,3,3,1", "--trials", "300",
        "--report", str(report),
    ])
    assert rc == 0
    body = json.loads(report.read_text())
    assert body["output"]["n"] == 724 and body["output"]["k"] == 1
    assert body["k_preserved"] is True
    names = [s["name"] for s in body["stages"]]
    assert names[:5] == ["input", "copying", "gauging", "thickening", "choosing-heights"]


def test_reduce_quantum_unreasonable_surfaced(tmp_path, capsys):
    css = tmp_path / "bad.css"
    css.write_text("HX\n1 6\n1 1 0 0 0 0\nHZ\n1 6\n1 1 1 1 1 1\n")
    rc, _, err = run(
        ["reduce", "--mode", "quantum", "--input", str(css), "--ell", "1"], capsys
    )
    assert rc == 1
    assert "not reasonable" in err


def test_params_and_distance(tmp_path, capsys):
    css = tmp_path / "qrm.css"
    from wtred.css import CssCode, write_css

    css.write_text(write_css(CssCode(*fixtures.qrm4())))
    report = tmp_path / "p.json"
    assert main(["params", "--input", str(css), "--report", str(report)]) == 0
    body = json.loads(report.read_text())
    assert body["n"] == 15 and body["weights"]["q_z"] == 10

    report2 = tmp_path / "d.json"
    assert main(["distance", "--input", str(css), "--trials", "0",
                 "--report", str(report2)]) == 0
    body2 = json.loads(report2.read_text())
    assert body2["distance"]["d"] == 3 and body2["distance"]["d_exact"]


def test_cycles_command(tmp_path, capsys):
    report = tmp_path / "c.json"
    assert main(["cycles", "--input", "fixture:qrm4", "--report", str(report)]) == 0
    body = json.loads(report.read_text())
    assert body["girth"] == 4
    assert body["four_cycles"]["cross"] > 0


def test_export_dot(tmp_path, capsys):
    out = tmp_path / "g.dot"
    assert main(["export-dot", "--input", "fixture:qrm4", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("graph") and "shape=square" in text


def test_tables_t1_desk(tmp_path, capsys):
    out = tmp_path / "t1.csv"
    rc = main(["tables", "--table", "t1", "--scale", "desk", "--out", str(out),
               "--report", tmp_path.joinpath("t1.json").as_posix()])
    assert rc == 0
    text = out.read_text()
    assert "[[45,9,3]]" in text
    assert "0.200" in text
    assert "[[117,9," in text and "[[65,9," in text


def test_tables_unknown_rejected(capsys):
    rc, _, err = run(["tables", "--table", "t7"], capsys)
    assert rc == 1
    assert "out of scope" in err


def test_reports_are_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["build", "--input", "fixture:633", "--construction", "hgp",
                     "--budget", "6", "--seed", "7", "--report", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_with_flag_override(tmp_path, capsys):
    cfgp = tmp_path / "cfg.json"
    cfgp.write_text(json.dumps({"input": "fixture:633", "construction": "hgp", "budget": 6}))
    r1 = tmp_path / "r1.json"
    assert main(["build", "--config", str(cfgp), "--report", str(r1)]) == 0
    assert json.loads(r1.read_text())["n"] == 45
    # flag overrides the config entry
    r2 = tmp_path / "r2.json"
    assert main(["build", "--config", str(cfgp), "--input", "fixture:743",
                 "--report", str(r2)]) == 0
    assert json.loads(r2.read_text())["n"] == 58


def test_reduce_base_matrix(tmp_path, capsys):
    report = tmp_path / "r.json"
    rc = main([
        "reduce", "--mode", "classical", "--input", "fixture:b1",
        "--permute-trials", "2", "--trials", "300", "--report", str(report),
    ])
    assert rc == 0
    body = json.loads(report.read_text())
    assert body["mode"] == "classical-base"
    assert body["reduced"]["lifted_n"] == 130 and body["reduced"]["lifted_k"] == 27
    assert body["reduced"]["max_row_weight"] <= 3
    assert body["k_preserved"] is True


def test_tables_t4_desk(tmp_path, capsys):
    out = tmp_path / "t4.csv"
    rc = main(["tables", "--table", "t4", "--scale", "desk", "--out", str(out),
               "--report", tmp_path.joinpath("t4.json").as_posix()])
    assert rc == 0
    text = out.read_text()
    assert "[[260,58," in text and "[[175,19," in text
    assert "[[2132,58]]" in text and "[[676,58]]" in text


def test_tables_t3_desk(tmp_path, capsys):
    out = tmp_path / "t3.csv"
    rc = main(["tables", "--table", "t3", "--scale", "desk", "--out", str(out),
               "--report", tmp_path.joinpath("t3.json").as_posix()])
    assert rc == 0
    text = out.read_text()
    assert "[[45,9,3]]" in text and "(6," in text


def test_reduce_quantum_greedy_heights(tmp_path, capsys):
    report = tmp_path / "r.json"
    rc = main([
        "reduce", "--mode", "quantum", "--input", "fixture:qrm4",
        "--variant", "targeted", "--targ", "3", "--ell", "3",
        "--heights", "greedy:6", "--trials", "100", "--report", str(report),
    ])
    assert rc == 0
    body = json.loads(report.read_text())
    assert body["k_preserved"] is True
    assert len(body["heights"]) == 10
