from braidquot import cli, fingroup as fg


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def machine_block(out):
    human, _, tail = out.partition("---\n")
    pairs = {}
    for line in tail.strip().splitlines():
        key, _, value = line.partition("=")
        pairs[key] = value
    return pairs


def test_construct_and_classify(tmp_path, capsys):
    path = tmp_path / "g.grp"
    code, out = run(capsys, "construct", "--spec", "I(2^2,1)", "--out", str(path))
    assert code == 0
    assert machine_block(out)["order"] == "16"
    assert path.exists()

    code, out = run(capsys, "classify", "--in", str(path))
    assert code == 0
    block = machine_block(out)
    assert block["jn2"] == "true"
    assert block["spec"] == "I(2^2,1)"
    assert block["iso_verified"] == "true"


def test_classify_abelian_negative(tmp_path, capsys):
    path = tmp_path / "c6.grp"
    fg.write_cayley(fg.cyclic(6), path)
    code, out = run(capsys, "classify", "--in", str(path))
    assert code == 1
    assert machine_block(out)["jn2"] == "false"


def test_search_min_machine_block(capsys):
    code, out = run(capsys, "search-min", "--n", "6", "--g", "1", "--bound", "64")
    assert code == 0
    block = machine_block(out)
    assert block["minimum"] == "16"
    assert block["attained"] == "I(2^2,1),II(2^2,1)"
    assert block["predicted_order"] == "16"


def test_search_min_negative_exit(capsys):
    code, out = run(capsys, "search-min", "--n", "6", "--g", "1", "--bound", "10")
    assert code == 1
    assert machine_block(out)["minimum"] == "none"


def test_search_min_writes_witness(tmp_path, capsys):
    wpath = tmp_path / "w.txt"
    code, _ = run(capsys, "search-min", "--n", "6", "--g", "1", "--bound", "64",
                  "--witness", str(wpath))
    assert code == 0
    code, out = run(capsys, "check-witness", "--witness", str(wpath))
    assert code == 0
    assert machine_block(out)["ok"] == "true"

    code, out = run(capsys, "check-full", "--witness", str(wpath))
    assert code == 0
    block = machine_block(out)
    assert block["ok"] == "true"
    assert block["r2_ok"] == "true"


def test_check_witness_failure_is_exit_one(tmp_path, capsys):
    gpath = tmp_path / "d8.grp"
    fg.write_cayley(fg.dihedral(8), gpath)
    wpath = tmp_path / "w.txt"
    wpath.write_text("n 6\ng 1\ngroup d8.grp\nsigma 0\na 0\nb 1\n")
    code, out = run(capsys, "check-witness", "--witness", str(wpath))
    assert code == 1
    assert machine_block(out)["ok"] == "false"


def test_usage_errors_exit_two(capsys, tmp_path):
    assert cli.main(["search-min", "--g", "1", "--bound", "64"]) == 2  # missing --n
    capsys.readouterr()
    assert cli.main(["construct", "--spec", "not-a-spec"]) == 2
    capsys.readouterr()
    assert cli.main(["classify", "--in", str(tmp_path / "nope.grp")]) == 2
    capsys.readouterr()


def test_budget_errors_exit_three(capsys):
    assert cli.main(["construct", "--spec", "I(7,3)"]) == 3
    capsys.readouterr()
    assert cli.main(["search-min", "--n", "6", "--g", "1",
                     "--bound", "64", "--budget", "3"]) == 3
    capsys.readouterr()


def test_enumerate_counts_and_export(tmp_path, capsys):
    outdir = tmp_path / "cat"
    code, out = run(capsys, "enumerate", "--bound", "15", "--out", str(outdir))
    assert code == 0
    block = machine_block(out)
    assert block["classes_order_8"] == "5"
    assert block["nonabelian_order_12"] == "3"
    index = (outdir / "index.txt").read_text().strip().splitlines()
    assert "order8_0.grp exhaustive" in index
    assert any(line.startswith("order12_") and line.endswith("constructed")
               for line in index)
    # every exported file is re-readable
    reread = fg.read_cayley(outdir / "order8_4.grp")
    assert reread.order == 8


def test_determinism_byte_identical(capsys):
    _, out1 = run(capsys, "search-min", "--n", "5", "--g", "2", "--bound", "64")
    _, out2 = run(capsys, "search-min", "--n", "5", "--g", "2", "--bound", "64")
    assert out1 == out2
    _, e1 = run(capsys, "enumerate", "--bound", "8")
    _, e2 = run(capsys, "enumerate", "--bound", "8")
    assert e1 == e2


def test_verify_paper_single_row(capsys):
    code, out = run(capsys, "verify-paper", "--n", "6", "--g", "1")
    assert code == 0
    block = machine_block(out)
    assert block["row_n6_g1"] == "pass"
    assert block["result"] == "pass"
    assert block["exhaustive_order_8"] == "true"


def test_cli_roundtrip_construct_files_bit_exact(tmp_path, capsys):
    p1 = tmp_path / "a.grp"
    p2 = tmp_path / "b.grp"
    run(capsys, "construct", "--spec", "II(3,1)", "--out", str(p1))
    run(capsys, "construct", "--spec", "II(3,1)", "--out", str(p2))
    assert p1.read_bytes() == p2.read_bytes()
