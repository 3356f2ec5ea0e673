import csv
import io
import json
import random

import pytest

from xsigma import cli, compact as C
from xsigma.rootsys import build_root_system


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decide_examples(capsys):
    code, out, _ = run(capsys, "decide", "--type", "B3", "--weight", "1,0,0")
    d = json.loads(out)
    assert code == 0 and d["normal"] is False and d["smooth"] is False
    d = json.loads(run(capsys, "decide", "--type", "A2", "--weight", "1,1")[1])
    assert d["normal"] and d["q_factorial"]["value"] and d["smooth"]
    d = json.loads(run(capsys, "decide", "--type", "G2", "--weight", "0,2", "--sigma", "0,2;1,1")[1])
    assert d["normal"] is True


def test_decide_certify(capsys):
    d = json.loads(run(capsys, "decide", "--type", "B2", "--weight", "1,1", "--certify")[1])
    assert len(d["certificates"]) == 2
    d = json.loads(run(capsys, "decide", "--type", "B2", "--weight", "1,0", "--certify")[1])
    assert d["certificates"] == []


@pytest.mark.parametrize("argv", [
    ["decide", "--type", "Q3", "--weight", "1"],
    ["decide", "--type", "A2", "--weight", "1"],
    ["decide", "--type", "A2", "--weight", "0,0"],
    ["decide", "--type", "A2", "--weight", "1,0", "--sigma", "2,2"],
    ["decide", "--type", "A2", "--weight", "1,1", "--sigma", "3,0"],
    ["sweep", "--type", "B1"],
])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "--suite", ""])
    assert exc.value.code == 2


def test_sweep_row_counts_and_columns(capsys):
    rows = list(csv.DictReader(io.StringIO(run(capsys, "sweep", "--type", "B2")[1])))
    assert len(rows) == 3 and list(rows[0]) == cli.SWEEP_COLUMNS
    assert [r["support"] for r in rows] == ["a1", "a2", "a1,a2"]
    rows = list(csv.DictReader(io.StringIO(run(capsys, "sweep", "--type", "A3")[1])))
    assert len(rows) == 7 and all(r["normal"] == "true" for r in rows)


def test_sweep_d4(capsys):
    rows = json.loads(run(capsys, "sweep", "--type", "D4", "--out", "json")[1])
    row = next(r for r in rows if r["support"] == "a1")
    assert row["q_factorial"] is False


def test_sweep_parallel_matches_serial():
    rs = build_root_system("B3")
    assert cli.sweep(rs, jobs=2) == cli.sweep(rs)


def test_sweep_file_output(tmp_path, capsys):
    path = tmp_path / "g2.csv"
    assert run(capsys, "sweep", "--type", "G2", "--file", str(path))[0] == 0
    assert path.read_text(encoding="utf-8").startswith("type,support,star")


@pytest.mark.parametrize("t", ["B3", "C3", "D4", "F4", "G2", "A4"])
def test_sweep_rows_independent_of_representative(t):
    rs = build_root_system(t)
    rng = random.Random(t)
    for row in cli.sweep(rs):
        supp = rs.parse_subset(row["support"])
        lam = tuple(rng.randint(1, 3) if i in supp else 0 for i in range(rs.rank))
        assert row["star"] == C.satisfies_star(rs, lam)
        assert row["normal"] == C.normality_decide(rs, C.make_sigma(rs, [lam]))
        assert row["q_factorial"] == C.is_q_factorial(rs, lam).value
        assert row["smooth"] == C.is_smooth(rs, lam).value
        assert row["n_rays"] == len(C.extremal_rays(rs, lam))


def test_verify_lemmas(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lemmas")
    assert code == 0 and "PASS [6]" in out


def test_verify_rays_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "rays", "--max-rank", "3")
    assert code == 0 and out.count("PASS") == 3
