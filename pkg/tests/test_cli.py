import io
from importlib import resources

import pytest

from phzero.bench import fit_exponent, aggregate, parse_csv
from phzero.cli import main, parse_n_list
from phzero.core import generate_uniform_cloud, read_points

FIXTURE = str(resources.files("phzero") / "fixtures" / "collinear3.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_fixture(capsys):
    code, out, _ = run(capsys, "compute", "--in", FIXTURE)
    assert code == 0
    assert out == "0,1,1\n0,2,2\n"


def test_compute_fixture_options(capsys):
    code, out, _ = run(capsys, "compute", "--in", FIXTURE, "--workers", "2", "--pivot", "off", "--show-essential")
    assert code == 0
    assert out == "0,1,1\n0,2,2\n0,inf,-\n"


def test_compute_matches_oracle_on_generated(capsys):
    _, a, _ = run(capsys, "compute", "--n", "30", "--seed", "4")
    _, b, _ = run(capsys, "oracle", "--n", "30", "--seed", "4")
    assert a == b and len(a.splitlines()) == 29


def test_generate_round_trip(tmp_path, capsys):
    out = tmp_path / "pts.csv"
    assert run(capsys, "generate", "--n", "7", "--dim", "3", "--seed", "11", "--out", str(out))[0] == 0
    with open(out) as fh:
        assert read_points(fh) == generate_uniform_cloud(7, 3, 11)


def test_compute_from_file_and_out(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0\n3 4\n")
    dest = tmp_path / "bars.txt"
    assert run(capsys, "compute", "--in", str(pts), "--out", str(dest))[0] == 0
    assert dest.read_text() == "0,5,1\n"


def test_errors_exit_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("0,0\n1,2,3\n")
    code, _, err = run(capsys, "compute", "--in", str(bad))
    assert code != 0
    assert err.count("\n") == 1 and "line 2" in err
    code, _, err = run(capsys, "compute", "--in", str(tmp_path / "missing.txt"))
    assert code != 0 and err.strip()


def test_bench_model_csv_and_svg(tmp_path, capsys):
    csv_path, svg_path = tmp_path / "b.csv", tmp_path / "b.svg"
    code, _, err = run(
        capsys, "bench", "--mode", "model", "--n-list", "64,128,256,512", "--workers-list", "1,2",
        "--reps", "2", "--width", "1", "--csv", str(csv_path), "--svg", str(svg_path),
    )
    assert code == 0
    series = aggregate(parse_csv(csv_path.read_text()))
    assert set(series) == {("model", 1), ("model", 2)}
    for pts in series.values():
        assert fit_exponent(pts).slope == pytest.approx(4, abs=0.15)
    svg = svg_path.read_text()
    assert svg.count('class="series"') == 2
    assert "slope=" in err


def test_bench_seq_to_stdout(capsys):
    code, out, _ = run(capsys, "bench", "--mode", "seq", "--n-list", "8,16", "--reps", "1")
    assert code == 0
    recs = parse_csv(out)
    assert [r.n for r in recs] == [8, 16] and all(r.value > 0 for r in recs)


def test_model_command(capsys):
    code, out, err = run(capsys, "model", "--n-list", "100:700:300", "--width", "1000")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,width,regime,distance,sort,build,reduce,extract,total"
    assert [l.split(",")[2] for l in lines[1:]] == ["COLUMN", "COLUMN", "COLUMN"]
    assert "n_row=45 n_col=1000" in err


def test_parse_n_list():
    assert parse_n_list("50:300:50") == [50, 100, 150, 200, 250, 300]
    assert parse_n_list("4,8, 16") == [4, 8, 16]
    assert parse_n_list("1:3,10") == [1, 2, 3, 10]


def test_missing_source_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["compute"])
    assert exc.value.code != 0
