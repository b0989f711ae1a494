import io
import sys
from pathlib import Path

import pytest

from neighborly.chirotope import Chirotope, VectorConfiguration, chirotope_from_configuration
from neighborly.cli import main
from neighborly.extension import LexProgram, certify_epsilon

FIXTURES = Path(__file__).parent / "fixtures" / "logs"
RANK3 = "6 3\n1 0 0\n1 2 0\n1 3 2\n1 1 3\n1 -1 2\n1 1 1\n"


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, stdin="": run(argv, stdin, monkeypatch, capsys)


def test_cyclic_default_params(cli):
    code, out, _ = cli(["cyclic", "4", "6"])
    assert code == 0
    v = VectorConfiguration.from_text(out)
    assert v.n == 6 and [x[1] for x in v.vectors] == list(range(6))
    assert out.endswith("\n")


def test_chirotope_round_trip(cli):
    _, cfg, _ = cli(["cyclic", "2", "5"])
    code, out, _ = cli(["chirotope"], cfg)
    assert code == 0
    assert Chirotope.from_text(out) == chirotope_from_configuration(VectorConfiguration.from_text(cfg))
    assert Chirotope.from_text(out).to_text() == out


def test_verify_neighborly_c46(cli):
    _, cfg, _ = cli(["cyclic", "4", "6"])
    _, chi, _ = cli(["chirotope"], cfg)
    code, out, _ = cli(["verify", "--neighborly"], chi)
    assert code == 0 and out == "neighborly ok\n"


def test_verify_failure_prints_witness(cli):
    cross = "8 5\n" + "".join(
        "1 " + " ".join(str(s * (i == j)) for j in range(4)) + "\n" for i in range(4) for s in (1, -1)
    )
    code, out, _ = cli(["verify", "--config", "--acyclic", "--neighborly"], cross)
    assert code == 1
    assert out.splitlines() == ["acyclic ok", "neighborly FAILED non-face 1 2"]


def test_verify_uniform_and_gp(cli):
    code, out, _ = cli(["verify", "--uniform", "--gp"], "2 3\n+0+\n")
    assert code == 1 and "uniform FAILED zero basis 1 3" in out


def test_verify_needs_a_check(cli):
    code, _, err = cli(["verify"], "2 3\n+++\n")
    assert code == 2 and "at least one" in err


def test_extend_with_figure_program(cli):
    code, out, err = cli(["extend", "--prog", "4+,1-,6+"], RANK3)
    assert code == 0
    eps = err.strip().split()[-1]
    v = VectorConfiguration.from_text(RANK3)
    ext = VectorConfiguration.from_text(out)
    assert ext.n == 7 and ext.vectors[:6] == v.vectors
    from fractions import Fraction

    assert certify_epsilon(v, LexProgram.parse("4+,1-,6+"), Fraction(eps))


def test_extend_bad_program(cli):
    code, _, err = cli(["extend", "--prog", "4*"], RANK3)
    assert code == 2 and "--prog" in err


def test_malformed_configuration(cli):
    code, _, err = cli(["chirotope"], "3 2\n1 0\nx 1\n0 1\n")
    assert code == 2 and "line 3" in err


def test_malformed_chirotope(cli):
    code, _, err = cli(["dual"], "2 3\n++\n")
    assert code == 2 and "line 2" in err


def test_unknown_flag(cli):
    code, _, _ = cli(["cyclic", "4", "6", "--bogus"])
    assert code == 2


def test_dual_and_gale(cli):
    code, out, _ = cli(["dual"], "2 3\n+++\n")
    assert code == 0 and out == "1 3\n+-+\n"
    _, cfg, _ = cli(["cyclic", "2", "5"])
    code, out, _ = cli(["dual", "--gale"], cfg)
    assert code == 0 and VectorConfiguration.from_text(out).dim == 2


def test_sew_auto_flag(cli):
    _, cfg, _ = cli(["cyclic", "4", "6"])
    code, out, err = cli(["sew"], cfg)
    assert code == 0 and err.startswith("flag ")
    code, res, _ = cli(["verify", "--config", "--neighborly"], out)
    assert code == 0


def test_sew_explicit_bad_flag(cli):
    _, cfg, _ = cli(["cyclic", "4", "6"])
    code, _, err = cli(["sew", "--flag", "1,2"], cfg)
    assert code == 2


def test_galesew(cli):
    _, cfg, _ = cli(["cyclic", "2", "6"])
    _, chi, _ = cli(["chirotope"], cfg)
    _, d, _ = cli(["dual"], chi)
    code, out, _ = cli(["galesew", "--prog", "1+,2+,3+"], d)
    assert code == 0
    _, poly, _ = cli(["dual"], out)
    assert cli(["verify", "--neighborly"], poly)[0] == 0


def test_pipeline_and_replay(cli, tmp_path):
    log = tmp_path / "run.log"
    code, out, _ = cli(["pipeline", "--m", "6", "--k", "2", "--log", str(log)])
    assert code == 0
    code, again, _ = cli(["replay", "--in", str(log)])
    assert code == 0 and again == out


def test_output_file(cli, tmp_path):
    dest = tmp_path / "c.txt"
    code, out, _ = cli(["cyclic", "2", "4", "--out", str(dest)])
    assert code == 0 and out == ""
    assert dest.read_text().startswith("4 3\n")


def test_complete(cli, tmp_path):
    quad = "4 3\n1 0 0\n1 1 0\n1 1 1\n1 0 1\n"
    log = tmp_path / "c.log"
    code, out, _ = cli(["complete", "--log", str(log)], quad)
    assert code == 0 and out.startswith("3 8\n")
    assert cli(["replay", "--in", str(log)])[1] == out


def test_complete_not_found(cli, monkeypatch):
    monkeypatch.setenv("NEIGHBORLY_SEARCH_BUDGET", "2")
    code, _, err = cli(["complete"], "4 3\n1 0 0\n1 1 0\n1 1 1\n1 0 1\n")
    assert code == 1 and "not a refutation" in err


def test_fiber(cli):
    code, out, _ = cli(["fiber", "--prog", "1+,2-"], RANK3)
    assert code == 0 and out.startswith("dimension 2\n")


def test_probe(cli):
    _, cfg, _ = cli(["cyclic", "4", "7"])
    code, out, _ = cli(["probe", "--trials", "10", "--delta", "1/1000000"], cfg)
    assert code == 0
    fields = dict(line.split(" ", 1) for line in out.splitlines())
    assert fields["preserved"] == "10" and fields["expected_dimension"] == "10"


def test_replay_bad_log(cli):
    code, _, err = cli(["replay"], "SEED polygon 6\nGALESEW 1+ 2+\n")
    assert code == 2 and "line 2" in err


@pytest.mark.parametrize("log", sorted(FIXTURES.glob("*.log")), ids=lambda p: p.stem)
def test_replay_fixture_corpus(cli, log):
    code, out, _ = cli(["replay", "--in", str(log)])
    assert code == 0
    assert out == log.with_suffix(".chi").read_text()
