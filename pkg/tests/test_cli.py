import json
import subprocess
import sys

import pytest

from rainbowtri.cli import main
from rainbowtri.coloring import ColoredDigraph
from rainbowtri.digraph import directed_cycle
from rainbowtri.fileio import parse_trailer, read, write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_f3(capsys, tmp_path):
    wit = tmp_path / "w.rcd"
    code, out, _ = run(capsys, "verify", "--claim", "f3", "-o", str(wit))
    assert code == 0
    trailer = parse_trailer(out)
    assert trailer["verdict"] == "HOLDS" and trailer["max_colors"] == "4"
    assert trailer["witness"] == str(wit) and read(wit).n == 3


def test_check_lower_bound_construction(capsys, tmp_path):
    f = tmp_path / "b6.rcd"
    assert run(capsys, "gen", "--family", "bipartite-rainbow-complete", "--n", "6", "-o", str(f))[0] == 0
    code, out, _ = run(capsys, "check", str(f))
    assert (code, out.strip()) == (0, "none")


def test_check_reports_rainbow(capsys, tmp_path):
    f = tmp_path / "c3.rcd"
    write(ColoredDigraph(directed_cycle(3), (0, 1, 2)), f)
    code, out, _ = run(capsys, "check", str(f))
    assert code == 1 and out.startswith("rainbow triangle 0 1 2")


def test_classify_type_three(capsys, tmp_path):
    f = tmp_path / "g5.rcd"
    run(capsys, "gen", "--family", "g5", "--type", "III", "-o", str(f))
    code, out, _ = run(capsys, "classify", str(f))
    assert code == 0 and out.splitlines()[0] == "G5-TypeIII"


def test_gen_to_stdout_and_orientation(capsys):
    code, out, _ = run(capsys, "gen", "--family", "gn", "--n", "6", "--orientation", "ba")
    assert code == 0 and out.startswith("rcd 1\nn 6\n")


def test_gen_random_is_seeded(capsys):
    a = run(capsys, "gen", "--family", "random", "--n", "5", "--seed", "4")[1]
    b = run(capsys, "gen", "--family", "random", "--n", "5", "--seed", "4")[1]
    assert a == b


def test_stats(capsys, tmp_path):
    f = tmp_path / "g4.rcd"
    run(capsys, "gen", "--family", "g4", "-o", str(f))
    code, out, _ = run(capsys, "stats", str(f))
    assert code == 0
    assert "arcs 12, colors 6" in out
    assert "mono census arc/path2/path3/cycle4/other: 4 0 0 2 0" in out
    assert "x=4 y=0 z=2" in out


def test_search_max_colors(capsys, tmp_path):
    f = tmp_path / "g4.rcd"
    run(capsys, "gen", "--family", "g4", "-o", str(f))
    code, out, _ = run(capsys, "search", "max-colors", str(f))
    assert code == 0 and "max_colors: 6" in out


def test_search_soft_cap_needs_force(capsys, tmp_path):
    f = tmp_path / "k5.rcd"
    run(capsys, "gen", "--family", "g5", "--type", "I", "-o", str(f))
    code, _, err = run(capsys, "search", "max-colors", str(f))
    assert code == 2 and "force" in err
    code, out, _ = run(capsys, "search", "max-colors", str(f), "--force", "--budget", "1000")
    assert code == 3


def test_moon_command(capsys, tmp_path):
    f = tmp_path / "t.rcd"
    run(capsys, "gen", "--family", "tournament-sharp", "--n", "5", "-o", str(f))
    code, out, _ = run(capsys, "moon", str(f))
    assert code == 0 and len(out.splitlines()) == 5 * 3
    g = tmp_path / "k.rcd"
    run(capsys, "gen", "--family", "g4", "-o", str(g))
    assert run(capsys, "moon", str(g))[0] == 2


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.rcd"
    f.write_text("rcd 1\nn 3\na 2 2 0\n")
    code, out, err = run(capsys, "check", str(f))
    assert code == 2 and out == "" and "line 3" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "gen", "--family", "g5")[0] == 2
    assert run(capsys, "gen", "--family", "nope", "--n", "3")[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.rcd"))[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "--help")[0] == 0


def test_claim_alias_by_number(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "3", "--n", "4")
    assert code == 0 and parse_trailer(out)["claim"] == "thm3-n4"


@pytest.mark.parametrize("claim", ["thm2-n3", "thm3-n3", "moon-n4"])
def test_claims_hold(capsys, claim):
    code, out, _ = run(capsys, "verify", "--claim", claim)
    assert code == 0 and parse_trailer(out)["verdict"] == "HOLDS"


def test_trailer_independent_of_jobs(capsys):
    one = run(capsys, "verify", "--claim", "thm3-n5", "--jobs", "1")
    two = run(capsys, "verify", "--claim", "thm3-n5", "--jobs", "2")
    assert one[0] == two[0] == 0
    assert parse_trailer(one[1]) == parse_trailer(two[1])


def test_probe_checkpoint_and_resume(capsys, tmp_path):
    ck = tmp_path / "probe.json"
    code, out, _ = run(capsys, "verify", "--claim", "conjecture-n5", "--budget", "20000", "--checkpoint", str(ck))
    assert code == 3 and parse_trailer(out)["verdict"] == "INCONCLUSIVE"
    state = json.loads(ck.read_text())
    assert state["claim"] == "conjecture-n5" and state["state"]["instance"] >= 0
    cx = tmp_path / "cx.rcd"
    code, out, _ = run(capsys, "verify", "--claim", "conjecture-n5", "--checkpoint", str(ck), "-o", str(cx))
    assert code == 1 and parse_trailer(out)["verdict"] == "COUNTEREXAMPLE"
    D = read(cx)
    assert D.digraph.arc_count + len(D.color_set()) == 27
    # a checkpoint from another claim is refused
    assert run(capsys, "verify", "--claim", "f5-stretch", "--budget", "10", "--checkpoint", str(ck))[0] == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "rainbowtri", "verify", "--claim", "f3"],
        capture_output=True, text=True, env={"NO_COLOR": "1", "PATH": ""},
    )
    assert proc.returncode == 0
    assert "verdict: HOLDS" in proc.stdout and "\x1b[" not in proc.stdout
