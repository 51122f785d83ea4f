import json

import pytest

from oscrank.cli import main
from oscrank.report import dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_rank_json(capsys):
    code, out, _ = run(capsys, "rank", "--system", "multiorder:2", "--map", "shift-limit", "--level", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["rank"] == {"finite": 2}
    assert rep["chain"]["termination"] == "Empty"
    assert out.strip() == dumps(rep)


def test_rank_all_text(capsys):
    code, out, _ = run(capsys, "rank", "--system", "dlo", "--all", "--level", "2", "--format", "text")
    assert code == 0
    assert out.splitlines()[0] == "dlo: rank Finite(1)"


def test_rank_max_level(capsys):
    code, out, _ = run(capsys, "rank", "--system", "cyclic", "--map", "cyclic-collapse", "--max-level", "3")
    rep = json.loads(out)
    assert rep["per_level"] == [{"finite": 0}, {"finite": 1}, {"finite": 1}]
    assert rep["bound"] == "closed-form"


def test_user_map_is_lower_bound(capsys):
    code, out, _ = run(capsys, "rank", "--system", "dlo", "--map", "plauto:0:1|2|1", "--max-level", "2")
    assert code == 0 and json.loads(out)["bound"] == "lower-bound"


def test_capped_exit(capsys):
    code, out, _ = run(capsys, "rank", "--system", "multiorder:3", "--map", "shift-limit", "--level", "1",
                       "--cap", "2")
    assert code == 3 and json.loads(out)["rank"] == {"capped": 2}


def test_derive_with_set(capsys):
    code, out, _ = run(capsys, "derive", "--system", "dlo", "--map", "stretch-limit", "--level", "1",
                       "--set", "[0,1]", "--steps")
    rep = json.loads(out)
    assert rep["chain"]["stages"] == ["[0,1]", "{0+}", "{}"]
    assert rep["chain"]["steps"][1]["witness"] == "0+"


@pytest.mark.parametrize("argv", [
    ["rank", "--system", "nope", "--map", "x"],
    ["rank", "--system", "dlo", "--map", "nope"],
    ["rank", "--system", "dlo"],
    ["derive", "--system", "dlo", "--map", "identity", "--set", "[0,1"],
    ["derive", "--system", "dlo", "--map", "identity", "--set", "(0+,1-]"],
    ["factor", "--factor", "proj:9"],
])
def test_bad_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("oscrank: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["rank", "--system", "dlo", "--map", "identity", "--level", "0"])
    assert exc.value.code == 2


def test_factor_cli(capsys):
    code, out, _ = run(capsys, "factor", "--factor", "shift-down", "--level", "1")
    rep = json.loads(out)
    assert code == 0 and rep["strict_alphas"] == [1]


def test_check_cli(capsys):
    code, out, _ = run(capsys, "check", "--law", "refinement", "--format", "text")
    assert code == 0 and out.startswith("refinement: pass")


def test_witness_cli(capsys):
    code, out, _ = run(capsys, "witness", "--system", "dlo", "--map", "stretch-limit", "--point", "0+",
                       "--level", "1", "--depth", "2")
    assert [lv["verdict"] for lv in json.loads(out)["levels"]] == ["Witnessed", "Witnessed"]


def test_identical_runs(capsys):
    argv = ["rank", "--system", "acf", "--all"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]
