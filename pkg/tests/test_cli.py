import json
import subprocess
import sys
from pathlib import Path

import pytest

from ballotlab.cli import main
from ballotlab.verify import CHECKS

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_spiro(capsys):
    code, out, _ = run(capsys, "verify", "--identity=spiro", "--n-max=9")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_bdn(capsys):
    code, out, _ = run(capsys, "verify", "--identity=bdn", "--n-max=9")
    assert code == 0 and json.loads(out)["identity"] == "bdn"


def test_verify_e17_at_zero(capsys):
    code, out, _ = run(capsys, "verify", "--identity=e17", "--n-max=0")
    assert code == 0
    assert [json.loads(l)["status"] for l in out.splitlines()] == ["pass"]


def test_verify_several_identities_with_jobs(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "phi,bdes", "--identity", "depth",
                       "--n-max", "5", "--jobs", "2")
    assert code == 0
    assert [json.loads(l)["identity"] for l in out.splitlines()] == ["phi", "bdes", "depth"]


def test_verify_failure_exits_one(capsys, monkeypatch):
    from ballotlab import verify

    def broken(n):
        r = verify.VerificationReport("broken", {"n": n})
        r.expect(1, 2)
        return r
    monkeypatch.setitem(verify.CHECKS, "bdn", verify.Check("bdn", "", 1, broken))
    code, out, _ = run(capsys, "verify", "--identity=bdn")
    assert code == 1
    assert json.loads(out)["counterexample"] == {"lhs": 1, "rhs": 2}


def test_unknown_identity_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--identity=nope"])
    assert exc.value.code == 2


def test_enumeration_limit_is_usage_error(capsys, monkeypatch):
    monkeypatch.setenv("BALLOTLAB_ENUM_LIMIT", "5")
    code, _, err = run(capsys, "table", "ballot-des", "7")
    assert code == 2 and "enumeration limit" in err


def test_help_lists_every_identity(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--help"])
    out = capsys.readouterr().out
    for name in CHECKS:
        assert f"  {name} " in out


def test_table_ballot_des(capsys):
    code, out, _ = run(capsys, "table", "ballot-des", "5")
    assert code == 0 and "5,1,22" in out.splitlines()


def test_table_perm_depth(capsys):
    _, out, _ = run(capsys, "table", "perm-depth", "--n-max", "4")
    assert [l for l in out.splitlines() if l.startswith("4,")] == ["4,0,9", "4,1,11", "4,2,3", "4,3,1"]


def test_table_odd_M_json(capsys):
    _, out, _ = run(capsys, "table", "odd-M", "3", "--format", "json")
    rows = [r for r in json.loads(out) if r["n"] == 3]
    assert rows == [{"n": 3, "M": 0, "count": 1}, {"n": 3, "M": 1, "count": 2}]


def test_table_unknown_kind():
    with pytest.raises(SystemExit) as exc:
        main(["table", "bogus", "3"])
    assert exc.value.code == 2


def test_table_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["table", "ballot-pk-des", "6", "--out", str(a)])
    main(["table", "ballot-pk-des", "6", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_series_B_des(capsys):
    code, out, _ = run(capsys, "series", "B_des", "--nx=7")
    assert code == 0
    # 604/5040 in lowest terms
    assert "7 0 3 0 151/1260" in out.splitlines()


def test_series_ballot_count(capsys):
    _, out, _ = run(capsys, "series", "ballot_count", "--nx=5", "--box-ny=0",
                    "--box-nt=0", "--box-nz=0")
    assert [l.split()[-1] for l in out.splitlines()[1:]] == ["1/1", "1/1", "1/2", "1/2", "3/8", "3/8"]


def test_series_O_trivial(capsys):
    _, out, _ = run(capsys, "series", "O", "--nx=0")
    assert out.splitlines()[1:] == ["0 0 0 0 1/1"]


def test_series_out_file(tmp_path):
    out = tmp_path / "p.txt"
    assert main(["series", "P_pk_des", "--nx=4", "--ny=4", "--nt=4", "--nz=0", "--out", str(out)]) == 0
    assert out.read_text().startswith("# box nx=4 ny=4 nt=4 nz=0 guard=4")


def test_series_guard_too_small(capsys):
    code, _, err = run(capsys, "series", "P_pk_des", "--nx=3", "--guard=0")
    assert code == 2 and "guard" in err


def test_series_unknown_builder():
    with pytest.raises(SystemExit) as exc:
        main(["series", "nope"])
    assert exc.value.code == 2


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--n-max", "6")
    lines = [json.loads(l) for l in out.splitlines()]
    assert code == 0
    assert lines[-1]["result"] == "consistent up to n=6"
    assert {"n": 3, "d": 1, "i": 1, "j": 2, "lhs": 2, "rhs": 2, "equal": True} in lines


def test_conjecture_n2_is_vacuous(capsys):
    code, out, _ = run(capsys, "conjecture", "--n-max", "2")
    assert code == 0 and len(out.splitlines()) == 1


def test_oeis_command(capsys):
    code, out, _ = run(capsys, "oeis", "A321280", str(DATA / "b321280.txt"))
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_oeis_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 x\n")
    code, _, err = run(capsys, "oeis", "A000246", str(bad))
    assert code == 2 and "line 1" in err


def test_oeis_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "oeis", "A000246", str(tmp_path / "missing.txt"))
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ballotlab", "verify", "--identity=eulerian",
                           "--n-max=5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
