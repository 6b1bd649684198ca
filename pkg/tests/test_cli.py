import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from projmorph.algebra import DuplicateName
from projmorph.cli import ParseError, parse_spec, run

ALG = Path(__file__).resolve().parents[1] / "scripts" / "algebras"
A3R_TEXT = (ALG / "A3r.alg").read_text()


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_A3r():
    spec = parse_spec(A3R_TEXT)
    assert spec.vertices == ["1", "2", "3"]
    assert spec.arrows == [("alpha", "3", "2"), ("beta", "2", "1")]
    assert len(spec.relations) == 1 and spec.relations[0][0][1] == ["alpha", "beta"]
    A = spec.to_algebra("A3r")
    assert A.dim == 5


def test_parse_relation_coefficients():
    spec = parse_spec("vertices: 1 2 3 4\narrow: a 1 -> 2\narrow: b 2 -> 4\narrow: c 1 -> 3\n"
                      "arrow: d 3 -> 4\nrelation: a*b - 2*c*d\n")
    (terms,) = spec.relations
    assert [(str(c), w) for c, w in terms] == [("1", ["a", "b"]), ("-2", ["c", "d"])]


def test_parse_errors():
    with pytest.raises(ParseError) as e:
        parse_spec("")
    assert "no vertices" in str(e.value) and (e.value.line, e.value.col) == (1, 1)
    with pytest.raises(ParseError) as e:
        parse_spec("vertices: 1 2\narrow: a 2 -> 1\nrelation: a*gamma\n")
    assert "gamma" in str(e.value) and e.value.line == 3
    with pytest.raises(ParseError) as e:
        parse_spec("vertices: 1 2\narrow: a 2 -> 7\n")
    assert "'7'" in str(e.value)
    with pytest.raises(DuplicateName):
        parse_spec("vertices: 1 1\n")
    with pytest.raises(DuplicateName):
        parse_spec("vertices: 1 2\narrow: a 2 -> 1\narrow: a 1 -> 2\n")


def test_exit_codes(tmp_path):
    assert call("indec", "--fixture", "A2")[0] == 0
    bad = tmp_path / "bad.alg"
    bad.write_text("vertices: 1\nrelation: zz\n")
    code, _, err = call("indec", "--spec", str(bad))
    assert code == 1 and "zz" in err
    assert call("tau", "--fixture", "A2", "S9")[0] == 1
    assert call("ass", "--fixture", "A2", "--ending", "P1")[0] == 1
    assert call("nonsense")[0] == 1


def test_ass_ending_A3r():
    code, out, _ = call("ass", "--spec", str(ALG / "A3r.alg"), "--ending", "S3")
    assert code == 0
    assert out.splitlines()[0] == "0 -> S2 -> [3;2] -> S3 -> 0"
    assert out.splitlines()[1].startswith("certified: yes")


def test_ass_in_P():
    code, out, _ = call("ass", "--fixture", "A2", "--starting-0P", "P1")
    assert code == 0 and "certified: yes" in out


def test_tau_and_tr():
    code, out, _ = call("tau", "--fixture", "A3r", "S3")
    assert code == 0 and out.startswith("tau S3 = S2")


def test_gvectors():
    code, out, _ = call("gvectors", "--fixture", "A3r", "--check-additivity", "--check-injective-generation")
    assert code == 0
    assert "g(S3) = (0,-1,1)" in out
    assert "does not generate" in out
    code, _, err = call("gvectors", "--fixture", "k[x]/x^2", "--check-injective-generation")
    assert code == 1 and "cycle" in err


def test_check_battery():
    code, out, _ = call("check", "--paper", "--fixture", "A3r")
    assert code == 0
    assert out.count("[PASS]") == 9 and "[FAIL]" not in out


def test_arquiver_dot():
    code, out, _ = call("arquiver", "--fixture", "A2", "--dot", "-")
    assert code == 0 and out.startswith("digraph AR {")


def test_json_roundtrip_and_determinism():
    a = call("arquiver", "--fixture", "A3r", "--extend-P", "--json")
    b = call("arquiver", "--fixture", "A3r", "--extend-P", "--json")
    assert a == b and a[0] == 0
    data = json.loads(a[1])
    assert len(data["quiver"]["vertices"]) == 11
    assert json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n" == a[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "projmorph", "indec", "--fixture", "A2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and len(r.stdout.splitlines()) == 3
