import hashlib
import json
import subprocess
import sys

import pytest

from substral.cli import main
from substral.substitution import parse_substitution
from substral.generators import arnoux_rauzy


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.mark.parametrize(
    "text,code,kind",
    [
        ("1 -> 21\n2 -> 1\n", 0, "PDS_CERTIFIED_BY_THEOREM"),
        ("1 -> 12\n2 -> 21\n", 2, "NOT_PDS_EVIDENCE"),
        ("1 -> 2\n2 -> 1112\n", 3, "INCONCLUSIVE"),
        ("1 -> 12\n2 -> 1\n", 0, "PDS_CONSISTENT_BY_OVERLAP"),
    ],
)
def test_check_exit_codes(tmp_path, capsys, text, code, kind):
    path = write(tmp_path, "in.sub", text)
    assert main(["check", "--input", path]) == code
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"]["kind"] == kind
    assert doc["exit_code"] == code


def test_check_malformed(tmp_path, capsys):
    path = write(tmp_path, "bad.sub", "1 -> 12\n2 -> 3\n")
    assert main(["check", "--input", path]) == 1
    assert "line 2" in capsys.readouterr().err


def test_check_missing_file(capsys):
    assert main(["check", "--input", "/nonexistent/file.sub"]) == 1


def test_bad_usage_exits_one():
    with pytest.raises(SystemExit) as info:
        main(["check"])
    assert info.value.code == 1


def test_report_contents(tmp_path):
    src = write(tmp_path, "g.sub", "# generator: hand\na -> ba\nb -> a\n")
    out = tmp_path / "g.json"
    assert main(["check", "--input", src, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["input"]["names"] == ["a", "b"]
    assert doc["input"]["provenance"] == {"generator": "hand"}
    assert doc["eigen"]["min_poly"] == "x^2 - x - 1"
    assert doc["eigen"]["lambda"] == {"coords": ["0", "1"], "decimal": "1.61803398874989484820"}
    assert doc["hypotheses"]["theorem_applies"] is True
    assert doc["prototile_pair"]["i"] == 1
    assert "timings" not in json.dumps(doc)


def test_thue_morse_report_cycle(tmp_path, capsys):
    path = write(tmp_path, "tm.sub", "1 -> 12\n2 -> 21\n")
    main(["check", "--input", path])
    doc = json.loads(capsys.readouterr().out)
    (c,) = doc["verdict"]["cycle"]
    assert (c["i"], c["j"], c["offset"]["coords"]) == (1, 2, ["0"])


def test_check_is_byte_deterministic_across_processes(tmp_path):
    path = write(tmp_path, "p.sub", "1 -> 21\n2 -> 3\n3 -> 4\n4 -> 5\n5 -> 1\n")
    digests = set()
    for _ in range(2):
        out = subprocess.run([sys.executable, "-m", "substral", "check", "--input", path],
                             capture_output=True, check=True).stdout
        digests.add(hashlib.sha256(out).hexdigest())
    assert len(digests) == 1


def test_generate_beta(capsys):
    assert main(["generate", "beta", "--minpoly", "x^3-x-1"]) == 0
    text = capsys.readouterr().out
    assert "# digits: 1,0,0,0,1" in text
    assert parse_substitution(text).d == 5


def test_generate_ar_roundtrip(tmp_path):
    out = tmp_path / "ar.sub"
    assert main(["generate", "ar", "--d", "2", "--word", "12", "--out", str(out)]) == 0
    text = out.read_text()
    assert "1 -> 121\n2 -> 21\n" in text
    assert parse_substitution(text) == arnoux_rauzy(2, "12")


def test_generate_brun_and_jp(capsys):
    assert main(["generate", "brun", "--word", "33"]) == 0
    assert "3 -> 213" in capsys.readouterr().out
    assert main(["generate", "jp", "--pairs", "0,1 1,2"]) == 0
    assert main(["generate", "jp", "--pairs", "2,1"]) == 1
    assert main(["generate", "brun", "--word", "12"]) == 1
    assert main(["generate", "ar", "--d", "2", "--word", "11"]) == 1


def test_generate_report_stub(tmp_path):
    stub = tmp_path / "stub.json"
    assert main(["generate", "jp", "--pairs", "1,1", "--out", str(tmp_path / "jp.sub"), "--report", str(stub)]) == 0
    doc = json.loads(stub.read_text())
    assert doc["input"]["provenance"]["generator"] == "jacobi-perron"


def test_tile(tmp_path, capsys):
    path = write(tmp_path, "g.sub", "1 -> 21\n2 -> 1\n")
    assert main(["tile", "--input", path, "--radius", "0"]) == 0
    assert capsys.readouterr().out.strip().count(":[") == 2
    svg = tmp_path / "g.svg"
    assert main(["tile", "--input", path, "--radius", "5", "--svg", str(svg)]) == 0
    first = capsys.readouterr().out
    assert main(["tile", "--input", path, "--radius", "5"]) == 0
    assert capsys.readouterr().out == first
    assert svg.read_text().startswith("<?xml")


def test_tile_non_primitive(tmp_path):
    path = write(tmp_path, "np.sub", "1 -> 1\n2 -> 2\n")
    assert main(["tile", "--input", path]) == 1


def test_expand(capsys):
    assert main(["expand", "--minpoly", "x^2-x-1", "--x", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "1"
    assert main(["expand", "--minpoly", "x^2-x-1", "--x", "1/2", "--last", "8"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "001001001"
    assert sum(line.endswith("OK") for line in lines) == 9
    assert main(["expand", "--minpoly", "x^2-x-1", "--x", "x + 1", "--last", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "10000"
    assert main(["expand", "--minpoly", "x^2-x-1", "--x", "-1"]) == 1
