import json
from fractions import Fraction

import pytest

from oddlib import artifact
from oddlib.cli import EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED, main
from oddlib.formats import FPBits, from_value, value_of

LN_SMALL = ["--func", "ln", "--n", "5", "--ebits", "2", "--max-degree", "4", "--max-pieces", "1"]


@pytest.fixture(scope="module")
def ln_artifact(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "ln.art"
    assert main(["generate", *LN_SMALL, "-o", str(path), "--log", str(path) + ".log"]) == EXIT_OK
    return path


def test_generate_and_verify(ln_artifact, tmp_path, capsys):
    log = open(str(ln_artifact) + ".log").read()
    assert "polynomials 1" in log and "degree 4" in log and "singletons 1" in log
    js = tmp_path / "r.json"
    assert main(["verify", str(ln_artifact), "--json", str(js)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("✓") == 10
    data = json.loads(js.read_text())
    assert data["passed"] and len(data["cells"]) == 10


def test_verify_subset(ln_artifact, capsys):
    assert main(["verify", str(ln_artifact), "--targets", "k=5", "--modes", "rn,rd"]) == EXIT_OK
    assert capsys.readouterr().out.count("✓") == 2


def test_generation_is_byte_for_byte_deterministic(ln_artifact, tmp_path):
    again = tmp_path / "again.art"
    assert main(["generate", *LN_SMALL, "-o", str(again), "--log", str(tmp_path / "l")]) == EXIT_OK
    assert again.read_bytes() == ln_artifact.read_bytes()


def test_verification_failure(ln_artifact, tmp_path):
    h = artifact.loads(ln_artifact.read_text()).h
    lines = ln_artifact.read_text().splitlines()
    for i, ln in enumerate(lines):
        if ln.startswith("coeff 0 0 "):
            parts = ln.split()
            v = value_of(FPBits.from_hex(h, parts[4])) + Fraction(1, 8)
            parts[4] = from_value(h, v).hex()
            lines[i] = " ".join(parts)
    bad = tmp_path / "bad.art"
    bad.write_text("\n".join(lines) + "\n")
    assert main(["verify", str(bad)]) == EXIT_VERIFY_FAILED


def test_infeasible_generation(capsys):
    argv = ["generate", "--func", "ln", "--n", "5", "--ebits", "2",
            "--max-degree", "1", "--max-pieces", "1", "--log", "/dev/null"]
    assert main(argv) == EXIT_INFEASIBLE
    assert "generation failed" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["generate", "--func", "ln", "--n", "5", "--ebits", "1"],
    ["generate", "--func", "tan", "--n", "5", "--ebits", "2"],
    ["generate", *LN_SMALL[:-2], "--max-pieces", "3"],
    ["verify", "/nonexistent/artifact"],
    ["singletons", "--func", "exp2", "--n", "3", "--ebits", "2"],
])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == EXIT_USAGE


def test_verify_usage_errors(ln_artifact):
    assert main(["verify", str(ln_artifact), "--targets", "k=9"]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["verify", str(ln_artifact), "--modes", "ro"])
    assert exc.value.code == EXIT_USAGE


def test_singletons(capsys):
    assert main(["singletons", "--func", "exp10", "--n", "32", "--ebits", "8"]) == EXIT_OK
    assert "12 singleton inputs" in capsys.readouterr().out


def test_intervals(tmp_path, capsys):
    out = tmp_path / "c.txt"
    assert main(["intervals", "--func", "ln", "--n", "5", "--ebits", "2", "-o", str(out)]) == EXIT_OK
    assert len(out.read_text().splitlines()) == 10
    assert "10 constraints, 1 singletons" in capsys.readouterr().err
