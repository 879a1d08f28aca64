import json

import pytest
from click.testing import CliRunner

from steindual import FIXTURES, MORPHISMS, fixture, io, morphism_fixture
from steindual.cli import main
from steindual.errors import ParseError


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, obj):
    path = tmp_path / f"{name}.json"
    path.write_text(io.emit(obj), encoding="utf-8")
    return str(path)


@pytest.mark.parametrize("name", list(FIXTURES) + list(MORPHISMS))
def test_emit_parse_emit_is_stable(name):
    obj = fixture(name) if name in FIXTURES else morphism_fixture(name)
    text = io.emit(obj)
    assert io.emit(io.parse(text)) == text


def test_parse_errors_name_the_problem():
    with pytest.raises(ParseError, match="line 1"):
        io.parse("{not json")
    with pytest.raises(ParseError, match="unknown kind"):
        io.parse('{"kind": "sheaf"}')
    with pytest.raises(ParseError):
        io.parse("[1, 2]")


def test_check_passes_on_fixture(runner, tmp_path):
    path = _write(tmp_path, "i2", fixture("FIX-I2"))
    result = runner.invoke(main, ["check", path, "--oracle"])
    assert result.exit_code == 0, result.output
    assert "FAIL" not in result.output
    assert "oracle: filters equal subset enumeration" in result.output


def test_check_machine_output(runner, tmp_path):
    path = _write(tmp_path, "pow2", fixture("FIX-POW2"))
    result = runner.invoke(main, ["check", path, "--format", "machine"])
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["passed"] and payload["profile"] == "steinberg-semigroup"


def test_check_failure_exits_one(runner, tmp_path):
    doc = io.to_document(fixture("FIX-I2"))
    phi = doc["maps"]["Phi"]
    phi[1] = 0
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 1
    assert "FAIL" in result.output


def test_parse_error_exits_two(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")
    result = runner.invoke(main, ["check", str(path)])
    assert result.exit_code == 2
    assert "error" in result.output


def test_profile_mismatch_exits_two(runner, tmp_path):
    path = _write(tmp_path, "trivbun", fixture("FIX-TRIVBUN"))
    result = runner.invoke(main, ["check", path, "--profile", "steinberg-ring"])
    assert result.exit_code == 2


@pytest.mark.parametrize("name", ["FIX-I2", "FIX-M2F2", "FIX-TRIVBUN"])
def test_roundtrip_succeeds(runner, tmp_path, name):
    path = _write(tmp_path, name, fixture(name))
    result = runner.invoke(main, ["roundtrip", path])
    assert result.exit_code == 0, result.output
    assert "isomorphism" in result.output


def test_roundtrip_machine_map(runner, tmp_path):
    path = _write(tmp_path, "i2", fixture("FIX-I2"))
    result = runner.invoke(main, ["roundtrip", path, "--format", "machine"])
    payload = json.loads(result.output)
    assert payload["passed"] and len(payload["map"]) == 7


def test_dualize_twice_recovers_size(runner, tmp_path):
    path = _write(tmp_path, "i2", fixture("FIX-I2"))
    bundle_path = tmp_path / "u.json"
    sections_path = tmp_path / "s.json"
    assert runner.invoke(main, ["dualize", path, "--out", str(bundle_path)]).exit_code == 0
    assert io.load(bundle_path).base.size == 4
    assert runner.invoke(main, ["dualize", str(bundle_path), "--out",
                                str(sections_path)]).exit_code == 0
    assert io.load(sections_path).n == 7


def test_dualize_is_deterministic(runner, tmp_path):
    path = _write(tmp_path, "m2f2", fixture("FIX-M2F2"))
    first = runner.invoke(main, ["dualize", path]).output
    second = runner.invoke(main, ["dualize", path]).output
    assert first == second and first


def test_apply_functor_both_directions(runner, tmp_path):
    source = tmp_path / "m.json"
    assert runner.invoke(main, ["example", "MOR-I2-M2F2S", "--out", str(source)]).exit_code == 0
    pierce = tmp_path / "p.json"
    result = runner.invoke(main, ["apply-functor", str(source), "--out", str(pierce)])
    assert result.exit_code == 0, result.output
    assert io.load(pierce).__class__.__name__ == "PierceMorphism"
    back = runner.invoke(main, ["apply-functor", str(pierce)])
    assert back.exit_code == 0, back.output
    assert "FAIL" not in back.output


def test_apply_functor_rejects_structures(runner, tmp_path):
    path = _write(tmp_path, "i2", fixture("FIX-I2"))
    assert runner.invoke(main, ["apply-functor", path]).exit_code == 2


def test_example_list_and_generators(runner):
    listing = runner.invoke(main, ["example", "--list"])
    assert listing.exit_code == 0
    for name in list(FIXTURES) + list(MORPHISMS):
        assert name in listing.output
    generated = runner.invoke(main, ["example", "symmetric-inverse-monoid", "2"])
    assert generated.exit_code == 0
    assert io.parse(generated.output).n == 7
    assert runner.invoke(main, ["example", "symmetric-inverse-monoid"]).exit_code == 2
    assert runner.invoke(main, ["example", "nope"]).exit_code == 2
