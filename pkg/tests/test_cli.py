"""CLI: golden-file byte equality, exit codes, determinism."""

import io
import json
import os

import pytest

from yamaguti.cli import run_command
from yamaguti.models import parse_model, serialize_model, ModelFile

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "data")
GOLD = os.path.join(HERE, "golden", "cli")

with open(os.path.join(HERE, "golden", "cli_manifest.json"), "r", encoding="utf-8") as fh:
    MANIFEST = json.load(fh)


def expand(argv):
    return [os.path.join(DATA, a) if a.endswith(".json") else a for a in argv]


@pytest.mark.parametrize("entry", MANIFEST, ids=[e["id"] for e in MANIFEST])
def test_golden(entry):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(expand(entry["argv"]), out, err)
    assert code == entry["exit"], err.getvalue()
    with open(os.path.join(GOLD, entry["id"] + ".out"), "r", encoding="utf-8") as fh:
        want = fh.read()
    assert out.getvalue() == want
    if entry["exit"] == 2:
        assert out.getvalue() == ""
        assert err.getvalue() != ""


@pytest.mark.parametrize(
    "entry",
    [e for e in MANIFEST if e["exit"] == 0][:6],
    ids=[e["id"] for e in MANIFEST if e["exit"] == 0][:6],
)
def test_repeated_runs_are_byte_identical(entry):
    first, second = io.StringIO(), io.StringIO()
    assert run_command(expand(entry["argv"]), first, io.StringIO()) == 0
    assert run_command(expand(entry["argv"]), second, io.StringIO()) == 0
    assert first.getvalue() == second.getvalue()


def test_usage_error_exits_2():
    out, err = io.StringIO(), io.StringIO()
    assert run_command(["cohomology"], out, err) == 2
    assert out.getvalue() == ""


def test_unknown_subcommand_exits_2():
    out, err = io.StringIO(), io.StringIO()
    assert run_command(["frobnicate", "x"], out, err) == 2


def test_missing_file_exits_2(tmp_path):
    out, err = io.StringIO(), io.StringIO()
    assert run_command(["check", "algebra", str(tmp_path / "nope.json")], out, err) == 2
    assert "cannot read" in err.getvalue()


def test_wrong_kind_exits_2():
    out, err = io.StringIO(), io.StringIO()
    path = os.path.join(DATA, "id_nonabelian2.json")
    assert run_command(["check", "algebra", path], out, err) == 2
    assert "expected kind" in err.getvalue()


def test_iso_without_second_cocycle_exits_2():
    out, err = io.StringIO(), io.StringIO()
    path = os.path.join(DATA, "cocycle_zero.json")
    assert run_command(["ext", "iso", path], out, err) == 2


@pytest.mark.parametrize(
    "name",
    [
        "abelian2.json",
        "nonabelian2.json",
        "sl2.json",
        "id_nonabelian2.json",
        "adjointrep_nonab2.json",
        "mrep_self_nonab2.json",
        "cocycle_heis.json",
        "deform_orbit.json",
        "extension_semidirect.json",
        "iso_problem.json",
    ],
)
def test_corpus_files_are_canonical(name):
    with open(os.path.join(DATA, name), "r", encoding="utf-8") as fh:
        text = fh.read()
    model = parse_model(text)
    assert serialize_model(ModelFile(model.kind, model.payload)) == text
