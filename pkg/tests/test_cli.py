import json

import jsonschema
import pytest
from typer.testing import CliRunner

from chromatic import cells
from chromatic.__main__ import app
from chromatic.models import ROW_MODELS

runner = CliRunner()


def lines(output: str) -> list[list[str]]:
    return [line.split() for line in output.strip().splitlines()[2:]]


@pytest.mark.parametrize(
    "args, orbit_count",
    [
        (["census", "S4", "--p", "2", "--n", "1"], "4"),
        (["census", "D8", "--p", "2", "--n", "2"], "22"),
        (["census", "C1", "--p", "3", "--n", "3"], "1"),
        (["census", "D8", "--p", "2", "--n", "2", "--method", "recursive"], "22"),
    ],
)
def test_census(args, orbit_count):
    result = runner.invoke(app, [*args, "--json"])
    assert result.exit_code == 0, result.output
    (row,) = json.loads(result.output)
    assert str(row["orbit_count"]) == orbit_count


def test_census_representatives():
    result = runner.invoke(app, ["census", "S3", "--p", "3", "--n", "1", "--reps", "--csv"])
    assert result.exit_code == 0
    rows = result.output.strip().splitlines()
    assert rows[0] == "group,prime,height,representative,orbit_size,centralizer_order"
    assert len(rows) == 3
    assert rows[1].endswith("(),1,6")


def test_chi_pentagon(pentagon_file):
    result = runner.invoke(app, ["chi", "coxeter", str(pentagon_file), "--n", "1..2", "--json"])
    assert result.exit_code == 0, result.output
    assert [row["value"] for row in json.loads(result.output)] == ["-1/4", "1", "11", "61"]


def test_chi_group_table():
    result = runner.invoke(app, ["chi", "group", "S3", "--p", "3", "--n", "1..2"])
    assert result.exit_code == 0
    assert [row[-1] for row in lines(result.output)] == ["1/6", "1", "2", "5"]


def test_chi_without_an_orbifold_form():
    result = runner.invoke(app, ["chi", "closed-form", "gl4_z", "--n=-1..1"])
    assert result.exit_code == 1
    assert "orbifold" in result.output


def test_chi_needs_a_prime():
    result = runner.invoke(app, ["chi", "group", "S3", "--n", "1"])
    assert result.exit_code == 2


def test_unknown_group_is_a_computation_error():
    result = runner.invoke(app, ["census", "Z5", "--p", "2", "--n", "1"])
    assert result.exit_code == 1


def test_bad_height_range():
    result = runner.invoke(app, ["chi", "group", "S3", "--p", "3", "--n", "3..1"])
    assert result.exit_code == 2


def test_missing_option_is_a_usage_error():
    result = runner.invoke(app, ["census", "S3"])
    assert result.exit_code == 2


def test_burnside_expression():
    result = runner.invoke(app, ["burnside", "D8 + D8 - C4", "--p", "2", "--n", "1", "--json"])
    assert result.exit_code == 0, result.output
    assert {row["height"]: row["value"] for row in json.loads(result.output)} == {-1: "0", 0: "1", 1: "6"}


def test_burnside_operators():
    shifted = runner.invoke(app, ["burnside", "S3", "--shift", "1", "--p", "3", "--terms", "--json"])
    assert shifted.exit_code == 0, shifted.output
    assert sorted(row["coefficient"] for row in json.loads(shifted.output)) == [1, 1]

    looped = runner.invoke(app, ["burnside", "C2", "--loop", "--terms", "--json"])
    assert [row["coefficient"] for row in json.loads(looped.output)] == [2]

    assert runner.invoke(app, ["burnside", "S3", "--shift", "1"]).exit_code == 2


def test_coxeter(pentagon_file):
    result = runner.invoke(app, ["coxeter", str(pentagon_file)])
    assert result.exit_code == 0
    assert lines(result.output) == [["0", "1"], ["1", "5"], ["2", "5"]]

    listed = runner.invoke(app, ["coxeter", str(pentagon_file), "--cliques", "--json"])
    assert len(json.loads(listed.output)) == 11


def test_coxeter_missing_file(tmp_path):
    result = runner.invoke(app, ["coxeter", str(tmp_path / "missing.txt")])
    assert result.exit_code == 2


def test_cells():
    result = runner.invoke(app, ["cells", "soule_sl3", "--json"])
    assert result.exit_code == 0
    rows = json.loads(result.output)
    assert sum(row["multiplicity"] for row in rows) == 19

    sequence = runner.invoke(app, ["cells", "soule_sl3", "--p", "3", "--n", "1..3", "--json"])
    assert [row["value"] for row in json.loads(sequence.output)] == ["0", "1", "3", "9", "27"]


def test_closed_form():
    listed = runner.invoke(app, ["closed-form", "--list", "--json"])
    keys = {row["key"] for row in json.loads(listed.output)}
    assert {"sl2_z", "sp18_z", "gamma15", "gl10_z"} <= keys

    result = runner.invoke(app, ["closed-form", "sl2_q_sqrt5", "--p", "3", "--n", "1", "--json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)[-1]["value"] == "8"

    unavailable = runner.invoke(app, ["closed-form", "gl10_z", "--n", "1"])
    assert unavailable.exit_code == 1


def test_report():
    result = runner.invoke(app, ["report", "closed-form", "gl4_z", "--n", "1", "--json"])
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)
    assert rows[0]["description"] == "rational part"
    assert rows[1]["torus_dim"] == 1

    group = runner.invoke(app, ["report", "group", "S3", "--p", "3", "--n", "2", "--json"])
    assert len(json.loads(group.output)) == 5


def test_output_is_deterministic():
    args = ["chi", "burnside", "2*S3 - C2xC2", "--p", "2", "--n", "1..3", "--csv"]
    assert runner.invoke(app, args).output == runner.invoke(app, args).output


def test_verify_filter():
    result = runner.invoke(app, ["verify", "--filter", "ladder", "--json"])
    assert result.exit_code == 0, result.output
    assert [row["name"] for row in json.loads(result.output)] == ["ladder"]


def test_verify_failure_exit_code(monkeypatch):
    original = cells.soule_sl3()
    monkeypatch.setattr(cells, "soule_sl3", lambda: cells.ProperCellStructure(original.label, original.cells[:-1]))
    result = runner.invoke(app, ["verify", "--filter", "soule-sl3-p2"])
    assert result.exit_code == 3


def test_verify_unknown_filter():
    assert runner.invoke(app, ["verify", "--filter", "no-such-check"]).exit_code == 2


def test_global_options(settings, monkeypatch):
    monkeypatch.setattr(settings, "threads", settings.threads)
    result = runner.invoke(app, ["--threads", "2", "--log-level", "error", "census", "S4", "--p", "2", "--n", "2"])
    assert result.exit_code == 0


def test_burnside_expression_with_a_leading_minus():
    result = runner.invoke(app, ["burnside", "--p", "2", "--n", "1", "--json", "--", "-C2 + C4"])
    assert result.exit_code == 0, result.output
    assert {row["height"]: row["value"] for row in json.loads(result.output)} == {-1: "-1/4", 0: "0", 1: "2"}


def test_schema_command():
    everything = runner.invoke(app, ["schema"])
    assert everything.exit_code == 0, everything.output
    assert set(json.loads(everything.output)) == set(ROW_MODELS)

    chi_schema = json.loads(runner.invoke(app, ["schema", "chi"]).output)
    assert chi_schema["type"] == "array"

    assert runner.invoke(app, ["schema", "no-such-rows"]).exit_code == 2


@pytest.mark.parametrize(
    "args, schema_name",
    [
        (["census", "D8", "--p", "2", "--n", "2"], "census"),
        (["census", "S3", "--p", "3", "--n", "1", "--reps"], "census-orbit"),
        (["chi", "group", "S3", "--p", "3", "--n", "1..2"], "chi"),
        (["burnside", "D8 + D8 - C4", "--p", "2", "--n", "1"], "chi"),
        (["burnside", "S3", "--shift", "1", "--p", "3", "--terms"], "burnside-term"),
        (["coxeter", "{pentagon}"], "clique"),
        (["coxeter", "{pentagon}", "--cliques"], "clique-list"),
        (["cells", "soule_sl3"], "cell"),
        (["closed-form", "--list"], "closed-form"),
        (["closed-form", "gamma15", "--n", "1"], "chi"),
        (["report", "closed-form", "gl4_z", "--n", "1"], "report"),
        (["verify", "--filter", "amalgams"], "check"),
    ],
)
def test_json_output_matches_the_published_schema(args, schema_name, pentagon_file):
    args = [arg.format(pentagon=pentagon_file) for arg in args]
    result = runner.invoke(app, [*args, "--json"])
    assert result.exit_code == 0, result.output
    rows = json.loads(result.output)
    assert rows
    schema = json.loads(runner.invoke(app, ["schema", schema_name]).output)
    jsonschema.validate(instance=rows, schema=schema)
