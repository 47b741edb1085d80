import json
from fractions import Fraction

import pytest

from chromatic.errors import HeightUndefined
from chromatic.models import ChiRow, CliqueRow
from chromatic.output import OutputFormat, render, render_csv, render_json, render_table
from chromatic.sequence import TargetKind, chromatic_sequence, resolve_target


def values(rows: list[ChiRow]) -> dict[int, Fraction]:
    return {row.height: row.value for row in rows}


def test_finite_group_sequence():
    rows = chromatic_sequence(resolve_target("group", "S3"), 3, range(1, 3))
    assert values(rows) == {-1: Fraction(1, 6), 0: 1, 1: 2, 2: 5}
    assert [row.height for row in rows] == [-1, 0, 1, 2]
    assert {row.prime for row in rows} == {3}


def test_burnside_sequence():
    rows = chromatic_sequence(resolve_target(TargetKind.burnside, "D8 + D8 - C4"), 2, [1])
    assert values(rows) == {-1: Fraction(0), 0: 1, 1: 6}


def test_cell_sequence():
    rows = chromatic_sequence(resolve_target("cells", "soule_sl3"), 2, range(1, 3))
    assert values(rows) == {-1: 0, 0: 1, 1: 5, 2: 25}


def test_coxeter_sequence_defaults_to_the_prime_two(pentagon_file):
    rows = chromatic_sequence(resolve_target("coxeter", str(pentagon_file)), None, range(1, 3))
    assert values(rows) == {-1: Fraction(-1, 4), 0: 1, 1: 11, 2: 61}
    assert rows[-1].prime == 2


def test_closed_form_without_an_orbifold_form():
    target = resolve_target("closed-form", "gl4_z")
    rows = chromatic_sequence(target, None, [1])
    assert [row.height for row in rows] == [0, 1]
    with pytest.raises(HeightUndefined):
        chromatic_sequence(target, None, [-1])


def test_closed_form_with_an_orbifold_form():
    rows = chromatic_sequence(resolve_target("closed-form", "sl2_z"), 3, [1, 2])
    assert values(rows) == {-1: Fraction(-1, 12), 0: 1, 1: 3, 2: 9}


def test_height_errors():
    target = resolve_target("group", "C2")
    with pytest.raises(HeightUndefined):
        chromatic_sequence(target, 2, [-2])
    with pytest.raises(ValueError):
        chromatic_sequence(target, None, [1])
    assert [row.height for row in chromatic_sequence(target, None)] == [-1, 0]


def test_table_output():
    rows = [CliqueRow(size=0, count=1), CliqueRow(size=1, count=5)]
    assert render_table(rows).splitlines() == ["size  count", "----  -----", "0     1", "1     5"]
    assert render(rows) == render_table(rows)
    assert render_table([]) == ""


def test_csv_output():
    rows = [ChiRow(target="C2", prime=None, height=-1, value=Fraction(1, 2))]
    assert render_csv(rows) == "target,prime,height,value\nC2,,-1,1/2"


def test_json_output():
    rows = [ChiRow(target="C2", prime=2, height=-1, value=Fraction(1, 2))]
    assert json.loads(render(rows, OutputFormat.json)) == [{"target": "C2", "prime": 2, "height": -1, "value": "1/2"}]
    assert render_json([]) == "[]"


def test_formats_carry_the_same_values():
    rows = chromatic_sequence(resolve_target("group", "D8"), 2, [1, 2])
    table = render(rows, OutputFormat.table)
    csv_text = render(rows, OutputFormat.csv)
    parsed = json.loads(render(rows, OutputFormat.json))
    for record in parsed:
        assert record["value"] in table
        assert record["value"] in csv_text
    assert [record["value"] for record in parsed] == ["1/8", "1", "5", "22"]
