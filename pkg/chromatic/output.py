"""Render row models as an aligned table, JSON or CSV. All three carry the same serialized values."""

import csv
import io
from collections.abc import Sequence
from enum import Enum

from pydantic import BaseModel, TypeAdapter


class OutputFormat(str, Enum):
    """Output formats of every command."""

    table = "table"
    json = "json"
    csv = "csv"


def _cell(value: object) -> str:
    """Text of one serialized value."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def _flat_rows(rows: Sequence[BaseModel]) -> tuple[list[str], list[list[str]]]:
    """Column names and stringified values in field order."""
    if not rows:
        return [], []
    columns = list(type(rows[0]).model_fields)
    dumped = [row.model_dump(mode="json") for row in rows]
    return columns, [[_cell(record[column]) for column in columns] for record in dumped]


def render_table(rows: Sequence[BaseModel]) -> str:
    """Left-aligned columns under a header and a dashed rule."""
    columns, values = _flat_rows(rows)
    if not columns:
        return ""
    widths = [max(len(column), *(len(record[i]) for record in values)) for i, column in enumerate(columns)]
    lines = ["  ".join(column.ljust(width) for column, width in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * width for width in widths))
    lines += ["  ".join(value.ljust(width) for value, width in zip(record, widths)).rstrip() for record in values]
    return "\n".join(lines)


def render_csv(rows: Sequence[BaseModel]) -> str:
    """A header line, then one line per row."""
    columns, values = _flat_rows(rows)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if columns:
        writer.writerow(columns)
        writer.writerows(values)
    return buffer.getvalue().rstrip("\n")


def render_json(rows: Sequence[BaseModel]) -> str:
    """An indented JSON array of the serialized rows."""
    if not rows:
        return "[]"
    return TypeAdapter(list[type(rows[0])]).dump_json(list(rows), indent=2).decode()


def rows_schema(model: type[BaseModel]) -> dict:
    """The JSON schema that `render_json` output made of `model` rows validates against."""
    return TypeAdapter(list[model]).json_schema(mode="serialization")


def render(rows: Sequence[BaseModel], fmt: OutputFormat = OutputFormat.table) -> str:
    """
    Render a homogeneous list of row models.

    Args:
        rows: Rows of one model type; column order is the model's field order.
        fmt: Output format.
    """
    match OutputFormat(fmt):
        case OutputFormat.json:
            return render_json(rows)
        case OutputFormat.csv:
            return render_csv(rows)
        case _:
            return render_table(rows)
