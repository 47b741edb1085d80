"""
Chromatic sequences: the orbifold (-1), rational (0) and Morava K(n) (n >= 1) Euler characteristics of one target.

A target is a finite group, a Burnside class expression, a cell structure, a Coxeter defining graph or a closed-form
entry; each kind knows how to evaluate itself at every height it supports.
"""

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from chromatic import burnside, cells, closed_forms, coxeter
from chromatic.census import chi_kn_finite
from chromatic.errors import HeightUndefined
from chromatic.groups import group_spec, standard_group
from chromatic.models import ChiRow


class TargetKind(str, Enum):
    """What the TARGET argument of `chi` names."""

    group = "group"
    burnside = "burnside"
    cells = "cells"
    coxeter = "coxeter"
    closed_form = "closed-form"


@dataclass(frozen=True)
class Target:
    """A resolved target: its label and the evaluator for each height."""

    label: str
    orbifold: Callable[[], Fraction] | None
    rational: Callable[[], Fraction | int]
    morava: Callable[[int, int], Fraction | int]
    fixed_prime: int | None = None


def class_target(x: burnside.BurnsideClass) -> Target:
    """A target evaluating the characters of a Burnside class."""
    return Target(
        label=str(x),
        orbifold=lambda: burnside.chi_orb(x),
        rational=lambda: burnside.chi_q(x),
        morava=lambda p, n: burnside.chi_kn(x, p, n),
    )


def resolve_target(kind: TargetKind | str, reference: str) -> Target:
    """
    Turn a command-line target reference into a `Target`.

    Args:
        kind: What `reference` names.
        reference: A group spec, class expression, cell structure name or file, graph file or closed-form key.
    """
    match TargetKind(kind):
        case TargetKind.group:
            group = standard_group(reference)
            return Target(
                label=group_spec(group),
                orbifold=lambda: Fraction(1, group.order),
                rational=lambda: 1,
                morava=lambda p, n: chi_kn_finite(group, p, n),
            )
        case TargetKind.burnside:
            return class_target(burnside.parse_class_expression(reference))
        case TargetKind.cells:
            structure = cells.resolve_cell_structure(reference)
            return Target(
                label=structure.label,
                orbifold=lambda: cells.chi_orb_cells(structure),
                rational=lambda: cells.chi_q_cells(structure),
                morava=lambda p, n: cells.chi_kn_cells(structure, p, n),
            )
        case TargetKind.coxeter:
            graph = coxeter.load_graph(reference)
            return Target(
                label=reference,
                orbifold=lambda: coxeter.chi_orb_coxeter(graph),
                rational=lambda: coxeter.chi_kn_coxeter(graph, 0),
                morava=lambda p, n: coxeter.chi_kn_coxeter(graph, n, p),
                fixed_prime=2,
            )
        case TargetKind.closed_form:
            entry = closed_forms.get_entry(reference)
            return Target(
                label=entry.label,
                orbifold=(lambda: closed_forms.evaluate_entry(entry, -1)) if entry.has_orbifold_form else None,
                rational=lambda: closed_forms.evaluate_entry(entry, 0),
                morava=lambda p, n: closed_forms.evaluate_entry(entry, n, p),
                fixed_prime=entry.p,
            )


def chromatic_sequence(target: Target, p: int | None, heights: Iterable[int] = ()) -> list[ChiRow]:
    """
    Rows for height -1 (when the target has an orbifold form), 0, and every requested height, in ascending order.

    Raises:
        HeightUndefined: When height -1 is requested explicitly for a target without an orbifold form, or a height
            below -1 is requested.
        ValueError: When a height of at least 1 is requested without a prime.
    """
    heights = set(heights)
    if min(heights, default=0) < -1:
        raise HeightUndefined(f"Heights start at -1, got {min(heights)}.")
    if -1 in heights and target.orbifold is None:
        raise HeightUndefined(f"{target.label} has no orbifold Euler characteristic.")
    heights |= {0} | ({-1} if target.orbifold is not None else set())

    prime = p if p is not None else target.fixed_prime
    if prime is None and max(heights) >= 1:
        raise ValueError("A prime is needed for heights of at least 1; pass --p.")

    rows = []
    for height in sorted(heights):
        if height == -1:
            value = target.orbifold()
        elif height == 0:
            value = target.rational()
        else:
            value = target.morava(prime, height)
        rows.append(ChiRow(target=target.label, prime=prime, height=height, value=value))
    return rows
