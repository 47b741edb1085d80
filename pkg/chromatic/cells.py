"""
Finite proper cell structures for infinite discrete groups.

A structure lists orbits of equivariant cells by dimension, stabilizer and multiplicity; every chromatic Euler
characteristic of the group is the alternating sum of the characteristic of the stabilizers.
"""

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from loguru import logger
from pydantic import BaseModel, Field

from chromatic.burnside import BurnsideClass, class_of
from chromatic.census import chi_kn_finite, p_power_elements
from chromatic.errors import InvalidEmbedding, UnknownSpec
from chromatic.groups import (
    FiniteGroup,
    Permutation,
    find_embedding,
    group_spec,
    is_homomorphism_images,
    is_monomorphism_images,
    standard_group,
)
from chromatic.utils import parallel_sum


@dataclass(frozen=True)
class EquivariantCell:
    """`multiplicity` cell orbits of dimension `dim` with stabilizer `stabilizer`."""

    dim: int
    stabilizer: FiniteGroup
    multiplicity: int = 1

    @property
    def sign(self) -> int:
        return -1 if self.dim % 2 else 1


@dataclass(frozen=True)
class ProperCellStructure:
    """Orbits of cells of a finite proper G-CW complex modelling the classifying space for proper actions."""

    label: str
    cells: tuple[EquivariantCell, ...]

    def cell_count(self) -> int:
        """Number of cell orbits, counted with multiplicity."""
        return sum(cell.multiplicity for cell in self.cells)

    def counts_by_dim(self) -> dict[int, int]:
        """Cell orbits per dimension, counted with multiplicity."""
        counts: dict[int, int] = {}
        for cell in self.cells:
            counts[cell.dim] = counts.get(cell.dim, 0) + cell.multiplicity
        return dict(sorted(counts.items()))


def to_burnside_class(structure: ProperCellStructure) -> BurnsideClass:
    """`sum (-1)^dim * multiplicity * [B_gl stabilizer]`."""
    result = BurnsideClass()
    for cell in structure.cells:
        result = result + (cell.sign * cell.multiplicity) * class_of(cell.stabilizer)
    return result


def chi_kn_cells(structure: ProperCellStructure, p: int, n: int) -> int:
    """
    `chi_K(n)` of the group at `p`: the alternating sum of the stabilizers' orbit counts.

    Cells are evaluated on `settings.threads` worker threads; the sum is taken in cell order.

    Raises:
        NotPrime: When `p` is not a prime.
    """
    tasks: list[Callable[[], int]] = [
        lambda cell=cell: cell.sign * cell.multiplicity * chi_kn_finite(cell.stabilizer, p, n)
        for cell in structure.cells
    ]
    return parallel_sum(tasks)


def chi_orb_cells(structure: ProperCellStructure) -> Fraction:
    """`sum (-1)^dim * multiplicity / |stabilizer|`."""
    terms = (Fraction(cell.sign * cell.multiplicity, cell.stabilizer.order) for cell in structure.cells)
    return sum(terms, Fraction(0))


def chi_q_cells(structure: ProperCellStructure) -> int:
    """`sum (-1)^dim * multiplicity`."""
    return sum(cell.sign * cell.multiplicity for cell in structure.cells)


def amalgam(
    h: FiniteGroup,
    l: FiniteGroup,  # noqa: E741
    k: FiniteGroup,
    into_h: Sequence[Permutation] | None = None,
    into_l: Sequence[Permutation] | None = None,
    label: str | None = None,
) -> ProperCellStructure:
    """
    The Bass-Serre tree of `H *_K L`: two vertex orbits with stabilizers H and L and one edge orbit with stabilizer K.

    Args:
        h: First vertex group.
        l: Second vertex group.
        k: Edge group.
        into_h: Images of `k.minimal_generators` in `h`; the first monomorphism found is used when omitted.
        into_l: Images of `k.minimal_generators` in `l`; the first monomorphism found is used when omitted.
        label: Name of the structure. Defaults to `H*_K L` built from group specs.

    Raises:
        InvalidEmbedding: When given images do not define an injective homomorphism, or no embedding exists.
    """
    for target, images, side in ((h, into_h, "H"), (l, into_l, "L")):
        if images is None:
            if find_embedding(k, target) is None:
                raise InvalidEmbedding(f"{group_spec(k)} does not embed in {group_spec(target)} ({side}).")
        elif not is_homomorphism_images(k, target, list(images)):
            raise InvalidEmbedding(
                f"Images {list(map(str, images))} do not define a homomorphism {group_spec(k)} -> {group_spec(target)}."
            )
        elif not is_monomorphism_images(k, target, list(images)):
            raise InvalidEmbedding(f"Images {list(map(str, images))} define a homomorphism with a kernel ({side}).")

    label = label or f"{group_spec(h)}*_{group_spec(k)} {group_spec(l)}"
    return ProperCellStructure(
        label=label,
        cells=(EquivariantCell(0, h), EquivariantCell(0, l), EquivariantCell(1, k)),
    )


# ---------------------------------------------------------------------------------------------------------------------
# built-in structures
# ---------------------------------------------------------------------------------------------------------------------

# Soulé's cell structure for SL_3(Z): (dim, stabilizer, multiplicity)
_SL3Z_CELLS: tuple[tuple[int, str, int], ...] = (
    (0, "S4", 3),
    (0, "D8", 1),
    (0, "D12", 1),
    (1, "C2", 2),
    (1, "D8", 2),
    (1, "S3", 2),
    (1, "C2xC2", 2),
    (2, "C2", 3),
    (2, "C2xC2", 1),
    (2, "C1", 1),
    (3, "C1", 1),
)


def _from_table(label: str, table: Sequence[tuple[int, str, int]]) -> ProperCellStructure:
    """Build a structure from `(dim, group-spec, multiplicity)` rows."""
    return ProperCellStructure(
        label=label,
        cells=tuple(EquivariantCell(dim, standard_group(spec), multiplicity) for dim, spec, multiplicity in table),
    )


def soule_sl3() -> ProperCellStructure:
    """SL_3(Z) acting on its well-rounded retract: 5 vertex, 8 edge, 5 face and 1 solid orbits."""
    return _from_table("SL3(Z)", _SL3Z_CELLS)


def sl2z_tree() -> ProperCellStructure:
    """SL_2(Z) = C4 *_C2 C6."""
    return amalgam(standard_group("C4"), standard_group("C6"), standard_group("C2"), label="SL2(Z)")


def dihedral_amalgam() -> ProperCellStructure:
    """D8 *_C4 D8."""
    return amalgam(standard_group("D8"), standard_group("D8"), standard_group("C4"), label="D8*_C4 D8")


BUILTIN_COMPLEXES: dict[str, Callable[[], ProperCellStructure]] = {
    "soule_sl3": soule_sl3,
    "sl2z_tree": sl2z_tree,
    "dihedral_amalgam": dihedral_amalgam,
}


@dataclass(frozen=True)
class TorsionSplit:
    """Cells whose stabilizer has `p`-torsion, and per-dimension counts of the remaining cells."""

    prime: int
    torsion: ProperCellStructure
    remainder_counts: dict[int, int]

    def chi_kn(self, n: int) -> int:
        """`chi_K(n)` at `prime`, torsion cells evaluated and the rest counted once."""
        remainder = sum((-1) ** dim * count for dim, count in self.remainder_counts.items())
        return chi_kn_cells(self.torsion, self.prime, n) + remainder


def three_torsion_split(structure: ProperCellStructure | None = None, p: int = 3) -> TorsionSplit:
    """
    Split a structure (SL_3(Z) by default) into cells with `p`-torsion stabilizers and the rest.

    Cells without `p`-torsion contribute 1 at every height, so only their counts per dimension are kept.
    """
    structure = structure or soule_sl3()
    torsion: list[EquivariantCell] = []
    remainder: dict[int, int] = {}
    for cell in structure.cells:
        if len(p_power_elements(cell.stabilizer, p)) > 1:
            torsion.append(cell)
        else:
            remainder[cell.dim] = remainder.get(cell.dim, 0) + cell.multiplicity
    return TorsionSplit(
        prime=p,
        torsion=ProperCellStructure(label=f"{structure.label} {p}-torsion", cells=tuple(torsion)),
        remainder_counts=dict(sorted(remainder.items())),
    )


# ---------------------------------------------------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------------------------------------------------


class CellModel(BaseModel):
    """One row of the on-disk cell table."""

    dim: int = Field(ge=0)
    stabilizer: str
    multiplicity: int = Field(default=1, ge=1)


class CellStructureModel(BaseModel):
    """On-disk form: `{"label": ..., "cells": [{"dim": ..., "stabilizer": <group-spec>, "multiplicity": ...}]}`."""

    label: str
    cells: list[CellModel]


def load_cell_structure(path: Path) -> ProperCellStructure:
    """Read a cell structure from a JSON file."""
    model = CellStructureModel.model_validate_json(Path(path).read_text())
    logger.debug(f"loaded cell structure {model.label!r} with {len(model.cells)} cell orbits from {path}")
    return _from_table(model.label, [(cell.dim, cell.stabilizer, cell.multiplicity) for cell in model.cells])


def dump_cell_structure(structure: ProperCellStructure) -> str:
    """Serialize a cell structure to the JSON file format."""
    model = CellStructureModel(
        label=structure.label,
        cells=[
            CellModel(dim=cell.dim, stabilizer=group_spec(cell.stabilizer), multiplicity=cell.multiplicity)
            for cell in structure.cells
        ],
    )
    return model.model_dump_json(indent=2)


def resolve_cell_structure(name_or_path: str) -> ProperCellStructure:
    """
    A built-in structure by name (see `BUILTIN_COMPLEXES`) or a structure file.

    Raises:
        UnknownSpec: When the name is neither built in nor an existing file.
    """
    if name_or_path in BUILTIN_COMPLEXES:
        return BUILTIN_COMPLEXES[name_or_path]()
    path = Path(name_or_path)
    if path.is_file():
        return load_cell_structure(path)
    raise UnknownSpec(
        f"Unknown cell structure {name_or_path!r}. Built-ins: {', '.join(BUILTIN_COMPLEXES)}; or pass a JSON file."
    )
