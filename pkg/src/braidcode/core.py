"""Grid geometry, color maps and the multiset encode operation.

Conventions used throughout the package:

* Grid points are tuples of non-negative ints, one entry per axis.
* Linearization is row-major with axis 1 outermost, so a point
  ``(x1, ..., xn)`` on dims ``(M1, ..., Mn)`` has flat index
  ``x1*M2*...*Mn + ... + xn``.
* All indices are 0-based, including sub-grid indices.
* Codewords are canonical multisets: ascending tuples of color ids.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Point = tuple[int, ...]
Codeword = tuple[int, ...]


class OutOfCodingAreaError(ValueError):
    """Tag lies outside the coding area of a flat grid."""


class PaletteError(ValueError):
    """Palette ids overlap or are otherwise inconsistent."""


def canonical(colors) -> Codeword:
    """Canonical form of a color multiset: ascending tuple."""
    return tuple(sorted(colors))


@dataclass(frozen=True)
class GridSpec:
    """Cyclic or flat integer grid with dims M = (M_1, ..., M_n)."""

    dims: tuple[int, ...]
    cyclic: bool = True

    def __post_init__(self):
        if len(self.dims) < 1 or any(d < 1 for d in self.dims):
            raise ValueError(f"grid dims must be positive: {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def volume(self) -> int:
        return math.prod(self.dims)

    def index(self, point: Point) -> int:
        """Row-major flat index of a point (axis 1 outermost)."""
        idx = 0
        for x, d in zip(point, self.dims):
            if not 0 <= x < d:
                raise ValueError(f"point {point} outside grid {self.dims}")
            idx = idx * d + x
        return idx

    def point(self, index: int) -> Point:
        coords = []
        for d in reversed(self.dims):
            coords.append(index % d)
            index //= d
        return tuple(reversed(coords))

    def points(self) -> Iterator[Point]:
        for i in range(self.volume):
            yield self.point(i)

    def wrap(self, point: Sequence[int]) -> Point:
        return tuple(x % d for x, d in zip(point, self.dims))


@dataclass(frozen=True)
class BlockSpec:
    """Block size m = (m_1, ..., m_n); same dimension as its grid."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.dims) < 1 or any(d < 1 for d in self.dims):
            raise ValueError(f"block dims must be positive: {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def volume(self) -> int:
        return math.prod(self.dims)

    def check_against(self, grid: GridSpec) -> None:
        if len(self.dims) != grid.n:
            raise ValueError("block and grid dimension mismatch")
        if any(m > M for m, M in zip(self.dims, grid.dims)):
            raise ValueError(f"block {self.dims} exceeds grid {grid.dims}")


@dataclass(frozen=True)
class PaletteEntry:
    """Metadata for one color id.

    ``subgrid`` is the sub-grid index the color belongs to (a 1-tuple for
    1D sunmao constructions, the offset vector J for unitary ones), or
    None for hand-made maps.  ``factors`` is the per-axis factor tuple for
    product colors.  ``label`` is a free-form human name such as ``a_1``.
    """

    id: int
    subgrid: tuple[int, ...] | None = None
    factors: tuple[int, ...] | None = None
    label: str = ""


@dataclass(frozen=True)
class ColorMap:
    """Total color mapping on a grid, with construction metadata.

    ``colors`` is the dense row-major array of color ids; ``palette``
    carries one entry per color id; ``params`` is the construction
    descriptor (None for hand-made maps).
    """

    grid: GridSpec
    block: BlockSpec
    colors: tuple[int, ...]
    palette: tuple[PaletteEntry, ...]
    params: dict | None = None

    def __post_init__(self):
        self.block.check_against(self.grid)
        if len(self.colors) != self.grid.volume:
            raise ValueError(
                f"colors array has {len(self.colors)} entries, "
                f"grid has {self.grid.volume} points"
            )
        ids = [e.id for e in self.palette]
        if len(ids) != len(set(ids)):
            raise PaletteError("duplicate palette ids")
        known = set(ids)
        used = set(self.colors)
        if not used <= known:
            raise PaletteError(f"colors reference ids missing from palette: {sorted(used - known)[:5]}")

    @property
    def palette_by_id(self) -> dict[int, PaletteEntry]:
        return {e.id: e for e in self.palette}

    def color_at(self, point: Point) -> int:
        return self.colors[self.grid.index(point)]

    def used_colors(self) -> set[int]:
        return set(self.colors)


def block_points(grid: GridSpec, block: BlockSpec, tag: Point) -> list[Point]:
    """Points of the block tagged at ``tag``, in row-major offset order.

    Cyclic grids wrap; flat grids reject tags outside the coding area.
    """
    block.check_against(grid)
    if not grid.cyclic:
        if any(not 0 <= t <= M - m for t, M, m in zip(tag, grid.dims, block.dims)):
            raise OutOfCodingAreaError(f"tag {tag} outside flat coding area")
    else:
        tag = grid.wrap(tag)
    offsets = GridSpec(block.dims)
    return [grid.wrap(tuple(t + o for t, o in zip(tag, off))) for off in offsets.points()]


def coding_area(grid: GridSpec, block: BlockSpec) -> Iterator[Point]:
    """Tags at which a block is defined: the whole grid if cyclic."""
    block.check_against(grid)
    if grid.cyclic:
        yield from grid.points()
    else:
        area = GridSpec(tuple(M - m + 1 for M, m in zip(grid.dims, block.dims)))
        yield from area.points()


def coding_area_size(grid: GridSpec, block: BlockSpec) -> int:
    if grid.cyclic:
        return grid.volume
    return math.prod(M - m + 1 for M, m in zip(grid.dims, block.dims))


def encode(cmap: ColorMap, tag: Point) -> Codeword:
    """Color codeword of the block tagged at ``tag``: a canonical multiset."""
    if isinstance(tag, int):
        tag = (tag,)
    return canonical(cmap.color_at(p) for p in block_points(cmap.grid, cmap.block, tag))


# ---------------------------------------------------------------------------
# JSON interchange

_VERSION = 1


def to_json(cmap: ColorMap) -> str:
    """Serialize a ColorMap to the fixed-field-order JSON document."""
    doc = {
        "version": _VERSION,
        "grid": {"M": list(cmap.grid.dims), "cyclic": cmap.grid.cyclic},
        "block": {"m": list(cmap.block.dims)},
        "colors": list(cmap.colors),
        "palette": [
            {
                "id": e.id,
                "subgrid": list(e.subgrid) if e.subgrid is not None else None,
                "factors": list(e.factors) if e.factors is not None else None,
                "label": e.label,
            }
            for e in cmap.palette
        ],
        "params": cmap.params,
    }
    return json.dumps(doc)


def from_json(text: str) -> ColorMap:
    doc = json.loads(text)
    if doc.get("version") != _VERSION:
        raise ValueError(f"unsupported version {doc.get('version')}")
    palette = tuple(
        PaletteEntry(
            id=e["id"],
            subgrid=tuple(e["subgrid"]) if e.get("subgrid") is not None else None,
            factors=tuple(e["factors"]) if e.get("factors") is not None else None,
            label=e.get("label", ""),
        )
        for e in doc["palette"]
    )
    return ColorMap(
        grid=GridSpec(tuple(doc["grid"]["M"]), doc["grid"]["cyclic"]),
        block=BlockSpec(tuple(doc["block"]["m"])),
        colors=tuple(doc["colors"]),
        palette=palette,
        params=doc.get("params"),
    )
