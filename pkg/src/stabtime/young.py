"""Young-diagram view of a core string.

A core string (first bit 0, last bit 1) traces a lattice path from the
top-left to the bottom-right corner of a ``U x (n-U)`` grid; the boxes under
the path form a Young diagram.  One evolution step removes every exposed
corner of that diagram, and the stabilization time is the diagram's depth.

Coordinates: the path uses grid points ``(x, y)`` with the path starting at
``(0, U)``.  Cells use ``(i, j) = (column, row)``, both 1-based, with
``j = 1`` the bottom row; a cell is named by its top-right grid corner, so
cell ``(i, j)`` occupies ``[i-1, i] x [j-1, j]``.  Diagrams are stored as
row lengths listed bottom row first (the largest first).
"""

from __future__ import annotations

from dataclasses import dataclass

from .evolution import BitString, _as_bitstring, strip_to_core

__all__ = [
    "YoungDiagram",
    "NotACoreError",
    "staircase_path",
    "young_diagram",
    "cut_corners",
    "depth",
    "stabilization_time_via_depth",
    "diagram_from_cells",
    "render",
]

LatticePath = tuple[tuple[int, int], ...]


class NotACoreError(ValueError):
    pass


@dataclass(frozen=True)
class YoungDiagram:
    row_lengths: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.row_lengths)
        if any(r <= 0 for r in rows):
            raise ValueError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing: {rows}")
        object.__setattr__(self, "row_lengths", rows)

    def __len__(self) -> int:
        """Number of cells."""
        return sum(self.row_lengths)

    def __bool__(self) -> bool:
        return bool(self.row_lengths)

    def __contains__(self, cell) -> bool:
        i, j = cell
        return 1 <= j <= len(self.row_lengths) and 1 <= i <= self.row_lengths[j - 1]

    def cells(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (i, j) for j, length in enumerate(self.row_lengths, 1) for i in range(1, length + 1)
        )

    def column_heights(self) -> tuple[int, ...]:
        rows = self.row_lengths
        if not rows:
            return ()
        return tuple(sum(1 for r in rows if r >= i) for i in range(1, rows[0] + 1))


def diagram_from_cells(cells) -> YoungDiagram:
    """Build a diagram from a down-closed cell set (checked)."""
    cells = set(cells)
    for i, j in cells:
        if i < 1 or j < 1:
            raise ValueError(f"cell {(i, j)} outside the positive quadrant")
        if (i > 1 and (i - 1, j) not in cells) or (j > 1 and (i, j - 1) not in cells):
            raise ValueError(f"cell set is not down-closed at {(i, j)}")
    height = max((j for _, j in cells), default=0)
    return YoungDiagram(tuple(sum(1 for c in cells if c[1] == j) for j in range(1, height + 1)))


def _check_core(s: BitString):
    if len(s) and (s[0] != 0 or s[-1] != 1):
        raise NotACoreError(f"{s} is not a core string (needs first bit 0 and last bit 1)")


def staircase_path(core) -> LatticePath:
    """Grid points visited by the path of ``core``: 0 steps right, 1 steps down."""
    core = _as_bitstring(core)
    _check_core(core)
    x, y = 0, core.ones()
    points = [(x, y)]
    for b in core:
        if b:
            y -= 1
        else:
            x += 1
        points.append((x, y))
    return tuple(points)


def young_diagram(core) -> YoungDiagram:
    # Row j (from the bottom) ends where the path steps down from y=j; its
    # length is the number of 0s read before that 1.
    core = _as_bitstring(core)
    _check_core(core)
    zeros = 0
    rows = []
    for b in core:
        if b:
            rows.append(zeros)
        else:
            zeros += 1
    return YoungDiagram(tuple(r for r in reversed(rows) if r > 0))


def cut_corners(diagram: YoungDiagram) -> YoungDiagram:
    """Remove every exposed corner.

    Cell ``(rows[j], j)`` is exposed exactly when the row above is strictly
    shorter (or absent), so each block of equal rows loses one cell from its
    top row.
    """
    rows = list(diagram.row_lengths)
    out = []
    for j, length in enumerate(rows):
        last_of_block = j == len(rows) - 1 or rows[j + 1] < length
        out.append(length - 1 if last_of_block else length)
    return YoungDiagram(tuple(r for r in out if r > 0))


def depth(diagram: YoungDiagram) -> int:
    """``max(i + j - 1)`` over cells; 0 for the empty diagram."""
    return max((length + j for j, length in enumerate(diagram.row_lengths)), default=0)


def stabilization_time_via_depth(s) -> int:
    return depth(young_diagram(strip_to_core(s).core))


def render(diagram: YoungDiagram, box: str = "#") -> str:
    """ASCII picture, top row first.  Debug aid only."""
    return "".join(box * length + "\n" for length in reversed(diagram.row_lengths))
