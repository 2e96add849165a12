#!/usr/bin/env python3
"""Rebuild the three reference 75-point maps and the 24x24 grid and
print them in human-readable form, with a verification line for each."""

from braidcode.braid1d import BraidParams1D, construct
from braidcode.braidnd import UnitaryBraidParamsND, construct_unitary_nd
from braidcode.oracle import count_colors, is_distinguishable

SETS_75 = {
    "class 1, ell=(6,45)": BraidParams1D(M=75, parts=(2, 3), g=3, c=(2, 3), q=(1, 5)),
    "mixed,   ell=(3,45)": BraidParams1D(M=75, parts=(2, 3), g=3, c=(1, 3), q=(1, 5)),
    "class 2, ell=(15,5)": BraidParams1D(M=75, parts=(2, 3), g=5, c=(1, 1), q=(3, 1)),
}

QTABLE_24 = {(0, 0): (1, 3), (0, 1): (2, 1), (1, 0): (1, 2), (1, 1): (3, 1)}


def show_1d(title: str, params: BraidParams1D) -> None:
    cmap = construct(params)
    labels = {e.id: e.label.replace("_", "") for e in cmap.palette}
    seq = ["".join(labels[c] for c in cmap.colors[j * 5 : (j + 1) * 5]) for j in range(15)]
    rep = is_distinguishable(cmap)
    print(f"{title}: {count_colors(cmap)} colors, distinguishable={rep.ok}")
    print("  " + " ".join(seq))


def show_2d() -> None:
    cmap = construct_unitary_nd(UnitaryBraidParamsND(m=(2, 2), g=2, qtable=QTABLE_24))
    rep = is_distinguishable(cmap)
    print(f"24x24 grid: {count_colors(cmap)} colors, "
          f"{rep.checked} blocks checked, distinguishable={rep.ok}")
    letters = {(0, 0): "a", (1, 0): "b", (0, 1): "c", (1, 1): "d"}
    by_id = {e.id: e for e in cmap.palette}
    for row in range(24):
        cells = []
        for col in range(24):
            e = by_id[cmap.colors[cmap.grid.index((col, row))]]
            period = 2 * QTABLE_24[e.subgrid][0]
            cells.append(f"{letters[e.subgrid]}{e.factors[0] + e.factors[1] * period:<2}")
        print("  " + " ".join(cells))


def main() -> None:
    for title, params in SETS_75.items():
        show_1d(title, params)
    print()
    show_2d()


if __name__ == "__main__":
    main()
