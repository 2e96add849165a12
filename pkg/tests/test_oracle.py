"""Brute-force verification, structure checks, and the scaling bench."""

import math
import os

import pytest

from braidcode.braid1d import BraidParams1D, construct
from braidcode.generators import identity_generator
from braidcode.oracle import (
    DEFAULT_LIMIT,
    bench_tsv,
    check_structure,
    count_colors,
    is_distinguishable,
    order_bench,
    prime_window,
    verify_limit,
)


def test_verify_limit_env_override(monkeypatch):
    assert verify_limit() == DEFAULT_LIMIT
    monkeypatch.setenv("BRAIDCODE_VERIFY_LIMIT", "1234")
    assert verify_limit() == 1234


def test_is_distinguishable_reports_counterexample():
    bad = identity_generator(6, 1).to_colormap()
    # force a collision by reusing a color
    from braidcode.core import ColorMap

    collided = ColorMap(
        grid=bad.grid,
        block=bad.block,
        colors=(0, 1, 2, 0, 4, 5),
        palette=bad.palette,
        params=None,
    )
    rep = is_distinguishable(collided)
    assert not rep.ok
    assert rep.counterexample[0] == (0,) and rep.counterexample[1] == (3,)


def test_is_distinguishable_respects_limit(m24):
    with pytest.raises(ValueError):
        is_distinguishable(m24, limit=10)


def test_count_colors(m24):
    assert count_colors(m24) == 10  # 4 + 6 color identity generators


def test_check_structure_passes_braid_map(m24):
    rep = check_structure(m24)
    assert rep.ok, rep


def test_check_structure_flags_broken_tiling(m24):
    from braidcode.core import ColorMap

    colors = list(m24.colors)
    colors[5], colors[7] = colors[7], colors[5]
    broken = ColorMap(
        grid=m24.grid, block=m24.block, colors=tuple(colors),
        palette=m24.palette, params=m24.params,
    )
    assert not check_structure(broken).ok


def test_prime_window():
    assert prime_window(1, 4) == [2, 3, 5, 7]
    assert prime_window(3, 2) == [5, 7]


def test_order_bench_reference_point():
    rows = order_bench(2, 1, [1])
    (row,) = rows
    assert row.L == 840 and row.K == 34


def test_order_bench_ratio_band():
    for m in (1, 2):
        for row in order_bench(m, 1, [1, 2, 3]):
            ratio = row.ratio
            if m == 1:
                assert ratio == 1.0
            else:
                assert 1 < ratio <= 4 * m


def test_bench_tsv_shape():
    rows = order_bench(2, 1, [1, 2])
    text = bench_tsv(rows)
    lines = text.strip().splitlines()
    assert lines[0].split("\t")[:2] == ["L", "K"]
    assert len(lines) == 3
