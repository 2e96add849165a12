"""Grid decomposition: offsets, theta bijections, block classification."""

import pytest
from hypothesis import given, strategies as st

from braidcode import GridSpec
from braidcode.generators import identity_generator
from braidcode.sunmao import (
    Decomposition1D,
    UnitaryDecompositionND,
    classify_block,
    synthesize,
    theta,
    theta_inv,
    unitary_block_membership,
)

parts_strategy = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


@st.composite
def decomps(draw):
    parts = draw(parts_strategy)
    m = sum(parts)
    factor = draw(st.integers(2, 6))
    return Decomposition1D(M=m * factor, parts=parts)


@given(decomps())
def test_offsets_are_part_prefix_sums(dec):
    assert dec.offsets[0] == 0
    for i in range(1, dec.I):
        assert dec.offsets[i] == dec.offsets[i - 1] + dec.parts[i - 1]
    assert sum(dec.parts) == dec.m
    assert all(sz == p * dec.M // dec.m for p, sz in zip(dec.parts, dec.subgrid_sizes))


@given(decomps(), st.data())
def test_theta_round_trip(dec, data):
    x = data.draw(st.integers(0, dec.M - 1))
    i = dec.subgrid_of(x)
    y = theta(dec, i, x)
    assert 0 <= y < dec.subgrid_sizes[i]
    assert theta_inv(dec, i, y) == x


@given(decomps(), st.data())
def test_split_is_consistent(dec, data):
    x = data.draw(st.integers(0, dec.M - 1))
    i, j, x_r = dec.split(x)
    assert x == (j * dec.m + dec.offsets[i] + x_r) % dec.M
    assert 0 <= x_r < dec.parts[i]


@given(decomps(), st.data())
def test_classification_covers_each_subgrid_once(dec, data):
    """Every block decomposes into exactly one sub-block per sub-grid."""
    x = data.draw(st.integers(0, dec.M - 1))
    entries = classify_block(dec, x)
    assert sorted(l for l, _, _ in entries) == list(range(dec.I))
    i, j, x_r = dec.split(x)
    for l, start, aligned in entries:
        if l == i and x_r > 0:
            assert not aligned
            assert start == (j * dec.parts[l] + x_r) % dec.subgrid_sizes[l]
        else:
            assert aligned and start % dec.parts[l] == 0
            expect_j = j if l >= i else j + 1
            assert start == (expect_j * dec.parts[l]) % dec.subgrid_sizes[l]


def test_synthesize_requires_disjoint_palettes():
    dec = Decomposition1D(M=12, parts=(1, 1))
    a = identity_generator(6, 1).to_colormap(id_offset=0, subgrid=(0,))
    clash = identity_generator(6, 1).to_colormap(id_offset=0, subgrid=(1,))
    with pytest.raises(ValueError):
        synthesize(dec, [a, clash])


def test_synthesize_interleaves_subgrid_colors():
    dec = Decomposition1D(M=12, parts=(1, 1))
    a = identity_generator(6, 1).to_colormap(id_offset=0, subgrid=(0,))
    b = identity_generator(6, 1).to_colormap(id_offset=6, subgrid=(1,))
    cmap = synthesize(dec, [a, b])
    for x in range(12):
        i = dec.subgrid_of(x)
        assert (cmap.colors[x] >= 6) == (i == 1)


def test_nd_membership_one_point_per_subgrid():
    dec = UnitaryDecompositionND(dims=(8, 6), block=(2, 2))
    grid = GridSpec((8, 6))
    for x in grid.points():
        members = unitary_block_membership(dec, x)
        assert len(members) == 4
        for J, pt in members.items():
            assert dec.subgrid_of(pt) == J


def test_nd_split_round_trip():
    dec = UnitaryDecompositionND(dims=(8, 6), block=(2, 2))
    grid = GridSpec((8, 6))
    for x in grid.points():
        J, l = dec.split(x)
        assert dec.unsplit(J, l) == x
