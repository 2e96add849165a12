"""One-dimensional braid codes.

A braid code interlocks repetitive codes on the sub-grids of a 1D
decomposition so that their periods braid into an m-distinguishable map
on the whole cyclic grid.  Parameters per sub-grid i: generator length
ell_i = g * c_i * q_i with c_i = gcd(m_i, ell_i), the shared factor
g > 1, and M = m * g * lcm(q_0, ..., q_{I-1}).

Class 1 codes have c_i = m_i everywhere, class 2 have c_i = 1; mixtures
are allowed.  Codes with all parts equal to 1 are called unitary.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .core import BlockSpec, ColorMap, GridSpec, PaletteEntry
from .generators import (
    GeneratorCode,
    MinColors,
    find_generator,
    min_colors,
    repetitive_extend,
)
from .sunmao import Decomposition1D, synthesize


class InfeasibleError(ValueError):
    """No valid braid parameterization exists for the request."""


@dataclass(frozen=True)
class BraidParams1D:
    """Parameter set of a 1D braid code."""

    M: int
    parts: tuple[int, ...]
    g: int
    c: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        object.__setattr__(self, "c", tuple(int(v) for v in self.c))
        object.__setattr__(self, "q", tuple(int(v) for v in self.q))

    @property
    def m(self) -> int:
        return sum(self.parts)

    @property
    def I(self) -> int:
        return len(self.parts)

    @property
    def ells(self) -> tuple[int, ...]:
        return tuple(self.g * c * q for c, q in zip(self.c, self.q))

    @property
    def Q(self) -> int:
        return math.lcm(*self.q)

    @property
    def decomposition(self) -> Decomposition1D:
        return Decomposition1D(self.M, self.parts)

    @property
    def klass(self) -> str:
        if all(c == m for c, m in zip(self.c, self.parts)):
            return "1"
        if all(c == 1 for c in self.c):
            return "2"
        return "mixed"

    @property
    def unitary(self) -> bool:
        return all(p == 1 for p in self.parts)


def validate(params: BraidParams1D) -> list[str]:
    """All violated braid conditions, empty when the parameter set is valid."""
    errs = []
    p = params
    if p.I < 1:
        errs.append("at least one part required")
        return errs
    if p.g < 2:
        errs.append(f"g must exceed 1, got {p.g}")
    for i, (m_i, c_i, q_i) in enumerate(zip(p.parts, p.c, p.q)):
        if m_i < 1 or c_i < 1 or q_i < 1:
            errs.append(f"part {i}: all of m_i, c_i, q_i must be positive")
            continue
        ell = p.g * c_i * q_i
        if m_i % c_i != 0:
            errs.append(f"part {i}: c_i={c_i} must divide m_i={m_i}")
        elif math.gcd(m_i, ell) != c_i:
            errs.append(f"part {i}: gcd(m_i, ell_i)=gcd({m_i},{ell})={math.gcd(m_i, ell)} != c_i={c_i}")
        if p.g * c_i <= m_i:
            errs.append(f"part {i}: need g*c_i > m_i, got {p.g * c_i} <= {m_i}")
    if p.I == 1 and p.c[0] != p.parts[0]:
        # With a single part there is no second sub-grid to anchor
        # non-aligned blocks, so only c_1 = m_1 (period = grid) works.
        errs.append("a single part requires c_1 = m_1")
    if not errs and p.M != p.m * p.g * p.Q:
        errs.append(f"M={p.M} != m*g*lcm(q) = {p.m * p.g * p.Q}")
    return errs


def construct(params: BraidParams1D, gens: list[GeneratorCode] | None = None) -> ColorMap:
    """Build the braid code map from validated params and generators.

    Generator i must be an m_i-distinguishable code on G^c_{ell_i}; ids
    are shifted so sub-grid palettes are disjoint, sub-grid 0 first.
    When ``gens`` is None, generators are chosen automatically.
    """
    errs = validate(params)
    if errs:
        raise InfeasibleError("; ".join(errs))
    ells = params.ells
    if gens is None:
        gens = [find_generator(ell, m_i) for ell, m_i in zip(ells, params.parts)]
    if len(gens) != params.I:
        raise ValueError(f"expected {params.I} generators")
    for i, (gen, ell, m_i) in enumerate(zip(gens, ells, params.parts)):
        if gen.ell != ell or gen.m != m_i:
            raise ValueError(f"generator {i} is ({gen.ell},{gen.m}), need ({ell},{m_i})")
        if not gen.is_distinguishable():
            raise ValueError(f"generator {i} is not {m_i}-distinguishable")

    dec = params.decomposition
    submaps = []
    offset = 0
    gen_params = []
    for i, gen in enumerate(gens):
        tiled = repetitive_extend(gen, dec.subgrid_sizes[i])
        submaps.append(tiled.to_colormap(id_offset=offset, subgrid=(i,)))
        gen_params.append(
            {"ell": gen.ell, "m": gen.m, "colors": [c + offset for c in gen.colors]}
        )
        offset += max(gen.colors) + 1
    cmap = synthesize(dec, submaps)
    return ColorMap(
        grid=cmap.grid,
        block=cmap.block,
        colors=cmap.colors,
        palette=cmap.palette,
        params={
            "kind": "braid1d",
            "g": params.g,
            "parts": list(params.parts),
            "c": list(params.c),
            "q": list(params.q),
            "gens": gen_params,
        },
    )


def params_of(cmap: ColorMap) -> BraidParams1D:
    """Recover BraidParams1D from a braid map's stored params."""
    p = cmap.params
    if p is None or p.get("kind") != "braid1d":
        raise ValueError("not a 1D braid map")
    return BraidParams1D(
        M=cmap.grid.dims[0],
        parts=tuple(p["parts"]),
        g=p["g"],
        c=tuple(p["c"]),
        q=tuple(p["q"]),
    )


# ---------------------------------------------------------------------------
# Optimizer


@dataclass(frozen=True)
class OptimizeResult:
    params: BraidParams1D
    cost: int
    costs: tuple[int, ...]
    exact: bool


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def enumerate_params(M: int, parts: tuple[int, ...], klass: str = "auto"):
    """All valid (g, c, q) for the given grid size and parts.

    ``klass`` restricts to class-1 (c_i = m_i) or class-2 (c_i = 1) codes.
    """
    m = sum(parts)
    if M % m != 0:
        raise InfeasibleError(f"block size {m} must divide M={M}")
    N = M // m
    for g in _divisors(N):
        if g < 2:
            continue
        Q = N // g
        qdivs = _divisors(Q)
        for q in itertools.product(qdivs, repeat=len(parts)):
            if math.lcm(*q) != Q:
                continue
            c_choices = []
            for m_i, q_i in zip(parts, q):
                opts = []
                for c_i in _divisors(m_i):
                    if klass == "1" and c_i != m_i:
                        continue
                    if klass == "2" and c_i != 1:
                        continue
                    if len(parts) == 1 and c_i != m_i:
                        continue
                    if g * c_i <= m_i:
                        continue
                    if math.gcd(m_i // c_i, g * q_i) != 1:
                        continue
                    # gcd(m_i, g*c_i*q_i) must equal c_i
                    if math.gcd(m_i, g * c_i * q_i) != c_i:
                        continue
                    opts.append(c_i)
                c_choices.append(opts)
            for c in itertools.product(*c_choices):
                yield BraidParams1D(M=M, parts=parts, g=g, c=c, q=q)


def optimize_generators(M: int, parts: tuple[int, ...], klass: str = "auto") -> OptimizeResult:
    """Minimize total generator colors over all valid braid parameterizations.

    Cost is the sum of the fewest-color counts for each (ell_i, m_i);
    ties break toward lexicographically smallest (ell-list, g).  The
    result is exact when every part is at most 3.
    """
    parts = tuple(parts)
    best = None
    for params in enumerate_params(M, parts, klass):
        mcs = [min_colors(m_i, ell) for m_i, ell in zip(params.parts, params.ells)]
        cost = sum(mc.k for mc in mcs)
        exact = all(mc.exact for mc in mcs)
        key = (cost, params.ells, params.g)
        if best is None or key < best[0]:
            best = (key, params, tuple(mc.k for mc in mcs), exact)
    if best is None:
        raise InfeasibleError(f"no valid braid parameterization for M={M}, parts={parts}")
    _, params, costs, exact = best
    return OptimizeResult(params=params, cost=sum(costs), costs=costs, exact=exact)


# ---------------------------------------------------------------------------
# Non-standard sizes: restriction and modification


def restrict(cmap: ColorMap, M_r: int) -> ColorMap:
    """Restrict a 1D map to the first M_r points of its grid, kept cyclic.

    Distinguishability is guaranteed for unitary braid maps when the
    block size does not divide M_r; otherwise the result may collide and
    should be checked with the oracle.
    """
    (M,) = cmap.grid.dims
    m = cmap.block.dims[0]
    if not m < M_r < M:
        raise ValueError(f"need m < M_r < M, got M_r={M_r}")
    base = cmap.params
    guaranteed = (
        base is not None
        and base.get("kind") == "braid1d"
        and all(p == 1 for p in base["parts"])
        and M_r % m != 0
    )
    return ColorMap(
        grid=GridSpec((M_r,)),
        block=cmap.block,
        colors=cmap.colors[:M_r],
        palette=cmap.palette,
        params={"kind": "restricted", "base": base, "M_r": M_r, "guaranteed": guaranteed},
    )


def modify_general_size(cmap: ColorMap, M_r: int, fresh: bool = False) -> ColorMap:
    """Shrink a unitary braid map to M_r = J*m points via shift + recolor.

    Rotates the map so the first and last aligned blocks differ at offset
    0, restricts to M_r, then overwrites the last m-1 points with the
    color of the last aligned point (or a globally fresh color when
    ``fresh``).  The overwritten run makes wrapped blocks identifiable
    by their repeated-color signature.
    """
    (M,) = cmap.grid.dims
    m = cmap.block.dims[0]
    base = cmap.params
    if base is None or base.get("kind") != "braid1d" or not all(p == 1 for p in base["parts"]):
        raise ValueError("modification requires a standard unitary braid map")
    if M_r % m != 0 or not 2 * m <= M_r < M:
        raise ValueError(f"need M_r = J*m with 2 <= J and M_r < M, got {M_r}")
    J = M_r // m
    shift = None
    for j in range(m):
        if cmap.colors[j] != cmap.colors[(J - 1) * m + j]:
            shift = j
            break
    if shift is None:
        raise InfeasibleError("aligned blocks 0 and J-1 share all colors; cannot anchor shift")
    rotated = [cmap.colors[(x + shift) % M] for x in range(M)]
    colors = rotated[:M_r]
    cstar = colors[(J - 1) * m]
    if fresh:
        fresh_id = max(e.id for e in cmap.palette) + 1
        fill = fresh_id
        palette = cmap.palette + (
            PaletteEntry(id=fresh_id, subgrid=None, factors=None, label="fresh"),
        )
    else:
        fill = cstar
        palette = cmap.palette
    for i in range(1, m):
        colors[(J - 1) * m + i] = fill
    return ColorMap(
        grid=GridSpec((M_r,)),
        block=cmap.block,
        colors=tuple(colors),
        palette=palette,
        params={
            "kind": "modified",
            "base": base,
            "M_r": M_r,
            "shift": shift,
            "cstar": cstar,
            "fresh": fill if fresh else None,
        },
    )
