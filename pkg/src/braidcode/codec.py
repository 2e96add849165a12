"""Decoding: associated matrices, CRT routing, and erasure handling.

Decoding a braid codeword never scans the full grid.  The codeword is
split by sub-grid palette, each piece is decoded on its small generator,
and the resulting sub-grid positions are routed through a generalized
Chinese-remainder step to the unique block tag.  Non-standard sizes
(restrictions, modifications, extensions) add a bounded candidate scan
near the boundary.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .core import ColorMap, Codeword, canonical, encode
from .braid1d import BraidParams1D, params_of
from .braidnd import params_of_nd, project


class NotACodeword(ValueError):
    """Input multiset is not a codeword; ``step`` names the failing stage."""

    def __init__(self, step: str, detail: str = ""):
        self.step = step
        super().__init__(f"not a codeword ({step}){': ' + detail if detail else ''}")


@dataclass(frozen=True)
class DecodeResult:
    """Decoded tag plus routing diagnostics.

    ``i_star`` is the (0-based) sub-grid holding the split/non-aligned
    sub-block, ``r_star`` its offset, ``a_star``/``b_star`` the CRT
    quotient and shared remainder j* = a*g + b*, and ``a_vec`` the
    B-matrix column residues fed to the CRT.
    """

    tag: int
    j_star: int
    i_star: int
    r_star: int
    a_star: int
    b_star: int
    a_vec: tuple[int, ...]


@dataclass(frozen=True)
class DecodeResultND:
    tag: tuple[int, ...]
    per_axis: tuple[DecodeResult | None, ...]


@dataclass(frozen=True)
class ErasureResult:
    candidates: tuple[int, ...]
    resolution: int


# ---------------------------------------------------------------------------
# Generalized CRT


def generalized_crt(residues, moduli) -> int | None:
    """Solve x = r_i (mod n_i) for possibly non-coprime moduli.

    Returns the unique solution in [0, lcm(moduli)), or None when the
    congruences are inconsistent.  Inconsistency is a value, not a fault.
    """
    x, n = 0, 1
    for r, mod in zip(residues, moduli):
        if mod < 1:
            raise ValueError("moduli must be positive")
        g = math.gcd(n, mod)
        if (r - x) % g != 0:
            return None
        lcm = n // g * mod
        # x + n*t = r (mod mod)  =>  t = (r-x)/g * inv(n/g) (mod mod/g)
        t = ((r - x) // g * pow(n // g, -1, mod // g)) % (mod // g) if mod // g > 1 else 0
        x = (x + n * t) % lcm
        n = lcm
    return x


def qhat(qs, i: int) -> int:
    """Minimum product of an i-element subset of qs."""
    if not 1 <= i <= len(qs):
        raise ValueError("subset size out of range")
    return min(math.prod(sub) for sub in itertools.combinations(qs, i))


# ---------------------------------------------------------------------------
# Associated matrices


@dataclass(frozen=True)
class AssociatedMatrix:
    """Row i lists first-appearance labels of aligned m_i-block codewords."""

    rows: tuple[tuple[int, ...], ...]
    g: int
    q: tuple[int, ...]

    @property
    def periods(self) -> tuple[int, ...]:
        return tuple(self.g * q_i for q_i in self.q)


@dataclass(frozen=True)
class BMatrix:
    rows: tuple[tuple[int, ...], ...]
    q: tuple[int, ...]


def _gen_tables(cmap: ColorMap):
    """Per-sub-grid generator data from stored params: (ell, m, colors)."""
    p = cmap.params
    if p is None or "gens" not in p:
        raise ValueError("map carries no generator data")
    return p["gens"]


def associated_matrix(cmap: ColorMap) -> AssociatedMatrix:
    """A[i][j] = label of the j-th aligned sub-block codeword of sub-grid i.

    Labels number distinct sub-grid codewords in order of first
    appearance along j.  Derived from generator params only.
    """
    params = params_of(cmap)
    gens = _gen_tables(cmap)
    cols = params.M // params.m
    rows = []
    for i, gen in enumerate(gens):
        ell, m_i, colors = gen["ell"], gen["m"], gen["colors"]
        labels: dict[tuple, int] = {}
        row = []
        for j in range(cols):
            w = canonical(colors[(j * m_i + t) % ell] for t in range(m_i))
            row.append(labels.setdefault(w, len(labels)))
        rows.append(tuple(row))
    return AssociatedMatrix(rows=tuple(rows), g=params.g, q=params.q)


def b_matrix(A: AssociatedMatrix) -> BMatrix:
    """B[i][a] = A[i][a*g] / g; errors if a label is not divisible by g."""
    Q = math.lcm(*A.q)
    rows = []
    for i, row in enumerate(A.rows):
        out = []
        for a in range(Q):
            lab = row[(a * A.g) % len(row)]
            if lab % A.g != 0:
                raise ValueError(
                    f"row {i}, column {a}: label {lab} not divisible by g={A.g}; "
                    "label order does not match the aligned period structure"
                )
            out.append(lab // A.g)
        rows.append(tuple(out))
    return BMatrix(rows=tuple(rows), q=A.q)


def dump_matrices(cmap: ColorMap) -> str:
    """A rows, blank line, B rows; space-separated labels."""
    A = associated_matrix(cmap)
    B = b_matrix(A)
    lines = [" ".join(map(str, row)) for row in A.rows]
    lines.append("")
    lines += [" ".join(map(str, row)) for row in B.rows]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Codeword wire format


def format_codeword(w) -> str:
    return ",".join(map(str, canonical(w)))


def parse_codeword(text: str) -> Codeword:
    try:
        return canonical(int(t) for t in text.split(",") if t.strip() != "")
    except ValueError as e:
        raise NotACodeword("parse", str(e)) from None


# ---------------------------------------------------------------------------
# Core 1D decode


def _decoder_table(gen: dict) -> dict[Codeword, int]:
    ell, m_i, colors = gen["ell"], gen["m"], gen["colors"]
    table = {}
    for x in range(ell):
        table[canonical(colors[(x + t) % ell] for t in range(m_i))] = x
    return table


def _split_by_subgrid(cmap: ColorMap, w) -> dict[int, list[int]]:
    sub_of = {}
    for e in cmap.palette:
        if e.subgrid is None:
            continue
        sub_of[e.id] = e.subgrid[0]
    groups: dict[int, list[int]] = defaultdict(list)
    for cid in w:
        if cid not in sub_of:
            raise NotACodeword("palette-split", f"unknown color id {cid}")
        groups[sub_of[cid]].append(cid)
    return groups


def _decode_core(g: int, parts, c, q, alphas) -> list[DecodeResult]:
    """All tags consistent with per-sub-grid generator positions ``alphas``.

    Implements the routing argument: represent each alpha as
    (j_i, r_i) with alpha = j_i*m_i + r_i mod ell_i and r_i < c_i, pick
    the split sub-grid i* and offset x_r, align the j_i residues, split
    j = a*g + b, CRT the a-residues, and verify arithmetically.  A valid
    braid code yields at most one tag.
    """
    I = len(parts)
    m = sum(parts)
    Q = math.lcm(*q)
    offsets = []
    acc = 0
    for p in parts:
        offsets.append(acc)
        acc += p
    ells = [g * c_i * q_i for c_i, q_i in zip(c, q)]
    gq = [g * q_i for q_i in q]

    js, rs = [], []
    for alpha, m_i, c_i, ell_i, gq_i in zip(alphas, parts, c, ells, gq):
        r_i = alpha % c_i
        j_i = ((alpha - r_i) // c_i * pow(m_i // c_i, -1, gq_i)) % gq_i
        js.append(j_i)
        rs.append(r_i)

    nonzero = [i for i, r in enumerate(rs) if r != 0]
    if len(nonzero) > 1:
        raise NotACodeword("split-offset", "more than one non-aligned sub-block")
    candidates: list[tuple[int, int]] = []  # (i_star, x_r)
    if nonzero:
        i = nonzero[0]
        candidates = [(i, x_r) for x_r in range(rs[i], parts[i], c[i]) if x_r > 0]
    else:
        candidates = [(i, 0) for i in range(I)]
        for i in range(I):
            candidates += [(i, x_r) for x_r in range(c[i], parts[i], c[i])]

    results = []
    for i_star, x_r in candidates:
        res = []
        ok = True
        for i in range(I):
            if i == i_star:
                k = x_r // c[i]
                u = pow(parts[i] // c[i], -1, gq[i])  # u*m_i = c_i (mod ell_i)
                res.append((js[i] - k * u) % gq[i])
            elif i < i_star:
                res.append((js[i] - 1) % gq[i])
            else:
                res.append(js[i])
        b_star = res[-1] % g
        if any(r % g != b_star for r in res):
            continue
        a_vec = tuple(((r - b_star) // g) % q_i for r, q_i in zip(res, q))
        a_star = generalized_crt(a_vec, q)
        if a_star is None:
            continue
        j_star = a_star * g + b_star
        tag = j_star * m + offsets[i_star] + x_r
        # verify: recompute every sub-grid position from the tag
        for i in range(I):
            if i == i_star:
                pos = j_star * parts[i] + x_r
            elif i < i_star:
                pos = (j_star + 1) * parts[i]
            else:
                pos = j_star * parts[i]
            if pos % ells[i] != alphas[i]:
                ok = False
                break
        if ok:
            results.append(
                DecodeResult(
                    tag=tag,
                    j_star=j_star,
                    i_star=i_star,
                    r_star=x_r,
                    a_star=a_star,
                    b_star=b_star,
                    a_vec=a_vec,
                )
            )
    return results


def decode_1d(cmap: ColorMap, w) -> DecodeResult:
    """Decode a codeword of a standard 1D braid map back to its tag."""
    params = params_of(cmap)
    gens = _gen_tables(cmap)
    w = canonical(w)
    groups = _split_by_subgrid(cmap, w)
    for i, m_i in enumerate(params.parts):
        if len(groups.get(i, [])) != m_i:
            raise NotACodeword(
                "palette-split",
                f"sub-grid {i} contributed {len(groups.get(i, []))} colors, expected {m_i}",
            )
    alphas = []
    for i in range(params.I):
        table = _decoder_table(gens[i])
        pos = table.get(canonical(groups[i]))
        if pos is None:
            raise NotACodeword("generator-decode", f"sub-grid {i} piece is not a sub-codeword")
        alphas.append(pos)
    results = _decode_core(params.g, params.parts, params.c, params.q, alphas)
    if not results:
        raise NotACodeword("crt", "no consistent routing")
    if len(results) > 1:
        raise AssertionError(f"ambiguous decode: tags {[r.tag for r in results]}")
    return results[0]


# ---------------------------------------------------------------------------
# Non-standard 1D sizes


def _base_map(cmap: ColorMap) -> ColorMap:
    """Reconstruct the standard braid map a restricted/modified map came from."""
    from .braid1d import construct  # deferred: avoids import cycle at module load
    from .generators import GeneratorCode

    base = cmap.params["base"]
    parts = tuple(base["parts"])
    q = tuple(base["q"])
    params = BraidParams1D(
        M=sum(parts) * base["g"] * math.lcm(*q),
        parts=parts,
        g=base["g"],
        c=tuple(base["c"]),
        q=q,
    )
    gens = []
    for gp in base["gens"]:
        colors = gp["colors"]
        lo = min(colors)
        gens.append(
            GeneratorCode(
                gp["ell"],
                gp["m"],
                tuple(c - lo for c in colors),
                tuple(f"c_{i}" for i in range(max(colors) - lo + 1)),
            )
        )
    built = construct(params, gens)
    return built


def decode_1d_general(cmap: ColorMap, w) -> DecodeResult:
    """Decode on restricted or modified 1D braid maps.

    Regular codewords are routed through the standard decoder of the
    underlying braid map; boundary codewords are screened by their
    repeated-color signature (modification) or resolved by a bounded
    scan of the m-1 wrapping tags (restriction).
    """
    kind = (cmap.params or {}).get("kind")
    if kind == "braid1d":
        return decode_1d(cmap, w)
    if kind not in ("restricted", "modified"):
        raise ValueError(f"unsupported map kind {kind!r}")
    w = canonical(w)
    (M_r,) = cmap.grid.dims
    m = cmap.block.dims[0]
    base_map = _base_map(cmap)
    M = base_map.grid.dims[0]

    def wrap_scan(lo: int) -> DecodeResult | None:
        for t in range(max(0, lo), M_r):
            if encode(cmap, (t,)) == w:
                return DecodeResult(t, t // m, 0, t % m, 0, 0, ())
        return None

    if kind == "restricted":
        try:
            res = decode_1d(base_map, w)
            if res.tag <= M_r - m and encode(cmap, (res.tag,)) == w:
                return res
        except NotACodeword:
            pass
        got = wrap_scan(M_r - m + 1)
        if got is None:
            raise NotACodeword("restricted", "no boundary tag matches")
        return got

    # modified map
    J = M_r // m
    cstar = cmap.params["cstar"]
    fresh = cmap.params.get("fresh")
    shift = cmap.params["shift"]
    sub0 = {e.id for e in cmap.palette if e.subgrid == (0,)}
    counts = Counter(w)
    if fresh is not None and counts[fresh] > 0:
        got = wrap_scan((J - 2) * m + 1)
        if got is None:
            raise NotACodeword("modified", "fresh-color signature matches no boundary tag")
        return got
    if fresh is None:
        s = sum(n for cid, n in counts.items() if cid in sub0)
        t = counts[cstar]
        if s >= 2:
            tag = (J - 2) * m + t if t == s else (J - 1) * m + (m - t)
            if 0 <= tag < M_r and encode(cmap, (tag,)) == w:
                return DecodeResult(tag, tag // m, 0, tag % m, 0, 0, ())
            raise NotACodeword("modified", "repeated-color signature matches no tag")
    res = decode_1d(base_map, w)
    tag = (res.tag - shift) % M
    if tag < M_r and encode(cmap, (tag,)) == w:
        return DecodeResult(tag, res.j_star, res.i_star, res.r_star, res.a_star, res.b_star, res.a_vec)
    raise NotACodeword("modified", "regular routing left the restricted grid")


# ---------------------------------------------------------------------------
# n-dimensional decode


def _axis_decode(params_nd, proj, axis: int) -> DecodeResult:
    """Decode one axis of a standard unitary nD braid code.

    ``proj`` is the axis projection: (J, factor index) pairs.  The band
    matrix of the axis is the associated matrix of a 1D unitary braid
    code with block nu(m); we label its rows (r; J^-) with band r = J_axis
    outermost and the remaining components row-major, and reuse the 1D
    routing core.
    """
    from .core import GridSpec

    m = params_nd.m
    n = params_nd.n
    nu = math.prod(m)
    w_band = nu // m[axis]
    other_axes = [k for k in range(n) if k != axis]
    other_shape = GridSpec(tuple(m[k] for k in other_axes)) if other_axes else None

    def row_of(J) -> int:
        r = J[axis]
        if other_shape is None:
            return r
        rank = other_shape.index(tuple(J[k] for k in other_axes))
        return r * w_band + rank

    qlist = [0] * nu
    for J, qs in params_nd.qtable.items():
        qlist[row_of(J)] = qs[axis]
    alphas = [None] * nu
    for J, f in proj:
        s = row_of(J)
        if alphas[s] is not None:
            raise NotACodeword("projection", f"axis {axis}: sub-grid {J} appears twice")
        if not 0 <= f < params_nd.g * params_nd.qtable[J][axis]:
            raise NotACodeword("projection", f"axis {axis}: factor {f} out of range for {J}")
        alphas[s] = f
    if any(a is None for a in alphas):
        raise NotACodeword("projection", f"axis {axis}: missing sub-grid contribution")

    results = _decode_core(params_nd.g, (1,) * nu, (1,) * nu, tuple(qlist), alphas)
    for res in results:
        j, off = divmod(res.tag, nu)
        r, rem = divmod(off, w_band)
        if rem == 0:
            return DecodeResult(j * m[axis] + r, res.j_star, res.i_star, res.r_star,
                                res.a_star, res.b_star, res.a_vec)
    raise NotACodeword("crt", f"axis {axis}: no consistent routing")


def decode_nd(cmap: ColorMap, w) -> DecodeResultND:
    """Decode a codeword of an n-dim unitary braid map (or its extension).

    Each axis is decoded independently from the codeword's projection.
    On extended maps, axes whose projection shows fresh factors are
    placed by the fresh-band pattern, and wrapped boundary tags are
    resolved by a bounded candidate scan.
    """
    params = params_of_nd(cmap)
    kind = cmap.params.get("kind")
    w = canonical(w)
    if len(w) != math.prod(params.m):
        raise NotACodeword("palette-split", f"codeword size {len(w)} != block volume")
    L = cmap.grid.dims
    diags: list[DecodeResult | None] = []
    axis_cands: list[list[int]] = []
    for axis in range(params.n):
        cands: list[int] = []
        diag = None
        try:
            proj = project(cmap, w, axis)
        except ValueError as e:
            raise NotACodeword("projection", str(e)) from None
        fresh_Js = [J for J, f in proj if f == params.ells(J)[axis]]
        if fresh_Js:
            x_i = _fresh_axis_position(params, L, axis, fresh_Js)
            if x_i is not None:
                cands.append(x_i)
        else:
            try:
                diag = _axis_decode(params, proj, axis)
                if L[axis] == params.dims[axis] or diag.tag <= L[axis] - params.m[axis]:
                    cands.append(diag.tag)
            except NotACodeword:
                diag = None
        if kind == "extended-nd" and L[axis] < params.dims[axis]:
            cands += [t for t in range(L[axis] - params.m[axis] + 1, L[axis]) if t not in cands]
        if not cands:
            raise NotACodeword("projection", f"axis {axis}: no position candidates")
        axis_cands.append(cands)
        diags.append(diag)

    matches = [x for x in itertools.product(*axis_cands) if encode(cmap, x) == w]
    if not matches and kind == "extended-nd":
        # A block that wraps around an axis whose length is not a multiple
        # of the block size scrambles the sub-grid membership seen by every
        # other axis, so the per-axis routing above can miss it.  Scan the
        # thin wrap slabs of such axes directly (at most (m_i - 1) * area /
        # L_i encodes per axis).
        seen = set(itertools.product(*axis_cands))
        for axis in range(params.n):
            if L[axis] % params.m[axis] == 0:
                continue
            ranges = [range(L[k]) for k in range(params.n)]
            ranges[axis] = range(L[axis] - params.m[axis] + 1, L[axis])
            for x in itertools.product(*ranges):
                if x not in seen and encode(cmap, x) == w:
                    matches.append(x)
                    seen.add(x)
    if not matches:
        raise NotACodeword("verify", "no candidate tag reproduces the codeword")
    if len(matches) > 1:
        raise AssertionError(f"ambiguous decode: {matches}")
    return DecodeResultND(tag=matches[0], per_axis=tuple(diags))


def _fresh_axis_position(params, L, axis: int, fresh_Js) -> int | None:
    """Axis position implied by which boundary sub-grids show fresh factors.

    A block at x_i = (R-1)m + j covers bands (R-1, R) and shows fresh
    factors for offsets j..m-1 (a suffix); at x_i = (R-2)m + j, j >= 1,
    for offsets 0..j-1 (a prefix).  R = L_i / m_i.
    """
    m_i = params.m[axis]
    R = L[axis] // m_i
    for J in fresh_Js:
        if any(J[k] != 0 for k in range(params.n) if k != axis):
            return None
    ks = sorted({J[axis] for J in fresh_Js})
    if ks == list(range(ks[0], m_i)):  # suffix -> band R-1
        return (R - 1) * m_i + ks[0]
    if ks == list(range(0, len(ks))):  # prefix -> band R-2
        return (R - 2) * m_i + len(ks)
    return None


# ---------------------------------------------------------------------------
# Erasure decoding (1D unitary)


def erasure_decode(cmap: ColorMap, partial) -> ErasureResult:
    """Locate a block from a partial codeword with e colors erased.

    The map must be a 1D unitary braid map or a restriction of one.  The
    survivors pin j modulo g*lcm of their q's for each block-offset
    hypothesis; all matching tags are returned along with the spread
    (max pairwise cyclic distance) of the candidate set.
    """
    kind = (cmap.params or {}).get("kind")
    if kind == "braid1d":
        base = cmap.params
    elif kind == "restricted":
        base = cmap.params["base"]
    else:
        raise ValueError("erasure decoding requires a unitary braid map or restriction")
    if any(p != 1 for p in base["parts"]):
        raise ValueError("erasure decoding requires a unitary map")
    (M_r,) = cmap.grid.dims
    m = len(base["parts"])
    g = base["g"]
    q = tuple(base["q"])
    gens = base["gens"]
    partial = canonical(partial)
    if not partial or len(partial) > m:
        raise NotACodeword("palette-split", "partial codeword size out of range")

    sub_of = {e.id: e.subgrid[0] for e in cmap.palette if e.subgrid is not None}
    survivors: dict[int, int] = {}
    for cid in partial:
        if cid not in sub_of:
            raise NotACodeword("palette-split", f"unknown color id {cid}")
        i = sub_of[cid]
        if i in survivors:
            raise NotACodeword("palette-split", f"sub-grid {i} appears twice")
        pos = gens[i]["colors"].index(cid)
        survivors[i] = pos

    part_counter = Counter(partial)

    def contains(tag: int) -> bool:
        full = Counter(encode(cmap, (tag,)))
        return all(full[cid] >= n for cid, n in part_counter.items())

    cands: set[int] = set()
    for r in range(m):
        residues, moduli = [], []
        for i, alpha in survivors.items():
            inc = 1 if i < r else 0
            gq = g * q[i]
            residues.append((alpha - inc) % gq)
            moduli.append(gq)
        j0 = generalized_crt(residues, moduli)
        if j0 is None:
            continue
        step = math.lcm(*moduli)
        j = j0
        while j * m + r < M_r:
            if contains(j * m + r):
                cands.add(j * m + r)
            j += step
    # wrapped boundary tags of restricted maps are checked directly
    for t in range(max(0, M_r - m + 1), M_r):
        if contains(t):
            cands.add(t)

    if not cands:
        raise NotACodeword("erasure", "no tag contains the partial codeword")
    ordered = tuple(sorted(cands))
    spread = 0
    for a in ordered:
        for b in ordered:
            if a < b:
                d = min(b - a, M_r - (b - a))
                spread = max(spread, d)
    return ErasureResult(candidates=ordered, resolution=spread)
