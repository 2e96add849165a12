"""Command-line interface.

Exit codes: 0 success, 2 invalid parameters, 3 infeasible request,
4 verification failure, 5 not a codeword, 6 counterexample found.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import braid1d, braidnd, codec, core, generators, oracle

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_VERIFY_FAILED = 4
EXIT_NOT_A_CODEWORD = 5
EXIT_COUNTEREXAMPLE = 6


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CliError(EXIT_INVALID, f"expected comma-separated ints, got {text!r}")


def _load_map(path: str) -> core.ColorMap:
    try:
        with open(path) as f:
            return core.from_json(f.read())
    except (OSError, ValueError, KeyError) as e:
        raise CliError(EXIT_INVALID, f"cannot load map {path}: {e}")


def _emit(args, payload: dict, plain: str):
    if args.json:
        print(json.dumps(payload))
    else:
        print(plain)


def _write_map(args, cmap: core.ColorMap):
    text = core.to_json(cmap)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def cmd_construct(args) -> int:
    if args.qtable:
        try:
            raw = json.loads(args.qtable)
            qtable = {tuple(int(t) for t in k.split(",")): tuple(v) for k, v in raw.items()}
            params = braidnd.UnitaryBraidParamsND(m=_ints(args.block), g=args.g, qtable=qtable)
        except (ValueError, TypeError) as e:
            raise CliError(EXIT_INVALID, f"bad n-dim parameters: {e}")
        cmap = braidnd.construct_unitary_nd(params)
        if args.target:
            try:
                cmap = braidnd.extend_arbitrary_size(cmap, _ints(args.target))
            except ValueError as e:
                raise CliError(EXIT_INVALID, str(e))
        _write_map(args, cmap)
        return EXIT_OK

    M = _ints(args.dims)[0]
    parts = _ints(args.parts)
    if args.optimize or args.g is None:
        try:
            res = braid1d.optimize_generators(M, parts, klass=args.klass)
        except braid1d.InfeasibleError as e:
            raise CliError(EXIT_INFEASIBLE, str(e))
        params = res.params
    else:
        if args.q is None:
            raise CliError(EXIT_INVALID, "--q required with explicit --g")
        c = _ints(args.c) if args.c else tuple(1 for _ in parts)
        params = braid1d.BraidParams1D(M=M, parts=parts, g=args.g, c=c, q=_ints(args.q))
        errs = braid1d.validate(params)
        if errs:
            raise CliError(EXIT_INVALID, "; ".join(errs))
    try:
        cmap = braid1d.construct(params)
    except (braid1d.InfeasibleError, generators.UnsupportedGeneratorError) as e:
        raise CliError(EXIT_INFEASIBLE, str(e))
    if args.restrict:
        cmap = braid1d.restrict(cmap, args.restrict)
    elif args.modify:
        cmap = braid1d.modify_general_size(cmap, args.modify, fresh=args.fresh)
    _write_map(args, cmap)
    return EXIT_OK


def cmd_encode(args) -> int:
    cmap = _load_map(args.map)
    point = _ints(args.point)
    try:
        w = core.encode(cmap, point if cmap.grid.n > 1 else point)
    except (core.OutOfCodingAreaError, ValueError) as e:
        raise CliError(EXIT_INVALID, str(e))
    _emit(args, {"codeword": list(w)}, codec.format_codeword(w))
    return EXIT_OK


def cmd_decode(args) -> int:
    cmap = _load_map(args.map)
    w = codec.parse_codeword(args.codeword)
    kind = (cmap.params or {}).get("kind")
    try:
        if kind in ("unitary-braid-nd", "extended-nd"):
            res = codec.decode_nd(cmap, w)
            tag = res.tag
            payload = {"tag": list(tag)}
            plain = ",".join(map(str, tag))
        else:
            res = codec.decode_1d_general(cmap, w)
            tag = res.tag
            payload = {
                "tag": tag,
                "j_star": res.j_star,
                "i_star": res.i_star,
                "r_star": res.r_star,
                "a_star": res.a_star,
                "b_star": res.b_star,
                "a_vec": list(res.a_vec),
            }
            plain = str(tag)
    except codec.NotACodeword as e:
        raise CliError(EXIT_NOT_A_CODEWORD, str(e))
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e))
    if args.dump_matrices:
        try:
            base = cmap if kind == "braid1d" else codec._base_map(cmap)
            print(codec.dump_matrices(base))
        except ValueError as e:
            raise CliError(EXIT_INVALID, str(e))
    _emit(args, payload, plain)
    return EXIT_OK


def cmd_erasure_decode(args) -> int:
    cmap = _load_map(args.map)
    partial = codec.parse_codeword(args.codeword)
    try:
        res = codec.erasure_decode(cmap, partial)
    except codec.NotACodeword as e:
        raise CliError(EXIT_NOT_A_CODEWORD, str(e))
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e))
    _emit(
        args,
        {"candidates": list(res.candidates), "resolution": res.resolution},
        f"candidates={','.join(map(str, res.candidates))} resolution={res.resolution}",
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    cmap = _load_map(args.map)
    limit = None if not args.exhaustive else 10**9
    try:
        report = oracle.is_distinguishable(cmap, limit=limit)
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e))
    if report.ok:
        _emit(args, {"ok": True, "checked": report.checked}, f"ok checked={report.checked}")
        return EXIT_OK
    a, b, w = report.counterexample
    _emit(
        args,
        {"ok": False, "tags": [list(a), list(b)], "codeword": list(w)},
        f"counterexample tags={a},{b} codeword={codec.format_codeword(w)}",
    )
    return EXIT_COUNTEREXAMPLE


def cmd_optimize(args) -> int:
    M = _ints(args.dims)[0]
    parts = _ints(args.parts)
    try:
        res = braid1d.optimize_generators(M, parts, klass=args.klass)
    except braid1d.InfeasibleError as e:
        raise CliError(EXIT_INFEASIBLE, str(e))
    p = res.params
    payload = {
        "cost": res.cost,
        "costs": list(res.costs),
        "g": p.g,
        "c": list(p.c),
        "q": list(p.q),
        "ells": list(p.ells),
        "exact": res.exact,
    }
    _emit(args, payload, f"cost={res.cost} g={p.g} ells={','.join(map(str, p.ells))}")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        rows = oracle.order_bench(args.m, args.n, _ints(args.s))
    except ValueError as e:
        raise CliError(EXIT_INVALID, str(e))
    print(oracle.bench_tsv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="braidcode", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a braid code map")
    p.add_argument("--dims", help="grid size M (1D)")
    p.add_argument("--parts", help="comma-separated parts m_i (1D)")
    p.add_argument("--g", type=int)
    p.add_argument("--c", help="comma-separated c_i")
    p.add_argument("--q", help="comma-separated q_i")
    p.add_argument("--optimize", action="store_true", help="pick cheapest parameters")
    p.add_argument("--class", dest="klass", choices=["1", "2", "auto"], default="auto")
    p.add_argument("--block", help="block dims (n-dim unitary)")
    p.add_argument("--qtable", help='JSON like {"0,0": [1,3], ...} (n-dim unitary)')
    p.add_argument("--target", help="target dims L for n-dim extension")
    p.add_argument("--restrict", type=int, help="restrict 1D map to M_r points")
    p.add_argument("--modify", type=int, help="shrink 1D unitary map to M_r = J*m points")
    p.add_argument("--fresh", action="store_true", help="use a fresh color when modifying")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", help="codeword of the block at a point")
    p.add_argument("--map", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="tag of a codeword")
    p.add_argument("--map", required=True)
    p.add_argument("--codeword", required=True)
    p.add_argument("--dump-matrices", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("erasure-decode", help="locate a block from a partial codeword")
    p.add_argument("--map", required=True)
    p.add_argument("--codeword", required=True, help="surviving colors")
    p.add_argument("--erasures", type=int, default=None, help="declared erasure count")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_erasure_decode)

    p = sub.add_parser("verify", help="brute-force distinguishability check")
    p.add_argument("--map", required=True)
    p.add_argument("--exhaustive", action="store_true", help="ignore the size limit")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("optimize", help="cheapest braid parameters for (M, parts)")
    p.add_argument("--dims", required=True)
    p.add_argument("--parts", required=True)
    p.add_argument("--class", dest="klass", choices=["1", "2", "auto"], default="auto")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("bench", help="prime-window scaling table (TSV)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--s", default="1,2,3", help="comma-separated window starts")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
