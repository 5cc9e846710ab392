"""Command-line interface.

Subcommands: decide, poly, certify, bounds, enum, simulate. Results go to
stdout; a one-line JSON manifest describing the invocation goes to stderr so
stdout stays clean for piping. Exit codes: 0 success, 1 usage error, 2
certificate not established.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, bounds, chains, exact, genfun, simulate, tileability
from .genfun import _int_str
from .tiles import UNIT_SQUARE, tile_from_str, tile_to_str


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"not a rational number: {text!r} ({exc})")


def _load_config(path: str) -> tileability.AvailabilityConfig:
    text = Path(path).read_text()
    head = text.lstrip()[:1]
    if head in ("{", "["):
        return tileability.AvailabilityConfig.from_json(text)
    return tileability.AvailabilityConfig.from_text(text)


def _build_parser() -> _Parser:
    top = _Parser(prog="dyadic-tilings")
    sub = top.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide tileability of a configuration")
    d.add_argument("--config", required=True, help="configuration file (text or JSON)")
    d.add_argument("--target", default="0,0,0,0", help="tile i,j,a,b (default unit square)")
    d.add_argument("--witness", action="store_true", help="print a tiling when tileable")
    d.add_argument("--tree", action="store_true", help="print the principal chain tree when blocked")
    d.add_argument("--out", choices=["text", "json"], default="text")

    p = sub.add_parser("poly", help="exact polynomials and counts")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--exact-T", type=int, metavar="N", dest="exact_t")
    g.add_argument("--genfun", type=int, metavar="N")
    g.add_argument("--count-tilings", type=int, metavar="N", dest="count_tilings")
    p.add_argument("--eval", metavar="P", help="also evaluate at a rational point")

    c = sub.add_parser("certify", help="decay-rate certificates")
    c.add_argument("--p", help="availability probability")
    c.add_argument("--q", help="removal probability (alternative to --p)")
    c.add_argument("--k", type=int, help="check exactly this index")
    c.add_argument("--k-max", type=int, dest="k_max", help="search indices up to this")
    c.add_argument("--backend", choices=["rational", "interval"], default="rational")
    c.add_argument("--bits", type=int, default=128, help="interval mantissa width")
    c.add_argument("--optimal", action="store_true", help="use the refined rate condition")
    c.add_argument("--x", help="candidate rate for --optimal")
    c.add_argument("--tol", help="bisection tolerance for --optimal rate search")
    c.add_argument("--bound", type=int, metavar="N", help="print the order-N bound")
    c.add_argument("--transcript", metavar="FILE", help="write a transcript JSON")
    c.add_argument("--verify", metavar="FILE", help="verify a transcript instead")

    b = sub.add_parser("bounds", help="closed-form bounds and map iterations")
    gb = b.add_mutually_exclusive_group(required=True)
    gb.add_argument("--uncovered", type=int, metavar="N")
    gb.add_argument("--bad", type=int, metavar="N")
    gb.add_argument("--threshold", action="store_true")
    gb.add_argument("--map", choices=list(bounds.MAP_NAMES))
    b.add_argument("--p")
    b.add_argument("--tol", default="1/1000000")
    b.add_argument("--start")
    b.add_argument("--steps", type=int, default=12)

    e = sub.add_parser("enum", help="combinatorial enumeration")
    ge = e.add_mutually_exclusive_group(required=True)
    ge.add_argument("--chain-trees", type=int, metavar="N", dest="chain_trees")
    ge.add_argument("--successors", metavar="K:I,J,A,B", help="chain order and core")
    ge.add_argument("--tilings", type=int, metavar="N")

    s = sub.add_parser("simulate", help="Monte Carlo estimation")
    s.add_argument("--n", type=int, action="append", required=True)
    s.add_argument("--p", action="append", required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--out", choices=["csv", "json"], default="csv")
    return top


def _cmd_decide(args) -> int:
    cfg = _load_config(args.config)
    target = tile_from_str(args.target)
    ok = tileability.is_tileable(target, cfg)
    witness = tree = None
    if ok and args.witness:
        witness = tileability.extract_tiling(target, cfg)
    if not ok and args.tree and target == UNIT_SQUARE:
        tree = chains.build_principal_chain_tree(cfg)
    if args.out == "json":
        print(
            json.dumps(
                {
                    "target": tile_to_str(target),
                    "tileable": ok,
                    "witness": sorted(map(tile_to_str, witness.tiles))
                    if witness
                    else None,
                    "tree": json.loads(chains.chain_tree_to_json(tree))
                    if tree
                    else None,
                }
            )
        )
        return 0
    print("tileable" if ok else "blocked")
    if witness is not None:
        for t in sorted(witness.tiles):
            print(tile_to_str(t))
    if tree is not None:
        print(chains.chain_tree_to_json(tree))
    return 0


def _cmd_poly(args) -> int:
    if args.exact_t is not None:
        poly = exact.exact_tiling_poly(args.exact_t)
        print(poly)
        if args.eval:
            v = poly(_frac(args.eval))
            print(f"{v.numerator}/{v.denominator}")
    elif args.genfun is not None:
        poly = genfun.genfun_poly(args.genfun)
        print(poly)
        if args.eval:
            x = _frac(args.eval)
            v = poly.eval(x, x)
            print(f"{v.numerator}/{v.denominator}")
    else:
        print(_int_str(exact.count_tilings(args.count_tilings)))
    return 0


def _frac_str(x: Fraction, digits: int = 60) -> str:
    if genfun.dec_digits(x.numerator) > digits or genfun.dec_digits(x.denominator) > digits:
        return f"~{x.numerator.bit_length()}bit/{x.denominator.bit_length()}bit rational"
    return f"{x.numerator}/{x.denominator}"


def _cmd_certify(args) -> int:
    if args.verify:
        obj = json.loads(Path(args.verify).read_text())
        ok, msgs = genfun.verify_transcript(obj)
        print("transcript ok" if ok else "transcript REJECTED")
        for m in msgs:
            print(f"  {m}")
        return 0 if ok else 2

    if (args.p is None) == (args.q is None):
        raise _UsageError("give exactly one of --p and --q")
    p = _frac(args.p) if args.p is not None else None
    q = 1 - p if p is not None else _frac(args.q)
    if p is None:
        p = 1 - q

    if args.optimal:
        if args.k is None:
            raise _UsageError("--optimal needs --k")
        if args.x is not None:
            cert = genfun.certify_optimal(q, args.k, _frac(args.x))
        else:
            tol = _frac(args.tol) if args.tol else Fraction(1, 10**9)
            x = genfun.optimal_rate(q, args.k, tol)
            cert = genfun.certify_optimal(q, args.k, x) if x is not None else None
    elif args.k is not None:
        cert = genfun.certify_decay(q, args.k, backend=args.backend, bits=args.bits)
    elif args.k_max is not None:
        cert = genfun.find_decay_certificate(
            q, args.k_max, backend=args.backend, bits=args.bits
        )
    else:
        raise _UsageError("give --k, --k-max, or --verify")

    if cert is None:
        print("no certificate established")
        return 2

    x = cert.rate_bound
    print(
        f"certified k={cert.k} kind={cert.kind} backend={cert.backend} "
        f"X<={float(x):.12f}"
    )
    print(f"X = {_frac_str(x)}")
    if args.bound is not None:
        v = genfun.tiling_bound(p, args.bound, cert)
        print(f"T_{args.bound}({p}) >= {_frac_str(v)} ~= {float(v):.12f}")
    if args.transcript:
        Path(args.transcript).write_text(
            json.dumps(genfun.transcript(cert, p=p), indent=2) + "\n"
        )
    return 0


def _cmd_bounds(args) -> int:
    if args.map:
        if args.start is None:
            raise _UsageError("--map needs --start")
        rep = bounds.iterate_map(
            args.map,
            _frac(args.start),
            steps=args.steps,
            p=_frac(args.p) if args.p is not None else None,
        )
        print(rep.verdict)
        for v in rep.trajectory:
            print(f"{float(v):.12g}")
        return 0
    if args.threshold:
        v = bounds.bad_square_threshold(_frac(args.tol))
        print(f"{v.numerator}/{v.denominator} ~= {float(v):.9f}")
        return 0
    if args.p is None:
        raise _UsageError("this bound needs --p")
    p = _frac(args.p)
    v = (
        bounds.expected_uncovered(args.uncovered, p)
        if args.uncovered is not None
        else bounds.expected_bad(args.bad, p)
    )
    print(f"{v.numerator}/{v.denominator} ~= {float(v):.9g}")
    return 0


def _cmd_enum(args) -> int:
    if args.chain_trees is not None:
        print(sum(1 for _ in chains.enumerate_chain_trees(args.chain_trees)))
    elif args.successors is not None:
        try:
            k_text, core_text = args.successors.split(":")
        except ValueError:
            raise _UsageError("chain spec is K:I,J,A,B")
        chain = chains.Chain(int(k_text), tile_from_str(core_text))
        scs = list(chains.enumerate_successors(chain))
        sizes: dict[int, int] = {}
        for sc in scs:
            r = len(chains.decompose(sc))
            sizes[r] = sizes.get(r, 0) + 1
        print(len(scs))
        for r in sorted(sizes):
            print(f"{r} chains: {sizes[r]} successors")
    else:
        print(_int_str(exact.count_tilings(args.tilings)))
    return 0


def _cmd_simulate(args) -> int:
    ps = [simulate.parse_p(x) for x in args.p]
    rows = simulate.sweep(args.n, ps, args.trials, seed=args.seed, threads=args.threads)
    text = simulate.to_csv(rows) if args.out == "csv" else simulate.to_json(rows)
    sys.stdout.write(text)
    return 0


_COMMANDS = {
    "decide": _cmd_decide,
    "poly": _cmd_poly,
    "certify": _cmd_certify,
    "bounds": _cmd_bounds,
    "enum": _cmd_enum,
    "simulate": _cmd_simulate,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        code = _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        _manifest(argv, ok=False)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _manifest(argv, ok=False)
        return 1
    _manifest(argv, ok=code == 0)
    return code


def _manifest(argv: list[str], ok: bool) -> None:
    print(
        json.dumps(
            {"tool": "dyadic-tilings", "version": __version__, "argv": argv, "ok": ok}
        ),
        file=sys.stderr,
    )


if __name__ == "__main__":
    sys.exit(main())
