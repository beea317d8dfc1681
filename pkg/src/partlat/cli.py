"""Command line entry point ``partlat``.

Exit status: 0 on success or a valid certificate, 1 when a verification
fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import combinatorics as comb
from .errors import PartlatError, ParseError, ProtocolError, ShapeError
from .partition import (LatticeShape, distance, from_canonical, to_canonical,
                        tuple_from_text, tuple_to_text)

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _shape(text):
    try:
        return LatticeShape.parse(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit_checks(cert, out, quiet=False):
    if not quiet:
        for line in cert.lines():
            print(line, file=out)
    else:
        print(cert.lines()[-1], file=out)
    return OK if cert.valid else FAIL


def _read_tuples(path, shape):
    with open(path, encoding="utf-8") as fh:
        rows = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    return [tuple_from_text(r, shape) for r in rows]


# -- subcommands --------------------------------------------------------------------

def cmd_tables(args, out):
    extra = () if args.no_extra else comb.TABLE7_COLUMNS
    out.write(comb.render_tables(args.max_n, args.format, extra))
    return OK


def cmd_zadori(args, out):
    from .genset import closure
    from .zadori import build_config, verify_lemma
    if args.n < 5:
        raise UsageError(f"--n must be at least 5, got {args.n}")
    config = build_config(args.n)
    if args.emit_config or not args.verify:
        for name, x in zip(("alpha", "beta", "gamma", "delta"), config.quadruple):
            print(f"{name} {to_canonical(x)}", file=out)
    if args.verify == "certificate":
        return _emit_checks(verify_lemma(args.n), out, args.quiet)
    if args.verify == "closure":
        res = closure(config.quadruple, early_exit=False)
        ok = res.generating and res.closure_size == comb.bell(args.n)
        print(f"CHECK closure_size {res.closure_size} {'PASS' if ok else 'FAIL'}", file=out)
        print(f"RESULT {'VALID' if ok else 'INVALID'}", file=out)
        return OK if ok else FAIL
    return OK


def cmd_gen4(args, out):
    from .genset import closure
    from .power import (build_theorem1_generators, build_theorem2_generators,
                        verify_theorem1, verify_theorem2)
    if args.theorem == 1:
        if args.n < 5:
            raise UsageError(f"the --theorem 1 construction needs --n >= 5, got {args.n}")
        quad, plan = build_theorem1_generators(args.n, args.t, args.all)
    else:
        if args.n < 7:
            raise UsageError(f"the (1+1+2) construction needs --n >= 7, got {args.n}")
        if args.t is not None:
            raise UsageError("--t applies to --theorem 1 only")
        quad, plan = build_theorem2_generators(args.n)
    t = len(quad[0])
    print(f"SHAPE P{args.n}^{t}", file=out)
    if args.emit:
        for name, x in zip(("alpha", "beta", "gamma", "delta_hat"), quad):
            print(f"{name} {tuple_to_text(x)}", file=out)
    status = OK
    if args.verify in ("certificate", "both"):
        cert = verify_theorem1(args.n, t, args.all) if args.theorem == 1 else verify_theorem2(args.n)
        if args.emit:
            for i, j, rel in cert.order_type:
                print(f"ORDER {i} {j} {rel}", file=out)
        status = max(status, _emit_checks(cert, out, args.quiet))
    if args.verify in ("closure", "both"):
        res = closure(quad, limit=args.limit)
        if res.limit_hit and not res.generating:
            print(f"CHECK closure - FAIL (limit {args.limit} reached)", file=out)
            status = FAIL
        else:
            print(f"CHECK closure - {'PASS' if res.generating else 'FAIL'}", file=out)
            status = max(status, OK if res.generating else FAIL)
    return status


def cmd_closure(args, out):
    from .genset import closure
    gens = _read_tuples(args.gens, args.shape)
    if not gens:
        raise UsageError("generator file is empty")
    res = closure(gens, limit=args.limit, early_exit=not args.full)
    print(f"atoms_covered {res.atoms_covered}", file=out)
    if res.closure_size is not None:
        print(f"closure_size {res.closure_size}", file=out)
    if res.limit_hit:
        print(f"limit_hit {args.limit}", file=out)
    verdict = "yes" if res.generating else ("unknown" if res.limit_hit else "no")
    print(f"GENERATING {verdict}", file=out)
    return OK if res.generating else FAIL


def cmd_sample(args, out):
    from .genset import CSV_HEADER, sample_generating_fraction
    rep = sample_generating_fraction(args.n, args.size, args.samples, args.seed, args.workers)
    if args.csv:
        print(CSV_HEADER, file=out)
        print(rep.csv_row(), file=out)
    else:
        print(f"n={rep.n} size={rep.subset_size} samples={rep.samples} found={rep.found} "
              f"fraction={rep.fraction:.4f} seed={rep.seed}", file=out)
    return OK


def cmd_distance(args, out):
    if ";" in args.x or ";" in args.y:
        x, y = tuple_from_text(args.x), tuple_from_text(args.y)
    else:
        x, y = from_canonical(args.x, args.n), from_canonical(args.y, args.n)
    print(distance(x, y), file=out)
    return OK


def cmd_term(args, out):
    from .rng import XorShift64Star
    from .terms import evaluate, occurrences, operation_count, parse_term, random_term, serialize_term
    if args.action == "random":
        t = random_term(args.p, args.steps, XorShift64Star(args.seed), args.policy)
        print(serialize_term(t), file=out)
        return OK
    t = parse_term(args.term)
    if args.action == "stats":
        print(f"operations {operation_count(t)}", file=out)
        print(f"occurrences {occurrences(t)}", file=out)
        return OK
    # eval
    if args.secret:
        from .auth import read_secret
        values = read_secret(args.secret).s
    else:
        values = [tuple_from_text(a) for a in args.args]
    result = evaluate(t, values)
    print(tuple_to_text(result), file=out)
    return OK


def cmd_auth(args, out):
    from . import auth
    if args.auth_cmd == "keygen":
        secret = auth.make_secret(args.shape, args.p, args.seed, args.mode)
        if args.check:
            cert = secret.generating_certificate()
            if cert is not None and not cert.valid:
                print("RESULT INVALID", file=out)
                return FAIL
        if args.out == "-":
            out.write(secret.to_text())
        else:
            auth.write_secret(secret, args.out)
            print(f"wrote {args.out} ({secret.shape}, p={secret.p})", file=out)
        return OK
    secret = auth.read_secret(args.secret)
    if args.auth_cmd == "serve":
        if args.stdio:
            v = auth.VerifierSession(secret, args.q, args.steps, args.seed, args.max_retries)
            status = auth.serve_stdio(v)
            return OK if status == "OK" else FAIL
        host, port = auth.parse_address(args.listen)
        with auth.make_server(secret, host, port, args.q, args.steps, args.seed,
                              args.max_retries) as server:
            print(f"listening on {host}:{server.server_address[1]}", file=sys.stderr, flush=True)
            if args.sessions:
                for _ in range(args.sessions):
                    server.handle_request()
            else:
                server.serve_forever()
        return OK
    if args.auth_cmd == "prove":
        host, port = auth.parse_address(args.connect)
        prover = auth.ProverSession(secret, args.q, args.D, args.max_retries)
        status = auth.prove_tcp(prover, host, port)
        print(f"RESULT {status}", file=out)
        return OK if status == "OK" else FAIL
    if args.auth_cmd == "commit":
        w = auth.make_challenge(secret.p, args.q, args.steps, args.seed, secret=secret)
        record = auth.commit(secret, w)
        if args.out == "-":
            out.write(record.to_text())
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(record.to_text())
            print(f"wrote {args.out}", file=out)
        return OK
    if args.auth_cmd == "verify":
        with open(args.record, encoding="utf-8") as fh:
            record = auth.CommitRecord.from_text(fh.read(), secret.shape)
        ok = auth.verify_commit(record, secret)
        print(f"RESULT {'VALID' if ok else 'INVALID'}", file=out)
        return OK if ok else FAIL
    raise UsageError(f"unknown auth command {args.auth_cmd}")


# -- parser ---------------------------------------------------------------------------

class _Sub:
    """Subparser factory that adds the common options to every parser."""

    def __init__(self, action, common):
        self.action = action
        self.common = common

    def add_parser(self, name, **kw):
        return self.action.add_parser(name, parents=[self.common], **kw)


def build_parser():
    p = argparse.ArgumentParser(prog="partlat", description="Generating sets of partition lattices and their powers.")
    p.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    p.add_argument("-q", "--quiet", action="store_true", help="print only summary lines")
    # the same options after the subcommand, without clobbering earlier values
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS)
    sub = _Sub(p.add_subparsers(dest="command", required=True), common)

    s = sub.add_parser("tables", help="maxS(n), m(n) and m-hat(n) tables")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--format", choices=("text", "csv"), default="text")
    s.add_argument("--no-extra", action="store_true", help="omit the n = 97..100, 2020 rows")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("zadori", help="four-generating configuration of Part(n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--verify", choices=("certificate", "closure"))
    s.add_argument("--emit-config", action="store_true")
    s.set_defaults(func=cmd_zadori)

    s = sub.add_parser("gen4", help="four-element generating sets of Part(n)^t")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--theorem", type=int, choices=(1, 2), default=1)
    s.add_argument("--verify", choices=("certificate", "closure", "both"))
    s.add_argument("--emit", action="store_true")
    s.add_argument("--all", action="store_true", help="allow full m(n) for n >= 15")
    s.add_argument("--limit", type=int, default=5_000_000)
    s.set_defaults(func=cmd_gen4)

    s = sub.add_parser("closure", help="sublattice generated by tuples read from a file")
    s.add_argument("--shape", type=_shape, required=True)
    s.add_argument("--gens", required=True)
    s.add_argument("--limit", type=int, default=5_000_000)
    s.add_argument("--full", action="store_true", help="run to the fixpoint instead of stopping at atom cover")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("sample", help="fraction of random subsets that generate Part(n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--samples", type=int, required=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("distance", help="Hasse-diagram distance of two partitions or tuples")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("term", help="random terms, statistics and evaluation")
    tsub = _Sub(s.add_subparsers(dest="action", required=True), common)
    r = tsub.add_parser("random")
    r.add_argument("--p", type=int, default=8)
    r.add_argument("--steps", type=int, default=1000)
    r.add_argument("--policy", choices=("uniform", "depth"), default="uniform")
    r = tsub.add_parser("stats")
    r.add_argument("term")
    r = tsub.add_parser("eval")
    r.add_argument("term")
    r.add_argument("args", nargs="*", help="argument tuples in text form")
    r.add_argument("--secret", help="take the arguments from a secret file")
    s.set_defaults(func=cmd_term)

    s = sub.add_parser("auth", help="challenge-response authentication")
    asub = _Sub(s.add_subparsers(dest="auth_cmd", required=True), common)
    a = asub.add_parser("keygen")
    a.add_argument("--shape", type=_shape, required=True)
    a.add_argument("--p", type=int, default=8)
    a.add_argument("--mode", choices=("permute-zadori", "permute-theorem1"), default=None)
    a.add_argument("--check", action="store_true", help="certify the permuted quadruple")
    a.add_argument("--out", required=True)
    for name in ("serve", "prove", "commit", "verify"):
        a = asub.add_parser(name)
        a.add_argument("--secret", required=True)
        if name in ("serve", "prove", "commit"):
            a.add_argument("--q", type=int, default=8)
        if name in ("serve", "commit"):
            a.add_argument("--steps", type=int, default=1000)
        if name in ("serve", "prove"):
            a.add_argument("--max-retries", type=int, default=16 if name == "serve" else 8)
        if name == "serve":
            g = a.add_mutually_exclusive_group(required=True)
            g.add_argument("--listen")
            g.add_argument("--stdio", action="store_true")
            a.add_argument("--sessions", type=int, default=0, help="stop after this many connections")
        if name == "prove":
            a.add_argument("--connect", required=True)
            a.add_argument("--D", type=int, help="quality threshold (default scales with the shape)")
        if name == "commit":
            a.add_argument("--out", default="-")
        if name == "verify":
            a.add_argument("--record", required=True)
    s.set_defaults(func=cmd_auth)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "auth_cmd", None) == "keygen" and args.mode is None:
        args.mode = "permute-zadori" if args.shape.t == 1 else "permute-theorem1"
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.error(str(exc))
    except (PartlatError, ValueError, ProtocolError, ShapeError, OSError) as exc:
        print(f"partlat: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
