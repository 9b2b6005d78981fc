"""Command-line driver.

    mpaz enumerate levis|endoscopic|split-seqs --n N
    mpaz verify sign-lemma|levi-preimages|fiber-bijection|commutation|lparam-partition
    mpaz lparam factor|corollary FILE --d N1,N2 [--block ID:A]
    mpaz normalize "EXPR"

Reports go to stdout (or --out) one per line. Exit status is 1 if any
report FAILs, 2 on usage errors, 0 otherwise.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from . import sweeps
from .endoscopy import EndoDatum
from .lparams import corollary_data, factorizations, parse_lparam, validate_discrete
from .opcalc import DSLSyntaxError, OpTypeError, StuckPattern, normalize, parse
from .report import FAIL, PASS, Report


def _datum(text: str) -> EndoDatum:
    try:
        a, b = (int(x) for x in text.split(","))
        return EndoDatum(a, b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected N1,N2, got {text!r}") from exc


def _block(text: str):
    try:
        rho, a = text.rsplit(":", 1)
        return rho, int(a)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected RHO_ID:A, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write reports here instead of stdout")
    common.add_argument("--format", choices=("text", "structured"), default="structured")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--timings", action="store_true", help="add per-case wall time to reports")

    ap = argparse.ArgumentParser(prog="mpaz", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    en = sub.add_parser("enumerate", help="list Levis, endoscopic data, split sequences")
    en_sub = en.add_subparsers(dest="what", required=True)
    for what in ("levis", "endoscopic", "split-seqs"):
        p = en_sub.add_parser(what, parents=[common])
        p.add_argument("--n", type=int, required=True)

    ve = sub.add_parser("verify", help="run a verification sweep")
    ve_sub = ve.add_subparsers(dest="what", required=True)
    p = ve_sub.add_parser("sign-lemma", parents=[common])
    p.add_argument("--kmax", type=int, default=8)
    p = ve_sub.add_parser("levi-preimages", parents=[common])
    p.add_argument("--nmax", "--n", dest="nmax", type=int, default=8)
    p = ve_sub.add_parser("fiber-bijection", parents=[common])
    p.add_argument("--nmax", "--n", dest="nmax", type=int, default=5)
    p.add_argument("--p", type=int, nargs="+", default=[11])
    p.add_argument("--trials", type=int, default=100)
    p = ve_sub.add_parser("commutation", parents=[common])
    p.add_argument("--nmax", "--n", dest="nmax", type=int, default=6)
    p.add_argument("--non-elliptic", action="store_true",
                   help="also run every proper ambient Levi with every datum on its tail")
    p = ve_sub.add_parser("lparam-partition", parents=[common])
    p.add_argument("--nmax", "--n", dest="nmax", type=int, default=6)
    p.add_argument("--trials", type=int, default=1000)

    lp = sub.add_parser("lparam", help="factor an L-parameter file through an endoscopic datum")
    lp_sub = lp.add_subparsers(dest="what", required=True)
    for what in ("factor", "corollary"):
        p = lp_sub.add_parser(what, parents=[common])
        p.add_argument("file")
        p.add_argument("--d", type=_datum, required=True, help="endoscopic datum n',n''")
        if what == "corollary":
            p.add_argument("--block", type=_block, required=True, help="Jordan block RHO_ID:A")

    no = sub.add_parser("normalize", parents=[common], help="normalize an operator expression")
    no.add_argument("expr")
    return ap


def _map(fn, cases, args):
    work = partial(sweeps.timed, fn, with_time=args.timings)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            return list(pool.map(work, cases, chunksize=max(1, len(cases) // (4 * args.jobs))))
    return [work(c) for c in cases]


def _lparam_reports(args, ap) -> list[Report]:
    try:
        with open(args.file) as fh:
            phi = parse_lparam(fh.read())
    except (OSError, ValueError) as exc:
        ap.error(str(exc))
    errors = validate_discrete(phi)
    if errors:
        return [Report(f"lparam.{args.what}", {"file": args.file}, FAIL, {"phi": str(phi)}, {"errors": errors})]
    if args.d.n != phi.n:
        ap.error(f"datum {args.d} has rank {args.d.n}, parameter has rank {phi.n}")
    facs = factorizations(phi, args.d)
    out = []
    for i, (fp, fpp) in enumerate(facs):
        params = {"file": args.file, "datum": str(args.d), "index": i}
        details = {"phi_p": str(fp), "phi_pp": str(fpp)}
        if args.what == "corollary":
            rho_id, a = args.block
            match = [b for b in phi.blocks if b[0].id == rho_id and b[1] == a]
            if not match:
                ap.error(f"block {rho_id}:{a} is not a Jordan block of the parameter")
            cd = corollary_data(fp, fpp, match[0])
            details.update({
                "levi_choice": list(cd.levi_choice),
                "M_bang": str(cd.M_bang) if cd.M_bang else None,
                "x": str(cd.x), "alpha": cd.alpha, "m": cd.m,
            })
        out.append(Report(f"lparam.{args.what}", params, PASS, details))
    if not facs:
        out.append(Report(f"lparam.{args.what}", {"file": args.file, "datum": str(args.d)}, PASS,
                          {"factorizations": 0}))
    return out


def collect(args, ap) -> list[Report]:
    if args.cmd == "enumerate":
        fn = {"levis": sweeps.enumerate_levis, "endoscopic": sweeps.enumerate_endoscopic,
              "split-seqs": sweeps.enumerate_split_seqs}[args.what]
        return fn(args.n)
    if args.cmd == "normalize":
        try:
            e = parse(args.expr)
        except (DSLSyntaxError, OpTypeError) as exc:
            ap.error(str(exc))
        params = {"expr": args.expr}
        try:
            nf = normalize(e)
        except StuckPattern as exc:
            return [Report("normalize", params, FAIL, {}, {"stuck": str(exc)})]
        return [Report("normalize", params, PASS, {"normal_form": str(nf), "terms": len(nf)})]
    if args.cmd == "lparam":
        return _lparam_reports(args, ap)

    what = args.what
    if what == "sign-lemma":
        return _map(sweeps.sign_lemma_case, sweeps.sign_lemma_cases(args.kmax), args)
    if what == "levi-preimages":
        return sweeps.flatten(_map(sweeps.levi_preimage_case, sweeps.levi_preimage_cases(args.nmax), args))
    if what == "fiber-bijection":
        try:
            cases = sweeps.fiber_cases(args.nmax, args.p, args.trials, args.seed)
        except ValueError as exc:
            ap.error(str(exc))
        return _map(sweeps.fiber_case, cases, args)
    if what == "commutation":
        return _map(sweeps.commutation_case, sweeps.commutation_cases(args.nmax, args.non_elliptic), args)
    if what == "lparam-partition":
        cases = sweeps.lparam_cases(args.trials, args.nmax, args.seed)
        results = [sweeps.lparam_case(c) for c in cases] if args.jobs <= 1 else _map_plain(sweeps.lparam_case, cases, args.jobs)
        return sweeps.lparam_reports(results, args.nmax)
    raise AssertionError(what)


def _map_plain(fn, cases, jobs):
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(fn, cases, chunksize=64))


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    reports = collect(args, ap)
    text = "".join(r.render(args.format) + "\n" for r in reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if any(r.status == FAIL for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
