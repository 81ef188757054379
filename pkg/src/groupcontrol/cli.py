"""Command-line front end.

Exit codes: 0 success (YES / ALREADY_QUALIFIED / witness accepted),
1 negative answer (NO / IMMUNE / witness rejected), 2 any error.
Indices are 0-based everywhere.
"""

import argparse
import csv
import random
import sys
import time
from pathlib import Path

from . import formats, reductions, solvers
from .errors import GroupControlError, InputError, ResourceLimitError
from .instances import Outcome, Problem, require_strict, verify
from .random_gen import random_instance
from .rules import evaluate, full, members

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2

BENCH_COLUMNS = ("instance", "problem", "rule", "solver", "outcome", "witness", "wall_time_s")
BENCH_STRATEGIES = (
    solvers.Strategy.IMMUNITY,
    solvers.Strategy.POLY_THM3,
    solvers.Strategy.POLY_THM8,
    solvers.Strategy.FPT_ILP,
    solvers.Strategy.BRUTE_FORCE,
)
INSTANCE_SUFFIX = ".gi"


def _q(value, default):
    return default if value is None else value


# reduction kinds: (expected source type, builder taking (src, args))
REDUCTIONS = {
    "rx3c-gcai": (reductions.Rx3cInstance, lambda src, a: reductions.rx3c_to_gcai_consent(src, _q(a.s, 2), _q(a.t, 1))),
    "rx3c-gcdi": (reductions.Rx3cInstance, lambda src, a: reductions.rx3c_to_gcdi_consent(src, _q(a.s, 1), _q(a.t, 3))),
    "rx3c-gcai-lsr": (reductions.Rx3cInstance, lambda src, a: reductions.rx3c_to_gcai_lsr(src)),
    "rx3c-gcai-csr": (reductions.Rx3cInstance, lambda src, a: reductions.rx3c_to_gcai_csr(src)),
    "cnf3-gcpi": (reductions.ThreeSatInstance, lambda src, a: reductions.threesat_to_gcpi_consent(src, _q(a.s, 1), _q(a.t, 2))),
    "lrbds-gcpi": (reductions.LrbdsInstance, lambda src, a: reductions.lrbds_to_gcpi_consent(src, _q(a.s, 3))),
    "rbds-lrbds": (reductions.RbdsInstance, lambda src, a: reductions.rbds_to_lrbds(src)),
}
SOURCE_KINDS = ("rx3c", "cnf3", "rbds", "lrbds")


def _read(path):
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load(parser, path):
    try:
        return parser(_read(path))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _fmt(m):
    return "[" + " ".join(str(i) for i in members(m)) + "]"


def _parse_indices(tokens):
    """Indices from CLI tokens; accepts '1 2', '1,2' and '[1 2]' styles."""
    out = []
    for tok in tokens:
        for part in tok.replace(",", " ").replace("[", " ").replace("]", " ").split():
            try:
                out.append(int(part))
            except ValueError:
                raise InputError(f"not an index: {part!r}") from None
    return out


# -- commands -----------------------------------------------------------------


def cmd_eval(args):
    profile = _load(formats.parse_profile, args.profile)
    rule = formats.parse_rule(args.rule)
    T = full(profile.n) if args.subset is None else _parse_indices([args.subset])
    print(_fmt(evaluate(profile, rule, T)))
    return EXIT_OK


def cmd_solve(args):
    inst = _load(formats.parse_instance, args.instance)
    if not args.lenient:
        require_strict(inst)
    verdict = solvers.solve(inst, args.strategy, max_bits=args.max_bits)
    print(verdict.format())
    return EXIT_OK if verdict.is_yes else EXIT_NO


def _random_source(args, rng):
    kind = args.source_kind
    if kind == "rx3c":
        return reductions.random_rx3c(args.kappa, rng)
    if kind == "cnf3":
        return reductions.random_3sat(args.vars, args.clauses, rng)
    if kind == "rbds":
        return reductions.random_rbds(args.red, args.blue, _q(args.k, 1), rng)
    return reductions.random_lrbds(args.red, args.blue, _q(args.k, 1), rng)


def cmd_gen(args):
    rng = random.Random(args.seed)
    if args.kind == "random":
        rule = formats.parse_rule(args.rule)
        inst = random_instance(args.problem, rule, args.n, rng, max_s=args.max_s, k=args.k)
        text = formats.serialize_instance(inst)
    elif args.kind == "random-source":
        text = formats.serialize_source(_random_source(args, rng))
    else:
        if args.source is None:
            raise InputError(f"gen {args.kind} needs a source file")
        expected, build = REDUCTIONS[args.kind]
        src = _load(formats.parse_source, args.source)
        if not isinstance(src, expected):
            raise InputError(f"gen {args.kind} needs a {expected.__name__} source")
        out = build(src, args)
        if isinstance(out, reductions.LrbdsInstance):
            text = formats.serialize_lrbds(out)
        else:
            text = formats.serialize_instance(out)
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args):
    inst = _load(formats.parse_instance, args.instance)
    U = _parse_indices(args.witness)
    ok = verify(inst, U)
    print("ACCEPT" if ok else "REJECT")
    return EXIT_OK if ok else EXIT_NO


def bench_rows(corpus_dir, max_bits=solvers.DEFAULT_MAX_BITS):
    """One row per (instance file, applicable solver), files in name order."""
    paths = sorted(Path(corpus_dir).glob("*" + INSTANCE_SUFFIX))
    if not paths:
        raise InputError(f"{corpus_dir}: no *{INSTANCE_SUFFIX} files")
    for path in paths:
        inst = _load(formats.parse_instance, str(path))
        for strategy in BENCH_STRATEGIES:
            if not solvers.applicable(inst, strategy):
                continue
            start = time.perf_counter()
            try:
                v = solvers.solve(inst, strategy, max_bits=max_bits)
                outcome, witness = v.outcome.value, v.witness
            except ResourceLimitError:
                outcome, witness = "LIMIT", None
            elapsed = time.perf_counter() - start
            if outcome == Outcome.IMMUNE.value:
                witness = None
            yield {
                "instance": path.name,
                "problem": str(inst.problem),
                "rule": str(inst.rule),
                "solver": str(strategy),
                "outcome": outcome,
                "witness": "" if witness is None else " ".join(map(str, members(witness))),
                "wall_time_s": f"{elapsed:.6f}",
            }


def cmd_bench(args):
    rows = list(bench_rows(args.corpus, args.max_bits))
    handle = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="")
    try:
        writer = csv.DictWriter(handle, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if handle is not sys.stdout:
            handle.close()
    return EXIT_OK


def cmd_ilp_dump(args):
    inst = _load(formats.parse_instance, args.instance)
    if not inst.rule.is_consent or inst.problem == Problem.GCPI:
        raise InputError("integer systems exist only for GCAI/GCDI under consent rules")
    build = solvers.gcai_system if inst.problem == Problem.GCAI else solvers.gcdi_system
    system, _ = build(inst)
    print(system.format())
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="groupcontrol", description="Group identification and control.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="print the socially qualified subset")
    p.add_argument("profile")
    p.add_argument("--rule", required=True, help="'consent S T', 'csr' or 'lsr'")
    p.add_argument("--subset", help="indices of T (default: everyone)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="decide a control instance")
    p.add_argument("instance")
    p.add_argument("--strategy", default="auto", choices=[s.value for s in solvers.Strategy])
    p.add_argument("--lenient", action="store_true", help="accept instances where S is already qualified")
    p.add_argument("--max-bits", type=int, default=solvers.DEFAULT_MAX_BITS)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate an instance or source file")
    p.add_argument("kind", choices=sorted(REDUCTIONS) + ["random", "random-source"])
    p.add_argument("source", nargs="?", help="source file for reduction kinds")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--s", type=int, help="consent quota s for reduction kinds")
    p.add_argument("--t", type=int, help="consent quota t for reduction kinds")
    p.add_argument("--problem", default="GCAI", choices=[x.value for x in Problem])
    p.add_argument("--rule", default="consent 2 2")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--max-s", type=int)
    p.add_argument("-k", type=int, help="budget (random) or label count (rbds/lrbds sources)")
    p.add_argument("--source-kind", default="rx3c", choices=SOURCE_KINDS)
    p.add_argument("--kappa", type=int, default=1)
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--clauses", type=int, default=3)
    p.add_argument("--red", type=int, default=3)
    p.add_argument("--blue", type=int, default=3)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a witness against an instance")
    p.add_argument("instance")
    p.add_argument("witness", nargs="*", help="indices of U")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run every applicable solver over a corpus, CSV out")
    p.add_argument("corpus")
    p.add_argument("-o", "--output")
    p.add_argument("--max-bits", type=int, default=solvers.DEFAULT_MAX_BITS)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("ilp-dump", help="print the integer system for a consent GCAI/GCDI instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_ilp_dump)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupControlError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
