"""Command-line interface.

Subcommands: params, construct, encode, corrupt, repair, correct,
distance, simulate, export-matrix.  Invalid input exits nonzero after
printing a single machine-parsable ``error=<token>`` line on stderr.
Positions are 0-based everywhere.
"""

from __future__ import annotations

import argparse
import sys

from .exceptions import FiberLRCError, InvalidParameterError


def _parse_l_range(spec: str) -> list[int]:
    """'270' -> [270]; '270..210' -> descending by 1; '270..210..10' -> by 10."""
    parts = spec.split("..")
    try:
        if len(parts) == 1:
            return [int(parts[0])]
        if len(parts) == 2:
            a, b = int(parts[0]), int(parts[1])
            step = 1
        elif len(parts) == 3:
            a, b = int(parts[0]), int(parts[1])
            step = abs(int(parts[2]))
            if step == 0:
                raise ValueError
        else:
            raise ValueError
    except ValueError:
        raise InvalidParameterError(f"bad l range {spec!r}", token="bad-l-range")
    if a <= b:
        return list(range(a, b + 1, step))
    return list(range(a, b - 1, -step))


def _param_line(code) -> str:
    loc = ",".join(str(r) for r in code.locality)
    return f"n={code.n} k={code.k} d_lower={code.d_lower} locality={loc}"


def _require_flags(args, names):
    for name in names:
        if getattr(args, name, None) is None:
            raise InvalidParameterError(f"--{name} is required for this family",
                                        token="missing-flag")


def _cmd_params(args) -> int:
    from . import families

    if args.family in ("as", "artin-schreier"):
        _require_flags(args, ("p", "h", "t"))
        for l in _parse_l_range(args.l):
            code = families.artin_schreier_parameters(
                args.p, args.h, args.t, l=l, rho=args.rho)
            print(_param_line(code))
    elif args.family == "gk":
        _require_flags(args, ("q", "N"))
        for l in _parse_l_range(args.l):
            code = families.gk_parameters(args.q, args.N, l=l, rho=args.rho)
            print(_param_line(code))
    elif args.family in ("suzuki", "suzuki-params"):
        _require_flags(args, ("q0",))
        for rep in families.suzuki_params(args.q0):
            loc = ",".join(str(r) for r in rep.locality)
            print(f"family=suzuki q0={rep.q0} q={rep.q} case={rep.case} "
                  f"n={rep.n} k={rep.k} locality={loc} "
                  f"availability={rep.availability} d_floor={rep.d_floor} "
                  f"constructed=no")
    else:
        raise InvalidParameterError(f"unknown family {args.family!r}",
                                    token="bad-family")
    return 0


def _build_from_args(args):
    from . import families

    if args.preset:
        return families.build_preset(args.preset)
    if args.family in ("as", "artin-schreier"):
        _require_flags(args, ("p", "h", "t"))
        generators = None
        if args.generators:
            try:
                generators = [int(x) for x in args.generators.split(",")]
            except ValueError:
                raise InvalidParameterError("generators must be integers",
                                            token="invalid-generators")
        return families.build_artin_schreier(
            args.p, args.h, args.t, l=_single_l(args.l), rho=args.rho,
            generators=generators)
    if args.family == "gk":
        _require_flags(args, ("q", "N"))
        return families.build_gk(args.q, args.N, l=_single_l(args.l),
                                 rho=args.rho, allow_large=args.allow_large)
    raise InvalidParameterError(f"family {args.family!r} is not constructible",
                                token="bad-family")


def _single_l(spec: str) -> int:
    values = _parse_l_range(spec)
    if len(values) != 1:
        raise InvalidParameterError("construct takes a single l", token="bad-l-range")
    return values[0]


def _cmd_construct(args) -> int:
    from . import formats

    bundle = _build_from_args(args)
    prefix = args.out
    formats.write_descriptor(f"{prefix}.code", bundle)
    formats.write_points(f"{prefix}.points", bundle)
    formats.write_partitions(f"{prefix}.partitions", bundle)
    code = bundle.descriptor
    print(f"wrote {prefix}.code {prefix}.points {prefix}.partitions "
          f"(n={code.n} k={code.k} d_lower={code.d_lower})")
    return 0


def _cmd_encode(args) -> int:
    from . import formats

    bundle = formats.load_descriptor(args.code)
    message = formats.read_symbols(args.message, q=bundle.field.q)
    if (message < 0).any():
        raise InvalidParameterError("message may not contain erasures",
                                    token="bad-token")
    codeword = bundle.encode(message)
    formats.write_symbols(args.out, codeword)
    print(f"wrote {args.out} ({bundle.n} symbols)")
    return 0


def _cmd_corrupt(args) -> int:
    from . import formats
    from .recovery import ERASED

    word = formats.read_symbols(args.infile)
    n = len(word)
    if args.erase:
        for tok in args.erase.split(","):
            i = _position(tok, n)
            word[i] = ERASED
    if args.flip:
        for spec in args.flip.split(","):
            if ":" not in spec:
                raise InvalidParameterError(f"bad flip {spec!r}", token="bad-flip")
            pos_s, val_s = spec.split(":", 1)
            i = _position(pos_s, n)
            try:
                value = int(val_s)
            except ValueError:
                raise InvalidParameterError(f"bad flip value {val_s!r}",
                                            token="bad-flip")
            if value < 0:
                raise InvalidParameterError("flip value must be >= 0",
                                            token="bad-flip")
            word[i] = value
    formats.write_symbols(args.out, word)
    print(f"wrote {args.out}")
    return 0


def _position(token: str, n: int) -> int:
    try:
        i = int(token)
    except ValueError:
        raise InvalidParameterError(f"bad position {token!r}", token="bad-position")
    if not 0 <= i < n:
        raise InvalidParameterError(f"position {i} out of range [0, {n})",
                                    token="bad-position")
    return i


def _cmd_repair(args) -> int:
    from . import formats
    from .recovery import peel_repair

    bundle = formats.load_descriptor(args.code)
    word = formats.read_symbols(args.infile, q=bundle.field.q)
    repaired, report = peel_repair(word, bundle)
    formats.write_symbols(args.out, repaired)
    if args.report:
        lines = [f"actions={len(report.actions)}",
                 f"consultations={report.consultations}",
                 "residual=" + (",".join(str(i) for i in report.residual) or "-")]
        for a in report.actions:
            helpers = ",".join(str(h) for h in a.helpers)
            lines.append(f"action position={a.position} "
                         f"partition={a.partition + 1} helpers={helpers}")
        from pathlib import Path

        Path(args.report).write_text("\n".join(lines) + "\n", encoding="utf-8")
    status = "repaired" if report.repaired else f"stuck residual={report.residual}"
    print(f"{status} consultations={report.consultations}")
    return 0 if report.repaired else 1


def _cmd_correct(args) -> int:
    from . import formats
    from .recovery import correct_single_error

    bundle = formats.load_descriptor(args.code)
    word = formats.read_symbols(args.infile, q=bundle.field.q)
    if (word < 0).any():
        raise InvalidParameterError("correct expects an erasure-free word",
                                    token="word-has-erasures")
    result = correct_single_error(word, bundle)
    formats.write_symbols(args.out, result.word)
    print(f"status={result.status}"
          + (f" position={result.position}" if result.position is not None else ""))
    return 0 if result.status != "uncorrectable" else 1


def _cmd_distance(args) -> int:
    from . import formats, verify

    bundle = formats.load_descriptor(args.code)
    budget = verify.OracleBudget(
        max_codewords=args.budget if args.budget else verify.default_budget())
    d = verify.brute_force_min_distance(bundle, budget)
    ok = verify.check_distance_bounds(bundle, d)
    print(f"d_exact={d} d_lower={bundle.descriptor.d_lower} "
          f"consistent={'true' if ok else 'false'}")
    return 0


def _cmd_simulate(args) -> int:
    from . import formats
    from .simulate import SimConfig, run_simulation

    bundle = formats.load_descriptor(args.code)
    config = SimConfig(rounds=args.rounds, seed=args.seed, policy=args.policy,
                       epsilon=args.epsilon, rate=args.rate)
    report = run_simulation(config, bundle)
    if args.report:
        from pathlib import Path

        Path(args.report).write_text(report.to_text(), encoding="utf-8")
    emp = " ".join(f"m[{e}]={v}" for e, v in sorted(report.empirical_max().items()))
    print(f"rounds={len(report.rounds)} failures={report.failures} "
          f"total_consultations={report.total_consultations} {emp}".rstrip())
    return 0


def _cmd_export_matrix(args) -> int:
    from . import formats

    bundle = formats.load_descriptor(args.code)
    formats.write_matrix(args.out, bundle.generator_matrix(), bundle.field.q)
    print(f"wrote {args.out} ({bundle.descriptor.k}x{bundle.n})")
    return 0


def _add_family_flags(sub, constructible_only=False):
    sub.add_argument("--family", default=None)
    sub.add_argument("--preset", default=None,
                     help="named instance, e.g. example-7.1 or gk-table-1")
    sub.add_argument("--p", type=int, help="characteristic (artin-schreier)")
    sub.add_argument("--h", type=int, help="half extension degree (artin-schreier)")
    sub.add_argument("--t", type=int, help="availability (artin-schreier)")
    sub.add_argument("--q", type=int, help="base prime power (gk)")
    sub.add_argument("--N", type=int, help="odd tower exponent (gk)")
    if not constructible_only:
        sub.add_argument("--q0", type=int, help="Suzuki base parameter")
    sub.add_argument("--l", default="0", help="base degree bound, or range a..b[..step]")
    sub.add_argument("--rho", type=int, default=1, help="local erasure budget")
    sub.add_argument("--generators", default=None,
                     help="comma-separated element indices (artin-schreier)")
    sub.add_argument("--allow-large", action="store_true",
                     help="lift the desk-scale field guardrail (gk)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiberlrc",
        description="Locally recoverable codes from fiber products of curves")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("params", help="print n/k/d_lower for a family")
    _add_family_flags(sp)
    sp.set_defaults(func=_cmd_params)

    sc = subs.add_parser("construct", help="build a code and write its files")
    _add_family_flags(sc, constructible_only=True)
    sc.add_argument("--out", required=True, help="output path prefix")
    sc.set_defaults(func=_cmd_construct)

    se = subs.add_parser("encode", help="encode a message file")
    se.add_argument("--code", required=True)
    se.add_argument("--message", required=True)
    se.add_argument("--out", required=True)
    se.set_defaults(func=_cmd_encode)

    sx = subs.add_parser("corrupt", help="erase and/or flip symbols")
    sx.add_argument("--in", dest="infile", required=True)
    sx.add_argument("--erase", default=None, help="comma-separated positions")
    sx.add_argument("--flip", default=None, help="pos:value[,pos:value...]")
    sx.add_argument("--out", required=True)
    sx.set_defaults(func=_cmd_corrupt)

    sr = subs.add_parser("repair", help="peel erasures in a received word")
    sr.add_argument("--code", required=True)
    sr.add_argument("--in", dest="infile", required=True)
    sr.add_argument("--out", required=True)
    sr.add_argument("--report", default=None)
    sr.set_defaults(func=_cmd_repair)

    so = subs.add_parser("correct", help="single-error detect and correct")
    so.add_argument("--code", required=True)
    so.add_argument("--in", dest="infile", required=True)
    so.add_argument("--out", required=True)
    so.set_defaults(func=_cmd_correct)

    sd = subs.add_parser("distance", help="exact minimum distance by enumeration")
    sd.add_argument("--code", required=True)
    sd.add_argument("--oracle", action="store_true",
                    help="accepted for clarity; the oracle always runs")
    sd.add_argument("--budget", type=int, default=None,
                    help="max codewords (default: LRC_DEFAULT_BUDGET or 2^24)")
    sd.set_defaults(func=_cmd_distance)

    ss = subs.add_parser("simulate", help="storage-failure repair simulation")
    ss.add_argument("--code", required=True)
    ss.add_argument("--rounds", type=int, required=True)
    ss.add_argument("--epsilon", type=int, default=None)
    ss.add_argument("--rate", type=float, default=None)
    ss.add_argument("--seed", type=int, required=True)
    ss.add_argument("--policy", default="local-peeling",
                    choices=["local-peeling", "global"])
    ss.add_argument("--report", default=None)
    ss.set_defaults(func=_cmd_simulate)

    sm = subs.add_parser("export-matrix", help="write the generator matrix")
    sm.add_argument("--code", required=True)
    sm.add_argument("--out", required=True)
    sm.set_defaults(func=_cmd_export_matrix)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FiberLRCError as exc:
        print(f"error={exc.token}", file=sys.stderr)
        return 2
    except OSError as exc:
        print("error=io-failure", file=sys.stderr)
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
