"""Command-line entry point: ``ramsey-ck4 <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coloring import ColoringFormatError, EdgeColoring, bits, parse_coloring, serialize
from .combine import PartitionInput, RejectedInput, combine
from .extract import Certificate, TheoremViolation, extract, verify_certificate
from .extremal import build_extremal, check_absence
from .kernels import SearchBudgetExceeded
from .oracles import f, ramsey_match_quads, ramsey_triangles_quads
from .rng import random_coloring
from .selftest import f_lemma_random, lemma2_exhaustive, ramsey_small
from .stress import ConfigError, StressConfig, run_stress


class UsageError(Exception):
    pass


def _csv(kind):
    def conv(text: str):
        try:
            return [kind(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated values, got {text!r}") from None

    return conv


def parse_subset(text: str) -> list[int]:
    """'1-36' or '1,3,5-9' (1-indexed) -> sorted 0-indexed vertices."""
    out: set[int] = set()
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        lo, _, hi = chunk.partition("-")
        try:
            a, b = int(lo), int(hi or lo)
        except ValueError:
            raise UsageError(f"bad subset chunk {chunk!r}") from None
        if a < 1 or b < a:
            raise UsageError(f"bad subset range {chunk!r}")
        out.update(range(a - 1, b))
    return sorted(out)


def induced(c: EdgeColoring, vertices: list[int]) -> EdgeColoring:
    if vertices and vertices[-1] >= c.order:
        raise UsageError(f"subset vertex {vertices[-1] + 1} exceeds order {c.order}")
    pos = {v: i for i, v in enumerate(vertices)}
    red = []
    for v in vertices:
        row = 0
        for w in bits(c.red[v]):
            if w in pos:
                row |= 1 << pos[w]
        red.append(row)
    return EdgeColoring(len(vertices), red)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_coloring(path: str) -> EdgeColoring:
    data = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_coloring(data)


def _fmt_quads(quads) -> str:
    return " ".join("{" + ",".join(str(v + 1) for v in q) + "}" for q in quads)


# -- subcommands --------------------------------------------------------------------

def cmd_gen_extremal(a: argparse.Namespace) -> int:
    _write(a.output, serialize(build_extremal(a.n), compact=a.compact))
    return 0


def cmd_gen_random(a: argparse.Namespace) -> int:
    if (a.N is None) == (a.n is None):
        raise UsageError("give exactly one of -N (order) or -n (order 13n-3)")
    order = a.N if a.N is not None else 13 * a.n - 3
    if order < 1:
        raise UsageError("order must be positive")
    if not 0 <= a.seed < 1 << 64:
        raise UsageError("seed must be a 64-bit unsigned integer")
    try:
        c = random_coloring(order, a.p_red, a.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(a.output, serialize(c, compact=a.compact))
    return 0


def cmd_extract(a: argparse.Namespace) -> int:
    c = _read_coloring(a.input)
    if a.n < 2 or (a.n == 2 and not a.experimental_n2):
        raise UsageError("n must be at least 3 (n=2 requires --experimental-n2)")
    mapping = list(range(c.order))
    if a.subset:
        mapping = parse_subset(a.subset)
        c = induced(c, mapping)
    if c.order != 13 * a.n - 3:
        raise UsageError(f"coloring has order {c.order}, expected 13n-3 = {13 * a.n - 3}; use --subset")
    try:
        res = extract(c, a.n, constructive=a.constructive)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        print(json.dumps(exc.bundle, indent=1, default=str), file=sys.stderr)
        return 1
    if not isinstance(res, Certificate):
        print(f"unresolved: {res.reason}", file=sys.stderr)
        return 1
    cert = Certificate(
        res.color,
        tuple(mapping[v] for v in res.support),
        [tuple(mapping[v] for v in q) for q in res.quads],
        res.case,
    )
    _write(a.cert_out, cert.to_json())
    print(f"{cert.color.value} certificate via {cert.case}: {_fmt_quads(cert.quads)}", file=sys.stderr)
    return 0


def cmd_verify_cert(a: argparse.Namespace) -> int:
    c = _read_coloring(a.input)
    try:
        cert = Certificate.from_json(Path(a.cert).read_text())
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read certificate: {exc}") from None
    verdict = verify_certificate(c, cert, a.n)
    if verdict:
        print("certificate OK")
        return 0
    print(f"certificate REJECTED: {verdict.reason}")
    return 1


def cmd_check_absence(a: argparse.Namespace) -> int:
    c = _read_coloring(a.input)
    res = check_absence(c, a.n)
    if res:
        print(f"no monochromatic connected {a.n}K4 (order {c.order})")
        return 0
    comp = ",".join(str(v + 1) for v in sorted(res.component or ()))
    print(f"found {res.color.value} component {{{comp}}} with {a.n} disjoint K4: {_fmt_quads(res.witness or [])}")
    return 1


def cmd_stress(a: argparse.Namespace) -> int:
    cfg = StressConfig(a.n, a.trials, a.seed, tuple(a.p_red), a.jobs, a.constructive)
    try:
        summary = run_stress(cfg)
    except ConfigError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(summary.report())
    lat = summary.latency()
    print("latency " + " ".join(f"{k}={v * 1000:.1f}ms" for k, v in lat.items()), file=sys.stderr)
    if a.summary_out:
        Path(a.summary_out).write_text(summary.to_json(with_timing=a.with_timing))
    return 0 if summary.passed else 1


def cmd_combine(a: argparse.Namespace) -> int:
    try:
        g = combine(PartitionInput(a.n, sorted(a.parts, reverse=True)))
    except RejectedInput as exc:
        raise UsageError(f"rejected input: {exc}") from None
    print(g)
    return 0


def cmd_oracle(a: argparse.Namespace) -> int:
    try:
        if a.which == "f":
            print(f(a.k, a.u))
        elif a.which == "rm":
            print(ramsey_match_quads(a.m, a.k))
        else:
            print(ramsey_triangles_quads(a.m, a.k))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return 0


def cmd_selftest(a: argparse.Namespace) -> int:
    reports = []
    if a.which in ("lemma2", "all"):
        reports.append(lemma2_exhaustive())
    if a.which in ("f-lemma", "all"):
        reports.append(f_lemma_random())
    if a.which in ("ramsey-small", "all"):
        rep, detail = ramsey_small()
        reports.append(rep)
        print(f"ramsey-small: star subgraphs generated={detail.generated} distinct nu<=1 graphs={detail.distinct}")
    for r in reports:
        print(r.line())
        for msg in r.failures[:10]:
            print(f"  {msg}")
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ramsey-ck4", description="Connected nK4 certificates for 2-colorings of K_{13n-3}.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen-extremal", help="write the lower-bound coloring on 13n-4 vertices")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--compact", action="store_true", help="use the 'p eccx' hex format")
    s.set_defaults(func=cmd_gen_extremal)

    s = sub.add_parser("gen-random", help="write a seeded random coloring")
    s.add_argument("-N", type=int, help="vertex count")
    s.add_argument("-n", type=int, help="copy count; order 13n-3")
    s.add_argument("--p-red", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.add_argument("--compact", action="store_true")
    s.set_defaults(func=cmd_gen_random)

    s = sub.add_parser("extract", help="extract a monochromatic connected nK4 certificate")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--cert-out")
    s.add_argument("--experimental-n2", action="store_true")
    s.add_argument("--subset", help="1-indexed vertices to keep, e.g. 1-36 or 1,4,7-40")
    s.add_argument("--constructive", action="store_true", help="use the greedy red count instead of an exact red packing")
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("verify-cert", help="check a certificate against a coloring")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--cert", required=True)
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_verify_cert)

    s = sub.add_parser("check-absence", help="exactly check that no monochromatic connected nK4 exists")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_check_absence)

    s = sub.add_parser("stress", help="random extraction trials")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--p-red", type=_csv(float), default=[0.5])
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--constructive", action="store_true")
    s.add_argument("--summary-out")
    s.add_argument("--with-timing", action="store_true", help="include latency percentiles in the summary file")
    s.set_defaults(func=cmd_stress)

    s = sub.add_parser("combine-parts", help="group component counts into three or two heavy parts")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--parts", type=_csv(int), required=True)
    s.set_defaults(func=cmd_combine)

    s = sub.add_parser("oracle", help="closed-form values")
    osub = s.add_subparsers(dest="which", required=True)
    o = osub.add_parser("f", help="guaranteed red matching size f_k(u)")
    o.add_argument("-k", type=int, required=True)
    o.add_argument("-u", type=int, required=True)
    for name, helptext in (("rm", "R(mK2,(k+1)K4)"), ("rt", "R(mK3,(k+1)K4)")):
        o = osub.add_parser(name, help=helptext)
        o.add_argument("-m", type=int, required=True)
        o.add_argument("-k", type=int, required=True)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("selftest", help="batch self-checks")
    s.add_argument("which", choices=["lemma2", "f-lemma", "ramsey-small", "all"])
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ColoringFormatError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except SearchBudgetExceeded as exc:
        print(f"search budget exhausted: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
