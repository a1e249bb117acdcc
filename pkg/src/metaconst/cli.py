"""Command-line front end.

Four subcommands: `hilbert` prints closed-form Hilbert series and their
expansions, `kernel` computes constants degree-by-degree, `verify` runs the
built-in certification cases (or user-supplied generator sets), and
`check-series` tests a candidate constants series against a reference
through the symmetrization identity.

Exit codes: 0 success, 2 usage or parse error, 3 oracle mismatch,
4 certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constants import (CASES, GeneratorSet, kernel_dims, kernel_slice,
                        module_span_dims, run_case, SPACES)
from .grammar import ParseError, element_to_str, parse_element, parse_uv
from .metabelian import Derivation
from .series import (NiceRational, constants_series, gl2_constants_series,
                     consistency_report, hseries_free_metabelian,
                     hseries_commutator_ideal, hseries_polyuv, schur_extract,
                     specialize_total)
from . import tables

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE = 3
EXIT_CERT = 4


class OracleMismatch(Exception):
    pass


class CertificationFailure(Exception):
    pass


def _partition(text):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}")
    if any(p < 0 for p in parts) or not parts:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}")
    return parts


def _derivation(args):
    d = args.rank
    parts = args.partition
    if sum(p + 1 for p in parts) != d:
        raise ParseError(
            f"cell sizes {[p + 1 for p in parts]} do not sum to rank {d}")
    return Derivation.from_partition(parts)


def _read_lines(path):
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                yield line


def _emit(args, report, text_lines):
    if args.format == "json":
        out = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _pipeline_coeffs(d, partition, bound, space):
    """Constants dimensions predicted by the character decomposition."""
    if space == "full":
        f = hseries_free_metabelian(d)
        return gl2_constants_series(f, partition, bound).coeffs()
    if space == "commutator":
        f = hseries_commutator_ideal(d)
        return gl2_constants_series(f, partition, bound).coeffs()
    if space == "polyUV":
        h = hseries_polyuv(d, partition)
        dec = schur_extract(h.expand(bound))
        return constants_series(dec, bound).coeffs()
    return None


def cmd_hilbert(args):
    d = args.rank
    delta = _derivation(args)
    bound = args.max_degree
    free = specialize_total(hseries_free_metabelian(d))
    free_coeffs = free.expand(bound).coeffs()
    const_coeffs = _pipeline_coeffs(d, delta.partition, bound, "full")
    uv_coeffs = _pipeline_coeffs(d, delta.partition, bound, "polyUV")
    report = {
        "command": "hilbert",
        "rank": d,
        "partition": list(delta.partition),
        "max_degree": bound,
        "free_series": free.to_json(),
        "free_coeffs": free_coeffs,
        "constants_coeffs": const_coeffs,
        "polyuv_constants_coeffs": uv_coeffs,
    }
    lines = [
        f"rank {d}, cells {[p + 1 for p in delta.partition]}",
        f"algebra:             {free}",
        "coefficients:        " + ",".join(map(str, free_coeffs)),
        "constants:           " + ",".join(map(str, const_coeffs)),
        "polynomial constants: " + ",".join(map(str, uv_coeffs)),
    ]
    key = (d, delta.partition)
    closed = tables.F_CONSTANTS_Z.get(key)
    if closed is not None:
        if closed.expand(bound).coeffs() != const_coeffs:
            raise OracleMismatch(
                "built-in constants series disagrees with the character "
                f"decomposition for rank {d}, partition {delta.partition}")
        report["constants_series"] = closed.to_json()
        lines.append(f"constants closed form: {closed}")
    uv_closed = tables.UV_CONSTANTS_Z.get(key)
    if uv_closed is not None:
        if uv_closed.expand(bound).coeffs() != uv_coeffs:
            raise OracleMismatch(
                "built-in polynomial constants series disagrees with the "
                f"character decomposition for rank {d}, "
                f"partition {delta.partition}")
        report["polyuv_constants_series"] = uv_closed.to_json()
        lines.append(f"polynomial constants closed form: {uv_closed}")
    _emit(args, report, lines)
    return EXIT_OK


def cmd_kernel(args):
    d = args.rank
    delta = _derivation(args)
    bound = args.max_degree
    slices = [kernel_slice(delta, d, n, space=args.space)
              for n in range(bound + 1)]
    dims = [s.dimension for s in slices]
    report = {
        "command": "kernel",
        "rank": d,
        "partition": list(delta.partition),
        "max_degree": bound,
        "space": args.space,
        "dims": dims,
    }
    lines = [f"rank {d}, cells {[p + 1 for p in delta.partition]}, "
             f"space {args.space}",
             "dims: " + ",".join(map(str, dims))]
    expected = _pipeline_coeffs(d, delta.partition, bound, args.space)
    if expected is not None:
        report["series_dims"] = expected
        if dims != expected:
            n = next(i for i, (a, b) in enumerate(zip(dims, expected))
                     if a != b)
            raise OracleMismatch(
                f"kernel dimension {dims[n]} at degree {n} does not match "
                f"the series coefficient {expected[n]}")
        lines.append("series cross-check: ok")
    if args.reference:
        try:
            with open(args.reference) as fh:
                ref = NiceRational.loads(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            raise ParseError(f"cannot read reference series: {exc}")
        if set(ref.vars) != {"z"}:
            ref = ref.substitute(
                ("z",), {v: (1 if v == "z" else 0,) for v in ref.vars})
        ref_dims = ref.expand(bound).coeffs()
        report["reference_dims"] = ref_dims
        if dims != ref_dims:
            n = next(i for i, (a, b) in enumerate(zip(dims, ref_dims))
                     if a != b)
            raise OracleMismatch(
                f"kernel dimension {dims[n]} at degree {n} does not match "
                f"the reference coefficient {ref_dims[n]}")
        lines.append("reference cross-check: ok")
    if args.basis:
        if args.space in ("polyUV", "polyUV_omega"):
            from .grammar import polyuv_to_str as render
        else:
            render = element_to_str
        report["basis"] = [[render(v) for v in s.vectors] for s in slices]
        for s in slices:
            lines.append(f"degree {s.degree}:")
            for v in s.vectors:
                lines.append(f"  {render(v)}")
    _emit(args, report, lines)
    return EXIT_OK


def _case_report_lines(report):
    lines = [f"case {report['case']}"]
    for row in report["degrees"]:
        mark = "ok" if row["match"] else "MISMATCH"
        lines.append(f"  n={row['n']:2d}  kernel {row['kernel_dim']:5d}  "
                     f"span {row['span_dim']:5d}  {mark}")
    for rel in report["relations"]:
        mark = "holds" if rel["holds"] else "FAILS"
        lines.append(f"  {rel['name']}: {mark}")
    for note in report.get("notes", ()):
        lines.append(f"  note: {note}")
    lines.append(f"  elapsed: {report['elapsed']}s")
    return lines


def _verify_custom(args):
    import time
    start = time.monotonic()
    delta = _derivation(args)
    d = args.rank
    module_gens = [parse_element(line, d) for line in _read_lines(args.gens)]
    ring_gens = [parse_uv(line, d) for line in _read_lines(args.ring_gens)]
    bound = args.max_degree
    kernel = kernel_dims(delta, d, bound, space="commutator")
    span = module_span_dims(module_gens, ring_gens, delta, bound)
    degrees = [{"n": n, "kernel_dim": kernel[n], "span_dim": span[n],
                "match": kernel[n] == span[n]} for n in range(bound + 1)]
    return {
        "case": "custom",
        "degrees": degrees,
        "relations": [],
        "elapsed": round(time.monotonic() - start, 3),
        "ok": all(row["match"] for row in degrees),
    }


def cmd_verify(args):
    if args.case:
        report = run_case(args.case, args.max_degree)
    elif args.gens and args.ring_gens:
        report = _verify_custom(args)
    else:
        raise ParseError("verify needs --case or both --gens and --ring-gens")
    _emit(args, report, _case_report_lines(report))
    if not report["ok"]:
        for row in report["degrees"]:
            if not row["match"]:
                raise CertificationFailure(
                    f"span {row['span_dim']} != kernel {row['kernel_dim']} "
                    f"at degree {row['n']}")
        for rel in report["relations"]:
            if not rel["holds"]:
                raise CertificationFailure(f"relation {rel['name']} fails")
    return EXIT_OK


def cmd_check_series(args):
    def load(path):
        try:
            with open(path) as fh:
                return NiceRational.loads(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            raise ParseError(f"cannot read series from {path}: {exc}")

    f = load(args.candidate)
    h = load(args.reference)
    ok, mismatch = consistency_report(f, h, args.max_degree)
    report = {
        "command": "check-series",
        "max_degree": args.max_degree,
        "ok": ok,
    }
    lines = []
    if ok:
        lines.append(f"consistent up to degree {args.max_degree}")
    else:
        n, mono, got, want = mismatch
        report["mismatch"] = {"degree": n, "monomial": list(mono),
                              "got": got, "expected": want}
        lines.append(f"mismatch at z^{n}, t-monomial {mono}: "
                     f"got {got}, expected {want}")
    _emit(args, report, lines)
    if not ok:
        raise OracleMismatch(lines[-1])
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="metaconst",
        description="Constants of nilpotent derivations of free metabelian "
                    "associative algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, partition=True):
        if partition:
            p.add_argument("--rank", type=int, required=True,
                           help="number of generators")
            p.add_argument("--partition", type=_partition, required=True,
                           help="comma-separated cell parameters p1,p2,...; "
                                "cell sizes p_i+1 must sum to the rank")
        p.add_argument("--max-degree", type=int, default=8,
                       help="truncation degree (default 8)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report to a file")

    p = sub.add_parser("hilbert", help="closed-form Hilbert series")
    common(p)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("kernel", help="constants degree by degree")
    common(p)
    p.add_argument("--space", choices=SPACES, default="full")
    p.add_argument("--basis", action="store_true",
                   help="print basis elements")
    p.add_argument("--reference",
                   help="rational-series JSON file to check the "
                        "dimensions against")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("verify", help="certify generator sets and relations")
    p.add_argument("--case", choices=sorted(CASES))
    p.add_argument("--rank", type=int)
    p.add_argument("--partition", type=_partition)
    p.add_argument("--gens", help="file of module generators, one per line")
    p.add_argument("--ring-gens", dest="ring_gens",
                   help="file of u/v polynomial generators, one per line")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-series",
                       help="symmetrization consistency check")
    p.add_argument("candidate", help="bigraded constants series JSON file")
    p.add_argument("reference", help="bigraded algebra series JSON file")
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_check_series)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except CertificationFailure as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
