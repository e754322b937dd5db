"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 parse error, 3 internal
inconsistency (a theorem-violation trap fired), 4 cap exceeded.
"""

import argparse
import sys
from pathlib import Path

from . import io
from .algebra import Algebra, is_mtl, validate
from .bitsets import bits, mask_of
from .errors import (
    ArrowMismatch,
    CapExceeded,
    InternalInconsistency,
    ParseError,
    RlatError,
    ValidationFailed,
)
from .filters import all_filters, unit_filter
from .harness import catalog_table, run_census, run_suite
from .spectrum import (
    PrimeCollection,
    d_set,
    is_prime,
    max_filters,
    min_primes,
    min_primes_over,
    perp,
    spec,
)
from .topology import build_space, compactness, connectedness, separation


def _braces(alg: Algebra, mask: int) -> str:
    return "{" + ",".join(alg.set_names(mask)) + "}"


def _load(path: str) -> Algebra:
    return io.parse(path)


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> int:
    alg = _load(args.file)
    rep = validate(alg)  # parse already validated; keep the explicit receipt
    print(f"ok: residuated lattice with {alg.size} elements "
          f"({' '.join(alg.names)})")
    return 0 if rep.ok else 1


def cmd_filters(args) -> int:
    alg = _load(args.file)
    fl = all_filters(alg)
    if args.json:
        payload = {
            "count": len(fl),
            "filters": [io.set_names(alg, f) for f in fl],
        }
        sys.stdout.write(io.to_json(io.envelope(alg, "filters", payload)))
        return 0
    print(f"{len(fl)} filters")
    for f in fl:
        print(f"  {_braces(alg, f)}")
    return 0


def cmd_spectrum(args) -> int:
    alg = _load(args.file)
    sp, mx, mn = spec(alg), max_filters(alg), min_primes(alg)
    unit = unit_filter(alg)
    divisors = [io.set_names(alg, d_set(alg, unit, p)) for p in sp.members]
    perps = {alg.names[x]: io.set_names(alg, perp(alg, 1 << x))
             for x in range(alg.size)}
    if args.json:
        payload = {
            "spec": [io.set_names(alg, p) for p in sp.members],
            "max": [io.set_names(alg, p) for p in mx.members],
            "min": [io.set_names(alg, p) for p in mn.members],
            "divisor_sets": divisors,
            "perp": perps,
        }
        sys.stdout.write(io.to_json(io.envelope(alg, "spectrum", payload)))
        return 0
    print(f"spec ({len(sp)}):")
    for p, d in zip(sp.members, divisors):
        print(f"  {_braces(alg, p)}   D(P)={{{','.join(d)}}}")
    print(f"max ({len(mx)}):")
    for p in mx.members:
        print(f"  {_braces(alg, p)}")
    print(f"min ({len(mn)}):")
    for p in mn.members:
        print(f"  {_braces(alg, p)}")
    print("perp:")
    for x in range(alg.size):
        print(f"  {alg.names[x]}^perp = {{{','.join(perps[alg.names[x]])}}}")
    return 0


def _parse_collection(alg: Algebra, token: str) -> PrimeCollection:
    if token == "spec":
        return spec(alg)
    if token == "max":
        return max_filters(alg)
    if token == "min":
        return min_primes(alg)
    if token.startswith("minover:"):
        elems = token[len("minover:"):].split(",")
        return min_primes_over(alg, _mask_from_names(alg, elems))
    if token.startswith("list:"):
        masks = []
        for part in token[len("list:"):].split(";"):
            masks.append(_mask_from_names(alg, part.split(",")))
        for m in masks:
            if m == alg.carrier_mask or not is_prime(alg, m):
                raise RlatError(f"{_braces(alg, m)} is not a prime filter")
        ordered = tuple(sorted(set(masks), key=lambda m: (m.bit_count(), m)))
        return PrimeCollection(algebra=alg, members=ordered, kind="custom")
    raise RlatError(f"unknown collection {token!r}")


def _mask_from_names(alg: Algebra, names) -> int:
    idx = {n: i for i, n in enumerate(alg.names)}
    try:
        return mask_of(idx[n.strip()] for n in names if n.strip())
    except KeyError as exc:
        raise RlatError(f"unknown element name {exc.args[0]!r}") from None


def cmd_topology(args) -> int:
    alg = _load(args.file)
    pi = _parse_collection(alg, args.collection)
    space = build_space(pi)
    topo = space.topology(dual=args.dual)
    sep = separation(space, dual=args.dual)
    comp = compactness(space)
    conn = connectedness(space, dual=args.dual)

    def open_indices(gmask: int) -> list[int]:
        return list(bits(gmask))

    if args.json:
        payload = {
            "collection": {
                "kind": pi.kind,
                "members": [io.set_names(alg, p) for p in pi.members],
            },
            "dual": args.dual,
            "basis": [
                {"element": alg.names[b.element], "kind": b.tag,
                 "open" if b.tag == "d" else "closed": open_indices(b.members)}
                for b in topo.basis
            ],
            "opens": [open_indices(u) for u in topo.opens],
            "separation": {
                "t0": sep.t0, "t1": sep.t1, "hausdorff": sep.hausdorff,
                "normal": sep.normal, "t4": sep.t4,
            },
            "compactness": {
                "compact_h": comp.compact_h, "compact_d": comp.compact_d,
                "full": comp.full,
            },
            "connectedness": {
                "zero_dimensional": conn.zero_dimensional,
                "totally_disconnected": conn.totally_disconnected,
                "extremally_disconnected": conn.extremally_disconnected,
                "stonean": conn.stonean,
            },
        }
        sys.stdout.write(io.to_json(io.envelope(alg, "topology", payload)))
        return 0

    which = "dual hull-kernel" if args.dual else "hull-kernel"
    print(f"{which} topology on {pi.kind} "
          f"({len(pi.members)} points)")
    print("members:")
    for i, p in enumerate(pi.members):
        print(f"  [{i}] {_braces(alg, p)}")
    print("basis:")
    for b in topo.basis:
        kind = "d" if b.tag == "d" else "h"
        print(f"  {kind}({alg.names[b.element]}) = {open_indices(b.members)}")
    print("opens:")
    for u in topo.opens:
        print(f"  {open_indices(u)}")
    print(f"separation: t0={sep.t0} t1={sep.t1} hausdorff={sep.hausdorff} "
          f"normal={sep.normal} t4={sep.t4}")
    print(f"compactness: hk={comp.compact_h} dual={comp.compact_d} full={comp.full}")
    print(f"connectedness: zero_dim={conn.zero_dimensional} "
          f"totally_disconnected={conn.totally_disconnected} "
          f"extremally_disconnected={conn.extremally_disconnected} "
          f"stonean={conn.stonean}")
    return 0


def cmd_theorems(args) -> int:
    alg = _load(args.file)
    report = run_suite(alg, label=Path(args.file).stem)
    if args.json:
        payload = {
            "algebra_id": report.algebra_id,
            "checks": [
                {"id": c.check_id, "description": c.description,
                 "passed": c.passed, "witness": c.witness}
                for c in report.checks
            ],
            "summary": {
                "total": len(report.checks),
                "passed": report.passed,
                "failed": len(report.failed),
            },
        }
        sys.stdout.write(io.to_json(io.envelope(alg, "theorems", payload)))
        return 0
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        suffix = f"  [{c.witness}]" if c.witness else ""
        print(f"{mark} {c.check_id}{suffix}")
    print(f"{report.passed}/{len(report.checks)} checks passed")
    return 0


def cmd_search(args) -> int:
    records = run_census(args.size, max_count=args.max_count,
                         time_budget=args.time_budget)
    if args.census_out:
        with open(args.census_out, "w") as fh:
            for r in records:
                import json

                fh.write(json.dumps({
                    "schema": io.SCHEMA,
                    "size": r.size,
                    "index": r.index,
                    "rlat": r.encoding,
                    "counts": {"filters": r.filters, "primes": r.primes,
                               "maximal": r.maximal, "minimal": r.minimal},
                    "flags": {"mtl": r.mtl, "star": r.star,
                              "bigstar": r.bigstar, "pm": r.pm},
                    "checks": {"passed": r.checks_passed,
                               "total": r.checks_total,
                               "failed": list(r.failed_checks)},
                    "counts_source": "exhaustive enumeration by this tool",
                }, sort_keys=True) + "\n")
    if args.figures_dir:
        from .figures import census_figures

        for p in census_figures(records, args.figures_dir):
            print(f"wrote {p}")
    by_size: dict[int, list] = {}
    for r in records:
        by_size.setdefault(r.size, []).append(r)
    for n in sorted(by_size):
        rs = by_size[n]
        failing = sum(1 for r in rs if r.failed_checks)
        print(f"size {n}: {len(rs)} algebras, "
              f"{sum(r.mtl for r in rs)} prelinear, {sum(r.pm for r in rs)} "
              f"with unique maximal filters, {failing} with failing checks")
    total_failed = sorted({f for r in records for f in r.failed_checks})
    if total_failed:
        print("failing checks: " + ", ".join(total_failed))
    return 0


def cmd_export(args) -> int:
    alg = _load(args.file)
    chosen = [bool(args.dot), bool(args.rlat), bool(args.figure)]
    if sum(chosen) != 1:
        raise RlatError("choose exactly one of --dot, --rlat, --figure")
    if args.figure:
        if not args.out:
            raise RlatError("--figure needs -o/--out PATH")
        from .figures import hasse_figure, spec_figure

        render = hasse_figure if args.figure == "hasse" else spec_figure
        render(alg, args.out)
        print(f"wrote {args.out}")
        return 0
    if args.dot:
        text = io.dot_hasse(alg) if args.dot == "hasse" else io.dot_spec(alg)
    else:
        text = io.emit(alg)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


# -- dispatcher ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rlat",
        description="Finite residuated lattices: filters, spectra, and "
                    "hull-kernel topologies.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the axioms of an .rlat file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("filters", help="list every filter")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_filters)

    p = sub.add_parser("spectrum", help="prime, maximal, and minimal prime filters")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("topology", help="hull-kernel topology on a collection")
    p.add_argument("file")
    p.add_argument("--collection", required=True,
                   help="spec | max | min | minover:<elems> | list:<f1;f2;...>")
    p.add_argument("--dual", action="store_true",
                   help="report the dual topology")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_topology)

    p = sub.add_parser("theorems", help="run the verification catalog")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_theorems)

    p = sub.add_parser("search", help="enumerate algebras and sweep the catalog")
    p.add_argument("--size", type=int, required=True,
                   help="largest carrier size (census covers 2..N)")
    p.add_argument("--census-out", help="write JSON-lines records here")
    p.add_argument("--figures-dir", help="render summary figures here")
    p.add_argument("--max-count", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None,
                   help="seconds before the enumeration gives up")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("export", help="canonical .rlat, DOT graphs, or figures")
    p.add_argument("file")
    p.add_argument("--dot", choices=("hasse", "spec"))
    p.add_argument("--rlat", action="store_true")
    p.add_argument("--figure", choices=("hasse", "spec"))
    p.add_argument("-o", "--out")
    p.set_defaults(fn=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValidationFailed as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        for v in exc.report.violations:
            print(f"  {v.law} at {v.witness}: {v.detail}", file=sys.stderr)
        return 1
    except ArrowMismatch as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return 1
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 4
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except RlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():  # console script
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
