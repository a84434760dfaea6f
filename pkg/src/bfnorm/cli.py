"""Command-line front end: analyze, normality, flats, table, walsh, search, batch.

Every run prints a '#'-prefixed effective-configuration line to stderr so
results are reproducible from the output alone.  Exit codes: 0 success,
1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import search, spectra
from .core import (BoolFun, DegreeBand, anf_to_truth_table, degree, format_anf,
                   parse_anf, valuation)
from .reldeg import (classify_normality_naive, classify_normality_paired,
                     normality_dimension)
from .subspace import build_flat_table, load_flat_table, save_flat_table

TABLE_DIR_ENV = "BFNORM_TABLE_DIR"


def _config_line(args) -> None:
    items = {k: v for k, v in sorted(vars(args).items())
             if k != "func" and v is not None}
    print("# bfnorm " + " ".join(f"{k}={v}" for k, v in items.items()), file=sys.stderr)


def _input_function(args) -> BoolFun:
    if getattr(args, "anf", None) is not None:
        return anf_to_truth_table(parse_anf(args.anf, args.m))
    if getattr(args, "hex", None) is not None:
        return BoolFun.from_hex(args.hex, args.m)
    raise ValueError("provide a function with --anf or --hex")


def _get_table(m: int, r: int, table_dir: str | None):
    """Load an (m, r) table from the table directory, building and caching it there."""
    if table_dir:
        path = os.path.join(table_dir, f"flats_m{m}_r{r}.bflt")
        if os.path.exists(path):
            return load_flat_table(path)
        table = build_flat_table(m, r)
        os.makedirs(table_dir, exist_ok=True)
        save_flat_table(table, path)
        return table
    return build_flat_table(m, r)


def cmd_analyze(args) -> int:
    f = _input_function(args)
    a = f.anf()
    try:
        val = str(valuation(f))
    except ValueError:
        val = "-"
    print(f"m: {f.m}")
    print(f"degree: {degree(f)}")
    print(f"valuation: {val}")
    print(f"weight: {f.weight()}")
    print(f"monomials: {a.coeffs.bit_count()}")
    print(f"anf: {format_anf(a)}")
    print(f"hex: {f.to_hex()}")
    return 0


def cmd_normality(args) -> int:
    f = _input_function(args)
    r = normality_dimension(f.m)
    table_dir = args.table_dir or os.environ.get(TABLE_DIR_ENV)
    table_r = _get_table(f.m, r, table_dir) if args.method in ("naive", "both") else None
    reports = {}
    if args.method in ("naive", "both"):
        reports["naive"] = classify_normality_naive(f, table_r)
    if args.method in ("paired", "both"):
        reports["paired"] = classify_normality_paired(
            f, _get_table(f.m, r - 1, table_dir), table_r)
    if args.method == "both" and reports["naive"].status != reports["paired"].status:
        raise RuntimeError(f"classifier disagreement: naive={reports['naive'].status} "
                           f"paired={reports['paired'].status}")
    for name, rep in reports.items():
        print(f"{name}: {rep}")
        record = search._report_record("inline", f, rep)
        record["method"] = name
        print(json.dumps(record))
    return 0


def cmd_flats(args) -> int:
    table = build_flat_table(args.m, args.r, cap=args.cap)
    save_flat_table(table, args.out)
    print(f"spaces: {table.n_spaces}")
    print(f"cosets_per_space: {table.cosets_per_space}")
    print(f"flats: {table.n_flats}")
    print(f"file: {args.out}")
    return 0


def cmd_table(args) -> int:
    if not args.exhaustive_m5:
        raise ValueError("nothing to do: pass --exhaustive-m5")
    entries = search.exhaustive_m5_rows()
    for r in (3, 2):
        row = {e.k: e.value for e in entries if e.r == r}
        cells = " ".join(str(row[k]) for k in sorted(row))
        print(f"max deg_{r} by degree k=1..5: {cells}")
    for entry in entries:
        print(entry.to_json())
    return 0


def cmd_walsh(args) -> int:
    f = _input_function(args)
    spectrum = spectra.walsh_transform(f)
    if args.summary:
        print(json.dumps({str(v): c
                          for v, c in sorted(spectrum.multiplicities().items())}))
    else:
        print("[" + ", ".join(str(int(v)) for v in spectrum.values) + "]")
    if args.bent:
        print(f"bent: {'true' if spectra.is_bent(f) else 'false'}")
    if args.dual:
        d = spectra.dual_bent(f)
        print(f"dual_anf: {format_anf(d.anf())}")
        print(f"dual_hex: {d.to_hex()}")
    return 0


def _parse_band(text: str) -> DegreeBand:
    try:
        s, t = text.split(":")
        return DegreeBand(int(s), int(t))
    except (ValueError, TypeError):
        raise ValueError(f"band must look like 's:t', got {text!r}") from None


def _parse_permutation(text: str | None, m: int):
    if text is None:
        return None
    perm = tuple(int(p) for p in text.split(","))
    if len(perm) != m:
        raise ValueError(f"permutation needs {m} entries, got {len(perm)}")
    return perm


def cmd_search(args) -> int:
    band = _parse_band(args.band)
    table_dir = args.table_dir or os.environ.get(TABLE_DIR_ENV)
    if args.flat_table:
        table = load_flat_table(args.flat_table)
    else:
        table = _get_table(args.m, args.r, table_dir)
    bases = None
    if args.base_file:
        permute = _parse_permutation(args.permute, args.m)
        bases = [f for _, f in search.iter_function_file(args.base_file, args.format,
                                                         args.m, permute)]
    entry = search.random_lower_bound(args.m, args.r, band, args.trials, args.seed,
                                      table, bases=bases, threads=args.threads)
    print(entry.to_json())
    return 0


def cmd_batch(args) -> int:
    dims = [int(d) for d in args.dims.split(",")] if args.dims else []
    permute = _parse_permutation(args.permute, args.m)
    table_dir = args.table_dir or os.environ.get(TABLE_DIR_ENV)
    rdim = normality_dimension(args.m)
    needed = set(dims)
    if args.method in ("naive", "both"):
        needed.add(rdim)
    if args.method in ("paired", "both"):
        needed.update((rdim - 1, rdim))
    tables = {r: _get_table(args.m, r, table_dir) for r in sorted(needed)}

    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout

    def emit(record):
        print(json.dumps(record), file=out)

    try:
        dist, _ = search.scan_file(args.file, args.format, args.m, dims, tables,
                                   permute=permute, method=args.method,
                                   threads=args.threads, on_report=emit)
    finally:
        if args.out:
            out.close()
    summary = {"processed": dist.processed,
               "histogram": {str(r): dist.row(r) for r in sorted(dist.counts)}}
    print(json.dumps(summary), file=sys.stderr if not args.out else sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bfnorm",
        description="Degree, normality and Walsh analysis of Boolean functions")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_function_args(p):
        p.add_argument("--anf", help="function as ANF text, e.g. 'x1*x3 + x2'")
        p.add_argument("--hex", help="function as a hex truth table")
        p.add_argument("-m", type=int, required=True, help="number of variables")

    p = sub.add_parser("analyze", help="degree, valuation, weight, canonical forms")
    add_function_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("normality", help="classify Normal/WeaklyNormal/Abnormal")
    add_function_args(p)
    p.add_argument("--method", choices=("naive", "paired", "both"), default="both")
    p.add_argument("--table-dir", help=f"flat-table cache dir (default ${TABLE_DIR_ENV})")
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("flats", help="build and save a flat table")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--cap", type=int, default=1 << 26)
    p.set_defaults(func=cmd_flats)

    p = sub.add_parser("table", help="exhaustive 5-variable table rows")
    p.add_argument("--exhaustive-m5", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("walsh", help="Walsh spectrum, bentness, dual")
    add_function_args(p)
    p.add_argument("--bent", action="store_true", help="print bentness verdict")
    p.add_argument("--dual", action="store_true", help="print the dual bent function")
    p.add_argument("--summary", action="store_true", help="value->multiplicity summary")
    p.set_defaults(func=cmd_walsh)

    p = sub.add_parser("search", help="randomized lower bound for max deg_r")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--band", required=True, help="monomial size band 's:t'")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flat-table", help="path to a prebuilt .bflt table")
    p.add_argument("--table-dir")
    p.add_argument("--base-file", help="file of base functions to add samples to")
    p.add_argument("--format", choices=("anf", "hex"), default="anf")
    p.add_argument("--permute", help="variable permutation applied to --base-file input")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("batch", help="classify a file of functions, JSON-lines out")
    p.add_argument("--file", required=True)
    p.add_argument("--format", choices=("anf", "hex"), default="anf")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--dims", default="", help="comma-separated r values to histogram")
    p.add_argument("--method", choices=("naive", "paired", "both"), default="paired")
    p.add_argument("--permute", help="variable permutation p1,...,pm applied on input")
    p.add_argument("--out", help="write records here instead of stdout")
    p.add_argument("--table-dir")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _config_line(args)
    try:
        return args.func(args)
    except (ValueError, OverflowError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
