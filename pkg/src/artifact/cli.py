"""Command line entry point: word, intersect, shorten, verify, bench."""

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bench
from .coordinates import (
    InvalidCoordinates,
    UnsupportedSurface,
    standard_pair_from_delta,
    surface_of,
    validate_delta,
)
from .intersection import CUTOVER, fast_intersection, fast_shorten, naive_intersection, shorten_curve
from .legality import enumerate_cut_disks, enumerate_standard_regions
from .mcg import WordError, dcoord, format_word, is_identity, parse_word
from .traintrack import SIGMA, TAU, crossing_sum

EXIT_OK, EXIT_NO, EXIT_ERR = 0, 1, 2


class UsageError(ValueError):
    pass


def _surface(args):
    g, b = args.surface
    return surface_of(g, b)


def _read_header(lines, args):
    """Strip an optional `surface g b` header; it overrides --surface."""
    if lines and lines[0].split()[:1] == ["surface"]:
        parts = lines[0].split()
        if len(parts) != 3:
            raise UsageError(f"bad header {lines[0]!r}")
        args.surface = (int(parts[1]), int(parts[2]))
        return lines[1:]
    return lines


def _parse_curve(line, surface):
    try:
        dv = tuple(int(x) for x in line.replace(",", " ").split())
    except ValueError:
        raise InvalidCoordinates(f"not a list of integers: {line!r}") from None
    ok, why = validate_delta(surface, dv)
    if not ok:
        raise InvalidCoordinates(why)
    return dv


def _curves(args, count):
    """Parse `count` curves; a tuple count allows any of its values."""
    if args.curves:
        lines = [ln.strip() for ln in Path(args.curves).read_text().splitlines()]
        lines = [ln for ln in lines if ln and not ln.startswith("#")]
        lines = _read_header(lines, args)
    else:
        lines = list(args.curve or [])
    allowed = count if isinstance(count, tuple) else (count,)
    if len(lines) not in allowed:
        raise UsageError(f"expected {' or '.join(map(str, allowed))} curve line(s), got {len(lines)}")
    surface = _surface(args)
    return surface, [_parse_curve(ln, surface) for ln in lines]


def cmd_word(args):
    if args.word_file:
        lines = [ln.strip() for ln in Path(args.word_file).read_text().splitlines() if ln.strip()]
        text = " ".join(_read_header(lines, args))
    elif args.word is not None:
        text = args.word
    else:
        raise UsageError("give --word or --word-file")
    surface = _surface(args)
    word = parse_word(text, exponents=True)
    intersect = naive_intersection if args.naive else fast_intersection
    result = is_identity(surface, word, intersect)
    print("identity" if result else "non-identity")
    if args.dump:
        print(f"# word: {format_word(word) or '(empty)'}")
        for row in dcoord(surface, word, intersect):
            print(" ".join(str(x) for x in row))
    return EXIT_OK if result else EXIT_NO


def cmd_intersect(args):
    surface, (da, db) = _curves(args, 2)
    wp = standard_pair_from_delta(surface, da, db)
    n = naive_intersection(wp) if args.naive else fast_intersection(wp)
    print(n)
    return EXIT_OK


def _is_identity_rule(rule):
    if rule.source != rule.target:
        return False
    return all(rows == [[int(i == j) for j in range(len(rows))] for i in range(len(rows))]
               for rows in (rule.dense(SIGMA), rule.dense(TAU)))


def cmd_shorten(args):
    surface, dvs = _curves(args, (1, 2))
    t0 = time.perf_counter()
    if len(dvs) == 1:
        end, rule = shorten_curve(surface, dvs[0], args.cutover)
    else:
        end, rule = fast_shorten(standard_pair_from_delta(surface, *dvs), args.cutover)
    elapsed = time.perf_counter() - t0
    print(f"crossing: {end.pair.is_crossing}")
    print(f"branches: {end.pair.num_branches(SIGMA)} {end.pair.num_branches(TAU)}")
    print(f"terminal weights: {' '.join(str(x) for x in end.mu)}")
    print(f"crossing sum: {crossing_sum(end)}")
    print(f"rule: {'identity' if _is_identity_rule(rule) else 'non-trivial'} size {rule.size}")
    print(f"elapsed: {elapsed:.3f}s")
    return EXIT_OK


def cmd_verify(args):
    cut = enumerate_cut_disks()
    std = enumerate_standard_regions()
    bad = len(cut["violations"]) + len(std["violations"])
    print(f"cut disks: {cut['seeds']} seeds, {cut['nodes']} nodes, {cut['leaves']} leaves, "
          f"max depth {cut['max_depth']}, {cut['elapsed']:.2f}s")
    print(f"standard regions: {std['templates']} templates, {std['checked']} boundaries, "
          f"{std['elapsed']:.2f}s")
    print(f"{bad} violations")
    for v in cut["violations"] + std["violations"]:
        print(f"  illegal: {v}")
    return EXIT_OK if bad == 0 else EXIT_NO


def _bench_one(job):
    family, e, seed, repeats, naive = job
    if family == "words":
        return bench.run_words([e], seed + e, repeats)
    return bench.run_family(family, [e], seed + e, repeats, naive)


def cmd_bench(args):
    families = ["twist", "words"] if args.family == "all" else [args.family]
    rows = []
    for fam in families:
        top = min(args.max_bits, 9) if fam == "words" else args.max_bits
        jobs = [(fam, e, args.seed, args.repeats, not args.no_naive)
                for e in range(args.min_bits, top + 1)]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                parts = list(pool.map(_bench_one, jobs))
        else:
            parts = [_bench_one(j) for j in jobs]
        rows += [r for part in parts for r in part]
    out = sys.stdout
    if args.out:
        bench.write_csv(rows, args.out)
    print("family,size,naive_ns,fast_ns", file=out)
    for r in rows:
        print(",".join("" if x is None else str(x) for x in r), file=out)
    for fam in families:
        sn, sf = bench.slopes([r for r in rows if r[0] == fam])
        print(f"# slope {fam}: naive {sn:.3f} fast {sf:.3f}", file=out)
    plot = args.plot or (args.out and str(Path(args.out).with_suffix(".png")))
    if plot:
        bench.plot(rows, plot, "running time")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="artifact", description=__doc__)
    p.add_argument("--trace", action="store_true", help="log every move")
    sub = p.add_subparsers(dest="cmd", required=True)

    def with_surface(sp):
        sp.add_argument("--surface", nargs=2, type=int, default=(0, 4), metavar=("G", "B"))
        return sp

    w = with_surface(sub.add_parser("word", help="decide whether a word is the identity"))
    w.add_argument("--word")
    w.add_argument("--word-file")
    w.add_argument("--dump", action="store_true", help="print Delta(f)")
    w.add_argument("--naive", action="store_true")
    w.set_defaults(func=cmd_word)

    i = with_surface(sub.add_parser("intersect", help="geometric intersection number"))
    i.add_argument("--curves")
    i.add_argument("curve", nargs="*", help="inline Delta-vectors, e.g. '0 2 2'")
    i.add_argument("--naive", action="store_true")
    i.set_defaults(func=cmd_intersect)

    s = with_surface(sub.add_parser("shorten", help="shorten a curve or a pair of curves"))
    s.add_argument("--curves")
    s.add_argument("curve", nargs="*")
    s.add_argument("--cutover", type=int, default=CUTOVER)
    s.set_defaults(func=cmd_shorten)

    v = sub.add_parser("verify", help="re-run the legality enumerations")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time naive against fast")
    b.add_argument("--family", choices=["twist", "diagonal", "words", "all"], default="twist")
    b.add_argument("--min-bits", type=int, default=4, help="smallest log2 size")
    b.add_argument("--max-bits", type=int, default=12, help="largest log2 size")
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--no-naive", action="store_true")
    b.add_argument("--out", help="CSV path")
    b.add_argument("--plot", help="PNG path (default: next to the CSV)")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.trace else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (WordError, UsageError, InvalidCoordinates, UnsupportedSurface, OSError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_ERR


if __name__ == "__main__":
    sys.exit(main())
