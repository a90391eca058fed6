"""Timing harness: instance families, CSV rows, log-log slopes and plots."""

import csv
import random
import time

import numpy as np

from .coordinates import S04, curve_delta, standard_pair_from_delta, twist_power_delta
from .intersection import fast_intersection, naive_intersection
from .mcg import dcoord, dcoord_sequential

BETA = (2, 0, 4)


def twist_instance(bits, rng):
    """beta against T_alpha^k beta with a k of the given bit length."""
    k = rng.getrandbits(bits) | (1 << (bits - 1))
    col = [row[1] for row in twist_power_delta(S04, "alpha", k)]
    return standard_pair_from_delta(S04, BETA, tuple(col)), 4 * k


def diagonal_instance(bits, rng):
    """A curve against itself; a random slope makes the run Euclid-like."""
    p = rng.getrandbits(bits) | (1 << (bits - 1))
    q = rng.getrandbits(bits) | 1
    dv = curve_delta((p, q))
    return standard_pair_from_delta(S04, dv, dv), 0


FAMILIES = {"twist": twist_instance, "diagonal": diagonal_instance}


def best_time(fn, arg, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        out = fn(arg)
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def run_family(family, exponents, seed=0, repeats=3, naive=True):
    """Rows (family, bits, naive_ns, fast_ns) for input sizes 2^e bits."""
    rng = random.Random(seed)
    make = FAMILIES[family]
    rows = []
    for e in exponents:
        bits = 1 << e
        wp, expect = make(bits, rng)
        tf, got = best_time(fast_intersection, wp, repeats)
        if got != expect:
            raise AssertionError(f"{family} at {bits} bits: got {got}, expected {expect}")
        tn = None
        if naive:
            tn, got = best_time(naive_intersection, wp, repeats)
            if got != expect:
                raise AssertionError(f"naive {family} at {bits} bits disagrees")
        rows.append((family, bits, tn, tf))
    return rows


def run_words(exponents, seed=0, repeats=1):
    """Rows (words, length, sequential_ns, halving_ns) for random words."""
    rng = random.Random(seed)
    rows = []
    for e in exponents:
        n = 1 << e
        w = [(rng.choice(("Ta", "Tb")), rng.choice((1, -1))) for _ in range(n)]
        ts, a = best_time(lambda x: dcoord_sequential(S04, x), w, repeats)
        tf, b = best_time(lambda x: dcoord(S04, x), w, repeats)
        if a != b:
            raise AssertionError("dcoord disagrees with the sequential oracle")
        rows.append(("words", n, ts, tf))
    return rows


def slope(xs, ys):
    """Least-squares slope of log y against log x."""
    pts = [(x, y) for x, y in zip(xs, ys) if x and y]
    if len(pts) < 2:
        return float("nan")
    lx = np.log([p[0] for p in pts])
    ly = np.log([p[1] for p in pts])
    return float(np.polyfit(lx, ly, 1)[0])


def slopes(rows):
    xs = [r[1] for r in rows]
    return slope(xs, [r[2] for r in rows]), slope(xs, [r[3] for r in rows])


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["family", "size", "naive_ns", "fast_ns"])
        for row in rows:
            w.writerow(["" if x is None else x for x in row])


def plot(rows, path, title=None):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.6))
    for fam in sorted({r[0] for r in rows}):
        sub = [r for r in rows if r[0] == fam]
        xs = [r[1] for r in sub]
        for idx, label, style in ((2, "naive", "o--"), (3, "fast", "s-")):
            ys = [r[idx] / 1e9 for r in sub if r[idx] is not None]
            if ys:
                s = slope(xs[: len(ys)], ys)
                ax.loglog(xs[: len(ys)], ys, style, label=f"{fam} {label} (slope {s:.2f})")
    ax.set_xlabel("input size")
    ax.set_ylabel("seconds")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
