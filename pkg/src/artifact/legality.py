"""Exhaustive legality checks for cut disks and standard-pair regions.

Boundary words walk a region anticlockwise, alternating a segment colour
(r, b, g) with a transition (- smooth, L corner, V cusp).  The helpers
below keep the exact string semantics of the original scripts, including
the three character wraparound when counting colour changes.
"""

import time
from itertools import product

SEEDS = [
    ("rLb-g-bL", "rLb-g-bL"),  # I
    ("rLb-g-", "rVg-bL"),  # J
    ("rVgV", "r-g-"),  # C
    ("rVg-", "rVg-"),  # S
]

RULES = ["g-rLb-", "g-bLr-", "gV", "g-r-", "g-b-"]

ANNULI = ["gV", "g-b-g-r-", "g-r-g-b-", "g-bLr-", "g-rLb-"]
PANTS = [
    ("", "", ""),
    ("gVrV",), ("g-r-g-b-", ""),
    ("gVgV",), ("gV", ""),
    ("gVrV",), ("gVbV",), ("g-b-g-r-g-r-g-b-",),
]


class MalformedWord(ValueError):
    pass


def check_word(boundary):
    if len(boundary) % 2:
        raise MalformedWord(f"odd length word {boundary!r}")
    for i, ch in enumerate(boundary):
        allowed = "rbgk" if i % 2 == 0 else "-LV"
        if ch not in allowed:
            raise MalformedWord(f"bad symbol {ch!r} at {i} in {boundary!r}")


def index4(boundary):
    return 4 - 2 * boundary.count("V") - boundary.count("L")


def num_colour_changes(boundary):
    boundary += boundary[:3]
    return boundary.count("r-g-b") + boundary.count("b-g-r")


def is_bigon(boundary):
    return index4(boundary) == 0 and "L" not in boundary


def is_monochromatic(boundary):
    return "r" not in boundary or "b" not in boundary


def is_monochromatic_bigon(boundary):
    return is_bigon(boundary) and is_monochromatic(boundary)


def is_legal(boundary):
    return num_colour_changes(boundary) >= (1 if is_bigon(boundary) else index4(boundary))


def boundary_stats(boundary):
    check_word(boundary)
    return (index4(boundary), num_colour_changes(boundary), is_bigon(boundary),
            is_monochromatic(boundary))


def substitutes(boundary):
    i = boundary.find("g")
    for rule in RULES:
        new = boundary[:i] + rule + boundary[i:]
        if "r-g-r" not in new and "b-g-b" not in new:
            yield new


def tree(left, right, stats=None, depth=0):
    if stats is not None:
        stats["nodes"] += 1
        stats["max_depth"] = max(stats["max_depth"], depth)
    whole = left[2:-2] + right[2:-2]
    if not is_legal(left) or is_monochromatic_bigon(whole):
        for new in substitutes(left):
            yield from tree(new, right, stats, depth + 1)
    elif not is_legal(right) or is_monochromatic_bigon(whole):
        for new in substitutes(right):
            yield from tree(left, new, stats, depth + 1)
    else:
        yield whole


def enumerate_cut_disks():
    """Walk the substitution tree from every seed and check every leaf."""
    start = time.perf_counter()
    stats = {"nodes": 0, "max_depth": 0}
    leaves, violations = 0, []
    for left, right in SEEDS:
        for reachable in tree(left, right, stats):
            leaves += 1
            if not is_legal(reachable):
                violations.append(reachable)
    return {"seeds": len(SEEDS), "nodes": stats["nodes"], "leaves": leaves,
            "max_depth": stats["max_depth"], "violations": violations,
            "elapsed": time.perf_counter() - start}


def compose_pants(pants, annuli):
    return "".join(piece for pair in zip(pants, annuli) for piece in pair)


def enumerate_standard_regions():
    """Attach every combination of annulus words to every pants word."""
    start = time.perf_counter()
    checked, violations = 0, []
    for pants in PANTS:
        for annuli in product(ANNULI, repeat=len(pants)):
            boundary = compose_pants(pants, annuli)
            checked += 1
            if not is_legal(boundary):
                violations.append(boundary)
    return {"templates": len(PANTS), "checked": checked, "violations": violations,
            "elapsed": time.perf_counter() - start}


def random_grammar_word(rng, steps):
    """A word grown from a seed by random first-g substitutions."""
    word = rng.choice([w for pair in SEEDS for w in pair])
    for _ in range(steps):
        options = list(substitutes(word))
        if not options:
            break
        word = rng.choice(options)
    return word
