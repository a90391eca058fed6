"""Standard union graphs built from per-track Dehn-Thurston style data.

A template is drawn once with every branch either track could need.  Each
track assigns a weight to every template edge; edges neither track uses are
deleted (merging the regions on either side) and smooth bivalent vertices
are absorbed.  The result is checked for tightness by the caller.
"""

import math

from .drawing import Drawing
from .numerics import big
from .traintrack import K, SIGMA, TAU, Surface, TrackError, WeightedPair

S04 = Surface(0, 4)


def _circle(deg, r=1.0):
    t = math.radians(deg)
    return (r * math.cos(t), r * math.sin(t))


def _curl(dy):
    pts = [(-0.1, -0.15), (-0.45, -0.1), (-0.75, 0.15), (-0.45, 0.45), (-0.15, 0.3), (-0.05, -0.1)]
    return [(x, y + dy) for x, y in pts]


def s04_drawing():
    """Two curls joined through an annulus that twists anticlockwise."""
    d = Drawing(S04)
    d.vertex("P1", 0, -0.35, large="sA")
    d.vertex("Qa", *_circle(-60), large=("c1", 0))
    d.vertex("Qb", *_circle(60), large=("c1", 1))
    d.vertex("P2", 0, 1.7, large="sB")
    d.edge("loop1", "P1", "P1", K, _curl(0))
    d.edge("sA", "P1", "Qa", K)
    d.edge("c1", "Qa", "Qb", K, [_circle(a) for a in (-30, 0, 30)])
    d.edge("c2", "Qb", "Qa", K, [_circle(a) for a in range(90, 300, 30)])
    d.edge("sB", "Qb", "P2", K)
    d.edge("loop2", "P2", "P2", K, _curl(2.05))
    for x, y in ((-0.45, 0.15), (0.45, 0.15), (-0.45, 2.2), (0.45, 2.2)):
        d.puncture(x, y)
    return d


def s04_weights(m, t):
    """Edge weights of the curve with m strands across the core and twist t >= 0."""
    if m < 0 or m % 2 or t < 0:
        raise ValueError(f"no template curve with m={m}, t={t}")
    return {"loop1": m // 2, "sA": m, "c1": m + t, "c2": t, "sB": m, "loop2": m // 2}


def common_untwist(*curves):
    """Smallest s >= 0 making every twist t + s*m non-negative.

    Twisting every curve by the same power of the core preserves all
    intersection numbers, so pairs can always be moved into the template.
    """
    s = 0
    for m, t in curves:
        if m:
            s = max(s, -(t // m))
        elif t < 0:
            raise ValueError("a multiple of the core has non-negative twist")
    return s


def realise(drawing, wsigma, wtau):
    """Build the weighted union pair carrying the two edge weightings."""
    def colour_of(name, colour):
        return (SIGMA if wsigma.get(name, 0) else 0) | (TAU if wtau.get(name, 0) else 0)

    b, names = drawing.build(colour_of)
    b.normalize()
    pair, emap = b.freeze()
    if not pair.euler_check():
        raise TrackError("template does not fill the surface")
    inv = {}
    for name, e in names.items():
        if e in emap:
            inv.setdefault(emap[e], name)
    merged = _merged_names(b, names, emap)
    weights = []
    for X, w in ((SIGMA, wsigma), (TAU, wtau)):
        vals = []
        for chain, _ in pair.branches(X):
            seen = {w[n] for d in chain for n in merged[d >> 1]}
            if len(seen) != 1:
                raise TrackError(f"inconsistent weights {seen} along a branch")
            vals.append(big(seen.pop()))
        weights.append(vals)
    return WeightedPair(pair, weights[0], weights[1])


def _merged_names(b, names, emap):
    """Template edge names surviving inside each frozen edge."""
    # merge_bivalent keeps one of the two edges, so follow surviving ids
    out = {i: [] for i in emap.values()}
    for name, e in names.items():
        if e in emap:
            out[emap[e]].append(name)
    return out


def s04_pair(sigma, tau):
    """Standard weighted pair for two curves given as (m, t)."""
    s = common_untwist(sigma, tau)
    (m1, t1), (m2, t2) = sigma, tau
    d = s04_drawing()
    return realise(d, s04_weights(m1, t1 + s * m1), s04_weights(m2, t2 + s * m2))
