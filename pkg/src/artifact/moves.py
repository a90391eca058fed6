"""Splitting, untwisting and separating tight pairs, with linear update rules."""

import logging
from dataclasses import dataclass

from .numerics import Interval, Order, complexity, complexity_bound, interval_lt
from .ribbon import Builder
from .traintrack import K, SIGMA, TAU, TrackError, WeightedPair

log = logging.getLogger(__name__)

INF = float("inf")


class NotSplittable(TrackError):
    pass


class IsCrossing(TrackError):
    pass


class NotClean(TrackError):
    pass


class RotationTooLarge(ValueError):
    pass


class Undefined(Exception):
    """A move needs a comparison the interval weights cannot decide."""


# ---------------------------------------------------------------- weight arithmetic

class ExactOps:
    @staticmethod
    def compare(a, b):
        return (a > b) - (a < b)

    @staticmethod
    def size(x):
        return complexity(x)

    @staticmethod
    def windings(least, h):
        """Largest n with n*h < least."""
        return (least - 1) // h

    @staticmethod
    def minimum(xs):
        return min(xs)


class IntervalOps:
    @staticmethod
    def compare(a, b):
        o = interval_lt(a, b)
        if o is Order.LESS:
            return -1
        if o is Order.GREATER:
            return 1
        if a.is_point() and a == b:
            return 0
        return None

    @staticmethod
    def size(x):
        return complexity_bound(x)

    @staticmethod
    def windings(least, h):
        """The winding count, or None unless it is the same for every value."""
        if h.lo < 1:
            return None
        lo = (least.lo - 1) // (h.hi - 1)
        hi = (least.hi - 2) // h.lo
        return lo if lo == hi else None

    @staticmethod
    def minimum(xs):
        return Interval(min(x.lo for x in xs), min(x.hi for x in xs))


EXACT = ExactOps()
INTERVAL = IntervalOps()


def ops_for(wp):
    return INTERVAL if wp.mu and isinstance(wp.mu[0], Interval) or \
        wp.nu and isinstance(wp.nu[0], Interval) else EXACT


# ---------------------------------------------------------------- memo tables

# Structural results depend only on the pair's combinatorics, which recur
# constantly, so they are cached by pair content.
_MEMO = {}
_INTERN = {}
MEMO_LIMIT = 1 << 16


def memo(key, build):
    hit = _MEMO.get(key)
    if hit is None:
        if len(_MEMO) >= MEMO_LIMIT:
            _MEMO.clear()
            _INTERN.clear()
        hit = _MEMO[key] = build()
    return hit


def intern(pair):
    """A canonical object for the pair, so its cached properties are shared."""
    return _INTERN.setdefault(pair, pair)


# ---------------------------------------------------------------- update rules

def _apply_rows(rows, w):
    out = []
    for row in rows:
        acc = 0
        for j, c in row:
            acc = acc + (w[j] if c == 1 else c * w[j])
        out.append(acc)
    return out


def _compose_rows(outer, inner):
    rows = []
    for row in outer:
        acc = {}
        for j, c in row:
            for k, d in inner[j]:
                acc[k] = acc.get(k, 0) + c * d
        rows.append(tuple(sorted((k, v) for k, v in acc.items() if v)))
    return tuple(rows)


def _identity_rows(n):
    return tuple(((i, 1),) for i in range(n))


class UpdateRule:
    """Target pair plus sparse integer matrices transporting both weightings.

    Rows are tuples of (column, coefficient) pairs.
    """

    __slots__ = ("source", "target", "A", "B")

    def __init__(self, source, target, A, B):
        self.source = source
        self.target = target
        self.A = A
        self.B = B

    @classmethod
    def identity(cls, pair):
        return cls(pair, pair, _identity_rows(pair.num_branches(SIGMA)),
                   _identity_rows(pair.num_branches(TAU)))

    def __call__(self, wp):
        return self.apply(wp)

    def apply(self, wp):
        if len(wp.mu) != self.width(SIGMA) or len(wp.nu) != self.width(TAU):
            raise ValueError("weight vector does not match the rule's source")
        return WeightedPair(self.target, _apply_rows(self.A, wp.mu), _apply_rows(self.B, wp.nu))

    def width(self, X):
        return self.source.num_branches(X)

    def compose(self, first):
        """self after first."""
        return UpdateRule(first.source, self.target, _compose_rows(self.A, first.A),
                          _compose_rows(self.B, first.B))

    def dense(self, X):
        rows = self.A if X == SIGMA else self.B
        n = self.width(X)
        out = []
        for row in rows:
            r = [0] * n
            for j, c in row:
                r[j] = c
            out.append(r)
        return out

    @property
    def size(self):
        return sum(complexity(c) for rows in (self.A, self.B) for row in rows for _, c in row)

    def __repr__(self):
        return f"UpdateRule({len(self.A)}x{self.width(SIGMA)}, {len(self.B)}x{self.width(TAU)})"


def compose_updates(second, first):
    return second.compose(first)


def apply_update(rule, wp):
    return rule.apply(wp)


# ---------------------------------------------------------------- shared sizes

@dataclass(frozen=True)
class SharedStats:
    tightness: int
    shared_size_1: int
    shared_size_inf: int

    @property
    def shared_size(self):
        return self.shared_size_1 + 2 * self.tightness * self.shared_size_inf


def shared_stats(wp, ops=None):
    ops = ops or ops_for(wp)
    pair = wp.pair
    if not pair.is_clean:
        raise NotClean("pair has an isolated shared branch")
    sizes = [ops.size(m) + ops.size(n) for m, n in map(wp.shared_weights, pair.shared_edges)]
    return SharedStats(pair.tightness, sum(sizes), max(sizes, default=0))


def shared_size(wp, ops=None):
    return shared_stats(wp, ops).shared_size


# ---------------------------------------------------------------- rewriting helpers

def _finish(b, pair, fresh_disks=True, annulus=None):
    """Label unlabelled angles face by face, normalise and freeze."""
    nxt = {}
    for darts in b.rot.values():
        for i, d in enumerate(darts):
            nxt[d] = darts[(i + 1) % len(darts)]
    seen = set()
    for d0 in nxt:
        if d0 in seen:
            continue
        face, d = [], d0
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = nxt[d ^ 1]
        labels = {b.find(b.areg[x ^ 1]) for x in face if b.areg.get(x ^ 1) is not None}
        if len(labels) > 1:
            raise TrackError(f"face meets several regions {labels}")
        if labels:
            r = labels.pop()
        elif annulus is not None:
            r = annulus
        else:
            r = b.new_region(1)
        for x in face:
            b.areg[x ^ 1] = r
    b.normalize()
    new, emap = b.freeze()
    A, Bm = b.matrices(pair, new, emap)
    return new, A, Bm, (b, emap)


def _sparse(rows):
    return tuple(tuple((j, c) for j, c in enumerate(row) if c) for row in rows)


def _detach(b, v):
    for d in b.rot.pop(v):
        del b.vert[d]
        b.areg.pop(d, None)


def _drop_edge(b, e):
    del b.col[e]
    del b.tag[e]
    for X in (SIGMA, TAU):
        b.forms[X].pop(e, None)


def _form(*terms):
    out = {}
    for j, c in terms:
        out[j] = out.get(j, 0) + c
    return {j: c for j, c in out.items() if c}


# ---------------------------------------------------------------- splitting

def split_ports(pair, e):
    """(TL, BL, BR, TR) port darts around a splittable edge e."""
    d0, d1 = 2 * e, 2 * e + 1
    ru, rv = pair.rot[pair.vert[d0]], pair.rot[pair.vert[d1]]
    if len(ru) != 3 or len(rv) != 3 or ru[0] != d0 or rv[0] != d1:
        raise NotSplittable(f"edge {e} is not large at both ends")
    return ru[1], ru[2], rv[1], rv[2]


def is_splittable(pair, e):
    try:
        split_ports(pair, e)
    except NotSplittable:
        return False
    return True


def split_routes(wp, e, ops=EXACT):
    """Strands per track across the split of e, each with its linear form."""
    pair = wp.pair
    TL, BL, BR, TR = split_ports(pair, e)
    routes = {}
    for X in (SIGMA, TAU):
        if not pair.col[e] & X:
            routes[X] = []
            continue
        eb = pair.edge_branch(X)
        w = wp.weights(X)

        def bx(d):
            return eb[d >> 1]

        left = [q for q in (TL, BL) if pair.uses(q, X)]
        right = [q for q in (TR, BR) if pair.uses(q, X)]
        if len(left) == 2 and len(right) == 2:
            c = 0 if bx(TL) == bx(TR) else ops.compare(w[bx(TL)], w[bx(TR)])
            if c is None:
                raise Undefined(f"cannot compare branches at edge {e}")
            if c > 0:
                strands = [(TL, TR, _form((bx(TR), 1))),
                           (TL, BR, _form((bx(TL), 1), (bx(TR), -1))),
                           (BL, BR, _form((bx(BL), 1)))]
            elif c == 0:
                strands = [(TL, TR, _form((bx(TL), 1))), (BL, BR, _form((bx(BL), 1)))]
            else:
                strands = [(TL, TR, _form((bx(TL), 1))),
                           (BL, TR, _form((bx(TR), 1), (bx(TL), -1))),
                           (BL, BR, _form((bx(BR), 1)))]
        elif len(left) == 1 and len(right) == 2:
            strands = [(left[0], TR, _form((bx(TR), 1))), (left[0], BR, _form((bx(BR), 1)))]
        elif len(left) == 2 and len(right) == 1:
            strands = [(TL, right[0], _form((bx(TL), 1))), (BL, right[0], _form((bx(BL), 1)))]
        elif len(left) == 1 and len(right) == 1:
            strands = [(left[0], right[0], _form((bx(2 * e), 1)))]
        else:
            raise TrackError(f"track {X} dead-ends at edge {e}")
        routes[X] = strands
    return routes


def split_surgery(pair, e, routes):
    """Rebuild the union graph with e replaced by the given strands."""
    TL, BL, BR, TR = split_ports(pair, e)
    d0, d1 = 2 * e, 2 * e + 1
    N, W, S, E = pair.areg[d0], pair.areg[TL], pair.areg[BL], pair.areg[BR]
    sides = {TL: (N, W), BL: (W, S), BR: (S, E), TR: (E, N)}
    b = Builder.thaw(pair)
    _detach(b, pair.vert[d0])
    _detach(b, pair.vert[d1])
    _drop_edge(b, e)
    strands = {}
    for X, lst in routes.items():
        for l, r, form in lst:
            strands.setdefault((l, r), {})[X] = form
    cross = (TL, BR) in strands and (BL, TR) in strands
    at = {TL: [], BL: [], TR: [], BR: []}
    mid = {}
    for (l, r), forms in sorted(strands.items()):
        colour = 0
        for X in forms:
            colour |= X
        if cross and (l, r) in ((TL, BR), (BL, TR)):
            h1 = b.new_edge(colour, forms)
            h2 = b.new_edge(colour, forms)
            at[l].append((r, 2 * h1))
            at[r].append((l, 2 * h2 + 1))
            mid[(l, r)] = (2 * h1 + 1, 2 * h2)
        else:
            s = b.new_edge(colour, forms)
            at[l].append((r, 2 * s))
            at[r].append((l, 2 * s + 1))
    top = {TL: 0, TR: 0, BL: 1, BR: 1}
    for p in (TL, BL, TR, BR):
        items = [d for _, d in sorted(at[p], key=lambda it: top[it[0]])]
        cw, ccw = sides[p]
        if len(items) == 1:
            b.new_vertex([p, items[0]])
            b.areg[p], b.areg[items[0]] = ccw, cw
            continue
        upper, lower = items
        if p in (TL, BL):
            b.new_vertex([p, lower, upper])
            b.areg[p], b.areg[upper] = ccw, cw
        else:
            b.new_vertex([p, upper, lower])
            b.areg[p], b.areg[lower] = ccw, cw
    if cross:
        sw, ne = mid[(BL, TR)]
        nw, se = mid[(TL, BR)]
        darts = [ne, nw, sw, se]
        while b.col[darts[0] >> 1] != 1:
            darts = darts[1:] + darts[:1]
        b.new_vertex(darts)
    if set(strands) == {(TL, TR), (BL, BR)}:
        b.merge_regions([W, E])
    return _finish(b, pair)


def split(wp, e, ops=None, check=False):
    ops = ops or ops_for(wp)
    routes = split_routes(wp, e, ops)
    if check:
        new, A, Bm, extra = split_surgery(wp.pair, e, routes)
        _check_forms(wp, extra)
        rule = UpdateRule(wp.pair, new, _sparse(A), _sparse(Bm))
        return rule.apply(wp), rule
    shape = tuple(tuple((a, c) for a, c, _ in routes[X]) for X in (SIGMA, TAU))

    def build():
        new, A, Bm, _ = split_surgery(wp.pair, e, routes)
        return UpdateRule(wp.pair, intern(new), _sparse(A), _sparse(Bm))

    rule = memo(("split", wp.pair, e, shape), build)
    return rule.apply(wp), rule


def _check_forms(wp, extra):
    """Every edge of a branch must carry the same value (debug aid)."""
    b, emap = extra
    for X in (SIGMA, TAU):
        w = wp.weights(X)
        for e, form in b.forms[X].items():
            val = sum(c * w[j] for j, c in form.items())
            if isinstance(val, int) and val < 0:
                raise TrackError(f"negative strand weight on edge {e}")


# ---------------------------------------------------------------- combed cycles

@dataclass(frozen=True)
class Cycle:
    darts: tuple      # traversal order; each dart leaves the previous vertex
    hand: int         # 1: sigma exits right small ends, 2: left
    compatible: bool

    @property
    def edges(self):
        return frozenset(d >> 1 for d in self.darts)


def _follow(pair, d, pick):
    """Walk shared edges from dart d; pick(v, arrive) gives the exit dart or None."""
    out = [d]
    limit = len(pair.vert)
    cur = d
    while True:
        arrive = cur ^ 1
        darts = pair.rot[pair.vert[arrive]]
        if len(darts) == 2:
            nxt = darts[1 - pair.pos[arrive]]
        elif len(darts) == 3:
            nxt = pick(darts, arrive)
        else:
            return None
        if nxt is None or pair.col[nxt >> 1] != K:
            return None
        if nxt == d:
            return tuple(out)
        if len(out) > limit:
            return None
        out.append(nxt)
        cur = nxt


def _picker(pair, sigma_hand, tau_hand, allow_shared):
    """Exit rule: at a switch of track X use its small end on side hand[X]."""
    def pick(darts, arrive):
        large, sr, sl = darts
        kinds = (pair.col[sr >> 1], pair.col[sl >> 1])
        if kinds == (K, K):
            if not allow_shared:
                return None
            hand = sigma_hand
        elif 1 in kinds:
            hand = sigma_hand
        elif 2 in kinds:
            hand = tau_hand
        else:
            return None
        small = sl if hand == 2 else sr
        if arrive == large:
            return small
        if arrive == small:
            return large
        return None
    return pick


def find_combed_cycles(pair):
    return memo(("cycles", pair), lambda: _combed_cycles(pair))


def _combed_cycles(pair):
    """(compatible, incompatible) train cycles of the shared subtrack."""
    found = {}
    for e in pair.shared_edges:
        for hand in (1, 2):
            for compatible in (True, False):
                other = hand if compatible else 3 - hand
                darts = _follow(pair, 2 * e, _picker(pair, hand, other, compatible))
                if darts is None:
                    continue
                key = frozenset(d >> 1 for d in darts)
                kinds = {pair.kinds[pair.vert[d]] for d in darts}
                has = {"sigma": "sigma" in kinds or "shared" in kinds,
                       "tau": "tau" in kinds or "shared" in kinds}
                # one-track-switch cycles count as incompatible; separate wins
                if compatible and not (has["sigma"] and has["tau"]):
                    continue
                prev = found.get(key)
                if prev is None or (prev.compatible and not compatible):
                    found[key] = Cycle(darts, hand, compatible)
    comp = [c for c in found.values() if c.compatible]
    incomp = [c for c in found.values() if not c.compatible]
    return comp, incomp


def cycles_through(pair, e):
    comp, incomp = find_combed_cycles(pair)
    return [c for c in comp if e in c.edges], [c for c in incomp if e in c.edges]


# ---------------------------------------------------------------- untwisting

def _cycle_sides(pair, cycle, X):
    """Branches of X inside c and the off-branch ends merging into c."""
    eb = pair.edge_branch(X)
    inside = sorted({eb[d >> 1] for d in cycle.darts})
    merging = []
    darts = cycle.darts
    for i, d in enumerate(darts):
        arrive = darts[i - 1] ^ 1
        rot = pair.rot[pair.vert[d]]
        if len(rot) != 3 or not all(pair.col[x >> 1] & X for x in rot):
            continue
        if d == rot[0] and arrive != rot[0]:
            off = next(x for x in rot if x not in (d, arrive))
            merging.append(eb[off >> 1])
    return inside, merging


def rotation_from_sums(min_x, sum_y, min_xp, sum_yp):
    """min(2 min_X fdiv sum_Y, 2 min_X' fdiv sum_Y') with floor division."""
    return min(2 * min_x // sum_y, 2 * min_xp // sum_yp)


def rotation_number(wp, cycle, ops=None):
    """Full untwists available along c keeping every weight on c positive."""
    ops = ops or ops_for(wp)
    best = None
    for X in (SIGMA, TAU):
        inside, merging = _cycle_sides(wp.pair, cycle, X)
        w = wp.weights(X)
        if not merging:
            return 0
        h = sum((w[j] for j in merging[1:]), w[merging[0]])
        least = ops.minimum([w[j] for j in inside])
        n = ops.windings(least, h)
        if n is None:
            raise Undefined("rotation number is not determined")
        best = n if best is None else min(best, n)
    return max(best, 0)


def untwist(wp, cycle, r=None, ops=None):
    ops = ops or ops_for(wp)
    if r is None:
        r = rotation_number(wp, cycle, ops)
    elif ops is EXACT and r > rotation_number(wp, cycle, ops):
        raise RotationTooLarge(f"cannot untwist {r} times")
    pair = wp.pair
    mats = []
    for X in (SIGMA, TAU):
        inside, merging = _cycle_sides(pair, cycle, X)
        n = pair.num_branches(X)
        rows = []
        inset = set(inside)
        for a in range(n):
            if a in inset and r:
                acc = {a: 1}
                for j in merging:
                    acc[j] = acc.get(j, 0) - r
                rows.append(tuple(sorted((j, c) for j, c in acc.items() if c)))
            else:
                rows.append(((a, 1),))
        mats.append(tuple(rows))
    rule = UpdateRule(pair, pair, mats[0], mats[1])
    return rule.apply(wp), rule


# ---------------------------------------------------------------- separating

def _off_side(rot, arrive, leave):
    """Off dart at a trivalent vertex on a cycle and whether it lies on the left."""
    off = next(x for x in rot if x not in (arrive, leave))
    i = rot.index(leave)
    return off, rot[(i + 1) % 3] == off


def separate(wp, cycle):
    """Push sigma and tau off opposite sides of an incompatibly combed cycle."""
    rule = memo(("separate", wp.pair, cycle), lambda: _separate_rule(wp.pair, cycle))
    return rule.apply(wp), rule


def _separate_rule(pair, cycle):
    darts = cycle.darts
    n = len(darts)
    info = []
    sigma_side = None
    for i in range(n):
        leave, arrive = darts[i], darts[i - 1] ^ 1
        rot = pair.rot[pair.vert[leave]]
        if len(rot) == 2:
            info.append((arrive, leave, None, None, None))
            continue
        off, left = _off_side(rot, arrive, leave)
        owner = pair.col[off >> 1]
        info.append((arrive, leave, off, left, owner))
        if leave == rot[0] and arrive != rot[0]:
            side = left if owner == SIGMA else not left
            if sigma_side is None:
                sigma_side = side
    if sigma_side is None:
        sigma_side = True
    left_track = SIGMA if sigma_side else TAU
    right_track = TAU if sigma_side else SIGMA

    b = Builder.thaw(pair)
    for arrive, leave, *_ in info:
        v = pair.vert[leave]
        if v in b.rot:
            _detach(b, v)
    copies = {}
    for d in darts:
        e = d >> 1
        forms = {X: b.forms[X][e] for X in (SIGMA, TAU)}
        tag = b.tag[e]
        _drop_edge(b, e)
        for X in (SIGMA, TAU):
            copies[(d, X)] = b.new_edge(X, {X: forms[X]}, tag=tag)

    def out_dart(i, X):
        return 2 * copies[(darts[i], X)]

    def in_dart(i, X):
        return 2 * copies[(darts[i - 1], X)] + 1

    crossed = False
    for i, (arrive, leave, off, left, owner) in enumerate(info):
        old = pair.rot[pair.vert[leave]]
        # old angle labels at this vertex
        lab = {x: pair.areg[x] for x in old}
        right_label = lab[arrive] if off is None or left else None
        left_label = lab[leave] if off is None or not left else None
        for X, on_left in ((left_track, True), (right_track, False)):
            a, c = in_dart(i, X), out_dart(i, X)
            if off is None or (owner != X and left != on_left):
                # smooth pass on this copy
                b.new_vertex([a, c])
                if on_left:
                    b.areg[c], b.areg[a] = left_label, None
                else:
                    b.areg[a], b.areg[c] = right_label, None
                continue
            if owner == X and left == on_left:
                # the off-branch attaches directly from the outside
                if left:
                    order = [c, off, a]
                    b.areg[c], b.areg[off], b.areg[a] = lab[leave], lab[off], None
                else:
                    order = [a, off, c]
                    b.areg[a], b.areg[off], b.areg[c] = lab[arrive], lab[off], None
            elif owner == X:
                # attaches from the far side, through the other copy
                inner = _inner_edge(b, pair, off, i, copies)
                if on_left:
                    order = [a, 2 * inner + 1, c]
                    b.areg[a], b.areg[2 * inner + 1], b.areg[c] = None, None, left_label
                else:
                    order = [a, c, 2 * inner + 1]
                    b.areg[a], b.areg[c], b.areg[2 * inner + 1] = right_label, None, None
                crossed = True
            else:
                # the other track's off-branch crosses this copy
                inner = _inner_edge(b, pair, off, i, copies)
                if on_left:
                    order = [c, off, a, 2 * inner]
                    b.areg[c], b.areg[off] = lab[leave], lab[off]
                    b.areg[a], b.areg[2 * inner] = None, None
                else:
                    order = [c, 2 * inner, a, off]
                    b.areg[c], b.areg[2 * inner] = None, None
                    b.areg[a], b.areg[off] = lab[arrive], lab[off]
            if len(order) == 3:
                big = a if old[0] == arrive else c if old[0] == leave else None
                if big is None:
                    raise TrackError("off-branch cannot be the large end on a combed cycle")
                k = order.index(big)
                order = order[k:] + order[:k]
            else:
                k = next(j for j, x in enumerate(order) if b.col[x >> 1] == 1)
                order = order[k:] + order[:k]
            b.new_vertex(order)
    annulus = None if crossed else b.new_region(0)
    new, A, Bm, _ = _finish(b, pair, annulus=annulus)
    return UpdateRule(pair, intern(new), _sparse(A), _sparse(Bm))


def _inner_edge(b, pair, off, i, copies):
    """Edge from a crossing on one copy to the switch on the other copy."""
    key = ("inner", off)
    if key not in copies:
        e = off >> 1
        colour = pair.col[e]
        forms = {X: b.forms[X][e] for X in (SIGMA, TAU) if colour & X}
        copies[key] = b.new_edge(colour, forms)
    return copies[key]


# ---------------------------------------------------------------- choosing a branch

def big_subtrack(wp, ops=None):
    """(Lambda, switch lengths, lambda) for a clean non-crossing pair."""
    ops = ops or ops_for(wp)
    pair = wp.pair
    if pair.is_crossing:
        raise IsCrossing("no shared structure left")
    size = {e: ops.size(m) + ops.size(n)
            for e, (m, n) in ((e, wp.shared_weights(e)) for e in pair.shared_edges)}
    top = max(size.values())
    big = {e for e, s in size.items() if s == top}
    lengths = {}
    for v, darts in enumerate(pair.rot):
        if len(darts) != 3 or darts[0] >> 1 not in big:
            continue
        large, sr, sl = darts
        if sl >> 1 in big:
            target = 1
        elif sr >> 1 in big:
            target = 2
        else:
            target = 0
        lengths[v] = _switch_length(pair, large, big, target)
    ell = {}
    for e in big:
        ends = [lengths.get(pair.vert[d], INF) for d in (2 * e, 2 * e + 1)]
        ell[e] = min(ends)
    best = min(ell.values())
    small = {e for e, x in ell.items() if x == best}
    return big, lengths, small


def _switch_length(pair, start, big, target):
    """Branches walked along Lambda until leaving through the target side.

    target 1 = right small end, 2 = left, 0 = either.
    """
    count = 0
    cur = start
    seen = set()
    while True:
        if cur in seen:
            return INF
        seen.add(cur)
        count += 1
        arrive = cur ^ 1
        darts = pair.rot[pair.vert[arrive]]
        if len(darts) == 2:
            cur = darts[1 - pair.pos[arrive]]
            if cur >> 1 not in big:
                return count
            continue
        if len(darts) != 3:
            return count
        large, sr, sl = darts
        if arrive != large:
            if large >> 1 not in big:
                return count
            cur = large
            continue
        inside = [(1, sr), (2, sl)]
        inside = [(side, d) for side, d in inside if d >> 1 in big]
        if not inside:
            return count
        side, d = inside[0]
        if target == 0 or side == target:
            return count
        cur = d


def _clean_up(wp, ops, rule):
    """Split isolated shared branches until none remain."""
    while True:
        iso = [e for e in wp.pair.shared_edges if wp.pair.is_isolated(e)]
        if not iso:
            return wp, rule
        wp, step = split(wp, iso[0], ops)
        rule = step.compose(rule) if rule is not None else step


def make_clean(wp, ops=None):
    ops = ops or ops_for(wp)
    wp, rule = _clean_up(wp, ops, None)
    return wp, rule or UpdateRule.identity(wp.pair)


def move(wp, ops=None, trace=None, max_rotation_bits=None):
    """One step of the move calculus; returns (new pair, update rule).

    With `max_rotation_bits` set, an untwist whose rotation number needs more
    bits than that is refused by raising Undefined.
    """
    ops = ops or ops_for(wp)
    pair = wp.pair
    if pair.is_crossing:
        raise IsCrossing("no shared structure left")
    if not pair.is_clean:
        raise NotClean("pair has an isolated shared branch")
    big, _, small = big_subtrack(wp, ops)
    comp, incomp = find_combed_cycles(pair)
    order = sorted(small, key=lambda e: pair.tag[e]) + \
        sorted(big - small, key=lambda e: pair.tag[e]) + \
        sorted(set(pair.shared_edges) - big, key=lambda e: pair.tag[e])
    for e in order:
        c = next((c for c in incomp if e in c.edges), None)
        if c is not None:
            kind = "separate"
            new, rule = separate(wp, c)
            break
        rotated = False
        for c in comp:
            if e in c.edges:
                r = rotation_number(wp, c, ops)
                if r >= 1:
                    if max_rotation_bits is not None and complexity(r) > max_rotation_bits:
                        raise Undefined(f"rotation number {r} exceeds the certainty")
                    new, rule = untwist(wp, c, r, ops)
                    kind = f"untwist{r}"
                    rotated = True
                    break
        if rotated:
            break
        if is_splittable(pair, e):
            kind = "split"
            new, rule = split(wp, e, ops)
            new, rule = _clean_up(new, ops, rule)
            break
    else:
        raise TrackError("no move applies")
    if trace is not None:
        trace.append((kind, e))
    log.debug("move %s on edge %s", kind, e)
    return new, rule


def move_until_drop(wp, ops=None, trace=None, limit=None):
    """Apply moves until the shared size strictly drops; returns the composite."""
    ops = ops or ops_for(wp)
    start = shared_size(wp, ops)
    limit = limit or 2 * wp.pair.surface.B ** 2
    rule = None
    for _ in range(limit):
        wp, step = move(wp, ops, trace)
        rule = step if rule is None else step.compose(rule)
        now = shared_size(wp, ops)
        if now > start:
            raise AssertionError(f"shared size grew from {start} to {now}")
        if now < start:
            return wp, rule
    raise AssertionError(f"no drop in shared size within {limit} moves")
