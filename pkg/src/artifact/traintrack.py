"""Embedded pairs of train tracks stored as one coloured ribbon graph.

The union of sigma (red) and tau (blue) is a combinatorial map.  Dart 2e and
2e+1 are the two ends of edge e.  Every edge has a colour bitmask: R for
sigma only, B for tau only and K = R|B for a shared branch.  Vertices list
their darts anticlockwise:

* trivalent switch: (large, small_right, small_left); the cusp sits in the
  sector from small_right round to small_left,
* crossing: four darts alternating red and blue, opposite darts continue,
* bivalent smooth point: only used to carry closed loops.

The sector anticlockwise after dart d (at its tail vertex) is an *angle*; each
angle is labelled by the complementary region it lies in, and regions carry
their Euler characteristic so non-disk regions are handled.
"""

from dataclasses import dataclass
from functools import cached_property

from .numerics import complexity

R, B, K = 1, 2, 3
SIGMA, TAU = 1, 2
LETTER = {R: "r", B: "b", K: "k"}


class TrackError(ValueError):
    pass


class NotCrossing(TrackError):
    pass


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary: int

    def __post_init__(self):
        if self.euler > -2:
            raise ValueError("need a surface with Euler characteristic at most -2")

    @property
    def euler(self):
        return 2 - 2 * self.genus - self.boundary

    @property
    def cuffs(self):
        return 3 * self.genus - 3 + self.boundary

    @property
    def pants(self):
        return 2 * self.genus - 2 + self.boundary

    @property
    def B(self):
        return 6 * self.cuffs

    @property
    def C(self):
        return 16 * self.B ** 4

    @property
    def D(self):
        return self.C + 1

    @property
    def E(self):
        return 2 * self.D

    @property
    def F(self):
        return 7 * self.B * self.E


# ---------------------------------------------------------------- region words

def _split_word(word):
    return [(word[i], word[i + 1]) for i in range(0, len(word), 2)]


def colour_changes(word):
    """Count red/blue alternations along smooth runs of one boundary cycle."""
    pieces = _split_word(word)
    if not pieces:
        return 0
    breaks = [i for i, (_, t) in enumerate(pieces) if t != "-"]
    if not breaks:
        seq = [c for c, _ in pieces if c in "rb"]
        return sum(1 for i in range(len(seq)) if seq[i] != seq[i - 1]) if len(seq) > 1 else 0
    start = breaks[0] + 1
    pieces = pieces[start:] + pieces[:start]
    total, run = 0, []
    for c, t in pieces:
        if c in "rb":
            run.append(c)
        if t != "-":
            total += sum(1 for i in range(1, len(run)) if run[i] != run[i - 1])
            run = []
    return total


def _components(boundary):
    return [boundary] if isinstance(boundary, str) else list(boundary)


def region_index4(boundary, chi=1):
    """Four times the index: 4*chi - 2*cusps - corners."""
    words = _components(boundary)
    for w in words:
        if len(w) % 2 or any(w[i] not in "rbgk" for i in range(0, len(w), 2)) \
                or any(w[i] not in "-LV" for i in range(1, len(w), 2)):
            raise TrackError(f"malformed region word {w!r}")
    return 4 * chi - sum(2 * w.count("V") + w.count("L") for w in words)


def is_cusped_bigon(boundary, chi=1):
    words = _components(boundary)
    return chi == 1 and len(words) == 1 and words[0].count("V") == 2 and "L" not in words[0]


def is_legal_region(boundary, chi=1):
    words = _components(boundary)
    changes = sum(colour_changes(w) for w in words)
    if is_cusped_bigon(words, chi):
        return changes >= 1
    return changes >= region_index4(words, chi)


# ---------------------------------------------------------------- the pair

class TrackPair:
    """Frozen combinatorial union of two train tracks on a surface."""

    def __init__(self, surface, vert, rot, col, tag, areg, rchi):
        self.surface = surface
        self.vert = vert          # dart -> vertex
        self.rot = rot            # vertex -> tuple of darts anticlockwise
        self.col = col            # edge -> colour
        self.tag = tag            # edge -> creation stamp
        self.areg = areg          # dart -> region of the angle after it
        self.rchi = rchi          # region -> Euler characteristic
        nxt = [0] * len(vert)
        pos = [0] * len(vert)
        for darts in rot:
            n = len(darts)
            for i, d in enumerate(darts):
                nxt[d] = darts[(i + 1) % n]
                pos[d] = i
        self.nxt = nxt
        self.pos = pos

    @cached_property
    def key(self):
        return (self.surface, tuple(self.vert), tuple(self.rot), tuple(self.col), tuple(self.tag),
                tuple(self.areg), tuple(sorted(self.rchi.items())))

    def __eq__(self, other):
        return isinstance(other, TrackPair) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    # ---- basic shape
    @property
    def num_edges(self):
        return len(self.col)

    @property
    def num_vertices(self):
        return len(self.rot)

    def edge_ends(self, e):
        return self.vert[2 * e], self.vert[2 * e + 1]

    def vertex_kind(self, v):
        darts = self.rot[v]
        n = len(darts)
        if n == 2:
            return "smooth"
        if n == 4:
            return "crossing"
        cl, cr, cs = (self.col[d >> 1] for d in darts)
        if cl == K:
            if cr == K and cs == K:
                return "shared"
            if K in (cr, cs) and R in (cr, cs):
                return "sigma"
            if K in (cr, cs) and B in (cr, cs):
                return "tau"
            if {cr, cs} == {R, B}:
                return "divergence"
        elif cl == cr == cs:
            return "red" if cl == R else "blue"
        return "invalid"

    @cached_property
    def kinds(self):
        return [self.vertex_kind(v) for v in range(self.num_vertices)]

    def uses(self, d, X):
        return bool(self.col[d >> 1] & X)

    def continuation(self, d, X):
        """The dart through which track X leaves the tail of d, arriving via d."""
        v = self.vert[d]
        darts = self.rot[v]
        n = len(darts)
        if n == 2:
            return darts[1 - self.pos[d]]
        if n == 4:
            return darts[(self.pos[d] + 2) % 4]
        others = [x for x in darts if x != d and self.col[x >> 1] & X]
        if len(others) != 1:
            raise TrackError(f"track {X} has no smooth continuation at vertex {v}")
        return others[0]

    def is_switch(self, v, X):
        darts = self.rot[v]
        return len(darts) == 3 and all(self.col[d >> 1] & X for d in darts)

    # ---- branches of each track
    @cached_property
    def _tracks(self):
        return {X: self._extract(X) for X in (SIGMA, TAU)}

    def _extract(self, X):
        col, vert, tag = self.col, self.vert, self.tag
        seen = [False] * self.num_edges
        raw = []
        for v, darts in enumerate(self.rot):
            if not self.is_switch(v, X):
                continue
            for d in darts:
                if seen[d >> 1]:
                    continue
                chain = [d]
                seen[d >> 1] = True
                cur = d
                while True:
                    head = cur ^ 1
                    h = vert[head]
                    if self.is_switch(h, X):
                        break
                    cur = self.continuation(head, X)
                    seen[cur >> 1] = True
                    chain.append(cur)
                raw.append((tuple(chain), False))
        for e in range(self.num_edges):
            if col[e] & X and not seen[e]:
                chain = [2 * e]
                seen[e] = True
                cur = 2 * e
                while True:
                    cur = self.continuation(cur ^ 1, X)
                    if cur == 2 * e:
                        break
                    if seen[cur >> 1]:
                        raise TrackError("inconsistent closed branch")
                    seen[cur >> 1] = True
                    chain.append(cur)
                raw.append((tuple(chain), True))
        raw.sort(key=lambda item: min(tag[d >> 1] for d in item[0]))
        edge_branch = [-1] * self.num_edges
        for i, (chain, _) in enumerate(raw):
            for d in chain:
                edge_branch[d >> 1] = i
        switches = []
        for v, darts in enumerate(self.rot):
            if self.is_switch(v, X):
                switches.append((v, tuple(edge_branch[d >> 1] for d in darts)))
        return raw, edge_branch, switches

    def branches(self, X):
        return self._tracks[X][0]

    def edge_branch(self, X):
        return self._tracks[X][1]

    def switches(self, X):
        """(vertex, (large, small_right, small_left)) branch indices per switch."""
        return self._tracks[X][2]

    def num_branches(self, X):
        return len(self._tracks[X][0])

    # ---- shared structure
    @cached_property
    def shared_edges(self):
        return [e for e, c in enumerate(self.col) if c == K]

    @cached_property
    def shared_switches(self):
        return [v for v, k in enumerate(self.kinds) if k == "shared"]

    @property
    def tightness(self):
        return len(self.shared_edges) + len(self.shared_switches)

    def is_isolated(self, e):
        a, b = self.edge_ends(e)
        return self.kinds[a] == "divergence" and self.kinds[b] == "divergence" and \
            self.rot[a][0] >> 1 == e and self.rot[b][0] >> 1 == e

    @property
    def is_clean(self):
        return not any(self.is_isolated(e) for e in self.shared_edges)

    @property
    def is_crossing(self):
        return not self.shared_edges and not self.shared_switches

    @cached_property
    def crossings(self):
        return [v for v, k in enumerate(self.kinds) if k == "crossing"]

    # ---- faces and regions
    @cached_property
    def faces(self):
        seen = [False] * len(self.vert)
        out = []
        for d0 in range(len(self.vert)):
            if seen[d0]:
                continue
            face = []
            d = d0
            while not seen[d]:
                seen[d] = True
                face.append(d)
                d = self.nxt[d ^ 1]
            out.append(tuple(face))
        return out

    def transition(self, d):
        """Transition letter of the angle anticlockwise after dart d."""
        darts = self.rot[self.vert[d]]
        if len(darts) == 4:
            return "L"
        if len(darts) == 3 and d == darts[1]:
            return "V"
        return "-"

    def face_word(self, face):
        return "".join(LETTER[self.col[d >> 1]] + self.transition(d ^ 1) for d in face)

    def face_region(self, face):
        labels = {self.areg[d ^ 1] for d in face}
        if len(labels) != 1:
            raise TrackError(f"face crosses regions {labels}")
        return labels.pop()

    @cached_property
    def regions(self):
        """region id -> (chi, [boundary words])."""
        out = {r: (chi, []) for r, chi in self.rchi.items()}
        for face in self.faces:
            out[self.face_region(face)][1].append(self.face_word(face))
        return out

    def euler_check(self):
        return self.num_vertices - self.num_edges + sum(self.rchi.values()) == self.surface.euler

    def index_sum4(self):
        return sum(region_index4(words, chi) for chi, words in self.regions.values() if words)

    def describe(self):
        """Debug dump: switch table, edge table, region words."""
        lines = [f"surface g={self.surface.genus} b={self.surface.boundary}"]
        for v, darts in enumerate(self.rot):
            lines.append(f"v{v} {self.kinds[v]}: " + " ".join(
                f"e{d >> 1}{'+-'[d & 1]}" for d in darts))
        for e, c in enumerate(self.col):
            a, b = self.edge_ends(e)
            lines.append(f"e{e} {LETTER[c]} v{a}->v{b} tag={self.tag[e]}")
        for r, (chi, words) in sorted(self.regions.items()):
            lines.append(f"R{r} chi={chi}: {' | '.join(words)}")
        return "\n".join(lines)


# ---------------------------------------------------------------- checks

def classification_errors(pair):
    errs = []
    for v, kind in enumerate(pair.kinds):
        darts = pair.rot[v]
        cols = [pair.col[d >> 1] for d in darts]
        if kind == "invalid":
            errs.append(f"vertex {v} has illegal colours {cols}")
        elif kind == "crossing":
            if not ((cols[0], cols[1], cols[2], cols[3]) in ((R, B, R, B), (B, R, B, R))):
                errs.append(f"crossing {v} does not alternate: {cols}")
        elif kind == "smooth":
            if cols[0] != cols[1]:
                errs.append(f"smooth vertex {v} changes colour")
    return errs


def illegal_regions(pair):
    return [(r, chi, words) for r, (chi, words) in pair.regions.items()
            if words and not is_legal_region(words, chi)]


def check_tight(pair):
    return not classification_errors(pair) and not illegal_regions(pair) and pair.euler_check()


def classify(pair):
    return pair.is_clean, pair.is_crossing, pair.tightness


def check_weighting(pair, X, w):
    if any(x < 0 for x in w):
        return False
    return all(w[a] == w[b] + w[c] for _, (a, b, c) in pair.switches(X))


# ---------------------------------------------------------------- weighted pairs

class WeightedPair:
    """A tight pair with integer weights on each track, in branch order."""

    __slots__ = ("pair", "mu", "nu")

    def __init__(self, pair, mu, nu):
        if len(mu) != pair.num_branches(SIGMA) or len(nu) != pair.num_branches(TAU):
            raise TrackError("weight vector does not match branch count")
        self.pair = pair
        self.mu = tuple(mu)
        self.nu = tuple(nu)

    def weights(self, X):
        return self.mu if X == SIGMA else self.nu

    def shared_weights(self, e):
        p = self.pair
        return self.mu[p.edge_branch(SIGMA)[e]], self.nu[p.edge_branch(TAU)[e]]

    def is_realizable(self):
        return check_weighting(self.pair, SIGMA, self.mu) and check_weighting(self.pair, TAU, self.nu)

    def __repr__(self):
        return f"WeightedPair(mu={list(self.mu)}, nu={list(self.nu)})"


def crossing_matrix(pair):
    M = {}
    sb, tb = pair.edge_branch(SIGMA), pair.edge_branch(TAU)
    for v in pair.crossings:
        darts = pair.rot[v]
        r = [d for d in darts if pair.col[d >> 1] == R][0]
        b = [d for d in darts if pair.col[d >> 1] == B][0]
        key = (sb[r >> 1], tb[b >> 1])
        M[key] = M.get(key, 0) + 1
    return M


def crossing_sum(wp):
    return sum(wp.mu[a] * m * wp.nu[b] for (a, b), m in crossing_matrix(wp.pair).items())


def crossing_pairing(wp):
    if not wp.pair.is_crossing:
        raise NotCrossing("pair still has shared branches or switches")
    return crossing_sum(wp)


def branch_complexity(wp, e):
    m, n = wp.shared_weights(e)
    return complexity(m) + complexity(n)
