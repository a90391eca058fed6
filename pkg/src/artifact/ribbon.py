"""Mutable ribbon-graph builder used to construct and rewrite track pairs."""

from .traintrack import K, SIGMA, TAU, TrackError, TrackPair


class Builder:
    def __init__(self, surface):
        self.surface = surface
        self.vert = {}
        self.rot = {}
        self.col = {}
        self.tag = {}
        self.areg = {}
        self.parent = {}
        self.chi = {}
        self.forms = None
        self.next_edge = 0
        self.next_vertex = 0
        self.next_tag = 0
        self.next_region = 0

    # ---- construction
    @classmethod
    def thaw(cls, pair, track_forms=True):
        b = cls(pair.surface)
        b.vert = dict(enumerate(pair.vert))
        b.rot = {v: list(darts) for v, darts in enumerate(pair.rot)}
        b.col = dict(enumerate(pair.col))
        b.tag = dict(enumerate(pair.tag))
        b.areg = dict(enumerate(pair.areg))
        b.parent = {r: r for r in pair.rchi}
        b.chi = dict(pair.rchi)
        b.next_edge = pair.num_edges
        b.next_vertex = pair.num_vertices
        b.next_tag = max(pair.tag, default=-1) + 1
        b.next_region = max(pair.rchi, default=-1) + 1
        if track_forms:
            b.forms = {}
            for X in (SIGMA, TAU):
                eb = pair.edge_branch(X)
                b.forms[X] = {e: {eb[e]: 1} for e, c in enumerate(pair.col) if c & X}
        return b

    def new_edge(self, colour, forms=None, tag=None):
        e = self.next_edge
        self.next_edge += 1
        self.col[e] = colour
        if tag is None:
            tag = self.next_tag
            self.next_tag += 1
        self.tag[e] = tag
        if self.forms is not None:
            for X in (SIGMA, TAU):
                if colour & X:
                    self.forms[X][e] = dict(forms[X]) if forms else {}
        return e

    def new_vertex(self, darts):
        v = self.next_vertex
        self.next_vertex += 1
        self.rot[v] = list(darts)
        for d in darts:
            self.vert[d] = v
        return v

    def new_region(self, chi):
        r = self.next_region
        self.next_region += 1
        self.parent[r] = r
        self.chi[r] = chi
        return r

    def find(self, r):
        while self.parent[r] != r:
            self.parent[r] = self.parent[self.parent[r]]
            r = self.parent[r]
        return r

    def merge_regions(self, regions, bands=1):
        """Glue regions together along `bands` strips; returns the new root."""
        roots = {self.find(r) for r in regions}
        total = sum(self.chi[r] for r in roots) - bands
        root = min(roots)
        for r in roots:
            self.parent[r] = root
            if r != root:
                del self.chi[r]
        self.chi[root] = total
        return root

    def remove_vertex(self, v):
        for d in self.rot.pop(v):
            del self.vert[d]

    # ---- navigation helpers
    def next_ccw(self, d):
        darts = self.rot[self.vert[d]]
        return darts[(darts.index(d) + 1) % len(darts)]

    def prev_ccw(self, d):
        darts = self.rot[self.vert[d]]
        return darts[darts.index(d) - 1]

    # ---- deletion
    def remove_edge(self, e):
        d0, d1 = 2 * e, 2 * e + 1
        left = self.areg[d0]
        right = self.areg[self.prev_ccw(d0)]
        root = self.merge_regions([left, right])
        for d in (d0, d1):
            v = self.vert[d]
            darts = self.rot[v]
            i = darts.index(d)
            darts.pop(i)
            del self.vert[d]
            del self.areg[d]
            if darts:
                self.areg[darts[i - 1]] = root
            else:
                del self.rot[v]
                self.chi[self.find(root)] += 1
        del self.col[e]
        del self.tag[e]
        if self.forms is not None:
            for X in (SIGMA, TAU):
                self.forms[X].pop(e, None)

    def recolour(self, e, colour):
        if colour == 0:
            self.remove_edge(e)
            return
        self.col[e] = colour
        if self.forms is not None:
            for X in (SIGMA, TAU):
                if not colour & X:
                    self.forms[X].pop(e, None)

    # ---- normalisation
    def merge_bivalent(self, v):
        p, q = self.rot[v]
        if p ^ 1 == q:
            return False
        ep, eq = p >> 1, q >> 1
        if self.col[ep] != self.col[eq]:
            raise TrackError(f"colour change at smooth vertex {v}")
        far = q ^ 1
        y = self.vert[far]
        darts = self.rot[y]
        darts[darts.index(far)] = p
        self.vert[p] = y
        self.areg[p] = self.areg[far]
        del self.rot[v]
        for d in (q, far):
            del self.vert[d]
            self.areg.pop(d, None)
        if self.tag[eq] < self.tag[ep]:
            self.tag[ep] = self.tag[eq]
            if self.forms is not None:
                for X in (SIGMA, TAU):
                    if eq in self.forms[X]:
                        self.forms[X][ep] = self.forms[X][eq]
        del self.col[eq]
        del self.tag[eq]
        if self.forms is not None:
            for X in (SIGMA, TAU):
                self.forms[X].pop(eq, None)
        return True

    def normalize(self):
        changed = True
        while changed:
            changed = False
            for v in list(self.rot):
                if v in self.rot and len(self.rot[v]) == 2 and self.merge_bivalent(v):
                    changed = True
        for v, darts in self.rot.items():
            if len(darts) == 3:
                large, sr, sl = (self.col[d >> 1] for d in darts)
                if not (large == sr == sl or (large == K and sr | sl == K)):
                    raise TrackError(f"vertex {v} left in an illegal state {(large, sr, sl)}")

    # ---- freezing
    def freeze(self):
        vmap = {v: i for i, v in enumerate(sorted(self.rot))}
        edges = sorted(self.col)
        emap = {e: i for i, e in enumerate(edges)}
        n = 2 * len(edges)
        vert = [0] * n
        areg = [0] * n
        roots = {}

        def reg(r):
            r = self.find(r)
            if r not in roots:
                roots[r] = len(roots)
            return roots[r]

        for d, v in self.vert.items():
            nd = 2 * emap[d >> 1] + (d & 1)
            vert[nd] = vmap[v]
            areg[nd] = reg(self.areg[d])
        rot = [tuple(2 * emap[d >> 1] + (d & 1) for d in self.rot[v]) for v in sorted(self.rot)]
        col = [self.col[e] for e in edges]
        # only the order of tags matters, so store ranks
        rank = {t: i for i, t in enumerate(sorted({self.tag[e] for e in edges}))}
        tag = [rank[self.tag[e]] for e in edges]
        if roots:
            rchi = {i: self.chi[r] for r, i in roots.items()}
        else:
            rchi = {0: sum(self.chi[self.find(r)] for r in {self.find(r) for r in self.parent})}
        pair = TrackPair(self.surface, vert, rot, col, tag, areg, rchi)
        return pair, emap

    def matrices(self, old_pair, new_pair, emap):
        """Read the update matrices off the per-edge linear forms."""
        inv = {i: e for e, i in emap.items()}
        mats = {}
        for X in (SIGMA, TAU):
            width = old_pair.num_branches(X)
            rows = []
            for chain, _ in new_pair.branches(X):
                edge = min((inv[d >> 1] for d in chain), key=lambda e: self.tag[e])
                form = self.forms[X][edge]
                row = [0] * width
                for j, c in form.items():
                    row[j] += c
                rows.append(tuple(row))
            mats[X] = tuple(rows)
        return mats[SIGMA], mats[TAU]

    def edge_forms(self, X, emap):
        inv = {i: e for e, i in emap.items()}
        return {i: self.forms[X][e] for i, e in inv.items() if e in self.forms[X]}


def build_from_spec(surface, vertices, edges, punctures=(), genus_check=True):
    """Build a pair from explicit data.

    `edges` is a list of (colour, tag) and dart 2e / 2e+1 are its ends;
    `vertices` lists darts anticlockwise per vertex; `punctures` lists darts
    whose following angle lies in a region containing one boundary component.
    Every face becomes its own region.
    """
    b = Builder(surface)
    for colour, tag in edges:
        b.new_edge(colour, tag=tag)
    b.next_tag = max((t for _, t in edges), default=-1) + 1
    for darts in vertices:
        b.new_vertex(darts)
    n = 2 * len(edges)
    nxt = {}
    for darts in b.rot.values():
        for i, d in enumerate(darts):
            nxt[d] = darts[(i + 1) % len(darts)]
    if set(nxt) != set(range(n)):
        raise TrackError("every dart must be attached to exactly one vertex")
    seen = set()
    faces = []
    for d0 in range(n):
        if d0 in seen:
            continue
        face, d = [], d0
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = nxt[d ^ 1]
        faces.append(face)
    holes = {}
    for p in punctures:
        holes[p] = holes.get(p, 0) + 1
    for face in faces:
        angles = [d ^ 1 for d in face]
        r = b.new_region(1 - sum(holes.get(a, 0) for a in angles))
        for a in angles:
            b.areg[a] = r
    pair, _ = b.freeze()
    if genus_check and not pair.euler_check():
        raise TrackError("graph is not cellularly embedded in the surface")
    return pair
