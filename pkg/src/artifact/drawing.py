"""Author union graphs as plane drawings.

Vertices get coordinates and edges are polylines.  The anticlockwise dart
order at each vertex is read off the direction of the first segment, and
every puncture is located by casting a horizontal ray to the nearest edge.
Portals glue pairs of edge stubs, which lets a planar picture describe a
surface with genus.
"""

import math

from .ribbon import Builder
from .traintrack import R, TrackError


class Drawing:
    def __init__(self, surface):
        self.surface = surface
        self.pos = {}
        self.large = {}
        self.edges = []
        self.punctures = []
        self.portals = []

    def vertex(self, name, x, y, large=None):
        """`large` names the (edge, end) whose dart is the large branch-end."""
        self.pos[name] = (x, y)
        if large is not None:
            self.large[name] = large
        return name

    def edge(self, name, u, v, colour, via=(), weights=None):
        self.edges.append((name, u, v, colour, list(via), weights or {}))
        return name

    def puncture(self, x, y):
        self.punctures.append((x, y))

    def portal(self, a, b):
        """Glue the free end of stub edge `a` (its v end) to that of stub `b`."""
        self.portals.append((a, b))

    def _polyline(self, idx):
        _, u, v, _, via, _ = self.edges[idx]
        return [self.pos[u]] + via + ([self.pos[v]] if v is not None else [])

    def build(self, colour_of=None):
        """Freeze into a Builder; `colour_of(name, colour)` may recolour edges."""
        b = Builder(self.surface)
        b.forms = None
        names = {}
        darts_at = {name: [] for name in self.pos}
        glued = {}
        for a, c in self.portals:
            glued[a] = c
            glued[c] = a
        eid = {}
        for i, (name, u, v, colour, via, _) in enumerate(self.edges):
            if name in eid:
                raise TrackError(f"duplicate edge {name}")
            eid[name] = i
        stub_done = set()
        for i, (name, u, v, colour, via, _) in enumerate(self.edges):
            if name in stub_done:
                continue
            pts = self._polyline(i)
            if v is None:
                other = glued[name]
                j = eid[other]
                opts = self._polyline(j)
                stub_done.add(other)
                e = b.new_edge(colour, tag=i)
                names[name] = e
                names[other] = e
                darts_at[u].append((_angle(pts[0], pts[1]), 2 * e, (name, 0)))
                w = self.edges[j][1]
                darts_at[w].append((_angle(opts[0], opts[1]), 2 * e + 1, (other, 0)))
                continue
            e = b.new_edge(colour, tag=i)
            names[name] = e
            darts_at[u].append((_angle(pts[0], pts[1]), 2 * e, (name, 0)))
            darts_at[v].append((_angle(pts[-1], pts[-2]), 2 * e + 1, (name, 1)))
        b.next_tag = len(self.edges)
        vids = {}
        for name, items in darts_at.items():
            if not items:
                continue
            items.sort()
            darts = [d for _, d, _ in items]
            if name in self.large:
                key = self.large[name]
                keys = [k for _, _, k in items]
                if isinstance(key, str):
                    key = (key, 0 if self.edges[eid[key]][1] == name else 1)
                i = keys.index(key)
                darts = darts[i:] + darts[:i]
            elif len(darts) == 4:
                i = next(k for k, d in enumerate(darts) if b.col[d >> 1] == R)
                darts = darts[i:] + darts[:i]
            vids[name] = b.new_vertex(darts)
        holes = {}
        for p in self.punctures:
            d = self._locate(p, names, eid)
            holes[d] = holes.get(d, 0) + 1
        _label_faces(b, holes)
        if colour_of is not None:
            for name, e in names.items():
                if e in b.col:
                    c = colour_of(name, b.col[e])
                    if c != b.col[e]:
                        b.recolour(e, c)
        return b, names

    def _locate(self, p, names, eid):
        """Dart whose right-hand face contains the point p."""
        second = {c for _, c in self.portals}
        for sign in (1, -1):
            best = None
            for i, (name, u, v, colour, via, _) in enumerate(self.edges):
                d = 2 * names[name] + (name in second)
                pts = self._polyline(i)
                for a, c in zip(pts, pts[1:]):
                    hit = _ray_hit(p, a, c, sign)
                    if hit is not None and (best is None or hit < best[0]):
                        down = c[1] < a[1]
                        best = (hit, d if down == (sign > 0) else d ^ 1)
            if best is not None:
                return best[1]
        raise TrackError(f"puncture at {p} sees no edge")


def _angle(a, b):
    return math.atan2(b[1] - a[1], b[0] - a[0]) % (2 * math.pi)


def _ray_hit(p, a, c, sign):
    """Distance along the ray from p in direction (sign, 0) to segment ac."""
    (px, py), (ax, ay), (cx, cy) = p, a, c
    if (ay > py) == (cy > py):
        return None
    t = (py - ay) / (cy - ay)
    x = ax + t * (cx - ax)
    dist = (x - px) * sign
    return dist if dist > 0 else None


def _label_faces(b, holes):
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
        r = b.new_region(1 - sum(holes.get(x, 0) for x in face))
        for x in face:
            b.areg[x ^ 1] = r
