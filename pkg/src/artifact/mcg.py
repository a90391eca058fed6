"""Word problem via Delta-coordinates, and fast products in GL(d, Z)."""

import re

from .coordinates import _check_surface, delta_identity, standard_pair_from_delta, twist_power_delta
from .intersection import fast_intersection, naive_intersection
from .numerics import big

# generator id -> Delta curve it twists about
GENERATORS = {"Ta": "alpha", "Tb": "beta", "Tc": "gamma"}

# boundary classes c1, c2, c3 (c4 = -c1 - c2 - c3) span H_1 of the
# four-holed sphere; the intersection form vanishes on them
HOMOLOGY_CLASS = {"alpha": (1, 1, 0), "beta": (0, 1, 1), "gamma": (1, 0, 1)}
HOMOLOGY_RANK = 3


class WordError(ValueError):
    pass


_TOKEN = re.compile(r"([A-Za-z_]\w*)(?:\^(-?\d+))?$")


def parse_word(text, exponents=False):
    """Tokens in written order as (generator, exponent).

    The written word g1 g2 ... gn denotes the composite g1 o g2 o ... o gn,
    so the last token acts first.  Without `exponents` every power must be
    1 or -1.
    """
    out = []
    for tok in text.replace(",", " ").replace("*", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad token {tok!r}")
        gen, p = m.group(1), int(m.group(2) or 1)
        if gen not in GENERATORS:
            raise WordError(f"unknown generator {gen!r}")
        if not exponents and p not in (1, -1):
            raise WordError(f"exponent {p} needs an exponent word")
        if p:
            out.append((gen, p))
    return out


def format_word(word):
    return " ".join(g if p == 1 else f"{g}^{p}" for g, p in word)


def inverse_word(word):
    return [(g, -p) for g, p in reversed(word)]


def generator_delta(surface, gen, p=1):
    return twist_power_delta(surface, GENERATORS[gen], p)


def _transpose(M):
    return [list(r) for r in zip(*M)]


def dcoord(surface, word, intersect=fast_intersection):
    """Delta(f) for the composite f of the word, by halving."""
    _check_surface(surface)
    word = list(word)
    if not word:
        return delta_identity(surface)
    if len(word) == 1:
        return generator_delta(surface, *word[0])
    k = len(word) // 2
    M = dcoord(surface, word[: len(word) - k], intersect)
    N = dcoord(surface, word[len(word) - k:], intersect)
    rows = [tuple(r) for r in M]                 # Delta(g^-1(delta))
    cols = [tuple(c) for c in _transpose(N)]     # Delta(h(eps))
    return [[int(intersect(standard_pair_from_delta(surface, a, b))) for b in cols] for a in rows]


def dcoord_sequential(surface, word, intersect=naive_intersection):
    """Delta(f) by peeling one letter at a time (a slow cross-check)."""
    _check_surface(surface)
    D = delta_identity(surface)
    for gen, p in reversed(word):
        G = generator_delta(surface, gen, p)
        rows = [tuple(r) for r in G]
        cols = [tuple(c) for c in _transpose(D)]
        D = [[int(intersect(standard_pair_from_delta(surface, a, b))) for b in cols] for a in rows]
    return D


# ---------------------------------------------------------------- homology

def _intersection_form(u, v):
    return 0


def transvection(surface, gen, p=1):
    """Action on H_1 of T_c^p: v -> v + p <c, v> c."""
    _check_surface(surface)
    c = HOMOLOGY_CLASS[GENERATORS[gen]]
    n = HOMOLOGY_RANK
    M = identity_matrix(n)
    for col in range(n):
        e = [int(i == col) for i in range(n)]
        k = p * _intersection_form(c, e)
        for row in range(n):
            M[row][col] += k * c[row]
    return M


def homology_action(surface, word):
    mats = [transvection(surface, g, p) for g, p in word]
    return product(HOMOLOGY_RANK, mats)


def is_identity(surface, word, intersect=fast_intersection):
    """Decide whether the word represents the identity mapping class."""
    if homology_action(surface, word) != identity_matrix(HOMOLOGY_RANK):
        return False
    return dcoord(surface, word, intersect) == delta_identity(surface)


def exponent_is_identity(surface, word):
    """is_identity for words whose letters carry arbitrary integer powers."""
    return is_identity(surface, word)


# ---------------------------------------------------------------- matrices

def identity_matrix(d):
    return [[int(i == j) for j in range(d)] for i in range(d)]


def matmul(A, B):
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def elementary(d, i, j, s=1):
    """I + s e_ij."""
    if i == j:
        raise ValueError("elementary matrices are off-diagonal")
    M = identity_matrix(d)
    M[i][j] = s
    return M


def as_elementary(E):
    """(i, j, s) with E = I + s e_ij, or None."""
    d = len(E)
    found = None
    for i in range(d):
        for j in range(d):
            want = int(i == j)
            if E[i][j] != want:
                if i == j or found is not None:
                    return None
                found = (i, j, E[i][j])
    return found


def product(d, matrices, relaxed=True):
    """Left-to-right product by halving, so merges multiply balanced sizes."""
    mats = [[[big(x) for x in row] for row in M] for M in matrices]
    if not relaxed:
        for M in mats:
            e = as_elementary(M)
            if e is None or abs(e[2]) != 1:
                raise ValueError("not an elementary matrix")

    def rec(lo, hi):
        if hi - lo == 0:
            return [[big(x) for x in row] for row in identity_matrix(d)]
        if hi - lo == 1:
            return mats[lo]
        mid = (lo + hi) // 2
        return matmul(rec(lo, mid), rec(mid, hi))

    return [[int(x) for x in row] for row in rec(0, len(mats))]


def elementary_product(d, matrices, relaxed=False):
    return product(d, matrices, relaxed)


def sequential_product(d, matrices):
    M = identity_matrix(d)
    for A in matrices:
        M = matmul(M, A)
    return M


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def zeckendorf(p):
    """Indices k (F_1 = F_2 = 1) of the greedy non-consecutive expansion of p."""
    if p <= 0:
        raise ValueError("p must be positive")
    fibs = [(1, 2)]
    while fibs[-1][0] <= p:
        k = fibs[-1][1] + 1
        fibs.append((fib(k), k))
    out = []
    for f, k in reversed(fibs):
        if f <= p:
            out.append(k)
            p -= f
    return out


def elementary_power(d, E, p):
    """Elementary matrices whose left-to-right product is E^p.

    Uses a third coordinate m: walking (x_j, x_m) through Fibonacci pairs
    and dipping into x_i at the Zeckendorf indices adds F_k multiples of
    x_m's and x_j's coefficients; running the walk once with a leading
    x_m += x_j and once without cancels everything except p x_j.
    """
    if d < 3:
        raise ValueError("the Fibonacci construction needs d >= 3")
    e = as_elementary(E)
    if e is None or abs(e[2]) != 1:
        raise ValueError("not an elementary matrix")
    i, j, s = e
    p *= s
    if p == 0:
        return []
    if p in (1, -1):
        return [elementary(d, i, j, p)]
    sign = 1 if p > 0 else -1
    m = next(x for x in range(d) if x not in (i, j))
    idx = set(zeckendorf(abs(p)))
    top = max(idx)
    # ops in the order they act on a column vector
    # step t alternates x_j += x_m and x_m += x_j; afterwards the x_m0
    # coefficient of the coordinate just changed is F_{t+1}
    walk = []
    k = 1
    while k < top:
        if len(walk) % 2 == 0:
            walk.append(((j, m), []))
        else:
            walk.append(((m, j), []))
        k += 1
        if k in idx:
            walk[-1][1].append(j if len(walk) % 2 == 1 else m)

    def run(dip_sign, prefix):
        ops = list(prefix)
        for (a, b), dips in walk:
            ops.append((a, b, 1))
            for src in dips:
                ops.append((i, src, dip_sign))
        for (a, b), _ in reversed(walk):
            ops.append((a, b, -1))
        ops += [(a, b, -c) for a, b, c in reversed(prefix)]
        return ops

    ops = run(sign, [(m, j, 1)]) + run(-sign, [])
    # the product lists the first acting matrix last
    return [elementary(d, a, b, c) for a, b, c in reversed(ops)]
