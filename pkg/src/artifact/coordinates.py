"""Delta-coordinates on the four-holed sphere.

The cuff alpha, its dual beta and double dual gamma = T_alpha(beta) form
Delta.  A multicurve is a pair (p, q) up to sign: p counts its arcs across
the beta side and q its twisting, so alpha = (0, 1), beta = (1, 0) and
gamma = (1, 2).  Pure mapping classes act through 2x2 integer matrices and
iota((p, q), (r, s)) = 2 |p s - q r|.

Branch weights of the standard template use (m, t) = (2|p|, q sgn p).
"""

from .moves import make_clean
from .numerics import big
from .standard import S04, s04_pair
from .traintrack import Surface

SUPPORTED = (S04,)
NAMES = ("alpha", "beta", "gamma")
CURVES = ((0, 1), (1, 0), (1, 2))
# T_c(x) = x + 2 det(x, c) c
TWISTS = {"alpha": ((1, 0), (2, 1)), "beta": ((1, -2), (0, 1)), "gamma": ((5, -2), (8, -3))}


class UnsupportedSurface(ValueError):
    pass


class InvalidCoordinates(ValueError):
    pass


def _check_surface(surface):
    if surface != S04:
        raise UnsupportedSurface(f"no coordinate tables for S_{surface.genus},{surface.boundary}")


def _iota(a, b):
    return 2 * abs(a[0] * b[1] - a[1] * b[0])


def _act(M, c):
    (a, b), (c_, d) = M
    p, q = c
    return (a * p + b * q, c_ * p + d * q)


def _matpow(M, k):
    (a, b), (c, d) = M
    # every twist matrix is unipotent, so M^k = I + k (M - I)
    return ((1 + k * (a - 1), k * b), (k * c, 1 + k * (d - 1)))


def curve_delta(c):
    """Delta-vector of the multicurve (p, q)."""
    return tuple(_iota(d, c) for d in CURVES)


def delta_to_curve(dv):
    """Inverse of curve_delta with p >= 0 (and q > 0 when p = 0)."""
    ok, why = validate_delta(S04, dv)
    if not ok:
        raise InvalidCoordinates(why)
    a, b, c = dv
    p = a // 2
    q = b // 2
    # sign of q: iota(gamma, (p, q)) = 2 |q - 2p|
    if p and abs(q - 2 * p) * 2 != c:
        q = -q
    return (big(p), big(q))


def validate_delta(surface, dv, strict=False):
    """(ok, reason) for a candidate Delta-vector."""
    _check_surface(surface)
    if len(dv) != 3:
        return False, f"expected 3 entries, got {len(dv)}"
    if any(x < 0 for x in dv):
        return False, "negative entry"
    if any(x % 2 for x in dv):
        return False, "every curve meets a cuff, dual or double dual an even number of times"
    a, b, c = (x // 2 for x in dv)
    if not any(dv):
        return (not strict), "empty multicurve"
    if not any(abs(q - 2 * a) == c for q in (b, -b)):
        return False, "no twist parameter matches the double dual entry"
    return True, ""


def delta_identity(surface):
    _check_surface(surface)
    return [list(curve_delta(e)) for e in CURVES]


def delta_of_curves(images):
    """Delta matrix whose column eps is the Delta-vector of images[eps]."""
    cols = [curve_delta(c) for c in images]
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(CURVES))]


def twist_power_delta(surface, zeta, k):
    """Delta(T_zeta^k)."""
    _check_surface(surface)
    if zeta not in TWISTS:
        raise UnsupportedSurface(f"no twist table for {zeta!r}")
    M = _matpow(TWISTS[zeta], k)
    return delta_of_curves([_act(M, e) for e in CURVES])


def delta_to_mst(surface, dv):
    """(m, t) coordinates about the cuff: strands across it and their twist."""
    _check_surface(surface)
    p, q = delta_to_curve(dv)
    return [(2 * p, q if p else 0)]


def mt_of(c):
    p, q = c
    if p < 0:
        p, q = -p, -q
    if p == 0:
        return (0, abs(q))
    return (2 * p, q)


def standard_pair_from_delta(surface, da, db):
    """Clean tight weighted pair carrying the two multicurves."""
    _check_surface(surface)
    wp = s04_pair(mt_of(delta_to_curve(da)), mt_of(delta_to_curve(db)))
    return make_clean(wp)[0]


def standard_pair_count(genus):
    """Template choices on a closed surface: 14 per cuff and 16 per pants."""
    if genus < 2:
        raise ValueError("closed surfaces of genus at least two only")
    return 14 ** (3 * genus - 3) * 16 ** (2 * genus - 2)


def surface_of(g, b):
    return Surface(g, b)
