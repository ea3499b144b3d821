"""Adaptive 2D orientation and in-circle predicates.

Both predicates evaluate in double precision first and fall back to exact
rational arithmetic when the result is within the floating-point error bound,
so the sign they return is always the sign of the exact determinant.
"""
from fractions import Fraction

# Shewchuk's static error-bound coefficients (eps = 2**-53).
_EPS = 2.0 ** -53
_ORIENT_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_INCIRCLE_BOUND = (10.0 + 96.0 * _EPS) * _EPS


def _sign(x) -> int:
    return int(x > 0) - int(x < 0)


def orient2d(a, b, c) -> int:
    """Sign of the signed area of triangle abc: +1 counterclockwise, -1 clockwise, 0 collinear."""
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    if abs(det) > _ORIENT_BOUND * (abs(detleft) + abs(detright)):
        return _sign(det)
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (a[0], a[1], b[0], b[1], c[0], c[1]))
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def incircle(a, b, c, d) -> int:
    """+1 if d lies strictly inside the circle through a, b, c (given counterclockwise), -1 outside, 0 on it."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    bc = bdx * cdy - bdy * cdx
    ca = cdx * ady - cdy * adx
    ab = adx * bdy - ady * bdx
    det = alift * bc + blift * ca + clift * ab
    permanent = (
        (abs(bdx * cdy) + abs(bdy * cdx)) * alift
        + (abs(cdx * ady) + abs(cdy * adx)) * blift
        + (abs(adx * bdy) + abs(ady * bdx)) * clift
    )
    if abs(det) > _INCIRCLE_BOUND * permanent:
        return _sign(det)
    fa = [Fraction(v) for v in a[:2]]
    fb = [Fraction(v) for v in b[:2]]
    fc = [Fraction(v) for v in c[:2]]
    fd = [Fraction(v) for v in d[:2]]
    adx, ady = fa[0] - fd[0], fa[1] - fd[1]
    bdx, bdy = fb[0] - fd[0], fb[1] - fd[1]
    cdx, cdy = fc[0] - fd[0], fc[1] - fd[1]
    exact = (
        (adx * adx + ady * ady) * (bdx * cdy - bdy * cdx)
        + (bdx * bdx + bdy * bdy) * (cdx * ady - cdy * adx)
        + (cdx * cdx + cdy * cdy) * (adx * bdy - ady * bdx)
    )
    return _sign(exact)


def on_segment(a, b, p) -> bool:
    """True if p, already known to be collinear with a and b, lies on the closed segment ab."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def strictly_between(a, b, p) -> bool:
    """True if collinear p lies on segment ab but is neither endpoint."""
    if tuple(p[:2]) == tuple(a[:2]) or tuple(p[:2]) == tuple(b[:2]):
        return False
    return on_segment(a, b, p)


def segments_conflict(a, b, c, d) -> bool:
    """Whether closed segments ab and cd meet anywhere other than one shared endpoint.

    Collinear overlap counts as a conflict even when the segments share an endpoint.
    """
    ka, kb, kc, kd = (tuple(x[:2]) for x in (a, b, c, d))
    shared = {ka, kb} & {kc, kd}
    if len(shared) == 2:
        return True  # identical segments
    o1 = orient2d(a, b, c)
    o2 = orient2d(a, b, d)
    o3 = orient2d(c, d, a)
    o4 = orient2d(c, d, b)
    if shared:
        s = shared.pop()
        # Only a collinear overlap beyond the common endpoint can conflict.
        other_cd = d if kc == s else c
        other_ab = b if ka == s else a
        if orient2d(a, b, other_cd) == 0 and strictly_between(a, b, other_cd):
            return True
        if orient2d(c, d, other_ab) == 0 and strictly_between(c, d, other_ab):
            return True
        if o1 == o2 == 0:
            # collinear, sharing an endpoint: overlap iff the free ends lie on the same side of it
            sv = s
            u = (other_ab[0] - sv[0], other_ab[1] - sv[1])
            w = (other_cd[0] - sv[0], other_cd[1] - sv[1])
            return u[0] * w[0] + u[1] * w[1] > 0
        return False
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    if o1 == 0 and on_segment(a, b, c):
        return True
    if o2 == 0 and on_segment(a, b, d):
        return True
    if o3 == 0 and on_segment(c, d, a):
        return True
    if o4 == 0 and on_segment(c, d, b):
        return True
    return False
