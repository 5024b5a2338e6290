"""Sign kernels for the geometric predicates.

Every predicate runs in two stages: a floating-point evaluation with a
static forward error bound, falling back to exact integer arithmetic when
the bound cannot certify the sign.  The float stage assumes coordinates are
integer-valued doubles of magnitude at most 2**52, so that differences of
coordinates are computed exactly; only products and sums round.  The float
kernels return +1.0 or -1.0 when the sign is certified and 0.0 when the
exact stage must decide.

The error constants are generous upper bounds on (number of rounded
operations) * 2**-53; a randomized agreement test in the suite exercises
them near degeneracy.
"""

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


_ERR2 = 2.0 ** -50
_ERR3 = 2.0 ** -48
_ERRS1 = 2.0 ** -49
_ERRS2 = 2.0 ** -46
_ERRS3 = 2.0 ** -44


@njit(cache=True)
def orient2d_f(ax, ay, bx, by, cx, cy):
    u0 = bx - ax
    u1 = by - ay
    v0 = cx - ax
    v1 = cy - ay
    t1 = u0 * v1
    t2 = u1 * v0
    det = t1 - t2
    err = (abs(t1) + abs(t2)) * _ERR2
    if det > err:
        return 1.0
    if det < -err:
        return -1.0
    return 0.0


@njit(cache=True)
def orient3d_f(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz):
    u0 = bx - ax
    u1 = by - ay
    u2 = bz - az
    v0 = cx - ax
    v1 = cy - ay
    v2 = cz - az
    w0 = dx - ax
    w1 = dy - ay
    w2 = dz - az
    m0 = v1 * w2 - v2 * w1
    m1 = v0 * w2 - v2 * w0
    m2 = v0 * w1 - v1 * w0
    det = u0 * m0 - u1 * m1 + u2 * m2
    b0 = abs(v1 * w2) + abs(v2 * w1)
    b1 = abs(v0 * w2) + abs(v2 * w0)
    b2 = abs(v0 * w1) + abs(v1 * w0)
    err = (abs(u0) * b0 + abs(u1) * b1 + abs(u2) * b2) * _ERR3
    if det > err:
        return 1.0
    if det < -err:
        return -1.0
    return 0.0


@njit(cache=True)
def insphere1d_f(a, b, q):
    u = a - q
    v = b - q
    t1 = u * (v * v)
    t2 = v * (u * u)
    det = t1 - t2
    err = (abs(t1) + abs(t2)) * _ERRS1
    if det > err:
        return 1.0
    if det < -err:
        return -1.0
    return 0.0


@njit(cache=True)
def insphere2d_f(ax, ay, bx, by, cx, cy, qx, qy):
    u0 = ax - qx
    u1 = ay - qy
    v0 = bx - qx
    v1 = by - qy
    w0 = cx - qx
    w1 = cy - qy
    nu = u0 * u0 + u1 * u1
    nv = v0 * v0 + v1 * v1
    nw = w0 * w0 + w1 * w1
    m0 = v0 * w1 - v1 * w0
    m1 = u0 * w1 - u1 * w0
    m2 = u0 * v1 - u1 * v0
    det = nu * m0 - nv * m1 + nw * m2
    b0 = abs(v0 * w1) + abs(v1 * w0)
    b1 = abs(u0 * w1) + abs(u1 * w0)
    b2 = abs(u0 * v1) + abs(u1 * v0)
    err = (nu * b0 + nv * b1 + nw * b2) * _ERRS2
    if det > err:
        return 1.0
    if det < -err:
        return -1.0
    return 0.0


@njit(cache=True)
def insphere3d_f(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz, qx, qy, qz):
    a0 = ax - qx
    a1 = ay - qy
    a2 = az - qz
    b0 = bx - qx
    b1 = by - qy
    b2 = bz - qz
    c0 = cx - qx
    c1 = cy - qy
    c2 = cz - qz
    d0 = dx - qx
    d1 = dy - qy
    d2 = dz - qz
    na = a0 * a0 + a1 * a1 + a2 * a2
    nb = b0 * b0 + b1 * b1 + b2 * b2
    nc = c0 * c0 + c1 * c1 + c2 * c2
    nd = d0 * d0 + d1 * d1 + d2 * d2

    ab = a0 * b1 - a1 * b0
    ac = a0 * c1 - a1 * c0
    ad = a0 * d1 - a1 * d0
    bc = b0 * c1 - b1 * c0
    bd = b0 * d1 - b1 * d0
    cd = c0 * d1 - c1 * d0
    eab = abs(a0 * b1) + abs(a1 * b0)
    eac = abs(a0 * c1) + abs(a1 * c0)
    ead = abs(a0 * d1) + abs(a1 * d0)
    ebc = abs(b0 * c1) + abs(b1 * c0)
    ebd = abs(b0 * d1) + abs(b1 * d0)
    ecd = abs(c0 * d1) + abs(c1 * d0)

    # 3x3 minors over rows {b,c,d}, {a,c,d}, {a,b,d}, {a,b,c}
    mbcd = b2 * cd - c2 * bd + d2 * bc
    macd = a2 * cd - c2 * ad + d2 * ac
    mabd = a2 * bd - b2 * ad + d2 * ab
    mabc = a2 * bc - b2 * ac + c2 * ab
    ebcd = abs(b2) * ecd + abs(c2) * ebd + abs(d2) * ebc
    eacd = abs(a2) * ecd + abs(c2) * ead + abs(d2) * eac
    eabd = abs(a2) * ebd + abs(b2) * ead + abs(d2) * eab
    eabc = abs(a2) * ebc + abs(b2) * eac + abs(c2) * eab

    det = -na * mbcd + nb * macd - nc * mabd + nd * mabc
    err = (na * ebcd + nb * eacd + nc * eabd + nd * eabc) * _ERRS3
    if det > err:
        return 1.0
    if det < -err:
        return -1.0
    return 0.0


def _sign(x):
    return (x > 0) - (x < 0)


def orient2d_i(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def orient3d_i(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz):
    u0 = bx - ax
    u1 = by - ay
    u2 = bz - az
    v0 = cx - ax
    v1 = cy - ay
    v2 = cz - az
    w0 = dx - ax
    w1 = dy - ay
    w2 = dz - az
    return (u0 * (v1 * w2 - v2 * w1)
            - u1 * (v0 * w2 - v2 * w0)
            + u2 * (v0 * w1 - v1 * w0))


def insphere1d_i(a, b, q):
    u = a - q
    v = b - q
    return u * v * (v - u)


def insphere2d_i(ax, ay, bx, by, cx, cy, qx, qy):
    u0 = ax - qx
    u1 = ay - qy
    v0 = bx - qx
    v1 = by - qy
    w0 = cx - qx
    w1 = cy - qy
    nu = u0 * u0 + u1 * u1
    nv = v0 * v0 + v1 * v1
    nw = w0 * w0 + w1 * w1
    return (nu * (v0 * w1 - v1 * w0)
            - nv * (u0 * w1 - u1 * w0)
            + nw * (u0 * v1 - u1 * v0))


def insphere3d_i(ax, ay, az, bx, by, bz, cx, cy, cz, dx, dy, dz, qx, qy, qz):
    a0 = ax - qx
    a1 = ay - qy
    a2 = az - qz
    b0 = bx - qx
    b1 = by - qy
    b2 = bz - qz
    c0 = cx - qx
    c1 = cy - qy
    c2 = cz - qz
    d0 = dx - qx
    d1 = dy - qy
    d2 = dz - qz
    na = a0 * a0 + a1 * a1 + a2 * a2
    nb = b0 * b0 + b1 * b1 + b2 * b2
    nc = c0 * c0 + c1 * c1 + c2 * c2
    nd = d0 * d0 + d1 * d1 + d2 * d2
    ab = a0 * b1 - a1 * b0
    ac = a0 * c1 - a1 * c0
    ad = a0 * d1 - a1 * d0
    bc = b0 * c1 - b1 * c0
    bd = b0 * d1 - b1 * d0
    cd = c0 * d1 - c1 * d0
    mbcd = b2 * cd - c2 * bd + d2 * bc
    macd = a2 * cd - c2 * ad + d2 * ac
    mabd = a2 * bd - b2 * ad + d2 * ab
    mabc = a2 * bc - b2 * ac + c2 * ab
    return -na * mbcd + nb * macd - nc * mabd + nd * mabc
