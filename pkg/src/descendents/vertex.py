"""Truncated-series engine for the Heisenberg-mode residue operators.

The n-point functions of the positive-mode vertex operator are computed
as exact truncated Laurent series and compared, stratum by stratum,
against the block transform of `correspondence`.  Everything lives in
scaled variables:

* ``t``     divisor-power grading: the coefficient of t^j in a stratum
            carries the block class times the j-th power of c1;
* ``x_i``   the generating variable of point i (subscript m reads off
            at x^(m+2): one power for the subscript shift, one because
            the pole factor is normalized by x below);
* ``v_i``   the expansion variable of point i, y = v/t;
* ``u``     the genus parameter; all series coefficients stay rational
            because the imaginary unit enters only through the frozen
            phase constants at readout;
* ``r``     the deformation order, kept to r^2 for the layer checks and
            to r^0 on the fast path (the comparison strata live in the
            r^0 layer);
* ``a1..aN`` commuting placeholders for the positive Heisenberg modes.

The deviation d = w - y of the second sheet is solved iteratively from
(y + d) e^d = y e^(-x r).  The assembled one-point integrand is

    E * D * V / (x t),   D = -x r / (w - y),

whose residue in v is read out stratum by stratum; two- and three-point
functions insert the pairwise connected kernels (the r^2 part of the
commutation factor B) between legs and divide by t^2 per extra point.
"""

import math
from fractions import Fraction

from .exactmath import TruncSeries, WScalar, factorial
from .cohomology import ring_p3
from .gw_algebra import gw_zero, gw_one, gw_gen
from .correspondence import _diag_splits, _decay, _bump2, _bump3


# readout phase: stratum (j, n points) gets S[n] * i^(j + n - 1), and the
# u-power collapses by the mode sum.  S[1] is forced by the single-mode
# stratum; S[2], S[3] fix the residue orientation of the nested contours.
# Calibrated once against the block transform and pinned by the tests.
DRESS_SIGN = {1: -1, 2: 1, 3: -1}


# ======================================================================
# frames: a variable pack with windows and pruning caps
# ======================================================================

class _Frame:
    def __init__(self, points, nmodes, rmax, window, caps, vdepth):
        self.points = points
        self.nmodes = nmodes
        self.xs = tuple(f"x{i}" for i in range(1, points + 1))
        self.vs = tuple(f"v{i}" for i in range(1, points + 1))
        self.avars = tuple(f"a{n}" for n in range(1, nmodes + 1))
        head = ("r",) if rmax is not None else ()
        self.vars = head + ("t", "u") + self.xs + self.vs + self.avars
        self.window = window
        self.caps = caps
        self.vdepth = vdepth

    def zero(self):
        return TruncSeries(self.vars, self.window, caps=self.caps)

    def one(self):
        return TruncSeries.constant(self.vars, self.window, Fraction(1),
                                    caps=self.caps)

    def mk(self, coeff, **exps):
        return TruncSeries.monomial(self.vars, self.window, Fraction(coeff),
                                    caps=self.caps, **exps)


def _leg_frame(points, nmodes, rmax, kcap, mode_budget, x_hi, xsum=None,
               t_hi=4, v_pad=8):
    """Windows and caps for an n-leg computation.

    The caps make tail truncation soft: a product whose v-exponent falls
    below the live range is dropped silently, while the (much deeper)
    hard window edge stays as a soundness canary.
    """
    win = {"t": (-1, t_hi), "u": (-(sum(x_hi) + 4), 0)}
    if rmax is not None:
        win["r"] = (0, rmax)
    caps = []
    xs = tuple(f"x{i}" for i in range(1, points + 1))
    vs = tuple(f"v{i}" for i in range(1, points + 1))
    vdepth = kcap + v_pad
    for i in range(points):
        win[xs[i]] = (-1, x_hi[i])
        win[vs[i]] = (-(2 * vdepth + 8), x_hi[i] + 1)
        caps.append(({vs[i]: -1}, vdepth))
    if xsum is not None:
        caps.append(({x: 1 for x in xs}, xsum))
    avars = {f"a{n}": n for n in range(1, nmodes + 1)}
    for a in avars:
        win[a] = (0, 3)
    caps.append((avars, mode_budget))
    caps.append(({a: 1 for a in avars}, 3))
    return _Frame(points, nmodes, rmax, win, tuple(caps), vdepth)


# ======================================================================
# series utilities
# ======================================================================

def _shift(s, **shifts):
    out = s.clone_empty()
    pos = {v: i for i, v in enumerate(s.vars)}
    delta = [0] * len(s.vars)
    for v, k in shifts.items():
        delta[pos[v]] = k
    for e, c in s.terms.items():
        out._accumulate(tuple(a + b for a, b in zip(e, delta)), c)
    return out


def _layer(s, var, k):
    """Terms with var-exponent exactly k, exponent kept in place."""
    i = s.vars.index(var)
    out = s.clone_empty()
    for e, c in s.terms.items():
        if e[i] == k:
            out._accumulate(e, c)
    return out


def _clip(s, var, lo=None, hi=None):
    i = s.vars.index(var)
    out = s.clone_empty()
    for e, c in s.terms.items():
        if lo is not None and e[i] < lo:
            continue
        if hi is not None and e[i] > hi:
            continue
        out._accumulate(e, c)
    return out


def _ddv(s, var):
    i = s.vars.index(var)
    out = s.clone_empty()
    for e, c in s.terms.items():
        if e[i]:
            out._accumulate(e[:i] + (e[i] - 1,) + e[i + 1:], c * e[i])
    return out


def _res(s, var):
    """Coefficient of var^(-1), frame kept (the var column drops to 0)."""
    i = s.vars.index(var)
    out = s.clone_empty()
    for e, c in s.terms.items():
        if e[i] == -1:
            out._accumulate(e[:i] + (0,) + e[i + 1:], c)
    return out


def _mul_res(a, b, var):
    """res_var(a * b) with b pre-clipped to the exponents that can pair."""
    i = a.vars.index(var)
    amin = min((e[i] for e in a.terms), default=0)
    amax = max((e[i] for e in a.terms), default=0)
    return _res(a * _clip(b, var, -1 - amax, -1 - amin), var)


# ======================================================================
# the solved curve and the integrand factors
# ======================================================================

def _inv_one_plus_y(fr, i):
    """t/(v+t) as a series, i.e. 1/(1+y) in the scaled variables."""
    v = fr.vs[i]
    t_hi = fr.window["t"][1]
    out = fr.zero()
    for m in range(0, t_hi):
        if 1 + m > fr.vdepth:
            break
        out = out + fr.mk((-1) ** m, t=m + 1, **{v: -1 - m})
    return out


def _solve_leg(fr, i, order_r):
    """d = w - y from (y + d) e^d e^(x r) = y, one r-order per sweep."""
    x, v = fr.xs[i], fr.vs[i]
    y = fr.mk(1, t=-1, **{v: 1})
    inv1py = _inv_one_plus_y(fr, i)
    exr = fr.zero()
    for k in range(order_r + 1):
        exr = exr + fr.mk(Fraction(1, factorial(k)), r=k, **{x: k})
    delta = fr.zero()
    for _ in range(order_r + 1):
        psi = (y + delta) * delta.exp() * exr - y
        delta = delta - psi * inv1py
    return delta


def _delta0(fr, i):
    """The r-free layer of (w - y): -x v/(v+t) expanded in t/v."""
    x, v = fr.xs[i], fr.vs[i]
    t_hi = fr.window["t"][1]
    out = fr.zero()
    for m in range(0, t_hi + 1):
        if m > fr.vdepth:
            break
        out = out + fr.mk((-1) ** (m + 1), t=m, **{x: 1, v: -m})
    return out


def _E_factor(fr, i, delta):
    """exp(-(t d^2 + 2(v + t) d) / (2 u r)); r-free layer is exp(xv/u)."""
    v = fr.vs[i]
    s = fr.mk(1, t=1) * delta * delta \
        + (fr.mk(2, **{v: 1}) + fr.mk(2, t=1)) * delta
    return (_shift(s, r=-1, u=-1) * Fraction(-1, 2)).exp()


def _D_factor(fr, i, delta, order_r):
    """-x r/(w - y), inverted around the r-free layer of (w - y)/r."""
    x, v = fr.xs[i], fr.vs[i]
    d = _shift(delta, r=-1)
    d0 = _layer(d, "r", 0)
    dplus = d - d0
    # exact inverse of the r-free layer: -1/x (1 + t/v)
    inv0 = fr.mk(-1, **{x: -1}) + fr.mk(-1, **{x: -1, "t": 1, v: -1})
    head = fr.mk(-1, **{x: 1}) * inv0
    g = dplus * inv0
    acc, gp = fr.one(), fr.one()
    for _ in range(order_r):
        gp = gp * g * Fraction(-1)
        if gp.is_zero():
            break
        acc = acc + gp
    return head * acc


def _sqrt_factor(fr, i, delta):
    """(dw/dy)^(1/2) = (1 + t d/dv of (w - y))^(1/2), binomially."""
    z = fr.mk(1, t=1) * _ddv(delta, fr.vs[i])
    return fr.one() + z * Fraction(1, 2) - z * z * Fraction(1, 8) \
        + z * z * z * Fraction(1, 16)


def _power_diff(fr, i, delta, n, order_r):
    """(v^-n - (v + t d)^-n)/r, the mode-n kernel of the vertex operator."""
    v = fr.vs[i]
    eps = fr.mk(1, t=1, **{v: -1}) * delta
    acc = fr.zero()
    ep = fr.one()
    for l in range(1, order_r + 2):
        ep = ep * eps
        if ep.is_zero():
            break
        acc = acc + ep * Fraction((-1) ** l * math.comb(n + l - 1, l))
    return _shift(fr.mk(-1, **{v: -n}) * acc, r=-1)


def _V_plus(fr, i, delta, order_r):
    """exp of the positive modes: sum_n a_n/n * power_diff(n)."""
    vexp = fr.zero()
    for n in range(1, fr.nmodes + 1):
        pd = _power_diff(fr, i, delta, n, order_r)
        vexp = vexp + pd * fr.mk(Fraction(1, n), **{fr.avars[n - 1]: 1})
    return vexp.exp()


def _leg_full(fr, i, order_r, with_sqrt=True):
    delta = _solve_leg(fr, i, order_r)
    psi = _E_factor(fr, i, delta) * _D_factor(fr, i, delta, order_r)
    if with_sqrt:
        psi = psi * _sqrt_factor(fr, i, delta)
    return psi * _V_plus(fr, i, delta, order_r)


def _leg_r0(fr, i):
    """r-free layer of the leg: exp(xv/u) (1 + t/v) V at r = 0."""
    x, v = fr.xs[i], fr.vs[i]
    e = fr.mk(1, **{x: 1, v: 1, "u": -1}).exp()
    d = fr.one() + fr.mk(1, t=1, **{v: -1})
    d0 = _delta0(fr, i)
    vexp = fr.zero()
    for n in range(1, fr.nmodes + 1):
        # r-free layer of power_diff(n) is n t d0 v^(-n-1); the 1/n cancels
        vexp = vexp + d0 * fr.mk(1, t=1, **{v: -n - 1, fr.avars[n - 1]: 1})
    return e * d * vexp.exp()


def _beta0(fr, a, b):
    """r^2 part of (B - 1) between legs a and b, region |v_a| > |v_b|."""
    va, vb = fr.vs[a], fr.vs[b]
    inv2 = fr.zero()
    s_hi = fr.window[vb][1]
    for s in range(0, s_hi + 1):
        if s + 2 > fr.vdepth:
            break
        inv2 = inv2 + fr.mk(s + 1, **{vb: s, va: -s - 2})
    return _delta0(fr, a) * _delta0(fr, b) * inv2 * fr.mk(-1, t=2)


# ======================================================================
# readout: strata of the residue as mode polynomials
# ======================================================================

def _read_strata(series, fr, tshift, npoints):
    """Organize a fully-residued series by subscripts, t-stratum, modes.

    Returns (strata, below), where strata maps a subscript tuple to
    {j: {modes: WScalar}} with the frozen dress applied, and below
    collects raw terms at negative t-strata (they must all vanish).
    """
    sgn = DRESS_SIGN[npoints]
    pos = {v: i for i, v in enumerate(series.vars)}
    xi = [pos[x] for x in fr.xs]
    ti, ui = pos["t"], pos["u"]
    ai = [(pos[a], n + 1) for n, a in enumerate(fr.avars)]
    strata = {}
    below = []
    for e, c in series.terms.items():
        ms = tuple(e[k] - 1 for k in xi)
        if any(m < 1 for m in ms):
            continue
        j = e[ti] - tshift
        modes = []
        modesum = 0
        for k, n in ai:
            modes.extend([n] * e[k])
            modesum += n * e[k]
        modes = tuple(sorted(modes, reverse=True))
        if j < 0:
            below.append((ms, j, modes, e[ui], c))
            continue
        q = e[ui] + modesum
        if q != -(j + npoints - 1):
            raise ValueError(
                f"u-power {e[ui]} at subscripts {ms}, stratum t^{j}, "
                f"modes {modes}: expected collapse to {-(j + npoints - 1)}, "
                f"got {q}")
        w = WScalar.of(sgn * (-1) ** (j + npoints - 1) * c, q)
        slot = strata.setdefault(ms, {}).setdefault(j, {})
        slot[modes] = slot.get(modes, WScalar.zero()) + w
    for ms in strata:
        for j in list(strata[ms]):
            strata[ms][j] = {m: w for m, w in strata[ms][j].items()
                             if not w.is_zero()}
    return strata, below


def h_tilde_npoint(n, K):
    """Strata of the connected n-point residue, n in {1, 2, 3}.

    For n = 1, K bounds the subscript shift k (subscripts m = k+1 run
    to K+1).  For n = 2, K bounds k1 + k2.  For n = 3, K bounds each
    k_i.  Returns (strata, below) as in _read_strata.
    """
    if n == 1:
        fr = _leg_frame(1, K + 1, None, K + 1, K + 1, (K + 2,),
                        t_hi=4)
        out = _res(_leg_r0(fr, 0), fr.vs[0])
        return _read_strata(out, fr, 1, 1)
    if n == 2:
        fr = _leg_frame(2, K, None, K + 2, K, (K + 2, K + 2),
                        xsum=K + 4, t_hi=5)
        psi1, psi2 = _leg_r0(fr, 0), _leg_r0(fr, 1)
        t2 = _res(_beta0(fr, 1, 0) * psi2, fr.vs[1])
        out = _mul_res(t2, psi1, fr.vs[0])
        return _read_strata(out, fr, 3, 2)
    if n == 3:
        kb = 3 * K - 1
        fr = _leg_frame(3, kb, None, kb + 2, kb, (K + 2,) * 3,
                        xsum=3 * K + 6, t_hi=6)
        psi = [_leg_r0(fr, i) for i in range(3)]
        b12, b23, b13 = _beta0(fr, 1, 0), _beta0(fr, 2, 1), _beta0(fr, 2, 0)
        v1, v2, v3 = fr.vs
        # (12)(23): eliminate v3, then v2, then v1
        r3 = _mul_res(b23, psi[2], v3)
        s2 = _mul_res(b12 * r3, psi[1], v2)
        total = _mul_res(s2, psi[0], v1)
        # (12)(13)
        r3 = _mul_res(b13, psi[2], v3)
        s2 = _mul_res(b12, psi[1], v2)
        total = total + _mul_res(s2 * r3, psi[0], v1)
        # (23)(13)
        r3 = _mul_res(b23 * b13, psi[2], v3)
        s2 = _mul_res(r3, psi[1], v2)
        total = total + _mul_res(s2, psi[0], v1)
        return _read_strata(total, fr, 5, 3)
    raise ValueError("n must be 1, 2 or 3")


def one_point_r_layers(K):
    """Residue layers in r of the one-point integrand, for the parity
    checks: returns (r^1 layer, r^2 t^0 layer, r^2 layer) after the
    residue, all still carrying 1/t and x-normalization."""
    fr = _leg_frame(1, K + 1, 2, K + 1, K + 1, (K + 2,), t_hi=4)
    out = _res(_leg_full(fr, 0, 2), fr.vs[0])
    r1 = _layer(out, "r", 1)
    r2 = _layer(out, "r", 2)
    return r1, _layer(r2, "t", 0), r2


# ======================================================================
# reference expansions (the solved curve and the printed factor grids)
# ======================================================================

def _y_frame(order_r, depth):
    vars = ("r", "x", "y")
    window = {"r": (0, order_r), "x": (0, order_r), "y": (-4 * depth - 8, 1)}
    caps = (({"y": -1}, depth),)
    return vars, window, caps


def solve_constraint(order_r, depth=12):
    """The deviation w(x, y) - y as a series in r, x and Laurent y.

    y-powers are exact down to y^(-depth); the solve runs deeper and the
    boundary zone, where truncated tails would contaminate, is clipped.
    """
    if order_r < 1 or order_r > 3:
        raise ValueError("order_r must be between 1 and 3")
    deep = depth + 6
    vars, window, caps = _y_frame(order_r, deep)
    y = TruncSeries.monomial(vars, window, Fraction(1), caps=caps, y=1)
    inv1py = TruncSeries(vars, window, caps=caps)
    for m in range(0, deep):
        inv1py = inv1py + TruncSeries.monomial(
            vars, window, Fraction((-1) ** m), caps=caps, y=-1 - m)
    exr = TruncSeries(vars, window, caps=caps)
    for k in range(order_r + 1):
        exr = exr + TruncSeries.monomial(
            vars, window, Fraction(1, factorial(k)), caps=caps, r=k, x=k)
    delta = TruncSeries(vars, window, caps=caps)
    for _ in range(order_r + 1):
        psi = (y + delta) * delta.exp() * exr - y
        delta = delta - psi * inv1py
    return _clip(delta, "y", -depth)


def rational_in_y(pairs, denpow, depth=12):
    """sum of c y^k / (1+y)^denpow as a Laurent series at y = infinity.

    pairs is an iterable of (c, k) for the numerator polynomial.  Exact
    down to y^(-depth), for comparing against solve_constraint layers.
    """
    deep = depth + 6
    vars, window, caps = _y_frame(3, deep)
    inv = TruncSeries.constant(vars, window, Fraction(1), caps=caps)
    if denpow:
        base = TruncSeries(vars, window, caps=caps)
        for m in range(0, deep):
            base = base + TruncSeries.monomial(
                vars, window, Fraction((-1) ** m), caps=caps, y=-1 - m)
        inv = base
        for _ in range(denpow - 1):
            inv = inv * base
    out = TruncSeries(vars, window, caps=caps)
    for c, k in pairs:
        out = out + inv * TruncSeries.monomial(
            vars, window, Fraction(c), caps=caps, y=k)
    return _clip(out, "y", -depth)


def build_factors(which, order_r=2, n=None, nmodes=None):
    """Assembled integrand factors in the scaled variables.

    which: "E", "D", "sqrtform", "powerdiff" (pass n), or "B2pt".
    D is normalized by x (the pole factor -x r/(w-y)); the others are
    as assembled in the residues.
    """
    if which == "B2pt":
        fr = _leg_frame(2, 1, order_r, 6, 1, (4, 4), t_hi=6, v_pad=10)
        d1 = _solve_leg(fr, 0, order_r)
        d2 = _solve_leg(fr, 1, order_r)
        v1, v2 = fr.vs
        # 1/(y2 - y1) = t/(v2 - v1), region |v1| > |v2|
        invs = fr.zero()
        for s in range(0, fr.window[v2][1] + 1):
            if s + 1 > fr.vdepth:
                break
            invs = invs + fr.mk(-1, t=1, **{v2: s, v1: -s - 1})
        g = (d2 - d1) * invs
        acc, gp = fr.one(), fr.one()
        for _ in range(order_r + 1):
            gp = gp * g * Fraction(-1)
            if gp.is_zero():
                break
            acc = acc + gp
        return fr.one() - d1 * d2 * invs * invs * acc
    fr = _leg_frame(1, (nmodes or 1), order_r, 8, (nmodes or 1) * 3,
                    (order_r + 2,), t_hi=6, v_pad=10)
    delta = _solve_leg(fr, 0, order_r)
    if which == "E":
        return _E_factor(fr, 0, delta)
    if which == "D":
        return _D_factor(fr, 0, delta, order_r)
    if which == "sqrtform":
        return _sqrt_factor(fr, 0, delta)
    if which == "powerdiff":
        if n is None:
            raise ValueError("powerdiff needs the mode number n")
        return _power_diff(fr, 0, delta, n, order_r)
    raise ValueError(f"unknown factor {which!r}")


# ======================================================================
# comparison against the block transform
# ======================================================================

def _attach(ring, modes, cls, w):
    """w * a_modes(cls), the class spread over slots via the diagonal."""
    if cls.is_zero():
        return gw_zero(ring, "a")
    if not modes:
        return gw_one(ring, "a") * (w * WScalar.of(ring.integrate(cls)))
    out = gw_zero(ring, "a")
    for c, slots in _diag_splits(ring, cls, len(modes)):
        term = gw_one(ring, "a")
        for m, s in zip(modes, slots):
            term = term * gw_gen(ring, m, ring.basis_i(s), "a")
        out = out + term * WScalar.of(c)
    return out * w


def _element_from_strata(ring, strata_j, gamma):
    """Assemble sum_j strata[j] attached to gamma * c1^j.

    Returns (modes, identity): the mode-carrying part and the mode-free
    part (multiples of the unit, coming from empty mode words).
    """
    out = gw_zero(ring, "a")
    iden = gw_zero(ring, "a")
    cpow = ring.unit()
    jmax = max(strata_j) if strata_j else -1
    for j in range(0, jmax + 1):
        cls = gamma * cpow
        for modes, w in strata_j.get(j, {}).items():
            piece = _attach(ring, modes, cls, w)
            if modes:
                out = out + piece
            else:
                iden = iden + piece
        cpow = cpow * ring.c1
    return out, iden


def vertex_verify(k1max=6, k2max=6, k3max=3, ring=None):
    """Compare the residue strata with the block transform, exactly.

    The comparison is between mode words: the block formulas output words
    in the a_n with every a_0 and a_{-1} set to zero, so a mode-free
    constant has no slot on that side.  Constants produced by the residue
    construction are therefore split off and reported, not compared.  The
    residue genuinely produces one: the triple with all indices 0 carries
    a unit term (the two-point analogue cancels identically before the
    residue is even taken, and every other tuple's constant vanishes).

    Returns (ok, failures, identity_terms); each failure is (kind,
    indices, gamma labels, engine element, block element), each identity
    term is (kind, indices, gamma labels, element).
    """
    ring = ring or ring_p3()
    fails = []
    iden_terms = []
    deg2plus = [i for i, d in enumerate(ring.degrees) if d >= 1]

    strata1, below1 = h_tilde_npoint(1, k1max)
    if below1:
        fails.append(("1pt-negative-t", (), (), below1, None))
    for k1 in range(0, k1max + 1):
        sj = strata1.get((k1 + 1,), {})
        for b in deg2plus:
            gamma = ring.basis_i(b)
            mine, iden = _element_from_strata(ring, sj, gamma)
            target = _decay(ring, k1 + 2, b)
            if not (mine - target).is_zero():
                fails.append(("1pt", (k1,), (ring.labels[b],), mine, target))
            if not iden.is_zero():
                iden_terms.append(("1pt", (k1,), (ring.labels[b],), iden))

    strata2, below2 = h_tilde_npoint(2, k2max)
    if below2:
        fails.append(("2pt-negative-t", (), (), below2, None))
    for k1 in range(0, k2max + 1):
        for k2 in range(0, k2max + 1 - k1):
            sj = strata2.get((k1 + 1, k2 + 1), {})
            for b1 in deg2plus:
                for b2 in deg2plus:
                    g1, g2 = ring.basis_i(b1), ring.basis_i(b2)
                    mine, iden = _element_from_strata(ring, sj, g1 * g2)
                    target = _bump2(ring, (k1 + 2, b1), (k2 + 2, b2))
                    if not (mine - target).is_zero():
                        fails.append(("2pt", (k1, k2),
                                      (ring.labels[b1], ring.labels[b2]),
                                      mine, target))
                    if not iden.is_zero():
                        iden_terms.append(("2pt", (k1, k2),
                                           (ring.labels[b1], ring.labels[b2]),
                                           iden))

    strata3, below3 = h_tilde_npoint(3, k3max)
    if below3:
        fails.append(("3pt-negative-t", (), (), below3, None))
    # a triple of positive-degree classes with nonzero product
    triple = None
    for b1 in deg2plus:
        for b2 in deg2plus:
            for b3 in deg2plus:
                if not (ring.basis_i(b1) * ring.basis_i(b2)
                        * ring.basis_i(b3)).is_zero():
                    triple = (b1, b2, b3)
                    break
            if triple:
                break
        if triple:
            break
    for k1 in range(0, k3max + 1):
        for k2 in range(0, k3max + 1):
            for k3 in range(0, k3max + 1):
                sj = strata3.get((k1 + 1, k2 + 1, k3 + 1), {})
                if triple is None:
                    continue
                b1, b2, b3 = triple
                cls = ring.basis_i(b1) * ring.basis_i(b2) * ring.basis_i(b3)
                mine, iden = _element_from_strata(ring, sj, cls)
                target = _bump3(ring, (k1 + 2, b1), (k2 + 2, b2), (k3 + 2, b3))
                if not (mine - target).is_zero():
                    fails.append(("3pt", (k1, k2, k3),
                                  tuple(ring.labels[b] for b in triple),
                                  mine, target))
                if not iden.is_zero():
                    iden_terms.append(("3pt", (k1, k2, k3),
                                       tuple(ring.labels[b] for b in triple),
                                       iden))
    return (not fails), fails, iden_terms


VertexSeries = TruncSeries
