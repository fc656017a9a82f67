"""Transformation between stable-pairs and Gromov-Witten descendents.

The transform sends a product of tch generators to a sum over set
partitions; each block is evaluated by a closed bumping formula into
Heisenberg generators a_n.  Blocks of one, two, and three interacting
factors have their own formulas; larger blocks die for degree reasons on
a 3-fold.  The formal symbol FCH1 carried by the roman Virasoro constant
term has its own bumping rules, including one exceptional case that
produces a central tau_{-2} factor.
"""

from fractions import Fraction

from .exactmath import (WScalar, aut_partition, factorial,
                        partitions_fixed_length, set_partitions)
from .pt_algebra import apply_virasoro, convert_basis, is_essential
from .gw_algebra import (a_to_tau, apply_gw_virasoro, gw_gen, gw_one,
                         gw_zero, restrict_negatives, tau_symbol,
                         vacuum_null_reduce)


# ======================================================================
# multi-index Heisenberg monomials
# ======================================================================


def _diag_splits(ring, cls, n):
    """Kunneth components of cls spread over n slots via the diagonal.

    Yields (coefficient, tuple of n basis positions).
    """
    if n == 1:
        for c, b in cls.decompose():
            yield c, (b,)
        return
    for c, ia, ib in ring.kunneth_diagonal(cls):
        for c2, rest in _diag_splits(ring, ring.basis_i(ia), n - 1):
            yield c * c2, rest + (ib,)


def _amu_sum(ring, total, length, cls):
    """Sum over partitions mu of a_{mu_1}...a_{mu_len}(cls) / Aut(mu).

    The class is distributed over the factors through the small diagonal;
    parts are positive, so no index guard is needed here.
    """
    out = gw_zero(ring, "a")
    if total < length or cls.is_zero():
        return out
    for mu in partitions_fixed_length(total, length):
        term = gw_zero(ring, "a")
        for c, slots in _diag_splits(ring, cls, length):
            prod = gw_one(ring, "a") * Fraction(c)
            for part, b in zip(mu, slots):
                prod = prod * gw_gen(ring, part, ring.basis_i(b), "a")
            term = term + prod
        out = out + term * Fraction(1, aut_partition(mu))
    return out


# ======================================================================
# the block operation
# ======================================================================


def _decay(ring, k, b):
    """Single-factor block tch_k(gamma), k >= 2."""
    k1 = k - 2
    gamma = ring.basis_i(b)
    g1 = gamma * ring.c1
    g2 = g1 * ring.c1
    out = gw_gen(ring, k1 + 1, gamma, "a") \
        * WScalar.of(Fraction(1, factorial(k1 + 1)))
    out = out + _amu_sum(ring, k1 - 1, 2, g1) \
        * WScalar.of(Fraction(1, factorial(k1)), -1)
    out = out + _amu_sum(ring, k1 - 2, 2, g2) \
        * WScalar.of(Fraction(1, factorial(k1)), -2)
    if k1 >= 3:
        out = out + _amu_sum(ring, k1 - 3, 3, g2) \
            * WScalar.of(Fraction(1, factorial(k1 - 1)), -2)
    return out


def _bump2(ring, f1, f2):
    """Two-factor block tch(gamma) tch(gamma'), both indices >= 2."""
    (ka, ba), (kb, bb) = f1, f2
    k1, k2 = ka - 2, kb - 2
    g = ring.basis_i(ba) * ring.basis_i(bb)
    gc = g * ring.c1
    lead = Fraction(-1, factorial(k1) * factorial(k2))
    out = gw_gen(ring, k1 + k2, g, "a") * WScalar.of(lead, -1)
    out = out + gw_gen(ring, k1 + k2 - 1, gc, "a") * WScalar.of(lead, -2)
    if not gc.is_zero():
        for mu in partitions_fixed_length(k1 + k2 - 2, 2):
            wfac = max(max(k1, k2), mu[0] + 1)
            scale = WScalar.of(lead * wfac * Fraction(1, aut_partition(mu)), -2)
            for c, (s1, s2) in _diag_splits(ring, gc, 2):
                t = gw_gen(ring, mu[0], ring.basis_i(s1), "a") \
                    * gw_gen(ring, mu[1], ring.basis_i(s2), "a")
                out = out + t * (scale * WScalar.of(c))
    return out


def _bump3(ring, f1, f2, f3):
    """Three-factor block, all indices >= 2."""
    ks = [k - 2 for k, _ in (f1, f2, f3)]
    g = ring.basis_i(f1[1]) * ring.basis_i(f2[1]) * ring.basis_i(f3[1])
    total = sum(ks)
    denom = factorial(ks[0]) * factorial(ks[1]) * factorial(ks[2])
    return gw_gen(ring, total - 1, g, "a") \
        * WScalar.of(Fraction(total, denom), -2)


def _bump_fch1(ring, chs):
    """Blocks joining the formal (-1)! ch_1(c1) symbol to tch factors."""
    if not chs:
        return gw_zero(ring, "a")
    if any(k < 2 for k, _ in chs):
        return gw_zero(ring, "a")
    if len(chs) == 1:
        (k, b), = chs
        k1 = k - 2
        cg = ring.c1 * ring.basis_i(b)
        cgc = cg * ring.c1
        lead = WScalar.of(Fraction(-1, factorial(k1)), -1)
        out = gw_gen(ring, k1 - 1, cg, "a") * lead
        out = out + gw_gen(ring, k1 - 2, cgc, "a") * (lead * WScalar.of(1, -1))
        out = out + _amu_sum(ring, k1 - 3, 2, cgc) \
            * (lead * WScalar.of(k1, -1))
        return out
    if len(chs) == 2:
        (ka, ba), (kb, bb) = chs
        g = ring.c1 * ring.basis_i(ba) * ring.basis_i(bb)
        if sorted((ka, kb)) == [2, 3]:
            return tau_symbol(ring, -2, g, basis="a")
        k1, k2 = ka - 2, kb - 2
        return gw_gen(ring, k1 + k2 - 2, g, "a") \
            * WScalar.of(Fraction(k1 + k2 - 1, factorial(k1) * factorial(k2)), -2)
    g = ring.c1
    for _, b in chs:
        g = g * ring.basis_i(b)
    if not g.is_zero():
        raise ValueError("no bumping rule for this many interacting factors")
    return gw_zero(ring, "a")


def _c_circ_block(ring, chs, nf1, nf0):
    if nf0 or nf1 > 1:
        return gw_zero(ring, "a")
    if nf1:
        return _bump_fch1(ring, chs)
    m = len(chs)
    if m == 0:
        return gw_zero(ring, "a")
    if any(k == 0 for k, _ in chs):
        if m == 1:
            val = -ring.integrate(ring.basis_i(chs[0][1]))
            return gw_one(ring, "a") * Fraction(val)
        return gw_zero(ring, "a")
    if any(k == 1 for k, _ in chs):
        return gw_zero(ring, "a")
    if m == 1:
        return _decay(ring, *chs[0])
    if m == 2:
        return _bump2(ring, chs[0], chs[1])
    if m == 3:
        return _bump3(ring, chs[0], chs[1], chs[2])
    prod = ring.unit()
    for _, b in chs:
        prod = prod * ring.basis_i(b)
    if not prod.is_zero():
        raise ValueError("no bumping rule for this many interacting factors")
    return gw_zero(ring, "a")


def c_circ(D):
    """The block transform, extended linearly over products of generators.

    D is interpreted in the tch basis; every monomial is treated as one
    connected block.  The result is an a-basis element in which the only
    non-Heisenberg factors are central tau_{-2} symbols.
    """
    ring = D.ring
    T = convert_basis(D, "tch")
    out = gw_zero(ring, "a")
    for (factors, f1, f0), coeff in T.terms.items():
        out = out + _c_circ_block(ring, tuple(factors), f1, f0) \
            * WScalar.of(coeff)
    return out


# ======================================================================
# the full transform
# ======================================================================


def c_bullet(D):
    """Sum of block-transform products over set partitions, in tau form.

    The unit maps to the unit.  Formal FCH1 markers participate in the
    partitions like ordinary factors; two of them never share a block.
    """
    ring = D.ring
    T = convert_basis(D, "tch")
    out = gw_zero(ring, "a")
    cache = {}
    for (factors, f1, f0), coeff in T.terms.items():
        items = list(factors) + ["F1"] * f1 + ["F0"] * f0
        if not items:
            out = out + gw_one(ring, "a") * WScalar.of(coeff)
            continue
        total = gw_zero(ring, "a")
        for part in set_partitions(items):
            prod = gw_one(ring, "a")
            for blk in part:
                chs = tuple(sorted(x for x in blk if isinstance(x, tuple)))
                key = (chs, blk.count("F1"), blk.count("F0"))
                val = cache.get(key)
                if val is None:
                    val = _c_circ_block(ring, *key)
                    cache[key] = val
                if val.is_zero():
                    prod = None
                    break
                prod = prod * val
            if prod is not None:
                total = total + prod
        out = out + total * WScalar.of(coeff)
    return a_to_tau(out)


# ======================================================================
# intertwining of the two Virasoro actions
# ======================================================================


def _bracket_reduce(x, mode):
    """Vacuum identifications applied before comparing operator values.

    Negative descendents evaluate against the vacuum once they have been
    moved past everything else: tau_{-1} kills a monomial, tau_{-2} weighs
    it by u^{-2} times the integral of its class.  restrict_negatives
    handles the surviving point symbols, vacuum_null_reduce the rest.
    """
    return vacuum_null_reduce(restrict_negatives(x, mode))


def intertwine_check(k, D):
    """Exact comparison of the two Virasoro actions through the transform.

    Left side: transform of L_k(D) with the roman constant term (formal
    symbols kept and bumped).  Right side: (iu)^{-k} times Ltilde_k of the
    transform of D.  Both sides are reduced by the vacuum identifications
    (mode low for k <= 0, high for k >= 1) and subtracted; ok means the
    difference is exactly zero.
    """
    if not is_essential(D):
        raise ValueError("intertwining is stated for essential elements")
    ring = D.ring
    mode = "low" if k <= 0 else "high"
    lhs = c_bullet(apply_virasoro(ring, k, D, "L"))
    rhs = apply_gw_virasoro(ring, k, c_bullet(D), "Ltilde") \
        * WScalar.of(1, -k)
    diff = _bracket_reduce(lhs, mode) - _bracket_reduce(rhs, mode)
    return diff.is_zero(), diff


# ======================================================================
# series-level prediction
# ======================================================================


def gw_predict(D, beta, table=None):
    """Both sides of the series correspondence for a stationary D.

    Returns a dict:
      "gw"         the transform of D scaled by (-iu)^{d_beta},
      "prefactor"  the pair ("-q", -d_beta/2) standing for the symbolic
                   power of -q multiplying the pairs series (half-integer
                   exponents are kept as annotations, never expanded),
      "pt"         the exact pairs series from the table, or None,
      "note"       diagnostic when the table lookup fails.
    """
    d = beta.d_beta
    if d.denominator != 1:
        raise ValueError("curve degree against c1 must be an integer")
    d = int(d)
    gw = c_bullet(D) * WScalar.of(Fraction((-1) ** d), d)
    out = {"gw": gw, "prefactor": ("-q", Fraction(-d, 2)), "pt": None,
           "note": None}
    if table is not None:
        from .series_data import evaluate_bracket
        try:
            out["pt"] = evaluate_bracket(D, table, beta)
        except KeyError as exc:
            out["note"] = f"series table does not cover this bracket: {exc}"
    return out
