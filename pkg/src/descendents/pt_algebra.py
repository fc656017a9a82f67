"""Descendent algebra on the stable-pairs side.

Monomials in ch_k(gamma) generators (k >= 0, gamma a basis class), with two
extra formal symbols that are carried as monomial flags and never expanded:

    FCH1 := (-1)! ch_1(c1)       FCH0 := (-2)! ch_0(c1)

Elements can be expressed in the plain ch basis or in the shifted basis

    tch_k(gamma) = ch_k(gamma) + (1/24) ch_{k-2}(gamma * c2)

which is the natural variable for the correspondence.  On a 3-fold the
change of basis is an exact involution-like pair (gamma * c2^2 lands in
degrees that vanish), so conversion round trips are exact.
"""

from fractions import Fraction

from .exactmath import frac, factorial
from .cohomology import CohClass


# a monomial is (factors, fch1, fch0) with factors a sorted tuple of
# (index k, basis position) pairs
def _mono(factors=(), fch1=0, fch0=0):
    return (tuple(sorted(factors)), fch1, fch0)


_ONE = _mono()


class PtElement:
    __slots__ = ("ring", "basis", "terms")

    def __init__(self, ring, basis="ch", terms=None):
        if basis not in ("ch", "tch"):
            raise ValueError("basis must be 'ch' or 'tch'")
        self.ring = ring
        self.basis = basis
        self.terms = {}
        if terms:
            for m, c in terms.items():
                self._add_term(m, c)

    def _add_term(self, m, c):
        c = frac(c) if not isinstance(c, Fraction) else c
        if not c:
            return
        cur = self.terms.get(m)
        if cur is None:
            self.terms[m] = c
        else:
            s = cur + c
            if s:
                self.terms[m] = s
            else:
                del self.terms[m]

    def is_zero(self):
        return not self.terms

    def copy(self):
        out = PtElement(self.ring, self.basis)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        self._compat(other)
        out = self.copy()
        for m, c in other.terms.items():
            out._add_term(m, c)
        return out

    def __neg__(self):
        out = PtElement(self.ring, self.basis)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PtElement):
            self._compat(other)
            out = PtElement(self.ring, self.basis)
            for (f1, a1, b1), c1 in self.terms.items():
                for (f2, a2, b2), c2 in other.terms.items():
                    out._add_term(_mono(f1 + f2, a1 + a2, b1 + b2), c1 * c2)
            return out
        out = PtElement(self.ring, self.basis)
        for m, c in self.terms.items():
            out._add_term(m, c * frac(other))
        return out

    __rmul__ = __mul__

    def _compat(self, other):
        if self.ring is not other.ring:
            raise ValueError("ring mismatch")
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __eq__(self, other):
        return (isinstance(other, PtElement) and self.ring is other.ring
                and self.basis == other.basis and self.terms == other.terms)

    def map_monomials(self, f):
        """Sum f(monomial) scaled by each coefficient; f returns a PtElement."""
        out = None
        for m, c in self.terms.items():
            piece = f(m) * c
            out = piece if out is None else out + piece
        return out if out is not None else PtElement(self.ring, self.basis)

    def __repr__(self):
        if not self.terms:
            return "0"
        gen = "tch" if self.basis == "tch" else "ch"
        bits = []
        for (factors, f1, f0), c in sorted(self.terms.items()):
            parts = [f"{gen}({k},{self.ring.labels[b]})" for k, b in factors]
            parts = ["FCH1"] * f1 + ["FCH0"] * f0 + parts
            mono = "*".join(parts) if parts else "1"
            bits.append(f"({c})*{mono}" if c != 1 else mono)
        return " + ".join(bits)


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def pt_zero(ring, basis="ch"):
    return PtElement(ring, basis)


def pt_one(ring, basis="ch"):
    return PtElement(ring, basis, {_ONE: Fraction(1)})


def pt_gen(ring, k, gamma, basis="ch"):
    """ch_k(gamma) (or tch_k in the tch basis), multilinear in gamma."""
    if k < 0:
        raise ValueError("descendent index must be >= 0")
    if not isinstance(gamma, CohClass):
        gamma = ring.basis(gamma)
    out = PtElement(ring, basis)
    for x, b in gamma.decompose():
        out._add_term(_mono([(k, b)]), x)
    return out


def pt_formal(ring, which, basis="ch"):
    if which == "fch1":
        return PtElement(ring, basis, {_mono((), 1, 0): Fraction(1)})
    if which == "fch0":
        return PtElement(ring, basis, {_mono((), 0, 1): Fraction(1)})
    raise ValueError(which)


def build_element(ring, spec, basis="ch"):
    """Product of generators; spec is a list of (kind in {ch, tch}, k, gamma)."""
    out = pt_one(ring, basis)
    for kind, k, gamma in spec:
        if kind not in ("ch", "tch"):
            raise ValueError(f"unknown generator kind {kind}")
        g = convert_basis(pt_gen(ring, k, gamma, basis=kind), basis)
        out = out * g
    return out


# ----------------------------------------------------------------------
# basis conversion
# ----------------------------------------------------------------------

def convert_basis(D, target):
    """Exact change of generators between ch and tch."""
    if D.basis == target:
        return D
    sign = Fraction(1, 24) if target == "ch" else Fraction(-1, 24)
    ring = D.ring

    def one_factor(k, b):
        out = PtElement(ring, target, {_mono([(k, b)]): Fraction(1)})
        if k >= 2:
            shifted = ring.basis_i(b) * ring.c2
            for x, bb in shifted.decompose():
                out._add_term(_mono([(k - 2, bb)]), sign * x)
        return out

    out = PtElement(ring, target)
    for (factors, f1, f0), c in D.terms.items():
        piece = PtElement(ring, target, {_mono((), f1, f0): Fraction(1)})
        for k, b in factors:
            piece = piece * one_factor(k, b)
        for m, x in piece.terms.items():
            out._add_term(m, x * c)
    return out


# ----------------------------------------------------------------------
# operators
# ----------------------------------------------------------------------

def apply_Rk(ring, k, D):
    """The derivation R_k on the ch basis.

    R_k(ch_i(gamma)) = (prod_{n=0}^{k} (i + d - 3 + n)) ch_{i+k}(gamma) for
    gamma of complex degree d; R_{-1} shifts the index down; negative target
    indices are dropped.  Formal symbols transform by their own rules.
    """
    if k < -1:
        raise ValueError("R_k defined for k >= -1")
    if D.basis != "ch":
        D = convert_basis(D, "ch")
    out = PtElement(ring, "ch")
    for (factors, f1, f0), c in D.terms.items():
        flist = list(factors)
        for pos, (i, b) in enumerate(flist):
            d = ring.degrees[b]
            coeff = Fraction(1)
            for n in range(k + 1):
                coeff *= (i + d - 3 + n)
            if not coeff:
                continue
            if i + k < 0:
                continue
            rest = flist[:pos] + flist[pos + 1:]
            out._add_term(_mono(rest + [(i + k, b)], f1, f0), c * coeff)
        if f1:
            # R_k(FCH1) = -(k-1)! ch_{k+1}(c1) for k >= 1,
            # R_0(FCH1) = -FCH1, R_{-1}(FCH1) = -FCH0
            if k >= 1:
                repl = pt_gen(ring, k + 1, ring.c1) * Fraction(-factorial(k - 1))
                for (rf, rf1, rf0), rc in repl.terms.items():
                    out._add_term(_mono(factors + rf, f1 - 1 + rf1, f0 + rf0),
                                  c * f1 * rc)
            elif k == 0:
                out._add_term(_mono(factors, f1, f0), -c * f1)
            else:
                out._add_term(_mono(factors, f1 - 1, f0 + 1), -c * f1)
        # R_k(FCH0) = 0
    return out


def build_Tk(ring, k, convention="calligraphic"):
    """The quadratic constant term T_k, in the tch basis.

    T_k = -1/2 sum_{a+b=k+2} (-1)^{d_L d_R} (a+d_L-3)! (b+d_R-3)!
          tch_a tch_b (c1-Kunneth)

    With convention="calligraphic" every negative factorial kills its term.
    With convention="roman" the (a=1, d_L=1) terms survive as the formal
    symbol FCH1: their Kunneth stratum is c1 (x) pt on any 3-fold, so they
    aggregate to +(k+1)! FCH1 tch_{k+1}(pt).
    """
    if k < -1:
        raise ValueError("T_k defined for k >= -1")
    if convention not in ("calligraphic", "roman"):
        raise ValueError(convention)
    out = PtElement(ring, "tch")
    pairs = ring.kunneth_diagonal(ring.c1)
    for coeff, ia, ib in pairs:
        dL = ring.degrees[ia]
        dR = ring.degrees[ib]
        sign = Fraction(-1) ** (dL * dR)
        for a in range(0, k + 3):
            b = k + 2 - a
            fl = a + dL - 3
            fr = b + dR - 3
            if fl < 0 or fr < 0:
                continue
            c = Fraction(-1, 2) * sign * factorial(fl) * factorial(fr) * coeff
            out._add_term(_mono([(a, ia), (b, ib)]), c)
    if convention == "roman" and k + 1 >= 0:
        # the d_L = 1 stratum of c1*Delta is exactly c1 (x) pt: the only
        # negative-factorial survivors are (-1)! ch_1(c1) terms
        stratum = [(c, ia, ib) for c, ia, ib in pairs if ring.degrees[ia] == 1]
        total = ring.zero()
        pt_side_ok = True
        for c, ia, ib in stratum:
            if ring.basis_i(ib) != ring.point:
                pt_side_ok = False
            total = total + c * ring.basis_i(ia)
        if not pt_side_ok or total != ring.c1:
            raise ValueError("degree-1 Kunneth stratum of c1*Delta is not c1 x pt")
        term = pt_formal(ring, "fch1", basis="tch") * pt_gen(
            ring, k + 1, ring.point, basis="tch")
        out = out + term * Fraction(factorial(k + 1))
    return out


def apply_virasoro(ring, k, D, which="Lcal"):
    """Virasoro operators on the stable-pairs side.

    which="L":    L_k = T_k(roman) * D + R_k(D)              (formal symbols kept)
    which="Lcal": script L_k = T_k(calligraphic) * D + R_k(D)
                  + (k+1)! R_{-1}(ch_{k+1}(c1c2/24) * D)
    """
    if which not in ("L", "Lcal"):
        raise ValueError(which)
    Dch = convert_basis(D, "ch")
    if which == "L":
        T = convert_basis(build_Tk(ring, k, "roman"), "ch")
        return T * Dch + apply_Rk(ring, k, Dch)
    T = convert_basis(build_Tk(ring, k, "calligraphic"), "ch")
    out = T * Dch + apply_Rk(ring, k, Dch)
    extra = pt_gen(ring, k + 1, ring.c1c2_over_24) * Dch
    out = out + apply_Rk(ring, -1, extra) * Fraction(factorial(k + 1))
    return out


def bracket_normalize(D, beta=None):
    """Normalization applied inside brackets.

    ch_0(gamma) -> -integral(gamma); ch_1(gamma) -> 0; formal symbols -> 0;
    and, when a curve class beta is supplied, ch_2(gamma) -> int_beta gamma
    for gamma strictly in H^2.
    """
    ring = D.ring
    if D.basis != "ch":
        D = convert_basis(D, "ch")
    out = PtElement(ring, "ch")
    for (factors, f1, f0), c in D.terms.items():
        if f1 or f0:
            continue
        coeff = c
        kept = []
        dead = False
        for i, b in factors:
            if i == 0:
                coeff *= -ring.integrate(ring.basis_i(b))
                if not coeff:
                    dead = True
                    break
            elif i == 1:
                dead = True
                break
            elif i == 2 and beta is not None and ring.degrees[b] == 1:
                coeff *= beta.pair(ring.basis_i(b))
                if not coeff:
                    dead = True
                    break
            else:
                kept.append((i, b))
        if not dead:
            out._add_term(_mono(kept), coeff)
    return out


def filtration_level(ring, mono):
    """Largest subset of the factors whose cohomology product is nonzero."""
    factors, f1, f0 = mono
    if f1 or f0:
        raise ValueError("filtration level undefined with formal symbols")
    classes = [ring.basis_i(b) for _, b in factors]
    best = 0
    n = len(classes)
    for mask in range(1, 1 << n):
        prod = ring.unit()
        for t in range(n):
            if mask & (1 << t):
                prod = prod * classes[t]
        if not prod.is_zero():
            best = max(best, bin(mask).count("1"))
    return best


def is_essential(D):
    """Essential descendents: tch_i(gamma) with i >= 3 and gamma in H^{>0},
    or i = 2 and gamma in H^{>2}."""
    ring = D.ring
    T = convert_basis(D, "tch")
    for (factors, f1, f0), _ in T.terms.items():
        if f1 or f0:
            return False
        for i, b in factors:
            d = ring.degrees[b]
            if d < 1:
                return False
            if i < 2 or (i == 2 and d < 2):
                return False
    return True
