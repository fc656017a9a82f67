"""Descendent algebra on the Gromov-Witten side.

Elements are sums of commutative monomials in symbols indexed by an
integer and a cohomology class, with coefficients that are Laurent
polynomials in w = iu.  Two bases share the container:

  tau basis: factors (k, b) are tau_k of basis class b, k >= -2.
  a basis:   factors (n, b) with n >= 1 are Heisenberg generators a_n;
             factors with n in {-1, -2} are the same central tau symbols
             as in the tau basis, passed through conversion untouched.

The index -1 and -2 tau symbols never pair under the bracket; the vacuum
rules that remove them live in vacuum_null_reduce and restrict_negatives.
"""

from fractions import Fraction

from .exactmath import (WScalar, bracket_ekj, chi1, chi11, factorial, frac)

# ======================================================================
# container
# ======================================================================


def _gmono(factors=()):
    return tuple(sorted(factors))


class GwElement:
    __slots__ = ("ring", "basis", "terms")

    def __init__(self, ring, basis="tau", terms=None):
        if basis not in ("tau", "a"):
            raise ValueError(f"unknown basis {basis!r}")
        self.ring = ring
        self.basis = basis
        self.terms = {}
        if terms:
            for m, c in terms.items():
                self._add_term(m, c)

    def _add_term(self, m, c):
        if not isinstance(c, WScalar):
            c = WScalar.of(c)
        if c.is_zero():
            return
        cur = self.terms.get(m)
        new = c if cur is None else cur + c
        if new.is_zero():
            self.terms.pop(m, None)
        else:
            self.terms[m] = new

    def is_zero(self):
        return not self.terms

    def copy(self):
        out = GwElement(self.ring, self.basis)
        out.terms = dict(self.terms)
        return out

    def __add__(self, other):
        self._compat(other)
        out = self.copy()
        for m, c in other.terms.items():
            out._add_term(m, c)
        return out

    def __neg__(self):
        out = GwElement(self.ring, self.basis)
        for m, c in self.terms.items():
            out.terms[m] = -c
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, WScalar)):
            out = GwElement(self.ring, self.basis)
            for m, c in self.terms.items():
                out._add_term(m, c * other if isinstance(other, WScalar)
                              else c * WScalar.of(other))
            return out
        self._compat(other)
        out = GwElement(self.ring, self.basis)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out._add_term(_gmono(m1 + m2), c1 * c2)
        return out

    __rmul__ = __mul__

    def _compat(self, other):
        if not isinstance(other, GwElement):
            raise TypeError(f"cannot combine GwElement with {type(other)!r}")
        if other.ring is not self.ring or other.basis != self.basis:
            raise ValueError("mixed rings or bases")

    def __eq__(self, other):
        if not isinstance(other, GwElement):
            return NotImplemented
        return (self.ring is other.ring and self.basis == other.basis
                and self.terms == other.terms)

    def map_monomials(self, f):
        """Sum f(mono, coeff) over terms; f returns a GwElement."""
        out = gw_zero(self.ring, self.basis)
        for m, c in self.terms.items():
            out = out + f(m, c)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        names = {True: {0: "tau"}, False: {}}
        parts = []
        for m, c in sorted(self.terms.items()):
            bits = []
            for k, b in m:
                if self.basis == "a" and k >= 1:
                    sym = f"a_{k}"
                else:
                    sym = f"tau_{k}"
                bits.append(f"{sym}({self.ring.labels[b]})")
            head = "*".join(bits) if bits else "1"
            parts.append(f"({c!r})*{head}")
        return " + ".join(parts)


def gw_zero(ring, basis="tau"):
    return GwElement(ring, basis)


def gw_one(ring, basis="tau"):
    out = GwElement(ring, basis)
    out._add_term(_gmono(), WScalar.one())
    return out


def gw_gen(ring, k, gamma, basis="tau"):
    """tau_k(gamma) resp. a_k(gamma), multilinear in gamma.

    Indices below the basis floor (-2 for tau, 1 for a) give zero: the
    shift operators push indices down and rely on that cutoff.
    """
    if basis == "tau":
        if k < -2:
            return gw_zero(ring, basis)
    else:
        if k < 1:
            return gw_zero(ring, basis)
    out = GwElement(ring, basis)
    for c, b in gamma.decompose():
        out._add_term(_gmono([(k, b)]), c)
    return out


def tau_symbol(ring, k, gamma, basis="tau"):
    """A central tau_{-1} or tau_{-2} factor, valid in either basis."""
    if k not in (-1, -2):
        raise ValueError("tau_symbol is only for indices -1 and -2")
    out = GwElement(ring, basis)
    for c, b in gamma.decompose():
        out._add_term(_gmono([(k, b)]), c)
    return out


def build_gw_element(ring, spec):
    """Product of generators from (kind, level, gamma) triples.

    kind "tau" builds tau_level factors (symbols for level -1, -2),
    kind "a" builds Heisenberg factors.  Mixing kinds is rejected since
    an element lives in a single basis.
    """
    kinds = {kind for kind, _, _ in spec}
    if not kinds <= {"tau", "a"}:
        raise ValueError(f"unknown kinds {kinds - {'tau', 'a'}}")
    if len(kinds) == 2:
        raise ValueError("cannot mix tau and a factors in one element")
    basis = kinds.pop() if kinds else "tau"
    out = gw_one(ring, basis)
    for _, k, gamma in spec:
        if basis == "tau" and k in (-1, -2):
            out = out * tau_symbol(ring, k, gamma, basis)
        else:
            out = out * gw_gen(ring, k, gamma, basis)
    return out


# ======================================================================
# first and second order operators
# ======================================================================


def apply_Rkj(ring, k, j, D):
    """The weight-j part R^j_k of the derivation R_k.

    On a factor tau_i of a class of complex degree d the action is
    [i+d-1]^k_j tau_{k+i-j} of the class times c1^j; for k = -1 only
    j = 0 survives and the action is the pure shift i -> i-1.
    """
    if D.basis != "tau":
        raise ValueError("R_k acts on the tau basis")
    out = gw_zero(ring)
    cj = ring.unit()
    for _ in range(j):
        cj = cj * ring.c1
    for mono, coeff in D.terms.items():
        for pos in range(len(mono)):
            i, b = mono[pos]
            d = ring.degrees[b]
            rest = mono[:pos] + mono[pos + 1:]
            w = bracket_ekj(i + d - 1, k, j)
            if not w:
                continue
            piece = gw_gen(ring, k + i - j, ring.basis_i(b) * cj)
            for m2, c2 in piece.terms.items():
                out._add_term(_gmono(rest + m2), coeff * (c2 * w))
    return out


def apply_Rk_gw(ring, k, D):
    """R_k = sum of R^j_k over j = 0..3."""
    out = gw_zero(ring)
    for j in range(4):
        out = out + apply_Rkj(ring, k, j, D)
    return out


def apply_Bk(ring, m, D):
    """Second order operator pairing tau_0 factors.

    Each unordered pair of tau_0 factor instances is replaced by the
    number int(gamma * gamma' * c1^m); everything else is untouched.
    """
    if D.basis != "tau":
        raise ValueError("B acts on the tau basis")
    cm = ring.unit()
    for _ in range(m):
        cm = cm * ring.c1
    out = gw_zero(ring)
    for mono, coeff in D.terms.items():
        idx = [pos for pos, (i, _) in enumerate(mono) if i == 0]
        for s in range(len(idx)):
            for t in range(s + 1, len(idx)):
                ps, pt_ = idx[s], idx[t]
                gs = ring.basis_i(mono[ps][1])
                gt = ring.basis_i(mono[pt_][1])
                val = (gs * gt * cm).integral()
                if not val:
                    continue
                rest = tuple(f for pos, f in enumerate(mono)
                             if pos not in (ps, pt_))
                out._add_term(_gmono(rest), coeff * frac(val))
    return out


# ======================================================================
# the quadratic multipliers T^j_k
# ======================================================================


def _Tjk(ring, k, j):
    """Normal-ordered form of T^j_k, a quadratic expression in tau symbols.

    Sum over m of (-1)^(m+1) [2-m-dL]^k_j tau_{m-1} tau_{k-j-m} with the
    two slots fed by the Kunneth components of c1^j times the diagonal.
    """
    cj = ring.unit()
    for _ in range(j):
        cj = cj * ring.c1
    out = gw_zero(ring)
    if cj.is_zero():
        return out
    pairs = ring.kunneth_diagonal(cj)
    for m in range(-1, k - j + 3):
        sign = Fraction((-1) ** (m + 1))
        for c, ia, ib in pairs:
            dL = ring.degrees[ia]
            w = bracket_ekj(2 - m - dL, k, j)
            if not w:
                continue
            t = gw_gen(ring, m - 1, ring.basis_i(ia)) \
                * gw_gen(ring, k - j - m, ring.basis_i(ib))
            out = out + t * (sign * w * c)
    return out


def _compact_slot(ring, a, idx):
    """Slot a of the compact quadratic: (factor, scalar weight).

    Slot 0 is the central tau_{-2} carrying the (iu)^2 weight of the
    degree-shifted generator normalization; slot a >= 2 is a_{a-1} over
    (a-1)!.  Slot 1 never reaches here (a_0 = 0 kills the term).
    """
    g = ring.basis_i(idx)
    if a == 0:
        return tau_symbol(ring, -2, g, basis="a"), WScalar.of(Fraction(1), 2)
    return (gw_gen(ring, a - 1, g, basis="a"),
            WScalar.of(Fraction(1, factorial(a - 1))))


def _Tprime_compact(ring, k):
    """T'_k as the factorial-weighted quadratic in Heisenberg generators.

    -(iu)^(k-2) sum over a+b = k+2 and the Kunneth pairs of c1 Delta of
    (-1)^(dL dR) (a+dL-3)! (b+dR-3)! a_{a-1} a_{b-1} / ((a-1)!(b-1)!),
    with terms dropped when a factorial argument is negative or an a_0
    appears.  Returned in the a basis.
    """
    out = gw_zero(ring, "a")
    pairs = ring.kunneth_diagonal(ring.c1)
    lead = WScalar.of(Fraction(-1), k - 2)
    for a in range(0, k + 3):
        b = k + 2 - a
        if a == 1 or b == 1:
            continue
        for c, ia, ib in pairs:
            dL, dR = ring.degrees[ia], ring.degrees[ib]
            fL, fR = a + dL - 3, b + dR - 3
            if fL < 0 or fR < 0:
                continue
            w = Fraction(factorial(fL) * factorial(fR))
            sign = Fraction((-1) ** (dL * dR))
            left, wl = _compact_slot(ring, a, ia)
            right, wr = _compact_slot(ring, b, ib)
            out = out + (left * right) * (lead * wl * wr * (sign * w * c))
    return out


def build_Tk_gw(ring, k, which="Tprime_tau", j=None):
    """Quadratic multiplier entering the Virasoro operators.

    which selects the route:
      "Tj"              single T^j_k for j = 1, 2, 3 (j required)
      "T0"              2 (k+1)! tau_0(1) tau_{k-1}(pt), the only part of
                        the j = 0 sum that survives against stationary
                        insertions
      "Tprime_tau"      sum of T^j_k over j = 1, 2, 3 (tau basis)
      "Tprime_compact"  the factorial-weighted Heisenberg quadratic
                        claimed equal to the primed sum (a basis)
      "Tprime"          the operative creation quadratic: the j-sum plus
                        the point completion 2 k! tau_{k-2}(pt) at k >= 2
      "full"            T^0_k plus the operative primed part
    """
    if which == "Tj":
        if j not in (1, 2, 3):
            raise ValueError("route Tj needs j in {1, 2, 3}")
        return _Tjk(ring, k, j)
    if which == "T0":
        pt = ring.basis(ring.point_label())
        t = gw_gen(ring, 0, ring.unit()) * gw_gen(ring, k - 1, pt)
        return t * Fraction(2 * factorial(k + 1))
    if which == "Tprime_tau":
        out = gw_zero(ring)
        for jj in (1, 2, 3):
            out = out + _Tjk(ring, k, jj)
        return out
    if which == "Tprime_compact":
        return _Tprime_compact(ring, k)
    if which == "Tprime":
        out = build_Tk_gw(ring, k, "Tprime_tau")
        if k >= 2:
            pt = ring.basis(ring.point_label())
            out = out + gw_gen(ring, k - 2, pt) * Fraction(2 * factorial(k))
        return out
    if which == "full":
        return build_Tk_gw(ring, k, "T0") + build_Tk_gw(ring, k, "Tprime")
    raise ValueError(f"unknown route {which!r}")


# ======================================================================
# Virasoro operators
# ======================================================================


def apply_gw_virasoro(ring, k, D, which="Ltilde"):
    """Virasoro action on the tau basis.

    "L"       full operator: quadratic creation + derivation + pairing
              + the k = 0 constant.
    "Ltilde"  same with the weight-zero part of the creation term removed.
    "Lcal"    the Ltilde variant whose constant is traded for the shifted
              point insertion (iu)^2 (k+1)! R_{-1}(tau_{k-1}(pt) D).
    """
    if D.basis != "tau":
        raise ValueError("Virasoro operators act on the tau basis")
    half_w2 = WScalar.of(Fraction(1, 2), 2)          # (iu)^2 / 2
    half_uinv2 = WScalar.u_inv_sq() * WScalar.of(Fraction(1, 2))
    route = "full" if which == "L" else "Tprime"
    out = build_Tk_gw(ring, k, route) * D * half_w2
    out = out + apply_Rk_gw(ring, k, D)
    out = out + apply_Bk(ring, k + 1, D) * half_uinv2
    if which in ("L", "Ltilde"):
        if k == 0:
            const = Fraction(ring.c1c2_over_24.integral())
            out = out + D * (-const)
        return out
    if which == "Lcal":
        pt = ring.basis(ring.point_label())
        ins = gw_gen(ring, k - 1, pt) * D
        out = out + apply_Rk_gw(ring, -1, ins) * WScalar.of(factorial(k + 1), 2)
        return out
    raise ValueError(f"unknown operator {which!r}")


# ======================================================================
# vacuum rules
# ======================================================================


def vacuum_null_reduce(D):
    """Drop monomials that die against the vacuum.

    tau_{-1} of anything and tau_{-2} of a class with zero integral both
    kill the bracket; tau_{-2} of the point survives as a symbol.
    """
    ring = D.ring
    out = gw_zero(ring, D.basis)
    for mono, c in D.terms.items():
        dead = False
        for k, b in mono:
            if k == -1:
                dead = True
                break
            if k == -2 and not ring.integrate(ring.basis_i(b)):
                dead = True
                break
        if not dead:
            out._add_term(mono, c)
    return out


def restrict_negatives(D, mode):
    """Identify the surviving negative symbols with their vacuum weights.

    tau_{-2}(pt) becomes the scalar 1/u^2 in both modes.  Mode "low" also
    sends tau_{-1}(pt) to zero; mode "high" sends tau_{-1} of any class of
    complex degree two or more to zero.  Other factors pass through.
    """
    if mode not in ("low", "high"):
        raise ValueError(f"unknown mode {mode!r}")
    ring = D.ring
    out = gw_zero(ring, D.basis)
    for mono, c in D.terms.items():
        coeff = c
        kept = []
        dead = False
        for k, b in mono:
            d = ring.degrees[b]
            if k == -2 and ring.labels[b] == ring.point_label():
                coeff = coeff * WScalar.u_inv_sq()
            elif k == -1 and mode == "low" and ring.labels[b] == ring.point_label():
                dead = True
                break
            elif k == -1 and mode == "high" and d >= 2:
                dead = True
                break
            else:
                kept.append((k, b))
        if not dead:
            out._add_term(_gmono(kept), coeff)
    return out


# ======================================================================
# change of basis between tau and the Heisenberg generators
# ======================================================================


def _chi2(m):
    return sum((Fraction(1, i * i) for i in range(1, m + 1)), Fraction(0))


def _tau_factor_to_a(ring, k, b):
    """One tau factor rewritten in the a basis (an a-basis GwElement)."""
    g = ring.basis_i(b)
    if k in (-1, -2):
        return tau_symbol(ring, k, g, basis="a")
    if k == 0:
        out = gw_gen(ring, 1, g, basis="a")
        out = out + gw_one(ring, "a") * (-Fraction((g * ring.c2).integral(), 24))
        return out
    if k == 1:
        out = gw_gen(ring, 2, g, basis="a") * WScalar.of(Fraction(1, 2), 1)
        out = out + gw_gen(ring, 1, g * ring.c1, basis="a") * Fraction(-1)
        return out
    if ring.degrees[b] == 0:
        raise ValueError(f"tau_{k} of the unit is outside the dictionary")
    out = gw_gen(ring, k + 1, g, basis="a") \
        * WScalar.of(Fraction(1, factorial(k + 1)), k)
    out = out + gw_gen(ring, k, g * ring.c1, basis="a") \
        * WScalar.of(-chi1(k) / factorial(k), k - 1)
    out = out + gw_gen(ring, k - 1, g * ring.c1 * ring.c1, basis="a") \
        * WScalar.of((_chi2(k - 1) + chi11(k - 1)) / factorial(k - 1), k - 2)
    return out


def tau_to_a(D):
    """Rewrite a tau-basis element in the a basis, factor by factor."""
    if D.basis != "tau":
        raise ValueError("tau_to_a starts from the tau basis")
    ring = D.ring
    out = gw_zero(ring, "a")
    for mono, c in D.terms.items():
        acc = gw_one(ring, "a") * c
        for k, b in mono:
            acc = acc * _tau_factor_to_a(ring, k, b)
        out = out + acc
    return out


def _a_factor_to_tau(ring, n, b, memo):
    if (n, b) in memo:
        return memo[(n, b)]
    g = ring.basis_i(b)
    if n in (-1, -2):
        res = tau_symbol(ring, n, g)
    elif n == 1:
        res = gw_gen(ring, 0, g) \
            + gw_one(ring) * Fraction((g * ring.c2).integral(), 24)
    else:
        # invert the leading coefficient of the tau_{n-1} row and push the
        # lower a-terms back through the conversion recursively
        row = _tau_factor_to_a(ring, n - 1, b)
        lead = WScalar.of(Fraction(factorial(n)), -(n - 1))
        res = gw_gen(ring, n - 1, g) * lead
        for mono, c in row.terms.items():
            if mono == _gmono([(n, b)]):
                continue
            if not mono:
                sub = gw_one(ring)
            else:
                (m, bb), = mono
                sub = _a_factor_to_tau(ring, m, bb, memo)
            res = res + sub * (c * lead) * Fraction(-1)
    memo[(n, b)] = res
    return res


def a_to_tau(D):
    """Inverse of tau_to_a, computed by triangular back substitution."""
    if D.basis != "a":
        raise ValueError("a_to_tau starts from the a basis")
    ring = D.ring
    memo = {}
    out = gw_zero(ring)
    for mono, c in D.terms.items():
        acc = gw_one(ring) * c
        for n, b in mono:
            acc = acc * _a_factor_to_tau(ring, n, b, memo)
        out = out + acc
    return out


def tau_a_convert(x, direction):
    """Dispatcher between the two descendent bases."""
    if direction == "tau_to_a":
        return tau_to_a(x)
    if direction == "a_to_tau":
        return a_to_tau(x)
    raise ValueError(f"unknown direction {direction!r}")
