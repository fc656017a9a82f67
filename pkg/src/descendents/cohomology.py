"""Finite-basis graded commutative cohomology rings with only (p,p)-classes.

A ring is given by basis labels, complex degrees, structure constants, and the
integration functional on the top degree.  Construction eagerly checks the
ring axioms and the nondegeneracy of the Poincare pairing, then computes the
dual basis and the Kunneth diagonal.
"""

from fractions import Fraction
import json

from .exactmath import frac


class CohClass:
    """Vector over the basis of a CohRing."""

    __slots__ = ("ring", "v")

    def __init__(self, ring, v):
        self.ring = ring
        self.v = tuple(frac(x) for x in v)
        if len(self.v) != len(ring.labels):
            raise ValueError("coefficient vector has wrong length")

    def is_zero(self):
        return all(not x for x in self.v)

    def __add__(self, other):
        self._same_ring(other)
        return CohClass(self.ring, [a + b for a, b in zip(self.v, other.v)])

    def __sub__(self, other):
        self._same_ring(other)
        return CohClass(self.ring, [a - b for a, b in zip(self.v, other.v)])

    def __neg__(self):
        return CohClass(self.ring, [-a for a in self.v])

    def __mul__(self, other):
        if isinstance(other, CohClass):
            self._same_ring(other)
            return self.ring.multiply(self, other)
        return CohClass(self.ring, [a * frac(other) for a in self.v])

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (Fraction(1) / frac(other))

    def _same_ring(self, other):
        if self.ring is not other.ring:
            raise ValueError("classes live in different rings")

    def __eq__(self, other):
        return isinstance(other, CohClass) and self.ring is other.ring and self.v == other.v

    def __hash__(self):
        return hash((id(self.ring), self.v))

    def integral(self):
        return self.ring.integrate(self)

    def degree(self):
        """Complex degree if homogeneous; raises on mixed-degree classes."""
        degs = {self.ring.degrees[i] for i, x in enumerate(self.v) if x}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"class is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def decompose(self):
        """Split into (coefficient, basis index) pairs for the nonzero entries."""
        return [(x, i) for i, x in enumerate(self.v) if x]

    def __repr__(self):
        bits = []
        for i, x in enumerate(self.v):
            if not x:
                continue
            lab = self.ring.labels[i]
            bits.append(lab if x == 1 else f"{x}*{lab}")
        return " + ".join(bits) if bits else "0"


class CohRing:
    def __init__(self, labels, degrees, mult, integrals, c1, c2, point,
                 top=None, name="ring"):
        """mult maps (i, j) with i <= j to a coefficient vector of gamma_i*gamma_j.

        integrals is the vector of integral(gamma_i); c1, c2 are coefficient
        vectors; point is the label of the class with integral 1 used for
        point insertions.
        """
        self.labels = list(labels)
        self.degrees = [int(d) for d in degrees]
        self.name = name
        n = len(self.labels)
        if len(self.degrees) != n:
            raise ValueError("labels/degrees length mismatch")
        self.top = max(self.degrees) if top is None else top
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != n:
            raise ValueError("duplicate basis labels")
        self._ints = [frac(x) for x in integrals]

        # dense multiplication tensor
        self._mult = {}
        for (i, j), vec in mult.items():
            self._mult[(i, j)] = [frac(x) for x in vec]
            self._mult[(j, i)] = self._mult[(i, j)]
        for i in range(n):
            # unit row: gamma_0 = 1
            self._mult[(0, i)] = [Fraction(1 if t == i else 0) for t in range(n)]
            self._mult[(i, 0)] = self._mult[(0, i)]
        for i in range(n):
            for j in range(n):
                if (i, j) not in self._mult:
                    raise ValueError(f"missing product {self.labels[i]}*{self.labels[j]}")

        self._validate()

        self.c1 = CohClass(self, c1)
        self.c2 = CohClass(self, c2)
        self.point = self.basis(point)
        if self.point.integral() != 1:
            raise ValueError("point class must integrate to 1")
        self.c1c2_over_24 = (self.c1 * self.c2) / 24

        # Poincare pairing and dual basis
        P = [[self.integrate(self.basis_i(i) * self.basis_i(j)) for j in range(n)]
             for i in range(n)]
        self._pairing = P
        Pinv = _invert(P)
        if Pinv is None:
            raise ValueError("degenerate Poincare pairing")
        # dual basis: gamma_i_dual = sum_j Pinv[i][j] gamma_j, int(gamma_i_dual*gamma_j) = delta_ij
        self._dual = [CohClass(self, row) for row in Pinv]

    # ---- construction helpers ----

    def _validate(self):
        n = len(self.labels)
        if self.degrees[0] != 0:
            raise ValueError("first basis element must be the unit (degree 0)")
        for i in range(n):
            for j in range(n):
                vec = self._mult[(i, j)]
                if vec != self._mult[(j, i)]:
                    raise ValueError("multiplication not commutative")
                d = self.degrees[i] + self.degrees[j]
                for k, x in enumerate(vec):
                    if x and self.degrees[k] != d:
                        raise ValueError("multiplication not degree-additive")
        # associativity on all basis triples
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self._mul_vec(self._mult[(i, j)], k)
                    right = self._mul_vec_r(i, self._mult[(j, k)])
                    if left != right:
                        raise ValueError(
                            f"multiplication not associative at "
                            f"({self.labels[i]},{self.labels[j]},{self.labels[k]})")

    def _mul_vec(self, vec, k):
        n = len(self.labels)
        out = [Fraction(0)] * n
        for a, x in enumerate(vec):
            if not x:
                continue
            for t, y in enumerate(self._mult[(a, k)]):
                out[t] += x * y
        return out

    def _mul_vec_r(self, i, vec):
        n = len(self.labels)
        out = [Fraction(0)] * n
        for a, x in enumerate(vec):
            if not x:
                continue
            for t, y in enumerate(self._mult[(i, a)]):
                out[t] += x * y
        return out

    # ---- public api ----

    def basis(self, label):
        i = self.index.get(label)
        if i is None:
            raise KeyError(f"no basis class {label!r} in {self.name}")
        return self.basis_i(i)

    def basis_i(self, i):
        return CohClass(self, [1 if t == i else 0 for t in range(len(self.labels))])

    def zero(self):
        return CohClass(self, [0] * len(self.labels))

    def unit(self):
        return self.basis_i(0)

    def from_dict(self, d):
        v = [Fraction(0)] * len(self.labels)
        for lab, x in d.items():
            v[self.index[lab]] = frac(x)
        return CohClass(self, v)

    def multiply(self, a, b):
        n = len(self.labels)
        out = [Fraction(0)] * n
        for x, i in a.decompose():
            for y, j in b.decompose():
                for t, z in enumerate(self._mult[(i, j)]):
                    if z:
                        out[t] += x * y * z
        return CohClass(self, out)

    def integrate(self, a):
        return sum((x * self._ints[i] for x, i in a.decompose()), Fraction(0))

    def kunneth_diagonal(self, gamma=None):
        """gamma * Delta as a list of (coeff, left_index, right_index).

        Delta = sum_i gamma_i (x) gamma_i_dual; gamma multiplies the left slot.
        Entries are aggregated over the basis-pair grid.
        """
        if gamma is None:
            gamma = self.unit()
        agg = {}
        n = len(self.labels)
        for i in range(n):
            left = gamma * self.basis_i(i)
            for x, a in left.decompose():
                for y, b in self._dual[i].decompose():
                    c = agg.get((a, b), Fraction(0)) + x * y
                    if c:
                        agg[(a, b)] = c
                    else:
                        agg.pop((a, b), None)
        return [(c, a, b) for (a, b), c in sorted(agg.items())]

    def pairing_matrix(self):
        return [row[:] for row in self._pairing]

    def classes_of_degree(self, d):
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def point_label(self):
        for _, i in self.point.decompose():
            return self.labels[i]

    def __repr__(self):
        return f"CohRing({self.name}: {', '.join(self.labels)})"


def _invert(M):
    """Gauss-Jordan inverse over Fraction; None if singular."""
    n = len(M)
    A = [[frac(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r][col]:
                piv = r
                break
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        f = A[col][col]
        A[col] = [x / f for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


class CurveClass:
    """A curve class beta, represented by the divisor pairing it induces.

    Only two pieces of data are ever consumed: the functional int_beta(.) on
    H^2 and the degree d_beta = int_beta c1.
    """

    def __init__(self, ring, pairing):
        self.ring = ring
        self.pairing = {lab: frac(x) for lab, x in pairing.items()}
        for lab in self.pairing:
            if ring.degrees[ring.index[lab]] != 1:
                raise ValueError(f"{lab} is not a divisor class")

    def pair(self, gamma):
        """int_beta gamma for gamma of complex degree 1."""
        out = Fraction(0)
        for x, i in gamma.decompose():
            if self.ring.degrees[i] != 1:
                raise ValueError("divisor pairing applied to a non-divisor")
            out += x * self.pairing.get(self.ring.labels[i], Fraction(0))
        return out

    @property
    def d_beta(self):
        return self.pair(self.ring.c1)


# ======================================================================
# Presets
# ======================================================================

def ring_p3():
    """H*(P^3): basis 1, H, L, p with H^2 = L, H*L = p."""
    labels = ["one", "H", "L", "p"]
    degrees = [0, 1, 2, 3]
    z = [0, 0, 0, 0]
    mult = {
        (1, 1): [0, 0, 1, 0],
        (1, 2): [0, 0, 0, 1],
        (1, 3): z,
        (2, 2): z,
        (2, 3): z,
        (3, 3): z,
    }
    return CohRing(labels, degrees, mult, integrals=[0, 0, 0, 1],
                   c1=[0, 4, 0, 0], c2=[0, 0, 6, 0], point="p", name="p3")


def line_in_p3(ring):
    """The degree-1 curve class of P^3: int_beta H = 1."""
    return CurveClass(ring, {"H": 1})


def ring_p2():
    labels = ["one", "h", "pt"]
    degrees = [0, 1, 2]
    mult = {
        (1, 1): [0, 0, 1],
        (1, 2): [0, 0, 0],
        (2, 2): [0, 0, 0],
    }
    return CohRing(labels, degrees, mult, integrals=[0, 0, 1],
                   c1=[0, 3, 0], c2=[0, 0, 3], point="pt", name="p2")


def ring_p1xp1():
    labels = ["one", "a", "b", "pt"]
    degrees = [0, 1, 1, 2]
    z = [0, 0, 0, 0]
    mult = {
        (1, 1): z,
        (1, 2): [0, 0, 0, 1],
        (1, 3): z,
        (2, 2): z,
        (2, 3): z,
        (3, 3): z,
    }
    return CohRing(labels, degrees, mult, integrals=[0, 0, 0, 1],
                   c1=[0, 2, 2, 0], c2=[0, 0, 0, 4], point="pt", name="p1xp1")


def surface_from_config(data):
    """Build a surface ring from a JSON-shaped dict.

    Expected keys: labels, degrees, mult (mapping "lab1,lab2" to {label:
    coeff}), integrals, c1, c2 (label->coeff dicts), point.
    """
    labels = data["labels"]
    degrees = data["degrees"]
    idx = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)

    def vec(d):
        v = [Fraction(0)] * n
        for lab, x in d.items():
            v[idx[lab]] = frac(x)
        return v

    mult = {}
    for key, val in data["mult"].items():
        l1, l2 = (s.strip() for s in key.split(","))
        i, j = idx[l1], idx[l2]
        mult[(min(i, j), max(i, j))] = vec(val)
    # fill in products not named: only those forced to vanish by degree
    for i in range(1, n):
        for j in range(i, n):
            if (i, j) not in mult:
                if degrees[i] + degrees[j] > max(degrees):
                    mult[(i, j)] = [Fraction(0)] * n
                else:
                    raise ValueError(f"missing product {labels[i]}*{labels[j]}")
    return CohRing(labels, degrees, mult, integrals=vec(data["integrals"]),
                   c1=vec(data["c1"]), c2=vec(data["c2"]), point=data["point"],
                   name=data.get("name", "surface"))


def load_surface(path):
    with open(path) as fh:
        return surface_from_config(json.load(fh))


def product_with_p1(S):
    """The 3-fold X = S x P^1 for a surface ring S.

    Basis {sigma x 1} and {sigma x pt}; total Chern class is the box product,
    so c1(X) = c1(S) x 1 + 2 (1 x pt) and c2(X) = c2(S) x 1 + 2 c1(S) x pt.
    """
    if S.top != 2:
        raise ValueError("product_with_p1 expects a surface ring")
    nS = len(S.labels)
    labels = [f"{lab}*1" for lab in S.labels] + [f"{lab}*pt" for lab in S.labels]
    degrees = [d for d in S.degrees] + [d + 1 for d in S.degrees]

    def emb(vec_s, with_pt):
        off = nS if with_pt else 0
        v = [Fraction(0)] * (2 * nS)
        for i, x in enumerate(vec_s):
            v[off + i] = frac(x)
        return v

    mult = {}
    for i in range(2 * nS):
        for j in range(i, 2 * nS):
            si, pi = i % nS, i >= nS
            sj, pj = j % nS, j >= nS
            if pi and pj:
                mult[(i, j)] = [Fraction(0)] * (2 * nS)
            else:
                prod_s = S._mult[(si, sj)]
                mult[(i, j)] = emb(prod_s, pi or pj)

    integrals = [Fraction(0)] * nS + [S._ints[i] for i in range(nS)]
    c1 = emb(S.c1.v, False)
    c1[nS] += 2  # + 2 (1 x pt)
    c2 = emb(S.c2.v, False)
    for x, i in (S.c1 * 2).decompose():
        c2[nS + i] += x

    ring = CohRing(labels, degrees, mult, integrals, c1, c2,
                   point=f"{S.point_label()}*pt", name=f"{S.name}xP1")
    ring.surface_factor = S
    return ring


def pushforward_p1(delta):
    """rho_*: classes sigma x pt map to sigma, classes sigma x 1 map to 0."""
    X = delta.ring
    S = getattr(X, "surface_factor", None)
    if S is None:
        raise ValueError("class does not live in a product_with_p1 ring")
    nS = len(S.labels)
    v = [Fraction(0)] * nS
    for x, i in delta.decompose():
        if i >= nS:
            v[i - nS] += x
    return CohClass(S, v)


def embed_times_pt(sigma, X):
    """sigma x pt inside a product_with_p1 ring."""
    S = getattr(X, "surface_factor", None)
    if S is None or sigma.ring is not S:
        raise ValueError("ring mismatch in embed_times_pt")
    nS = len(S.labels)
    v = [Fraction(0)] * (2 * nS)
    for x, i in sigma.decompose():
        v[nS + i] = x
    return CohClass(X, v)
