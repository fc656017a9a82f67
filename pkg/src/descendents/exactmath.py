"""Exact arithmetic: rationals, Laurent scalars, rational functions, truncated series.

Everything here is over Q (or Gaussian Q). No floats anywhere.
"""

from fractions import Fraction
import math


def frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def iszero(c):
    """Zero test that works across the coefficient rings used in this package."""
    z = getattr(c, "is_zero", None)
    if z is not None:
        return z()
    return c == 0


# ======================================================================
# Laurent polynomials in w = iu over Q
# ======================================================================

class WScalar:
    """Laurent polynomial in the formal variable w with rational coefficients.

    w stands for iu, so u**2 = -w**2 and 1/u**2 = -1/w**2.  Keeping the
    coefficients rational (instead of Gaussian) is exactly the statement that
    a quantity is a Laurent polynomial in iu.
    """

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {}
        if c:
            for e, v in c.items():
                v = frac(v)
                if v:
                    self.c[int(e)] = v

    @classmethod
    def of(cls, value, exp=0):
        return cls({exp: frac(value)})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: Fraction(1)})

    @classmethod
    def u_inv_sq(cls):
        # 1/u^2 = -1/w^2
        return cls({-2: Fraction(-1)})

    def is_zero(self):
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def _coerce(self, other):
        if isinstance(other, WScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return WScalar.of(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.c)
        for e, v in o.c.items():
            s = out.get(e, Fraction(0)) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = WScalar()
        r.c = out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = WScalar()
        r.c = {e: -v for e, v in self.c.items()}
        return r

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in o.c.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + v1 * v2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = WScalar()
        r.c = out
        return r

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / frac(other))
        if isinstance(other, WScalar) and len(other.c) == 1:
            ((e, v),) = other.c.items()
            return self.shifted(-e) * (Fraction(1) / v)
        return NotImplemented

    def shifted(self, k):
        """Multiply by w**k."""
        r = WScalar()
        r.c = {e + k: v for e, v in self.c.items()}
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def coeff(self, e):
        return self.c.get(e, Fraction(0))

    def iu_pairs(self):
        """Rewrite in the u basis: w**n = i**n u**n.

        Returns {u_exponent: GQ} with Gaussian rational coefficients.
        """
        out = {}
        for e, v in self.c.items():
            k = e % 4
            if k == 0:
                g = GQ(v, 0)
            elif k == 1:
                g = GQ(0, v)
            elif k == 2:
                g = GQ(-v, 0)
            else:
                g = GQ(0, -v)
            out[e] = g
        return out

    def __repr__(self):
        if not self.c:
            return "0"
        bits = []
        for e in sorted(self.c):
            v = self.c[e]
            if e == 0:
                bits.append(str(v))
            elif e == 1:
                bits.append(f"{v}*w")
            else:
                bits.append(f"{v}*w^{e}")
        return " + ".join(bits)


# ======================================================================
# Gaussian rationals
# ======================================================================

class GQ:
    """Gaussian rational a + b*i with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = frac(re)
        self.im = frac(im)

    def is_zero(self):
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, GQ):
            return other
        if isinstance(other, (int, Fraction)):
            return GQ(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GQ(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GQ((self.re * o.re + self.im * o.im) / n,
                  (self.im * o.re - self.re * o.im) / n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re} + {self.im}*i)"


GQ_I = GQ(0, 1)


def i_power(n):
    """i**n as a GQ, any integer n."""
    k = n % 4
    return (GQ(1, 0), GQ(0, 1), GQ(-1, 0), GQ(0, -1))[k]


# ======================================================================
# Polynomials and rational functions over Q (used for series tables in q)
# ======================================================================

class QPoly:
    """Dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("a",)

    def __init__(self, coeffs=()):
        a = [frac(c) for c in coeffs]
        while a and not a[-1]:
            a.pop()
        self.a = a

    @classmethod
    def const(cls, v):
        return cls([frac(v)])

    def degree(self):
        return len(self.a) - 1

    def is_zero(self):
        return not self.a

    def leading(self):
        return self.a[-1] if self.a else Fraction(0)

    def __add__(self, other):
        n = max(len(self.a), len(other.a))
        return QPoly([(self.a[i] if i < len(self.a) else 0) +
                      (other.a[i] if i < len(other.a) else 0) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.a), len(other.a))
        return QPoly([(self.a[i] if i < len(self.a) else Fraction(0)) -
                      (other.a[i] if i < len(other.a) else Fraction(0)) for i in range(n)])

    def __neg__(self):
        return QPoly([-c for c in self.a])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly([c * other for c in self.a])
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.a) + len(other.a) - 1)
        for i, c in enumerate(self.a):
            if not c:
                continue
            for j, d in enumerate(other.a):
                out[i + j] += c * d
        return QPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QPoly) and self.a == other.a

    def __hash__(self):
        return hash(tuple(self.a))

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.a)
        q = [Fraction(0)] * max(0, len(rem) - len(other.a) + 1)
        d = other.degree()
        lead = other.leading()
        for i in range(len(rem) - 1, d - 1, -1):
            if not rem[i]:
                continue
            f = rem[i] / lead
            q[i - d] = f
            for j, c in enumerate(other.a):
                rem[i - d + j] -= f * c
        return QPoly(q), QPoly(rem)

    def eval(self, x):
        x = frac(x)
        v = Fraction(0)
        for c in reversed(self.a):
            v = v * x + c
        return v

    def reversed_to(self, n):
        """Coefficient list reversed against degree n: q**n * p(1/q)."""
        if self.degree() > n:
            raise ValueError("degree exceeds reversal order")
        out = [Fraction(0)] * (n + 1)
        for i, c in enumerate(self.a):
            out[n - i] = c
        return QPoly(out)

    def primitive(self):
        """Scale to integer coprime coefficients with positive leading term.

        Returns (primitive_poly, scale) with self == scale * primitive_poly.
        """
        if self.is_zero():
            return QPoly(), Fraction(1)
        den = 1
        for c in self.a:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [c * den for c in self.a]
        g = 0
        for c in ints:
            g = math.gcd(g, int(c))
        scale = Fraction(g, den)
        if self.leading() < 0:
            scale = -scale
        return QPoly([c / scale for c in self.a]), scale

    def __repr__(self):
        if not self.a:
            return "0"
        bits = []
        for i, c in enumerate(self.a):
            if not c:
                continue
            if i == 0:
                bits.append(str(c))
            elif i == 1:
                bits.append(f"{c}*q")
            else:
                bits.append(f"{c}*q^{i}")
        return " + ".join(bits)


def qpoly_gcd(p, q):
    a, b = p, q
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    g, _ = a.primitive()
    return g


class QRational:
    """Rational function in q, kept in a canonical reduced form.

    num and den are integer-primitive with no common polynomial factor and
    the denominator has a positive leading coefficient, so equality is
    structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, QPoly):
            num = QPoly(num)
        if den is None:
            den = QPoly([1])
        elif not isinstance(den, QPoly):
            den = QPoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = QPoly()
            self.den = QPoly([1])
            return
        g = qpoly_gcd(num, den)
        if g.degree() > 0:
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        pn, sn = num.primitive()
        pd, sd = den.primitive()
        s = sn / sd                      # overall rational scale p/r in lowest terms
        self.num = pn * Fraction(s.numerator)
        self.den = pd * Fraction(s.denominator)
        if self.den.leading() < 0:
            self.num = -self.num
            self.den = -self.den

    @classmethod
    def const(cls, v):
        return cls(QPoly([frac(v)]))

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRational.const(other)
        return QRational(self.num * other.den + other.num * self.den,
                         self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return QRational(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRational.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRational.const(other)
        if isinstance(other, QRational):
            return QRational(self.num * other.num, self.den * other.den)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRational.const(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return QRational(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QRational.const(other)
        if not isinstance(other, QRational):
            return NotImplemented
        # canonical form makes this structural, the cross product is a backstop
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((tuple(self.num.a), tuple(self.den.a)))

    def at_reciprocal(self):
        """The rational function f(1/q)."""
        n = max(self.num.degree(), self.den.degree())
        return QRational(self.num.reversed_to(n), self.den.reversed_to(n))

    def eval(self, x):
        d = self.den.eval(x)
        if not d:
            raise ZeroDivisionError("pole of rational function")
        return self.num.eval(x) / d

    def __repr__(self):
        if self.den == QPoly([1]):
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


# ======================================================================
# Truncated multivariate Laurent series
# ======================================================================

class TruncSeries:
    """Truncated Laurent series in several variables.

    Each variable has an inclusive exponent window (lo, hi).  Products that
    push an exponent above hi are silently discarded; falling below lo raises,
    since then the truncation would be unsound.

    `caps` is an optional tuple of (weights, bound) pairs, each weights a
    map from variable name to a positive integer.  A monomial whose weighted
    exponent sum exceeds the bound is silently discarded, like an exponent
    above hi.  Caps are checked before the lo test, so a capped monomial
    never triggers the below-window error.

    Coefficients may live in any commutative ring whose elements support
    +, -, * among themselves and * by Fraction/int.
    """

    __slots__ = ("vars", "window", "terms", "caps", "_capvecs")

    def __init__(self, vars, window, terms=None, caps=()):
        self.vars = tuple(vars)
        self.window = {v: (int(lo), int(hi)) for v, (lo, hi) in window.items()}
        for v in self.vars:
            if v not in self.window:
                raise ValueError(f"no window for variable {v}")
        self.caps = tuple((dict(w), int(b)) for w, b in caps)
        self._capvecs = tuple(
            (tuple(w.get(v, 0) for v in self.vars), b) for w, b in self.caps)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                self._accumulate(tuple(e), c)

    def _keep(self, e):
        """None to keep, True to drop (above hi / over a cap). Raises below lo."""
        for wvec, bound in self._capvecs:
            if sum(w * k for w, k in zip(wvec, e) if w and k) > bound:
                return True
        for name, k in zip(self.vars, e):
            lo, hi = self.window[name]
            if k < lo:
                raise ValueError(f"exponent {k} of {name} fell below window lo={lo}")
            if k > hi:
                return True
        return False

    def _accumulate(self, e, c):
        if self._keep(e):
            return
        if e in self.terms:
            s = self.terms[e] + c
            if iszero(s):
                del self.terms[e]
            else:
                self.terms[e] = s
        elif not iszero(c):
            self.terms[e] = c

    def clone_empty(self):
        return TruncSeries(self.vars, self.window, caps=self.caps)

    @classmethod
    def constant(cls, vars, window, coeff, caps=()):
        s = cls(vars, window, caps=caps)
        e = (0,) * len(s.vars)
        s._accumulate(e, coeff)
        return s

    def monomial_added(self, coeff, **exps):
        """Return self plus coeff * prod(var**e)."""
        e = tuple(exps.get(v, 0) for v in self.vars)
        out = self.copy()
        out._accumulate(e, coeff)
        return out

    @classmethod
    def monomial(cls, vars, window, coeff, caps=(), **exps):
        s = cls(vars, window, caps=caps)
        e = tuple(exps.get(v, 0) for v in s.vars)
        s._accumulate(e, coeff)
        return s

    def copy(self):
        s = self.clone_empty()
        s.terms = dict(self.terms)
        return s

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        assert self.vars == other.vars
        out = self.copy()
        for e, c in other.terms.items():
            out._accumulate(e, c)
        return out

    def __neg__(self):
        s = self.clone_empty()
        s.terms = {e: -c for e, c in self.terms.items()}
        return s

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            assert self.vars == other.vars
            out = self.clone_empty()
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    # fast path: drop above-window products before multiplying
                    drop = False
                    for name, k in zip(self.vars, e):
                        if k > self.window[name][1]:
                            drop = True
                            break
                    if not drop:
                        for wvec, bound in self._capvecs:
                            if sum(w * k for w, k in zip(wvec, e) if w and k) > bound:
                                drop = True
                                break
                    if drop:
                        continue
                    out._accumulate(e, c1 * c2)
            return out
        # scalar
        s = self.clone_empty()
        for e, c in self.terms.items():
            v = c * other
            if not iszero(v):
                s.terms[e] = v
        return s

    __rmul__ = __mul__

    def pow_int(self, n):
        assert n >= 0
        out = None
        base = self
        # no identity element at hand, do it by repeated multiplication
        for _ in range(n):
            out = base if out is None else out * base
        if out is None:
            raise ValueError("pow_int(0) needs an explicit one, use constant()")
        return out

    def exp(self, one=None, max_iter=400):
        """exp of a series with no invertible constant part.

        `one` is the multiplicative identity of the coefficient ring
        (Fraction(1) by default).  Terminates when the next power vanishes
        inside the truncation, which requires every monomial of self to
        raise at least one bounded-above exponent.
        """
        if one is None:
            one = Fraction(1)
        out = TruncSeries.constant(self.vars, self.window, one)
        term = out
        k = 0
        while True:
            term = term * self
            k += 1
            if k > max_iter:
                raise RuntimeError("exp did not terminate inside the truncation")
            term = term * Fraction(1, k)
            if term.is_zero():
                break
            out = out + term
        return out

    def take_coeff(self, var, k):
        """Coefficient of var**k, as a series in the remaining variables."""
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        win = {v: self.window[v] for v in rest}
        caps = tuple(({v: c for v, c in w.items() if v != var},
                      b - w.get(var, 0) * k) for w, b in self.caps)
        caps = tuple((w, b) for w, b in caps if w)
        out = TruncSeries(rest, win, caps=caps)
        for e, c in self.terms.items():
            if e[i] == k:
                out._accumulate(e[:i] + e[i + 1:], c)
        return out

    def coefficient(self, **exps):
        e = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(e)

    def map_coeffs(self, f):
        s = self.clone_empty()
        for e, c in self.terms.items():
            v = f(c)
            if not iszero(v):
                s.terms[e] = v
        return s

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            mon = "*".join(f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            c = self.terms[e]
            bits.append(f"{c}*{mon}" if mon else f"{c}")
        return " + ".join(bits)


def geometric_inverse_linear(vars, window, main, small, one=None):
    """Series expansion of 1/(main + small) in the regime |main| >> |small|.

    main and small are variable names; returns sum_m (-1)^m small^m main^(-m-1)
    out to the windows.
    """
    if one is None:
        one = Fraction(1)
    out = TruncSeries(vars, window)
    lo_main = window[main][0]
    hi_small = window[small][1]
    m = 0
    while -m - 1 >= lo_main and m <= hi_small:
        coeff = one if m % 2 == 0 else one * Fraction(-1)
        e = {main: -m - 1, small: m}
        out = out + TruncSeries.monomial(vars, window, coeff, **e)
        m += 1
    return out


# ======================================================================
# Combinatorics
# ======================================================================

def set_partitions(items):
    """All set partitions of a list, each a list of blocks (lists)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def partitions_fixed_length(total, length, max_part=None):
    """Weakly decreasing tuples of positive integers with given sum and length."""
    if max_part is None:
        max_part = total
    if length == 0:
        if total == 0:
            yield ()
        return
    top = min(max_part, total - (length - 1))
    for p in range(top, 0, -1):
        for rest in partitions_fixed_length(total - p, length - 1, p):
            yield (p,) + rest


def aut_partition(mu):
    """Order of the automorphism group of a partition: product of mult!."""
    out = 1
    for p in set(mu):
        out *= math.factorial(list(mu).count(p))
    return out


def elementary_symmetric(m, values):
    """e_m of a list of values; 0 outside 0 <= m <= len(values)."""
    values = list(values)
    if m < 0 or m > len(values):
        return Fraction(0)
    coeffs = [Fraction(1)] + [Fraction(0)] * m
    for v in values:
        v = frac(v)
        for j in range(m, 0, -1):
            coeffs[j] += v * coeffs[j - 1]
    return coeffs[m]


def bracket_ekj(x, k, j):
    """The coefficient [x]^k_j = e_{k+1-j}(x, x+1, ..., x+k).

    For k = -1 the window is empty and the value is 1 if j == 0 else 0.
    """
    window = [frac(x) + n for n in range(k + 1)]
    return elementary_symmetric(k + 1 - j, window)


def chi1(k):
    """Harmonic number sum_{j=1}^{k} 1/j (zero for k <= 0)."""
    return sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))


def chi11(k):
    """sum_{1 <= i < j <= k} 1/(i*j)."""
    out = Fraction(0)
    for j in range(2, k + 1):
        for i in range(1, j):
            out += Fraction(1, i * j)
    return out


def factorial(n):
    if n < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(n)
