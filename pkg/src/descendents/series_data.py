"""Tables of bracket values as rational functions of q.

A table maps a normalized descendent monomial to the rational function in q
that the degree-1 bracket assigns to it.  Keys are four sorted integer
vectors, one per cohomology class (pt, L, H, one); entry n in a vector
stands for a factor ch_{n+2} of that class.  Rows are stored as JSONL with
integer coefficient lists for numerator and denominator, constant term
first.
"""

import json
import os

from .exactmath import QPoly, QRational
from .pt_algebra import bracket_normalize

DEFAULT_TABLE = os.path.join(os.path.dirname(__file__), "data", "p3_deg1.jsonl")

_FIELDS = ("pt", "L", "H", "one")


def series_key(pt=(), L=(), H=(), one=()):
    return (tuple(sorted(pt)), tuple(sorted(L)), tuple(sorted(H)),
            tuple(sorted(one)))


def load_table(path=None):
    """Read a JSONL table, returning {key: QRational}.

    Duplicate keys are an error: silently keeping either row would corrupt
    every sum built from the table.
    """
    if path is None:
        path = DEFAULT_TABLE
    table = {}
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            key = series_key(*(row[name] for name in _FIELDS))
            if key in table:
                raise ValueError(f"duplicate table key {key} at line {lineno}")
            table[key] = QRational(QPoly(row["num"]), QPoly(row["den"]))
    return table


def key_from_monomial(ring, mono):
    """Table key of a normalized ch-monomial on the standard 3-space ring."""
    factors, f1, f0 = mono
    if f1 or f0:
        raise ValueError("formal symbols have no table key")
    vecs = {name: [] for name in _FIELDS}
    for k, b in factors:
        if k < 2:
            raise ValueError(f"ch_{k} factor survived normalization")
        label = ring.labels[b]
        name = "pt" if label == ring.point_label() else label
        if name not in vecs:
            raise ValueError(f"no table field for class {label!r}")
        vecs[name].append(k - 2)
    return series_key(**vecs)


def evaluate_bracket(D, table, beta):
    """Value of the bracket of D against the table, as a QRational.

    D is normalized first (ch_0, ch_1, divisor ch_2 factors removed), then
    each surviving monomial is looked up.  A monomial absent from the table
    is a hard error rather than a zero.
    """
    ring = D.ring
    norm = bracket_normalize(D, beta)
    total = QRational.const(0)
    for mono, c in norm.terms.items():
        key = key_from_monomial(ring, mono)
        if key not in table:
            raise KeyError(f"no table row for {key}")
        total = total + table[key] * c
    return total


def verify_virasoro_relation(k, D, table, beta):
    """Evaluate the degree-k Virasoro relation on D; 0 means it holds.

    Applies the weight-k constraint operator to D, normalizes, and sums
    table values.  Coverage gaps propagate as KeyError so a relation is
    never silently truncated.
    """
    from .pt_algebra import apply_virasoro

    return evaluate_bracket(apply_virasoro(D.ring, k, D, "Lcal"), table, beta)


def functional_symmetry_scan(table):
    """Check every row satisfies f(1/q) = eps * q^(-a) * f(q).

    Returns {key: (eps, a)}; a row where f(1/q)/f(q) is not a signed
    monomial raises.
    """
    out = {}
    for key, f in table.items():
        if f.is_zero():
            raise ValueError(f"zero table row {key}")
        g = f.at_reciprocal() / f
        nz_num = [(e, c) for e, c in enumerate(g.num.a) if c]
        nz_den = [(e, c) for e, c in enumerate(g.den.a) if c]
        if len(nz_num) != 1 or len(nz_den) != 1 or nz_den[0][1] != 1:
            raise ValueError(f"row {key}: f(1/q)/f(q) not a signed power of q")
        eps = nz_num[0][1]
        a = nz_den[0][0] - nz_num[0][0]
        out[key] = (eps, a)
    return out
