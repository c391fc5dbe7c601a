"""Hasse-Wronskians of linear systems of rational functions on the line.

A linear system is a tuple of linearly independent rational functions.  Its
order sequence is the lexicographically least (eps_i) making the rows
D^(eps_i) f_j independent over the function field; the wronskian is the
corresponding determinant.  Weights of points are orders of vanishing of
that determinant in a local trivialization.
"""

from __future__ import annotations

from .exact import (
    INF,
    Polynomial,
    RationalFunction,
    coprime_refinement,
    fraction_free_rank_det,
    scalar_det,
    scalar_rank,
)
from .padic import OrderSequence, binom_mod_p


class DependentFunctionsError(ValueError):
    """The given functions are linearly dependent over the base field."""


class LinearSystem:
    """Tuple of linearly independent rational functions over one field."""

    __slots__ = ("functions", "field", "_orders", "_wronskian")

    def __init__(self, functions):
        functions = tuple(f if isinstance(f, RationalFunction) else RationalFunction(f)
                          for f in functions)
        if not functions:
            raise ValueError("empty linear system")
        field = functions[0].field
        if any(f.field != field for f in functions):
            raise ValueError("mixed coefficient fields")
        if _constant_rank(functions) < len(functions):
            raise DependentFunctionsError("functions are linearly dependent over the base field")
        self.functions = functions
        self.field = field
        self._orders = None
        self._wronskian = None

    @property
    def characteristic(self):
        return self.field.characteristic

    @property
    def dimension(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __len__(self):
        return len(self.functions)


def _constant_rank(functions):
    """Rank over the base field: coefficients against a common denominator."""
    field = functions[0].field
    common = Polynomial(field, [1])
    for f in functions:
        g = common.gcd(f.den)
        common = common * (f.den.exact_div(g) if g.degree > 0 else f.den)
    polys = [f.num * common.exact_div(f.den) for f in functions]
    width = max(p.degree for p in polys) + 1
    rows = [[p.coefficient(i) for i in range(width)] for p in polys]
    return scalar_rank(rows)


def order_sequence(V):
    """Greedy-minimal (eps_i) with det(D^(eps_i) f_j) != 0, verified by a
    final determinant evaluation."""
    if V._orders is not None:
        return V._orders
    s = len(V)
    # generous search cap; can never bind for independent functions
    spread = sum(f.num.degree + f.den.degree for f in V.functions) + s + 2
    derivative_lists = [None] * s

    def derivative_row(e):
        for j, f in enumerate(V.functions):
            if derivative_lists[j] is None or len(derivative_lists[j]) <= e:
                derivative_lists[j] = f.hasse_list(max(e, s + 1))
        return [derivative_lists[j][e] for j in range(s)]

    chosen = []
    accepted = []
    eps = -1
    while len(chosen) < s:
        eps += 1
        if chosen and eps > chosen[-1] + spread:
            raise AssertionError("order sequence search exceeded its degree bound")
        row = derivative_row(eps)
        if _extends_rank(accepted, row, V.field):
            chosen.append(eps)
            accepted.append(row)
    orders = OrderSequence(chosen, V.characteristic)
    _rank, det = fraction_free_rank_det(accepted)
    if det.is_zero():
        raise AssertionError("greedy order sequence failed determinant verification")
    V._orders = orders
    V._wronskian = det
    return orders


def _evaluation_points(field, count):
    p = field.characteristic
    if p == 0:
        return [field(k) for k in range(2, 2 + count)]
    return [field(k) for k in range(min(p, count))]


def _extends_rank(accepted, row, field):
    """Does the row extend the row span over the function field?

    Scalar evaluation at a point gives a one-sided certificate of
    independence; exact fraction-free rank decides the remaining cases.
    """
    k = len(accepted)
    for point in _evaluation_points(field, 6):
        rows = []
        ok = True
        for r in accepted + [row]:
            vals = []
            for x in r:
                if not x.den(point):
                    ok = False
                    break
                vals.append(x(point))
            if not ok:
                break
            rows.append(vals)
        if ok and scalar_rank(rows) == k + 1:
            return True
    rank, _det = fraction_free_rank_det(accepted + [row])
    return rank == k + 1


def wronskian(V, eps=None):
    """det(D^(eps_i) f_j); with eps omitted, at the order sequence of V
    (where it is nonzero)."""
    if eps is None:
        order_sequence(V)
        return V._wronskian
    terms = list(eps)
    if len(terms) != len(V):
        raise ValueError("sequence length does not match the system dimension")
    lists = [f.hasse_list(max(terms)) for f in V.functions]
    rows = [[l[e] for l in lists] for e in terms]
    _rank, det = fraction_free_rank_det(rows)
    return det


def vq_orders(V, q):
    """The s distinct orders at q of elements of the system, shifted so the
    least is 0, by valuation-echelon elimination."""
    funcs = list(V.functions)
    orders = []
    while funcs:
        vals = [f.valuation(q) for f in funcs]
        vmin = min(vals)
        k = vals.index(vmin)
        lead = funcs.pop(k)
        orders.append(vmin)
        lc = lead.leading_coefficient_at(q)
        for i, f in enumerate(funcs):
            if vals[i + (i >= k)] == vmin:
                funcs[i] = f - (f.leading_coefficient_at(q) / lc) * lead
                if funcs[i].is_zero():
                    raise DependentFunctionsError("functions are linearly dependent")
    base = min(orders)
    return tuple(sorted(o - base for o in orders))


def differential_weight_at(V, q):
    """Weight at q of the system viewed as coefficients of differentials
    f_j(t) dt, sections of L = (regular differentials)(pole divisor).

    The wronskian section lives in L^s tensor omega^N, so its order at q is
    ord_q(det) - s*ord_q(local L generator) - N*ord_q(local omega
    generator), with dt generating omega at finite q and du = -dt/t^2 at
    INF.  The value is invariant under scaling the whole tuple by one
    rational function.
    """
    eps = order_sequence(V)
    w = wronskian(V)
    s = len(V)
    if q is INF:
        pole = min(0, min(f.valuation(INF) for f in V.functions) - 2)
        return w.valuation(INF) - s * (pole + 2) - 2 * eps.N
    pole = min(0, min(f.valuation(q) for f in V.functions))
    return w.valuation(q) - s * pole


def smooth_weight(V, q):
    """Weight at a smooth point, with the lower-bound certificate.

    Returns (weight, bound, attained) where bound = sum(eps_i(q) - eps_i)
    and attained reports whether det C(eps_j(q), eps_i) != 0 mod p, which
    by the smooth theory is equivalent to weight == bound.  In
    characteristic 0 the two always agree (asserted).
    """
    eps = order_sequence(V)
    qorders = vq_orders(V, q)
    weight = differential_weight_at(V, q)
    bound = sum(a - b for a, b in zip(qorders, eps))
    p = V.characteristic
    if p == 0:
        attained = True
    else:
        from .exact import GF
        field = GF(p)
        matrix = [[field(binom_mod_p(qo, e, p)) for qo in qorders] for e in eps]
        attained = bool(scalar_det(matrix))
    if p == 0:
        assert weight == bound
    else:
        assert weight >= bound
        assert (weight == bound) == attained
    return weight, bound, attained


def global_weight_total(s, degL, g, N):
    """Total weight, counting multiplicities: s*deg(L) + (2g-2)*N."""
    return s * degL + (2 * g - 2) * N


class WronskianDivisor:
    """Zero divisor of a wronskian section: (place, multiplicity) pairs where
    a place is a monic squarefree-refined polynomial factor or INF."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(entries)

    @property
    def degree(self):
        return sum(m * (1 if place is INF else place.degree)
                   for place, m in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def to_json(self):
        return [{"factor": "inf" if place is INF else str(place),
                 "multiplicity": m,
                 "degree": 1 if place is INF else place.degree}
                for place, m in self.entries]


def weight_divisor(V, excluded_points=()):
    """All points of positive weight of the differential system, grouped by
    coprime polynomial places, excluding the given finite points and INF
    when listed.

    Candidate places are the zeros and poles of the wronskian and the poles
    of the functions; everywhere else the weight vanishes.
    """
    eps = order_sequence(V)
    w = wronskian(V)
    s = len(V)
    candidates = [w.num, w.den] + [f.den for f in V.functions]
    places = coprime_refinement(candidates)
    field = V.field
    excluded_finite = [p for p in excluded_points if p is not INF]
    entries = []
    for place in places:
        if place.degree == 1 and any(place.root_multiplicity(pt) for pt in excluded_finite):
            continue
        pole = min(0, min(f.multiplicity_of_factor(place) for f in V.functions))
        weight = w.multiplicity_of_factor(place) - s * pole
        if weight < 0:
            raise AssertionError("negative weight at a non-excluded place")
        if weight > 0:
            entries.append((place, weight))
    if INF not in excluded_points:
        winf = differential_weight_at(V, INF)
        if winf < 0:
            raise AssertionError("negative weight at infinity")
        if winf > 0:
            entries.append((INF, winf))
    return WronskianDivisor(entries)
