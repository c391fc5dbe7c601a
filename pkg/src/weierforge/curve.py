"""Rational Gorenstein curves with declared singularities.

A curve is the projective line with finitely many local rings replaced by
subrings of their normalizations.  Dualizing differentials are computed by
residue linear algebra: a differential r(t) dt with poles bounded by the
conductor exponents at the singular preimages is dualizing exactly when,
at every singularity P and for every local function f,

    sum over branches Q of P of  Res_Q(f * r dt)  =  0.

Weierstrass weights then come out of the Hasse-Wronskian of the resulting
basis, and are cross-checked against closed-form expressions in the
semigroup invariants.
"""

from __future__ import annotations

from .exact import (
    INF,
    FpElement,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    scalar_echelon,
    scalar_in_span,
    scalar_nullspace,
    scalar_rank,
    span_reduce,
)
from .numsg import NumericalSemigroup
from .padic import monomial_order_sequence
from .valsg2 import TwoBranchRing
from . import wronski
from .wronski import LinearSystem, order_sequence, wronskian


class SolutionDimensionMismatch(ValueError):
    """The residue conditions did not cut out a space of dimension g;
    the singularity descriptors are non-Gorenstein or inconsistent."""


class GeneratorNotFound(RuntimeError):
    """No single basis element generates the dualizing sheaf at the point."""


class TotalMismatch(RuntimeError):
    """Computed weights do not add up to the expected global total; this is
    an internal consistency failure, never a user error."""


def point_str(point):
    return "inf" if point is INF else str(point)


def _parse_point(field, text):
    if text in ("inf", "infinity", "oo"):
        return INF
    return field(text if isinstance(text, str) else text)


def _default_uniformizer(field, location):
    t = Polynomial.variable(field)
    one = Polynomial(field, [1])
    if location is INF:
        return RationalFunction(one, t)
    return RationalFunction(t - location, one)


def _check_uniformizer(u, location):
    if u.num.degree > 1 or u.den.degree > 1:
        raise ValueError("uniformizer must be a degree-one map of the line")
    if u.valuation(location) != 1:
        raise ValueError("uniformizer must vanish to order one at the location")


def evaluate_at(f, point):
    """Value of a rational function at a finite point or at INF (which must
    not be a pole)."""
    v = f.valuation(point)
    if v < 0:
        raise ZeroDivisionError("evaluation at a pole")
    if v > 0:
        return f.field.zero
    return f.leading_coefficient_at(point)


def uniformizer_expansion(f, location, uniformizer, nterms):
    """First nterms coefficients of f in powers of the uniformizer at the
    location, or None when f has a pole there."""
    coeffs = []
    cur = f
    for _ in range(nterms):
        if cur.is_zero():
            coeffs.append(f.field.zero)
            continue
        if cur.valuation(location) < 0:
            return None
        c = evaluate_at(cur, location)
        coeffs.append(c)
        cur = (cur - c) / uniformizer
    return coeffs


# ---------------------------------------------------------------------------
# Singularity descriptors
# ---------------------------------------------------------------------------

class _Branch:
    """One analytic branch: a point of the line, a uniformizer vanishing
    there, and the conductor exponent bounding dualizing pole orders."""

    __slots__ = ("location", "uniformizer", "conductor_exponent")

    def __init__(self, location, uniformizer, conductor_exponent):
        self.location = location
        self.uniformizer = uniformizer
        self.conductor_exponent = conductor_exponent


class MonomialSingularity:
    """Unibranch singularity whose local ring is spanned by uniformizer
    powers at the nongaps of a symmetric semigroup, plus the conductor
    tail."""

    def __init__(self, field, semigroup, location, uniformizer=None):
        if not semigroup.is_symmetric():
            raise ValueError("monomial singularity needs a symmetric semigroup")
        if semigroup.genus < 1:
            raise ValueError("semigroup of a singular point must have a gap")
        if uniformizer is None:
            uniformizer = _default_uniformizer(field, location)
        _check_uniformizer(uniformizer, location)
        self.field = field
        self.semigroup = semigroup
        self.location = location
        self.uniformizer = uniformizer
        self.delta = semigroup.genus

    @property
    def locations(self):
        return (self.location,)

    def branches(self):
        return [_Branch(self.location, self.uniformizer, 2 * self.delta)]

    def local_basis(self):
        """Series tuples (one per branch) spanning the local ring mod C."""
        c = 2 * self.delta
        return [(TruncatedSeries(self.field, n, [1], c),)
                for n in self.semigroup.small_elements()]

    def describe(self):
        return "monomial %s at %s" % (self.semigroup, point_str(self.location))

    def to_json(self):
        return {"kind": "monomial", "location": point_str(self.location),
                "generators": list(self.semigroup.generators)}


class UnibranchSingularity:
    """Unibranch singularity with an explicit basis of the local ring modulo
    the conductor, as truncated series in the uniformizer."""

    def __init__(self, field, basis, conductor_exponent, location, uniformizer=None):
        if uniformizer is None:
            uniformizer = _default_uniformizer(field, location)
        _check_uniformizer(uniformizer, location)
        c = conductor_exponent
        series = []
        for b in basis:
            if not isinstance(b, TruncatedSeries):
                b = TruncatedSeries(field, 0, list(b), None)
            if b.truncation is not None and b.truncation < c:
                raise ValueError("basis series not known to the conductor exponent")
            series.append(TruncatedSeries(field, 0, [b.coefficient(i) for i in range(c)], c))
        vectors = [[b.coefficient(i) for i in range(c)] for b in series]
        if scalar_rank(vectors) != len(vectors):
            raise ValueError("basis is linearly dependent modulo the conductor")
        one = [field.one] + [field.zero] * (c - 1)
        if not scalar_in_span(vectors, one):
            raise ValueError("local ring does not contain 1")
        for i, a in enumerate(series):
            for b in series[i:]:
                prod = (a * b).truncate(c)
                vec = [prod.coefficient(k) for k in range(c)]
                if not scalar_in_span(vectors, vec):
                    raise ValueError("basis span is not closed under multiplication mod C")
        tail = [field.zero] * (c - 1) + [field.one]
        if scalar_in_span(vectors, tail):
            raise ValueError("declared conductor exponent is not minimal")
        # value semigroup from the one-branch dimension table
        values = set(range(c, 2 * c + 2))
        for x in range(c):
            cols_rank = scalar_rank([v[:x] for v in vectors]) if x else 0
            next_rank = scalar_rank([v[:x + 1] for v in vectors])
            if next_rank > cols_rank:
                values.add(x)
        gaps = [n for n in range(1, c) if n not in values]
        semigroup = NumericalSemigroup(gaps)
        if not semigroup.is_symmetric():
            raise ValueError("value semigroup is not symmetric: the ring is not Gorenstein")
        self.field = field
        self.basis = tuple(series)
        self.conductor_exponent = c
        self.location = location
        self.uniformizer = uniformizer
        self.semigroup = semigroup
        self.delta = c - len(series)
        assert self.delta == semigroup.genus

    @property
    def locations(self):
        return (self.location,)

    def branches(self):
        return [_Branch(self.location, self.uniformizer, self.conductor_exponent)]

    def local_basis(self):
        return [(b,) for b in self.basis]

    def describe(self):
        return "unibranch (semigroup %s) at %s" % (self.semigroup, point_str(self.location))

    def to_json(self):
        return {"kind": "unibranch", "location": point_str(self.location),
                "conductor": self.conductor_exponent,
                "basis": [[str(b.coefficient(i)) for i in range(self.conductor_exponent)]
                          for b in self.basis]}


class TwoBranchSingularity:
    """Two branches glued along a validated TwoBranchRing."""

    def __init__(self, ring, locations, uniformizers=(None, None)):
        if not isinstance(ring, TwoBranchRing):
            raise TypeError("expected a validated TwoBranchRing")
        q1, q2 = locations
        if q1 == q2 or (q1 is INF and q2 is INF):
            raise ValueError("branch locations must be distinct")
        us = []
        for loc, u in zip((q1, q2), uniformizers):
            if u is None:
                u = _default_uniformizer(ring.field, loc)
            _check_uniformizer(u, loc)
            us.append(u)
        self.field = ring.field
        self.ring = ring
        self.locations = (q1, q2)
        self.uniformizers = tuple(us)
        self.delta = ring.delta

    def branches(self):
        xi1, xi2 = self.ring.conductor
        return [_Branch(self.locations[0], self.uniformizers[0], xi1),
                _Branch(self.locations[1], self.uniformizers[1], xi2)]

    def local_basis(self):
        return list(self.ring.basis)

    def describe(self):
        return "two-branch (delta %d) at %s,%s" % (
            self.delta, point_str(self.locations[0]), point_str(self.locations[1]))

    def to_json(self):
        xi1, xi2 = self.ring.conductor
        return {"kind": "two-branch",
                "locations": [point_str(q) for q in self.locations],
                "conductor": [xi1, xi2],
                "basis": [[[str(bt.coefficient(i)) for i in range(xi1)],
                           [str(bu.coefficient(i)) for i in range(xi2)]]
                          for bt, bu in self.ring.basis]}


class RationalCurve:
    """The projective line with the given singularities; arithmetic genus is
    the sum of their delta invariants."""

    def __init__(self, field, singularities):
        singularities = tuple(singularities)
        if not singularities:
            raise ValueError("a rational Gorenstein curve of positive genus needs a singularity")
        locations = []
        for s in singularities:
            locations.extend(s.locations)
        if len(set(point_str(q) for q in locations)) != len(locations):
            raise ValueError("singularity locations must be pairwise distinct")
        self.field = field
        self.singularities = singularities
        self.genus = sum(s.delta for s in singularities)

    @property
    def characteristic(self):
        return self.field.characteristic

    def singular_locations(self):
        out = []
        for s in self.singularities:
            out.extend(s.locations)
        return out


# ---------------------------------------------------------------------------
# Dualizing differentials
# ---------------------------------------------------------------------------

class DualizingBasis:
    """Basis of global dualizing differentials tau_i = r_i(t) dt, with the
    index of a generator of the dualizing stalk at each singularity."""

    __slots__ = ("curve", "differentials", "generator_index")

    def __init__(self, curve, differentials, generator_index):
        self.curve = curve
        self.differentials = tuple(differentials)
        self.generator_index = dict(generator_index)

    def generator(self, singularity_index):
        return self.differentials[self.generator_index[singularity_index]]


def differential_order_at(r, point):
    """Order of r(t) dt at a point of the line: the valuation of r, shifted
    by -2 at INF where dt = -du/u^2."""
    v = r.valuation(point)
    return v - 2 if point is INF else v


def _residue_of_differential(f, r, location):
    """Res at the location of f * r dt, for rational f and r."""
    if location is INF:
        g = (f * r).infinity_chart_differential()
        zero = g.field.zero if g.field.characteristic == 0 else FpElement(0, g.field.characteristic)
        return g.residue_at(zero)
    return (f * r).residue_at(location)


def _series_to_function(series, uniformizer, bound):
    """Polynomial in the uniformizer with the series coefficients below the
    bound, as a rational function on the line."""
    field = uniformizer.field
    acc = RationalFunction(Polynomial(field, []))
    for i in range(series.offset, min(bound, series.offset + len(series.coeffs))):
        c = series.coefficient(i)
        if c:
            acc = acc + c * uniformizer ** i
    return acc


def dualizing_basis(X):
    """Solve the residue conditions for the space of global dualizing
    differentials; its dimension must equal the arithmetic genus.

    The ansatz allows pole order up to the conductor exponent at each
    singular branch and regularity elsewhere (including the chart at
    infinity); each element of a basis of every local ring mod its
    conductor imposes one linear residue condition.
    """
    field = X.field
    one = Polynomial(field, [1])
    t = Polynomial.variable(field)
    denominator = one
    inf_exponent = 0
    for sing in X.singularities:
        for br in sing.branches():
            if br.location is INF:
                inf_exponent = br.conductor_exponent
            else:
                denominator = denominator * (t - br.location) ** br.conductor_exponent
    max_deg = denominator.degree - 2 + inf_exponent
    if max_deg < 0:
        raise SolutionDimensionMismatch("empty differential ansatz")
    ansatz = [RationalFunction(Polynomial.monomial(field, k), denominator)
              for k in range(max_deg + 1)]

    rows = []
    for sing in X.singularities:
        branches = sing.branches()
        for element in sing.local_basis():
            row = []
            branch_functions = [
                _series_to_function(series, br.uniformizer, br.conductor_exponent)
                for series, br in zip(element, branches)]
            for r in ansatz:
                total = field.zero
                for fb, br in zip(branch_functions, branches):
                    if fb.is_zero():
                        continue
                    total = total + _residue_of_differential(fb, r, br.location)
                row.append(total)
            rows.append(row)

    null = scalar_nullspace(rows, len(ansatz), field)
    if len(null) != X.genus:
        raise SolutionDimensionMismatch(
            "residue conditions cut dimension %d, expected genus %d"
            % (len(null), X.genus))
    differentials = []
    for vec in null:
        num = Polynomial(field, vec)
        differentials.append(RationalFunction(num, denominator))

    generator_index = {}
    for si, sing in enumerate(X.singularities):
        gi = _find_generator(sing, differentials)
        generator_index[si] = gi
    # order the basis by pole order at the first singularity, deepest first
    first = X.singularities[0].branches()[0]
    order = sorted(range(len(differentials)),
                   key=lambda i: differential_order_at(differentials[i], first.location))
    differentials = [differentials[i] for i in order]
    remap = {old: new for new, old in enumerate(order)}
    generator_index = {si: remap[gi] for si, gi in generator_index.items()}
    basis = DualizingBasis(X, differentials, generator_index)
    _verify_generators(X, basis)
    return basis


def _find_generator(sing, differentials):
    """Index of a differential with pole order exactly the conductor
    exponent on every branch of the singularity."""
    for i, r in enumerate(differentials):
        if all(differential_order_at(r, br.location) == -br.conductor_exponent
               for br in sing.branches()):
            return i
    raise GeneratorNotFound(
        "no basis differential generates the dualizing stalk at %s" % sing.describe())


def _verify_generators(X, basis):
    """Every ratio tau_j / tau_generator must lie in the local ring: its
    uniformizer expansion on each branch must be a span member modulo the
    conductor."""
    for si, sing in enumerate(X.singularities):
        gen = basis.differentials[basis.generator_index[si]]
        branches = sing.branches()
        ring_vectors = []
        for element in sing.local_basis():
            vec = []
            for series, br in zip(element, branches):
                vec.extend(series.coefficient(i) for i in range(br.conductor_exponent))
            ring_vectors.append(vec)
        pivots, ech = scalar_echelon(ring_vectors)
        for r in basis.differentials:
            f = r / gen
            vec = []
            ok = True
            for br in branches:
                exp = uniformizer_expansion(f, br.location, br.uniformizer,
                                            br.conductor_exponent)
                if exp is None:
                    ok = False
                    break
                vec.extend(exp)
            if not ok or any(span_reduce(pivots, ech, vec)):
                raise GeneratorNotFound(
                    "ratio to the chosen generator leaves the local ring at %s"
                    % sing.describe())


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------

def order_at_singularity(f, sing):
    """ord_P of a rational function: the sum of its valuations on the
    branches of P (dim of the local ring modulo f)."""
    return sum(f.valuation(br.location) for br in sing.branches())


def singular_weight(X, singularity_index, basis, orders=None):
    """Weight of a declared singularity:

        2 * delta * N + ord_P det(D^(eps_i) (tau_j / tau)),

    where tau generates the dualizing stalk at P and N is the sum of the
    orders of the full system.  The Hasse derivatives are taken in the
    global coordinate, so a branch sitting at infinity (where dt has a
    double pole) contributes a bookkeeping term -2N.

    The order sequence is basis- and trivialization-independent, so the
    caller may pass the one already computed for the full system.
    """
    sing = X.singularities[singularity_index]
    gen = basis.generator(singularity_index)
    funcs = [r / gen for r in basis.differentials]
    V = LinearSystem(funcs)
    if orders is None:
        orders = order_sequence(V)
    det = wronskian(V, tuple(orders))
    if det.is_zero():
        raise TotalMismatch("trivialized wronskian vanished at the system orders")
    infinite_branches = sum(1 for br in sing.branches() if br.location is INF)
    return (2 * sing.delta * orders.N
            + sum(det.valuation(br.location) for br in sing.branches())
            - 2 * orders.N * infinite_branches)


class WeightReport:
    """Full weight accounting for a curve: orders of the dualizing system,
    singular weights, the smooth wronskian divisor, and the global total."""

    __slots__ = ("curve", "orders", "N", "singular_weights", "smooth_divisor",
                 "total", "expected")

    def __init__(self, curve, orders, N, singular_weights, smooth_divisor,
                 total, expected):
        self.curve = curve
        self.orders = orders
        self.N = N
        self.singular_weights = singular_weights
        self.smooth_divisor = smooth_divisor
        self.total = total
        self.expected = expected

    def weight_at(self, singularity_index):
        return self.singular_weights[singularity_index]

    def smooth_count(self):
        return self.smooth_divisor.degree

    def to_json(self):
        curve = self.curve
        return {
            "characteristic": curve.characteristic,
            "genus": curve.genus,
            "orders": list(self.orders.terms),
            "N": self.N,
            "weights": [
                {"location": "/".join(point_str(q) for q in sing.locations),
                 "weight": self.singular_weights[i]}
                for i, sing in enumerate(curve.singularities)],
            "smooth": self.smooth_divisor.to_json(),
            "total": self.total,
            "expected": self.expected,
        }


def weight_report(X):
    """Compute every Weierstrass weight on the curve and audit the total
    against (2g-2)(g+N)."""
    basis = dualizing_basis(X)
    g = X.genus
    V = LinearSystem(basis.differentials)
    eps = order_sequence(V)
    N = eps.N
    w_raw = wronskian(V)

    singular_weights = []
    for si, sing in enumerate(X.singularities):
        w = singular_weight(X, si, basis, orders=eps)
        # cross-check against the raw wronskian: the determinant of the
        # trivialized tuple is gen^(-s) times the raw one
        gen = basis.generator(si)
        direct = (sum(w_raw.valuation(br.location) for br in sing.branches())
                  - (g + N) * sum(gen.valuation(br.location) for br in sing.branches()))
        if direct != w:
            raise TotalMismatch(
                "singular weight disagreement at %s: %d vs %d"
                % (sing.describe(), w, direct))
        if w < 2 * sing.delta * N:
            raise TotalMismatch("weight below conductor lower bound")
        singular_weights.append(w)

    excluded = X.singular_locations()
    divisor = wronski.weight_divisor(V, excluded_points=excluded)
    total = sum(singular_weights) + divisor.degree
    expected = wronski.global_weight_total(g, 2 * g - 2, g, N)
    if total != expected:
        raise TotalMismatch("weights total %d, expected %d" % (total, expected))
    return WeightReport(X, eps, N, singular_weights, divisor, total, expected)


def smooth_weight_at(X, q, basis=None):
    """Weight of a specific non-singular point of the curve."""
    for sing in X.singularities:
        if any(point_str(q) == point_str(loc) for loc in sing.locations):
            raise ValueError("point lies over a declared singularity; "
                             "use singular_weight instead")
    if basis is None:
        basis = dualizing_basis(X)
    V = LinearSystem(basis.differentials)
    return wronski.differential_weight_at(V, q)


# ---------------------------------------------------------------------------
# Closed-form weights from semigroup data (characteristic 0 for the genus
# formulas; the monomial curve expressions hold in any characteristic)
# ---------------------------------------------------------------------------

def monomial_curve_weights(S, p):
    """Weights on the rational curve with a single monomial unibranch
    singularity with symmetric semigroup S, in characteristic p (0 allowed):

        W(P)     = sum(n_i - eps_i) + 2g * sum(eps_i)
        W(P_inf) = sum(l_{i+1} - 1 - eps_i)

    and no other Weierstrass points; the orders eps_i are those of the
    monomial morphism on the small elements n_i.
    """
    if not S.is_symmetric():
        raise ValueError("semigroup must be symmetric")
    g = S.genus
    small = S.small_elements()
    orders = monomial_order_sequence(small, p)
    w_p = sum(n - e for n, e in zip(small, orders)) + 2 * g * orders.N
    w_inf = sum(l - 1 - e for l, e in zip(S.gaps, orders))
    assert w_p + w_inf == (2 * g - 2) * (g + orders.N)
    return w_p, w_inf, orders


def unibranch_weight_formula(S, g, w_normalized=0):
    """Characteristic-0 weight of a unibranch singularity with value
    semigroup S on a curve of arithmetic genus g, given the weight
    w_normalized of the point over it on the partial normalization:

        delta*(g-1)*(g+1) - wt(S) + w_normalized.
    """
    return S.genus * (g - 1) * (g + 1) - S.weight() + w_normalized


def two_monomial_weights(S1, S2, case):
    """Characteristic-0 weights for a rational curve with exactly two
    monomial unibranch singularities, by mutual pole position of the two
    uniformizers:

    case 1: each uniformizer has its pole at the other singularity
            (their product is constant); no smooth Weierstrass points.
    case 2: only the first singularity sits at the pole of the other
            uniformizer; wt(S1) smooth points.
    case 3: neither does; wt(S1) + wt(S2) smooth points.
    """
    g = S1.genus + S2.genus
    base1 = S1.genus * (g - 1) * (g + 1) - S1.weight()
    base2 = S2.genus * (g - 1) * (g + 1) - S2.weight()
    if case == 1:
        w1, w2 = base1 + S2.weight(), base2 + S1.weight()
        smooth = 0
    elif case == 2:
        w1, w2 = base1 + S2.weight(), base2
        smooth = S1.weight()
    elif case == 3:
        w1, w2 = base1, base2
        smooth = S1.weight() + S2.weight()
    else:
        raise ValueError("case must be 1, 2 or 3")
    assert w1 + w2 + smooth == g ** 3 - g
    return w1, w2, smooth


def detect_two_singularity_case(X):
    """Case tag for two_monomial_weights from declared uniformizer data."""
    if len(X.singularities) != 2:
        raise ValueError("curve must have exactly two singularities")
    s1, s2 = X.singularities
    u1, u2 = s1.uniformizer, s2.uniformizer
    q1, q2 = s1.location, s2.location
    prod = u1 * u2
    if prod.num.degree == 0 and prod.den.degree == 0:
        return 1
    if u2.valuation(q1) < 0:
        return 2
    if u1.valuation(q2) < 0:
        # swap roles: the formulas are stated with the distinguished
        # singularity first
        return 2
    return 3


def smooth_count_formula(semigroups):
    """Characteristic-0 count of smooth Weierstrass points on a rational
    curve whose unibranch singularities have these semigroups, assuming no
    point over a singularity is a Weierstrass point of the partial
    normalization: sum of the semigroup weights."""
    return sum(S.weight() for S in semigroups)
