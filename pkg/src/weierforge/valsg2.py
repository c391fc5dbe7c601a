"""Two-branch local rings inside k[[t]] x k[[u]] and their value semigroups.

A ring is presented by a basis of its image modulo the conductor ideal
C = t^xi1 k[[t]] x u^xi2 k[[u]] together with the conductor exponents.
The value semigroup S = {(v1(f), v2(f))} is computed from a table of
dimensions of the subspaces V(x,y) = {f : v1(f) >= x, v2(f) >= y}: a point
lies in S exactly when both one-step restrictions drop the dimension,
since a vector space is never the union of two proper subspaces.
"""

from __future__ import annotations

from .exact import (
    TruncatedSeries,
    scalar_echelon,
    scalar_rank,
    span_reduce,
)
from .numsg import NumericalSemigroup


class NotClosed(ValueError):
    """The declared basis span is not closed under multiplication mod C."""


class NotGorenstein(ValueError):
    """dim(normalization/conductor) differs from twice the delta invariant."""


class EliminationStuck(RuntimeError):
    """Value-echelon elimination cannot reach the configuration promised by
    the adapted-basis theorem; the descriptor is inconsistent."""


class TwoBranchRing:
    """Validated local ring given by basis-mod-conductor series pairs."""

    __slots__ = ("field", "basis", "conductor", "delta", "gorenstein", "_window", "_matrix")

    def __init__(self, field, basis, conductor, delta, gorenstein, window, matrix):
        self.field = field
        self.basis = tuple(basis)
        self.conductor = tuple(conductor)
        self.delta = delta
        self.gorenstein = gorenstein
        self._window = window
        self._matrix = matrix

    def basis_vectors(self, w1=None, w2=None):
        """Coefficient vectors (t-window then u-window) of the basis."""
        if w1 is None:
            w1, w2 = self._window
        return [_pair_vector(bt, bu, w1, w2) for bt, bu in self.basis]

    def to_json(self):
        return {
            "characteristic": self.field.characteristic,
            "conductor": list(self.conductor),
            "delta": self.delta,
            "gorenstein": self.gorenstein,
            "basis": [[_series_coeff_strings(bt, self.conductor[0] + 2),
                       _series_coeff_strings(bu, self.conductor[1] + 2)]
                      for bt, bu in self.basis],
        }


def _pair_vector(bt, bu, w1, w2):
    return ([bt.coefficient(i) for i in range(w1)]
            + [bu.coefficient(i) for i in range(w2)])


def _series_coeff_strings(s, upto):
    return [str(s.coefficient(i)) for i in range(min(upto, s.truncation if s.truncation is not None else upto))]


def validate_ring(field, basis_pairs, conductor, strict=True):
    """Check a declared two-branch ring and compute its delta invariant.

    basis_pairs: (t-side series, u-side series) pairs spanning the ring
    modulo C; each side must be known out to its conductor exponent + 2.
    With strict=True a failed Gorenstein dimension count raises; otherwise
    the ring is admitted flagged non-Gorenstein (semigroup-only analysis).
    """
    xi1, xi2 = conductor
    if xi1 < 1 or xi2 < 1:
        raise ValueError("conductor exponents must be positive")
    w1, w2 = xi1 + 2, xi2 + 2
    basis = []
    for bt, bu in basis_pairs:
        if not isinstance(bt, TruncatedSeries):
            bt = TruncatedSeries(field, 0, list(bt), None)
        if not isinstance(bu, TruncatedSeries):
            bu = TruncatedSeries(field, 0, list(bu), None)
        if bt.truncation is not None and bt.truncation < xi1:
            raise ValueError("first-branch series not known to order %d" % xi1)
        if bu.truncation is not None and bu.truncation < xi2:
            raise ValueError("second-branch series not known to order %d" % xi2)
        # canonical representative mod C: drop everything past the conductor
        bt = TruncatedSeries(field, 0, [bt.coefficient(i) for i in range(xi1)], w1)
        bu = TruncatedSeries(field, 0, [bu.coefficient(i) for i in range(xi2)], w2)
        if bt.coefficient(0) != bu.coefficient(0):
            raise ValueError("branch constant terms differ: the ring would not be local")
        basis.append((bt, bu))

    vectors = [_pair_vector(bt, bu, w1, w2) for bt, bu in basis]
    if scalar_rank(vectors) != len(vectors):
        raise ValueError("basis is linearly dependent modulo the conductor")

    # conductor tail inside the window
    tail = _conductor_vectors(field, xi1, xi2, w1, w2)
    full = vectors + tail
    pivots, ech = scalar_echelon(full)

    def contains(vec):
        return not any(span_reduce(pivots, ech, vec))

    one = [field.zero] * (w1 + w2)
    one[0] = field.one
    one[w1] = field.one
    if not contains(one):
        raise ValueError("ring does not contain (1,1)")

    # closure under multiplication, checked pairwise on the basis
    for i, (at, au) in enumerate(basis):
        for bt, bu in basis[i:]:
            pt = (at * bt).truncate(w1)
            pu = (au * bu).truncate(w2)
            if not contains(_pair_vector(pt, pu, w1, w2)):
                raise NotClosed("product of basis elements escapes the span mod C")

    # declared conductor must be the true conductor ideal
    for vec, label in ((_unit_pair(field, 0, xi1 - 1, w1, w2), "first"),
                       (_unit_pair(field, 1, xi2 - 1, w1, w2), "second")):
        if contains(vec):
            raise ValueError("declared conductor exponent on the %s branch is not minimal" % label)

    delta = (xi1 + xi2) - len(basis)
    if delta < 1:
        raise ValueError("delta invariant must be at least 1")
    gorenstein = (xi1 + xi2) == 2 * delta
    if strict and not gorenstein:
        raise NotGorenstein(
            "dim(normalization/conductor) = %d differs from 2*delta = %d"
            % (xi1 + xi2, 2 * delta))
    return TwoBranchRing(field, basis, (xi1, xi2), delta, gorenstein, (w1, w2), full)


def _conductor_vectors(field, xi1, xi2, w1, w2):
    out = []
    for j in range(xi1, w1):
        out.append(_unit_pair(field, 0, j, w1, w2))
    for j in range(xi2, w2):
        out.append(_unit_pair(field, 1, j, w1, w2))
    return out


def _unit_pair(field, side, exponent, w1, w2):
    vec = [field.zero] * (w1 + w2)
    vec[exponent if side == 0 else w1 + exponent] = field.one
    return vec


class ValueSemigroup2:
    """Value semigroup of a two-branch ring: window points, fibers, maximal
    points, conductor, and the two branch projections."""

    __slots__ = ("ring", "conductor", "finite_points", "infinite_vertical",
                 "infinite_horizontal", "maximals", "S1", "S2")

    def __init__(self, ring, conductor, finite_points, infinite_vertical,
                 infinite_horizontal, maximals, S1, S2):
        self.ring = ring
        self.conductor = conductor
        self.finite_points = finite_points
        self.infinite_vertical = infinite_vertical
        self.infinite_horizontal = infinite_horizontal
        self.maximals = maximals
        self.S1 = S1
        self.S2 = S2

    @property
    def I(self):
        return len(self.maximals)

    @property
    def delta1(self):
        return self.S1.genus

    @property
    def delta2(self):
        return self.S2.genus

    @property
    def delta(self):
        return self.ring.delta

    @property
    def mu(self):
        return (self.conductor[0] - 1, self.conductor[1] - 1)

    def __contains__(self, point):
        x, y = point
        if x < 0 or y < 0:
            return False
        xi1, xi2 = self.conductor
        if x <= xi1 and y <= xi2:
            return (x, y) in self.finite_points
        if x > xi1 and y > xi2:
            return True
        if y > xi2:
            return x in self.infinite_vertical
        return y in self.infinite_horizontal

    def exists_above(self, x, y):
        """Is there a semigroup point (x, y') with y' > y?"""
        xi1, xi2 = self.conductor
        if x < 0:
            return False
        if x > xi1 or x in self.infinite_vertical:
            return True
        return any(py > y for (px, py) in self.finite_points if px == x)

    def exists_right(self, x, y):
        xi1, xi2 = self.conductor
        if y < 0:
            return False
        if y > xi2 or y in self.infinite_horizontal:
            return True
        return any(px > x for (px, py) in self.finite_points if py == y)

    def delta_set_empty(self, x, y):
        """True when no semigroup point lies strictly above or strictly to
        the right of (x, y)."""
        return not self.exists_above(x, y) and not self.exists_right(x, y)

    def to_json(self):
        return {
            "maximals": [list(m) for m in self.maximals],
            "conductor": list(self.conductor),
            "I": self.I,
            "delta": self.delta,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "S1": self.S1.to_json(),
            "S2": self.S2.to_json(),
            "symmetric": symmetry_check(self)[0],
        }


def value_semigroup(ring):
    """Compute the value semigroup from the dimension table of the spaces
    V(x,y) = {f in O : v1(f) >= x, v2(f) >= y}."""
    xi1, xi2 = ring.conductor
    w1, w2 = ring._window
    rows = ring._matrix
    total_rank = scalar_rank(rows)

    def restricted_rank(x, y):
        cols = list(range(x)) + list(range(w1, w1 + y))
        if not cols:
            return 0
        sub = [[r[c] for c in cols] for r in rows]
        return scalar_rank(sub)

    dim = {}
    for x in range(xi1 + 2):
        for y in range(xi2 + 2):
            dim[(x, y)] = total_rank - restricted_rank(x, y)

    finite_points = set()
    for x in range(xi1 + 1):
        for y in range(xi2 + 1):
            if dim[(x, y)] > dim[(x + 1, y)] and dim[(x, y)] > dim[(x, y + 1)]:
                finite_points.add((x, y))

    infinite_vertical = set()
    for x in range(xi1 + 1):
        if dim[(x, xi2)] > dim[(x + 1, xi2)]:
            infinite_vertical.add(x)
    infinite_horizontal = set()
    for y in range(xi2 + 1):
        if dim[(xi1, y)] > dim[(xi1, y + 1)]:
            infinite_horizontal.add(y)

    # declared conductor is minimal (cross-check with validate_ring)
    assert (xi1 - 1) not in infinite_vertical or xi1 == 0
    assert (xi2 - 1) not in infinite_horizontal or xi2 == 0

    maximals = []
    for (x, y) in sorted(finite_points):
        if x in infinite_vertical:
            continue
        if any((x, y2) in finite_points and y2 > y for y2 in range(y + 1, xi2 + 1)):
            continue
        if y in infinite_horizontal:
            continue
        if any((x2, y) in finite_points and x2 > x for x2 in range(x + 1, xi1 + 1)):
            continue
        maximals.append((x, y))

    s1_vals = {x for (x, _y) in finite_points} | {x for x in range(xi1 + 1)
                                                  if x in infinite_vertical}
    gaps1 = [n for n in range(1, xi1) if n not in s1_vals]
    s2_vals = {y for (_x, y) in finite_points} | set(infinite_horizontal)
    gaps2 = [n for n in range(1, xi2) if n not in s2_vals]
    S1 = NumericalSemigroup(gaps1)
    S2 = NumericalSemigroup(gaps2)

    return ValueSemigroup2(ring, (xi1, xi2), frozenset(finite_points),
                           frozenset(infinite_vertical), frozenset(infinite_horizontal),
                           tuple(maximals), S1, S2)


def maximal_points(S2):
    """Lexicographically sorted points of S with nothing strictly above or
    strictly to the right."""
    return list(S2.maximals)


def symmetry_check(S2):
    """Conductor-mirror symmetry: (x,y) in S iff nothing of S sits strictly above or
    right of mu - (x,y); and maximals map to maximals under m -> mu - m.

    Returns (True, None) or (False, witness).
    """
    xi1, xi2 = S2.conductor
    mu = S2.mu
    for x in range(-1, xi1 + 1):
        for y in range(-1, xi2 + 1):
            member = (x, y) in S2
            mirror_empty = S2.delta_set_empty(mu[0] - x, mu[1] - y)
            if member != mirror_empty:
                return False, ("property 1", (x, y))
    for m in S2.maximals:
        mirror = (mu[0] - m[0], mu[1] - m[1])
        if mirror not in S2 or not S2.delta_set_empty(*mirror):
            return False, ("property 2", m)
    return True, None


class EdgePoints:
    """Points of S on the top and right edges of the conductor rectangle,
    with the gap-set and symmetric-form descriptions for cross-checking."""

    __slots__ = ("top", "right", "top_from_gaps", "right_from_gaps",
                 "top_symmetric_form", "right_symmetric_form")

    def __init__(self, top, right, top_from_gaps, right_from_gaps,
                 top_symmetric_form, right_symmetric_form):
        self.top = top
        self.right = right
        self.top_from_gaps = top_from_gaps
        self.right_from_gaps = right_from_gaps
        self.top_symmetric_form = top_symmetric_form
        self.right_symmetric_form = right_symmetric_form


def edge_points(S2):
    """Top edge: (x, xi2) in S with x < xi1 (the infinite vertical fibers);
    right edge likewise.  Gap-based form: x = xi1 - 1 - l over gaps l of S1.
    When a projection is symmetric, also the form (I + m_j, xi2) over its
    small elements."""
    xi1, xi2 = S2.conductor
    top = sorted((x, xi2) for x in S2.infinite_vertical if x < xi1)
    right = sorted((xi1, y) for y in S2.infinite_horizontal if y < xi2)
    top_gaps = sorted((xi1 - 1 - l, xi2) for l in S2.S1.gaps)
    right_gaps = sorted((xi1, xi2 - 1 - l) for l in S2.S2.gaps)
    top_sym = None
    if S2.S1.is_symmetric():
        top_sym = sorted((S2.I + m, xi2) for m in S2.S1.nongaps_below_conductor())
    right_sym = None
    if S2.S2.is_symmetric():
        right_sym = sorted((xi1, S2.I + n) for n in S2.S2.nongaps_below_conductor())
    return EdgePoints(top, right, top_gaps, right_gaps, top_sym, right_sym)


def two_branch_weight_formula(S2, g, w_v1, w_v2):
    """Weight of a two-branch singularity on a genus-g curve in
    characteristic 0:

        delta(g-1)(g+1) - I(g-1) - wt(S1) - wt(S2) + W_V1(Q1) + W_V2(Q2).

    With one branch pair trivial this degenerates to the node value
    (g-1)g + W(Q1) + W(Q2).
    """
    return (S2.delta * (g - 1) * (g + 1) - S2.I * (g - 1)
            - S2.S1.weight() - S2.S2.weight() + w_v1 + w_v2)


def expected_smooth_count(S2, g):
    """Smooth Weierstrass points, counting multiplicity, on a rational curve
    whose only singularity is this one and is not overweight:
    I(g-1) + wt(S1) + wt(S2)."""
    return S2.I * (g - 1) + S2.S1.weight() + S2.S2.weight()


# ---------------------------------------------------------------------------
# Adapted differential bases
# ---------------------------------------------------------------------------

class AdaptedBasis:
    """Dualizing differentials echelonized by value pairs at a two-branch
    singularity: one differential per maximal point with that exact value
    pair, one per top-edge point (exact first value, second at least xi2),
    one per right-edge point (first at least xi1, exact second value)."""

    __slots__ = ("differentials", "value_pairs", "maximal_indices",
                 "top_edge_indices", "right_edge_indices", "generator_index")

    def __init__(self, differentials, value_pairs, maximal_indices,
                 top_edge_indices, right_edge_indices, generator_index):
        self.differentials = tuple(differentials)
        self.value_pairs = tuple(value_pairs)
        self.maximal_indices = dict(maximal_indices)
        self.top_edge_indices = dict(top_edge_indices)
        self.right_edge_indices = dict(right_edge_indices)
        self.generator_index = generator_index


def adapted_basis(X):
    """Adapted dualizing basis for a rational curve whose only singularity
    is two-branch: Gaussian elimination on value pairs, raising the order on
    the second branch by subtracting differentials of larger first-branch
    order until every target value is met."""
    from .curve import dualizing_basis

    sing = _single_two_branch(X)
    S2 = value_semigroup(sing.ring)
    xi1, xi2 = S2.conductor
    basis = dualizing_basis(X)
    gi = basis.generator_index[0]
    r_gen = basis.differentials[gi]
    q1, q2 = sing.locations
    funcs = [r / r_gen for r in basis.differentials]

    def nu(f):
        return (f.valuation(q1), f.valuation(q2))

    work = [[f, nu(f)] for f in funcs]

    # echelonize first-branch values below xi1
    changed = True
    while changed:
        changed = False
        by_v1 = {}
        for item in work:
            v1 = item[1][0]
            if v1 >= xi1:
                continue
            if v1 in by_v1:
                other = by_v1[v1]
                c = item[0].leading_coefficient_at(q1) / other[0].leading_coefficient_at(q1)
                item[0] = item[0] - c * other[0]
                if item[0].is_zero():
                    raise EliminationStuck("dependent differentials in value elimination")
                item[1] = nu(item[0])
                changed = True
                break
            by_v1[v1] = item
    # among the rest, echelonize second-branch values below xi2
    changed = True
    while changed:
        changed = False
        by_v2 = {}
        for item in work:
            if item[1][0] < xi1:
                continue
            v2 = item[1][1]
            if v2 >= xi2:
                raise EliminationStuck(
                    "differential with values beyond the conductor on both branches")
            if v2 in by_v2:
                other = by_v2[v2]
                c = item[0].leading_coefficient_at(q2) / other[0].leading_coefficient_at(q2)
                item[0] = item[0] - c * other[0]
                if item[0].is_zero():
                    raise EliminationStuck("dependent differentials in value elimination")
                item[1] = nu(item[0])
                changed = True
                break
            by_v2[v2] = item

    maximal_x = {a: b for a, b in S2.maximals}
    top_edge_x = {x for (x, _y) in edge_points(S2).top}

    # raise second-branch values, working down the first-branch order
    fixed = [item for item in work if item[1][0] >= xi1]
    pending = sorted((item for item in work if item[1][0] < xi1),
                     key=lambda it: -it[1][0])
    for item in pending:
        v1 = item[1][0]
        if v1 in maximal_x:
            target = maximal_x[v1]
            exact = True
        elif v1 in top_edge_x:
            target = xi2
            exact = False
        else:
            raise EliminationStuck(
                "first-branch value %d is neither maximal nor a top-edge point" % v1)
        while item[1][1] < target:
            v2 = item[1][1]
            partner = next((f for f in fixed
                            if f[1][0] > v1 and f[1][1] == v2), None)
            if partner is None:
                raise EliminationStuck(
                    "no partner to raise the second-branch value past %d" % v2)
            c = item[0].leading_coefficient_at(q2) / partner[0].leading_coefficient_at(q2)
            item[0] = item[0] - c * partner[0]
            item[1] = nu(item[0])
        if exact and item[1][1] != target:
            raise EliminationStuck(
                "second-branch value overshot the maximal point (%d, %d)" % (v1, target))
        fixed.append(item)

    differentials = []
    value_pairs = []
    maximal_indices = {}
    top_indices = {}
    right_indices = {}
    generator_index = None
    for idx, item in enumerate(fixed):
        f, pair = item
        differentials.append(f * r_gen)
        value_pairs.append(pair)
        if pair[0] < xi1 and pair[0] in maximal_x:
            maximal_indices[(pair[0], maximal_x[pair[0]])] = idx
            if pair == (0, 0):
                generator_index = idx
        elif pair[0] < xi1:
            top_indices[pair[0]] = idx
        else:
            right_indices[pair[1]] = idx
    if generator_index is None:
        raise EliminationStuck("no differential with value pair (0, 0)")
    if len(maximal_indices) != S2.I:
        raise EliminationStuck("value elimination missed a maximal point")
    if len(top_indices) != S2.delta1 or len(right_indices) != S2.delta2:
        raise EliminationStuck("value elimination missed an edge point")
    return AdaptedBasis(differentials, value_pairs, maximal_indices,
                        top_indices, right_indices, generator_index)


def v_systems_weights(X):
    """(W_V1(Q1), W_V2(Q2)) for a rational curve whose only singularity is
    two-branch: V1 is spanned by the right-edge differentials (regular at
    Q1), V2 by the top-edge differentials (regular at Q2).  Degenerate spans
    give weight 0.
    """
    from .wronski import LinearSystem, differential_weight_at

    sing = _single_two_branch(X)
    adapted = adapted_basis(X)
    q1, q2 = sing.locations
    w1 = 0
    if adapted.right_edge_indices:
        V1 = LinearSystem([adapted.differentials[i]
                           for i in sorted(adapted.right_edge_indices.values())])
        w1 = differential_weight_at(V1, q1)
    w2 = 0
    if adapted.top_edge_indices:
        V2 = LinearSystem([adapted.differentials[i]
                           for i in sorted(adapted.top_edge_indices.values())])
        w2 = differential_weight_at(V2, q2)
    return w1, w2


def _single_two_branch(X):
    from .curve import TwoBranchSingularity

    if len(X.singularities) != 1 or not isinstance(X.singularities[0], TwoBranchSingularity):
        raise ValueError("curve must have a single two-branch singularity")
    return X.singularities[0]


# ---------------------------------------------------------------------------
# Ring construction from branch parametrizations
# ---------------------------------------------------------------------------

def ring_from_generators(field, generators, window=16, strict=True):
    """Close the span of (1,1) and the given series pairs under
    multiplication inside a truncation window, locate the conductor, and
    validate the resulting ring.

    Rings generated by two elements are plane-curve germs, hence always pass
    the Gorenstein check.  Raises ValueError when no conductor lies safely
    inside the window (non-finite delta or window too small).
    """
    w1 = w2 = window
    gens = []
    for gt, gu in generators:
        if not isinstance(gt, TruncatedSeries):
            gt = TruncatedSeries(field, 0, list(gt), w1)
        if not isinstance(gu, TruncatedSeries):
            gu = TruncatedSeries(field, 0, list(gu), w2)
        gens.append((gt.truncate(w1), gu.truncate(w2)))
    one = (TruncatedSeries(field, 0, [1], None), TruncatedSeries(field, 0, [1], None))
    elements = [one] + gens
    vectors = [_pair_vector(et, eu, w1, w2) for et, eu in elements]
    pivots, echelon = scalar_echelon(vectors)
    changed = True
    while changed:
        changed = False
        for et, eu in list(elements):
            for gt, gu in gens:
                pt = (et * gt).truncate(w1)
                pu = (eu * gu).truncate(w2)
                vec = _pair_vector(pt, pu, w1, w2)
                if any(span_reduce(pivots, echelon, vec)):
                    elements.append((pt, pu))
                    vectors.append(vec)
                    pivots, echelon = scalar_echelon(vectors)
                    changed = True

    def contains(vec):
        return not any(span_reduce(pivots, echelon, vec))

    xi1 = next((m for m in range(w1)
                if all(contains(_unit_pair(field, 0, j, w1, w2)) for j in range(m, w1))), None)
    xi2 = next((m for m in range(w2)
                if all(contains(_unit_pair(field, 1, j, w1, w2)) for j in range(m, w2))), None)
    if xi1 is None or xi2 is None or xi1 == 0 or xi2 == 0:
        raise ValueError("no conductor found inside the window")
    if xi1 + 2 > w1 or xi2 + 2 > w2:
        raise ValueError("window too small for the conductor (%d, %d)" % (xi1, xi2))

    # project the span onto the mod-C window and re-echelonize
    cols = list(range(xi1)) + list(range(w1, w1 + xi2))
    projected = [[r[c] for c in cols] for r in echelon]
    _, proj_ech = scalar_echelon(projected)
    basis_pairs = []
    for row in proj_ech:
        bt = TruncatedSeries(field, 0, row[:xi1], xi1 + 2)
        bu = TruncatedSeries(field, 0, row[xi1:], xi2 + 2)
        basis_pairs.append((bt, bu))
    return validate_ring(field, basis_pairs, (xi1, xi2), strict=strict)
