import random
from fractions import Fraction

import pytest

from weierforge.exact import GF, QQ, TruncatedSeries, scalar_echelon, span_reduce
from weierforge.numsg import NumericalSemigroup
from weierforge.valsg2 import (
    EliminationStuck,
    NotClosed,
    NotGorenstein,
    adapted_basis,
    edge_points,
    expected_smooth_count,
    maximal_points,
    ring_from_generators,
    symmetry_check,
    two_branch_weight_formula,
    v_systems_weights,
    validate_ring,
    value_semigroup,
)
from weierforge.curve import RationalCurve, TwoBranchSingularity, weight_report
from weierforge.gallery import node_ring, asymmetric_branch_ring, tacnode_ring


def curve_of(ring):
    return RationalCurve(QQ, [TwoBranchSingularity(ring, (Fraction(0), Fraction(1)))])


def semigroup_membership_witness(ring, x, y):
    """Explicit ring element with value pair exactly (x, y), if one exists:
    pick a basis of V(x,y) and dodge the two one-step subspaces (a space is
    never the union of two proper subspaces)."""
    xi1, xi2 = ring.conductor
    w1, w2 = ring._window
    rows = ring._matrix

    def basis_of(a, b):
        # vectors in the row span vanishing on the first a t-columns and
        # first b u-columns
        cols = list(range(a)) + list(range(w1, w1 + b))
        pivots, ech = scalar_echelon(rows)
        out = []
        # solve: combinations of echelon rows with zero constrained coords
        sub = [[r[c] for c in cols] for r in ech]
        from weierforge.exact import scalar_nullspace
        null = scalar_nullspace([list(col) for col in zip(*sub)] if sub and cols else [],
                                len(ech), ring.field) if cols else \
            [[ring.field.one if i == j else ring.field.zero for j in range(len(ech))]
             for i in range(len(ech))]
        for combo in null:
            vec = [ring.field.zero] * (w1 + w2)
            for c, row in zip(combo, ech):
                if c:
                    vec = [v + c * r for v, r in zip(vec, row)]
            if any(vec):
                out.append(vec)
        return out

    def value_pair(vec):
        tpart = vec[:w1]
        upart = vec[w1:]
        v1 = next((i for i, c in enumerate(tpart) if c), None)
        v2 = next((i for i, c in enumerate(upart) if c), None)
        return v1, v2

    candidates = basis_of(x, y)
    inside = [v for v in candidates
              if value_pair(v)[0] == x and value_pair(v)[1] == y]
    if inside:
        return inside[0]
    good1 = [v for v in candidates if value_pair(v)[0] == x]
    good2 = [v for v in candidates if value_pair(v)[1] == y]
    if not good1 or not good2:
        return None
    a, b = good1[0], good2[0]
    combo = [p + q for p, q in zip(a, b)]
    if value_pair(combo) == (x, y):
        return combo
    return None


class TestValidateRing:
    def test_node(self):
        ring = node_ring()
        assert ring.delta == 1 and ring.gorenstein

    def test_tacnode(self):
        ring = tacnode_ring()
        assert ring.delta == 2 and ring.gorenstein

    def test_asymmetric_branch_example(self):
        ring = asymmetric_branch_ring()
        assert ring.delta == 5 and ring.gorenstein
        S2 = value_semigroup(ring)
        assert not S2.S1.is_symmetric()

    def test_not_closed(self):
        # (t, u) alone without (t^2, u^2) in the span, conductor (3,3)
        with pytest.raises(NotClosed):
            validate_ring(QQ, [([1, 0, 0], [1, 0, 0]), ([0, 1, 0], [0, 1, 0])],
                          (3, 3))

    def test_not_gorenstein_strict(self):
        with pytest.raises(NotGorenstein):
            validate_ring(QQ, [([1, 0], [1, 0])], (2, 2))

    def test_conductor_minimality(self):
        # the node ring declared with conductor (2,2) is not minimal
        with pytest.raises(ValueError):
            validate_ring(QQ, [([1, 0], [1, 0]), ([0, 1], [0, 1]),
                               ([0, 0], [0, 1])], (2, 2))

    def test_locality(self):
        with pytest.raises(ValueError):
            validate_ring(QQ, [([1], [0])], (1, 1))


class TestValueSemigroup:
    def test_node(self):
        S = value_semigroup(node_ring())
        assert S.maximals == ((0, 0),)
        assert S.conductor == (1, 1) and S.I == 1
        assert S.S1.gaps == () and S.S2.gaps == ()

    def test_tacnode(self):
        S = value_semigroup(tacnode_ring())
        assert S.maximals == ((0, 0), (1, 1))
        assert S.I == 2 and S.delta1 == 0 and S.delta2 == 0

    def test_asymmetric_branch_instance(self):
        S = value_semigroup(asymmetric_branch_ring())
        assert S.conductor == (7, 3)
        assert S.I == 3 and S.delta1 == 2 and S.delta2 == 0
        assert S.maximals == ((0, 0), (3, 1), (6, 2))
        assert S.delta == 5 == S.I + S.delta1 + S.delta2

    def test_membership_witnesses(self, ring_corpus):
        # every claimed member of the window is realized by an explicit
        # element with that exact value pair
        for ring in ring_corpus[:6]:
            S = value_semigroup(ring)
            for (x, y) in sorted(S.finite_points):
                witness = semigroup_membership_witness(ring, x, y)
                assert witness is not None, (ring.conductor, (x, y))

    def test_basis_change_invariance(self, ring_corpus):
        rng = random.Random(55)
        for ring in ring_corpus[:5]:
            S = value_semigroup(ring)
            n = len(ring.basis)
            # random invertible transform of the basis
            while True:
                mat = [[Fraction(rng.randint(-2, 2)) for _ in range(n)]
                       for _ in range(n)]
                from weierforge.exact import scalar_det
                if scalar_det(mat):
                    break
            new_basis = []
            for i in range(n):
                bt = TruncatedSeries.zero(QQ)
                bu = TruncatedSeries.zero(QQ)
                for j in range(n):
                    if mat[i][j]:
                        bt = bt + mat[i][j] * ring.basis[j][0]
                        bu = bu + mat[i][j] * ring.basis[j][1]
                new_basis.append((bt, bu))
            # a transform can break the (1,1)-constant normalization of
            # individual elements; restore a spanning set by re-adding rows
            try:
                ring2 = validate_ring(QQ, new_basis, ring.conductor)
            except ValueError:
                continue
            S2 = value_semigroup(ring2)
            assert S2.finite_points == S.finite_points
            assert S2.maximals == S.maximals


class TestSymmetry:
    def test_gorenstein_rings_symmetric(self, ring_corpus):
        for ring in ring_corpus:
            ok, witness = symmetry_check(value_semigroup(ring))
            assert ok, witness

    def test_mu_is_maximal(self, ring_corpus):
        for ring in ring_corpus:
            S = value_semigroup(ring)
            assert S.mu in set(S.maximals)

    def test_non_gorenstein_fails_with_witness(self):
        ring = validate_ring(QQ, [([1, 0], [1, 0])], (2, 2), strict=False)
        ok, witness = symmetry_check(value_semigroup(ring))
        assert not ok and witness is not None

    def test_both_properties_fail_together(self):
        # on the non-Gorenstein example, property (2) also has a failure:
        # mu = (1,1) is not in S at all, so some maximal maps outside
        ring = validate_ring(QQ, [([1, 0], [1, 0])], (2, 2), strict=False)
        S = value_semigroup(ring)
        mu = S.mu
        bad = [m for m in S.maximals
               if (mu[0] - m[0], mu[1] - m[1]) not in S
               or not S.delta_set_empty(mu[0] - m[0], mu[1] - m[1])]
        assert bad


class TestConductorIdentities:
    def test_coordinates(self, ring_corpus):
        for ring in ring_corpus + [node_ring(), tacnode_ring(), asymmetric_branch_ring()]:
            S = value_semigroup(ring)
            assert S.conductor == (S.I + 2 * S.delta1, S.I + 2 * S.delta2)
            assert S.delta == S.I + S.delta1 + S.delta2

    def test_maximal_coordinate_sums(self, ring_corpus):
        for ring in ring_corpus + [asymmetric_branch_ring()]:
            S = value_semigroup(ring)
            assert (sum(a for a, _b in S.maximals)
                    == S.I * (S.I - 1) // 2 + S.delta1 * S.I)
            assert (sum(b for _a, b in S.maximals)
                    == S.I * (S.I - 1) // 2 + S.delta2 * S.I)

    def test_fiber_gap_equivalences(self, ring_corpus):
        # for n in S1 below xi1: (n, xi2) in S  iff  xi1-1-n is a gap of S1
        # iff the vertical fiber at n is infinite
        for ring in ring_corpus + [asymmetric_branch_ring()]:
            S = value_semigroup(ring)
            xi1, xi2 = S.conductor
            for n in range(xi1):
                in_s1 = n in S.S1
                if not in_s1:
                    continue
                edge = (n, xi2) in S
                gap = (xi1 - 1 - n) in S.S1.gaps
                infinite = n in S.infinite_vertical
                assert edge == gap == infinite
            for n in range(xi2):
                if n not in S.S2:
                    continue
                edge = (xi1, n) in S
                gap = (xi2 - 1 - n) in S.S2.gaps
                infinite = n in S.infinite_horizontal
                assert edge == gap == infinite

    def test_infinite_fiber_count(self, ring_corpus):
        for ring in ring_corpus:
            S = value_semigroup(ring)
            xi1, xi2 = S.conductor
            assert len([x for x in S.infinite_vertical if x < xi1]) == S.delta1
            assert len([y for y in S.infinite_horizontal if y < xi2]) == S.delta2


class TestEdgePoints:
    def test_node_and_tacnode_have_no_edges(self):
        for ring in (node_ring(), tacnode_ring()):
            ep = edge_points(value_semigroup(ring))
            assert ep.top == [] and ep.right == []
            assert ep.top_from_gaps == [] and ep.right_from_gaps == []
            assert ep.top_symmetric_form == [] and ep.right_symmetric_form == []

    def test_asymmetric_branch_top_edge(self):
        ep = edge_points(value_semigroup(asymmetric_branch_ring()))
        assert ep.top == [(4, 3), (5, 3)]
        assert ep.top == ep.top_from_gaps
        assert ep.right == [] == ep.right_from_gaps
        # S1 is not symmetric here, so no symmetric form on that side
        assert ep.top_symmetric_form is None
        assert ep.right_symmetric_form == []

    def test_descriptions_coincide(self, ring_corpus):
        for ring in ring_corpus:
            S = value_semigroup(ring)
            ep = edge_points(S)
            assert ep.top == ep.top_from_gaps
            assert ep.right == ep.right_from_gaps
            if S.S1.is_symmetric():
                assert ep.top == ep.top_symmetric_form
            if S.S2.is_symmetric():
                assert ep.right == ep.right_symmetric_form


class TestAdaptedBasis:
    def test_node(self):
        ad = adapted_basis(curve_of(node_ring()))
        assert ad.value_pairs == ((0, 0),)
        assert ad.maximal_indices == {(0, 0): 0}

    def test_tacnode(self):
        ad = adapted_basis(curve_of(tacnode_ring()))
        assert sorted(ad.value_pairs) == [(0, 0), (1, 1)]
        assert not ad.top_edge_indices and not ad.right_edge_indices

    def test_asymmetric_branch_instance(self):
        ad = adapted_basis(curve_of(asymmetric_branch_ring()))
        assert set(ad.maximal_indices) == {(0, 0), (3, 1), (6, 2)}
        assert set(ad.top_edge_indices) == {4, 5}
        for r, idx in ad.top_edge_indices.items():
            v1, v2 = ad.value_pairs[idx]
            assert v1 == r and v2 >= 3

    def test_corpus(self, ring_corpus):
        for ring in ring_corpus:
            X = curve_of(ring)
            S = value_semigroup(ring)
            ad = adapted_basis(X)
            assert set(ad.maximal_indices) == set(S.maximals)
            for (a, b), idx in ad.maximal_indices.items():
                assert ad.value_pairs[idx] == (a, b)
            assert len(ad.top_edge_indices) == S.delta1
            assert len(ad.right_edge_indices) == S.delta2


class TestWeightFormula:
    def test_node_formula(self):
        S = value_semigroup(node_ring())
        assert two_branch_weight_formula(S, 1, 0, 0) == 0
        for g in range(1, 6):
            assert two_branch_weight_formula(S, g, 3, 4) == (g - 1) * g + 7

    def test_tacnode(self):
        X = curve_of(tacnode_ring())
        S = value_semigroup(tacnode_ring())
        rep = weight_report(X)
        w1, w2 = v_systems_weights(X)
        assert (w1, w2) == (0, 0)
        assert two_branch_weight_formula(S, 2, w1, w2) == rep.singular_weights[0] == 4
        assert rep.smooth_divisor.degree == 2 == expected_smooth_count(S, 2)

    def test_asymmetric_branch_instance(self):
        X = curve_of(asymmetric_branch_ring())
        S = value_semigroup(asymmetric_branch_ring())
        rep = weight_report(X)
        w1, w2 = v_systems_weights(X)
        assert two_branch_weight_formula(S, 5, w1, w2) == rep.singular_weights[0]
        assert rep.total == 5 ** 3 - 5


class TestRingFromGenerators:
    def test_node_from_axes(self):
        ring = ring_from_generators(QQ, [([0, 1], [0]), ([0], [0, 1])], window=8)
        assert ring.conductor == (1, 1) and ring.delta == 1

    def test_tacnode_from_parabolas(self):
        ring = ring_from_generators(QQ, [([0, 1], [0, 1]), ([0, 0, 1], [0, 0, -1])],
                                    window=10)
        assert ring.conductor == (2, 2) and ring.delta == 2

    def test_same_branch_rejected(self):
        with pytest.raises(ValueError):
            ring_from_generators(QQ, [([0, 1], [0, 1]), ([0, 0, 1], [0, 0, 1])],
                                 window=8)
