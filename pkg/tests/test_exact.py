import math
import random
from fractions import Fraction

import pytest

from weierforge.exact import (
    GF,
    INF,
    QQ,
    FpElement,
    Polynomial,
    RationalFunction,
    TruncatedSeries,
    TruncationError,
    coprime_refinement,
    fraction_free_rank_det,
    hasse_derivative,
    scalar_det,
    scalar_nullspace,
    scalar_rank,
    valuation,
)
from conftest import random_polynomial, random_rational_function


def t_over(field):
    return Polynomial.variable(field)


class TestFields:
    def test_fp_arithmetic(self):
        F7 = GF(7)
        a, b = F7(3), F7(5)
        assert a + b == 1
        assert a * b == 1
        assert a - b == 5
        assert a / b == 3 * 3 % 7
        assert -a == 4
        assert a ** -1 == 5

    def test_fp_from_fraction(self):
        assert GF(5)(Fraction(1, 2)) == 3

    def test_nonprime_rejected(self):
        with pytest.raises(ValueError):
            GF(6)

    def test_qq_parse(self):
        assert QQ("-2/3") == Fraction(-2, 3)


class TestHasseDerivative:
    def test_monomial_rule(self):
        t = t_over(QQ)
        assert hasse_derivative(t ** 5, 2) == 10 * t ** 3

    def test_char2_example(self):
        t = t_over(GF(2))
        assert hasse_derivative(t ** 3 + t ** 4, 1) == t ** 2

    def test_identity_case(self):
        f = random_rational_function(random.Random(1), QQ)
        assert hasse_derivative(f, 0) == f

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            hasse_derivative(t_over(QQ), -1)

    @pytest.mark.parametrize("characteristic", [0, 2, 3, 5])
    def test_product_rule(self, characteristic):
        field = QQ if characteristic == 0 else GF(characteristic)
        rng = random.Random(100 + characteristic)
        for _ in range(30):
            f = random_rational_function(rng, field)
            g = random_rational_function(rng, field)
            if f.is_zero() or g.is_zero():
                continue
            i = rng.randint(0, 6)
            fl = f.hasse_list(i)
            gl = g.hasse_list(i)
            lhs = (f * g).hasse(i)
            rhs = sum((fl[a] * gl[i - a] for a in range(i + 1)),
                      RationalFunction(Polynomial(field, [])))
            assert lhs == rhs

    def test_factorial_identity_char0(self):
        rng = random.Random(7)
        for _ in range(25):
            f = random_rational_function(rng, QQ)
            i = rng.randint(1, 5)
            ordinary = f
            for _k in range(i):
                ordinary = ordinary.derivative()
            assert f.hasse(i) * math.factorial(i) == ordinary

    def test_series_hasse(self):
        s = TruncatedSeries(QQ, 0, [0, 0, 0, 0, 0, 1], 9)  # t^5 known to t^8
        d = s.hasse(2)
        assert d.offset == 3 and d.coeffs == (Fraction(10),)
        assert d.truncation == 7


class TestValuation:
    def test_finite_zero(self):
        t = t_over(QQ)
        f = (t ** 3) * (1 - t) / Polynomial(QQ, [1])
        assert valuation(f, Fraction(0)) == 3

    def test_infinity(self):
        t = t_over(QQ)
        assert valuation(t ** 4 / (1 - t ** 2), INF) == -2

    def test_simple_root(self):
        t = t_over(QQ)
        assert valuation((t - 1) / Polynomial(QQ, [1]), Fraction(1)) == 1

    def test_zero_function(self):
        z = RationalFunction(Polynomial(QQ, []))
        assert valuation(z, Fraction(2)) == math.inf

    def test_multiplicative(self):
        rng = random.Random(11)
        for _ in range(40):
            f = random_rational_function(rng, QQ)
            g = random_rational_function(rng, QQ)
            if f.is_zero() or g.is_zero():
                continue
            q = rng.choice([Fraction(0), Fraction(1), Fraction(-2), INF])
            assert (f * g).valuation(q) == f.valuation(q) + g.valuation(q)

    def test_degree_sum_zero(self):
        # the orders over all places (finite, grouped by coprime factors,
        # plus infinity) of a nonzero rational function sum to zero
        rng = random.Random(13)
        for _ in range(25):
            f = random_rational_function(rng, QQ)
            if f.is_zero():
                continue
            places = coprime_refinement([f.num, f.den])
            total = sum(f.multiplicity_of_factor(p) * p.degree for p in places)
            assert total + f.valuation(INF) == 0


class TestPolynomials:
    def test_divmod_and_gcd(self):
        t = t_over(QQ)
        f = (t - 1) ** 2 * (t + 2)
        g = (t - 1) * (t + 3)
        assert f.gcd(g) == (t - 1).monic()
        q, r = divmod(f, g)
        assert q * g + r == f

    def test_shift_and_reverse(self):
        t = t_over(QQ)
        f = t ** 2 + 1
        assert f.shift(1) == t ** 2 + 2 * t + 2
        assert f.reversed_coeffs() == 1 + t ** 2
        assert (t ** 2).reversed_coeffs(3) == t

    def test_squarefree_decomposition(self):
        t = t_over(QQ)
        f = (t ** 2 - 6) * (t - 1) ** 3
        dec = f.squarefree_decomposition()
        assert sorted((str(p), m) for p, m in dec) == [
            ("t - 1", 3), ("t^2 - 6", 1)]

    def test_squarefree_char_p_power(self):
        t = t_over(GF(2))
        f = (t + 1) ** 4 * t
        dec = dict((str(p), m) for p, m in f.squarefree_decomposition())
        assert dec == {"t + 1": 4, "t": 1}

    def test_rational_roots(self):
        t = t_over(QQ)
        f = (t - Fraction(1, 2)) * (t + 3) * (t ** 2 + 1)
        roots = set(f.rational_roots())
        assert roots == {Fraction(1, 2), Fraction(-3)}

    def test_coprime_refinement_multiplicity(self):
        t = t_over(QQ)
        a = (t - 1) * (t ** 2 - 6)
        b = (t - 1) ** 2 * (t + 5)
        basis = coprime_refinement([a, b])
        assert all(basis[i].gcd(basis[j]).degree == 0
                   for i in range(len(basis)) for j in range(i))
        for f in (a, b):
            rebuilt = Polynomial(QQ, [f.leading_coefficient])
            for p in basis:
                rebuilt = rebuilt * p ** f.multiplicity_of_factor(p)
            assert rebuilt == f


class TestTruncatedSeries:
    def test_truncation_propagation(self):
        a = TruncatedSeries(QQ, 1, [1, 1], 6)   # t + t^2 known below t^6
        b = TruncatedSeries(QQ, 2, [1], 5)      # t^2 known below t^5
        s = a + b
        assert s.truncation == 5
        prod = a * b
        # the product is determined up to min(6+2, 5+1)
        assert prod.truncation == min(6 + 2, 5 + 1)
        assert prod.coefficient(3) == 1 and prod.coefficient(4) == 1

    def test_read_past_truncation_raises(self):
        a = TruncatedSeries(QQ, 0, [1], 3)
        with pytest.raises(TruncationError):
            a.coefficient(3)

    def test_exact_zero_valuation(self):
        assert TruncatedSeries.zero(QQ).valuation() == math.inf
        windowed = TruncatedSeries(QQ, 0, [], 4)
        with pytest.raises(TruncationError):
            windowed.valuation()

    def test_inverse(self):
        a = TruncatedSeries(QQ, 0, [1, -1], None)  # 1 - t
        inv = a.inverse(5)
        assert [inv.coefficient(i) for i in range(5)] == [1, 1, 1, 1, 1]

    def test_laurent_and_residue(self):
        t = t_over(QQ)
        f = (1 + t) / t ** 3
        assert f.residue_at(Fraction(0)) == 0
        g = (1 + t) / t
        assert g.residue_at(Fraction(0)) == 1
        h = 1 / (t - 2)
        ser = h.laurent_at(Fraction(2), 3)
        assert ser.offset == -1 and ser.coefficient(-1) == 1

    def test_residue_at_infinity_chart(self):
        t = t_over(QQ)
        # f dt with f = 1/t has residue 1 at 0 and -1 at infinity
        s = (1 / t).infinity_chart_differential()
        assert s.residue_at(Fraction(0)) == -1


class TestFractionFreeLinearAlgebra:
    def test_identity(self):
        one = Polynomial(QQ, [1])
        zero = Polynomial(QQ, [])
        rows = [[one if i == j else zero for j in range(3)] for i in range(3)]
        rank, det = fraction_free_rank_det(rows)
        assert rank == 3 and det == 1

    def test_char2_triangular(self):
        F2 = GF(2)
        t = t_over(F2)
        one = Polynomial(F2, [1])
        zero = Polynomial(F2, [])
        rows = [[one, t ** 3, t ** 4], [zero, t ** 2, zero], [zero, zero, one]]
        rank, det = fraction_free_rank_det(rows)
        assert rank == 3 and det == RationalFunction(t ** 2)

    def test_proportional_rows(self):
        F2 = GF(2)
        t = t_over(F2)
        zero = Polynomial(F2, [])
        rank, _ = fraction_free_rank_det([[zero, t ** 2, zero], [zero, t, zero]])
        assert rank == 1

    def test_ragged_rejected(self):
        one = Polynomial(QQ, [1])
        with pytest.raises(ValueError):
            fraction_free_rank_det([[one, one], [one]])

    @pytest.mark.parametrize("characteristic", [0, 5])
    def test_determinant_against_cofactor_expansion(self, characteristic):
        field = QQ if characteristic == 0 else GF(characteristic)
        rng = random.Random(300 + characteristic)

        def cofactor_det(rows):
            n = len(rows)
            if n == 1:
                return RationalFunction(rows[0][0])
            total = RationalFunction(Polynomial(field, []))
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                term = RationalFunction(rows[0][j]) * cofactor_det(minor)
                total = total + term if j % 2 == 0 else total - term
            return total

        for _ in range(20):
            n = rng.randint(2, 4)
            rows = [[random_polynomial(rng, field, 2) for _ in range(n)]
                    for _ in range(n)]
            _rank, det = fraction_free_rank_det(rows)
            assert det == cofactor_det(rows)

    def test_rank_against_function_field_elimination(self):
        rng = random.Random(17)

        def plain_rank(rows):
            work = [[RationalFunction(x) for x in r] for r in rows]
            rank = 0
            cols = len(work[0])
            r = 0
            for c in range(cols):
                piv = next((i for i in range(r, len(work))
                            if not work[i][c].is_zero()), None)
                if piv is None:
                    continue
                work[r], work[piv] = work[piv], work[r]
                for i in range(len(work)):
                    if i != r and not work[i][c].is_zero():
                        f = work[i][c] / work[r][c]
                        work[i] = [a - f * b for a, b in zip(work[i], work[r])]
                r += 1
            return r

        for _ in range(20):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            rows = [[random_polynomial(rng, QQ, 2) for _ in range(n)]
                    for _ in range(m)]
            assert fraction_free_rank_det(rows)[0] == plain_rank(rows)

    def test_rational_function_entries(self):
        t = t_over(QQ)
        one = Polynomial(QQ, [1])
        # det = (1/t)*t - 1*1 = 0, rank 1
        rows = [[1 / t, RationalFunction(one)], [RationalFunction(one), t / one]]
        rank, det = fraction_free_rank_det(rows)
        assert rank == 1
        assert det.is_zero()
        # and a nonsingular one: det = (1/t)*t - 1*2 = -1
        rows = [[1 / t, RationalFunction(one)], [2 * RationalFunction(one), t / one]]
        rank, det = fraction_free_rank_det(rows)
        assert rank == 2 and det == -1

    def test_scalar_helpers(self):
        rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
        assert scalar_rank(rows) == 1
        null = scalar_nullspace(rows, 2, QQ)
        assert len(null) == 1 and null[0][0] * 1 + null[0][1] * 2 == 0
        assert scalar_det([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]) == 1
