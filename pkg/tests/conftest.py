"""Shared helpers: deterministic random corpora of semigroups, rational
functions, and Gorenstein two-branch rings."""

import random
from fractions import Fraction

import pytest

from weierforge.exact import GF, QQ, Polynomial, RationalFunction, TruncatedSeries
from weierforge.numsg import NumericalSemigroup
from weierforge.valsg2 import ring_from_generators


def random_semigroup(rng):
    while True:
        k = rng.randint(2, 4)
        gens = sorted(rng.sample(range(2, 14), k))
        try:
            return NumericalSemigroup.from_generators(gens)
        except ValueError:
            continue


def random_polynomial(rng, field, max_degree=4, zero_ok=True):
    while True:
        deg = rng.randint(0, max_degree)
        coeffs = [field(rng.randint(-4, 4)) for _ in range(deg + 1)]
        p = Polynomial(field, coeffs)
        if zero_ok or not p.is_zero():
            return p


def random_rational_function(rng, field, max_degree=3):
    num = random_polynomial(rng, field, max_degree)
    den = random_polynomial(rng, field, max_degree, zero_ok=False)
    return RationalFunction(num, den)


def symmetric_semigroups(max_genus):
    """All symmetric numerical semigroups with 1 <= genus <= max_genus,
    enumerated by brute force over candidate gap sets."""
    from itertools import combinations

    out = []
    for g in range(1, max_genus + 1):
        top = 2 * g - 1
        for rest in combinations(range(1, top), g - 1):
            gaps = tuple(sorted(rest + (top,)))
            try:
                S = NumericalSemigroup(gaps)
            except ValueError:
                continue
            if S.is_symmetric():
                out.append(S)
    return out


def _series_pair(field, tpart, upart):
    return (TruncatedSeries(field, 0, tpart, None) if tpart is not None else
            TruncatedSeries.zero(field),
            TruncatedSeries(field, 0, upart, None) if upart is not None else
            TruncatedSeries.zero(field))


# coprime (ord x, ord y) pairs; coprime orders keep each branch semigroup
# cofinite, so the delta invariant stays finite
_BRANCH_ORDERS = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 3), (2, 5), (3, 4)]


def _branch_series(rng, order, length=10):
    coeffs = [0] * order + [rng.choice([1, 1, 2, -1])]
    while len(coeffs) < length:
        coeffs.append(rng.choice([0, 0, 1, -1, 2]))
    return coeffs[:length]


def random_gorenstein_rings(count, max_delta=5, seed=2024):
    """Deterministic corpus of validated Gorenstein two-branch rings,
    generated as two-element subrings (plane-curve germs) with rejection."""
    rng = random.Random(seed)
    rings = []
    signatures = set()
    attempts = 0
    while len(rings) < count and attempts < 4000:
        attempts += 1
        a1, b1 = rng.choice(_BRANCH_ORDERS)
        a2, b2 = rng.choice(_BRANCH_ORDERS)
        x = (_branch_series(rng, a1), _branch_series(rng, a2))
        y = (_branch_series(rng, b1), _branch_series(rng, b2))
        try:
            ring = ring_from_generators(QQ, [x, y], window=14)
        except ValueError:
            continue
        if ring.delta > max_delta:
            continue
        sig = (ring.conductor, ring.delta,
               tuple(sorted(tuple(v) for v in _maximals_of(ring))))
        if sig in signatures:
            continue
        signatures.add(sig)
        rings.append(ring)
    if len(rings) < count:
        raise RuntimeError("could not build enough random rings")
    return rings


def _maximals_of(ring):
    from weierforge.valsg2 import value_semigroup

    return value_semigroup(ring).maximals


@pytest.fixture(scope="session")
def ring_corpus():
    return random_gorenstein_rings(10)
