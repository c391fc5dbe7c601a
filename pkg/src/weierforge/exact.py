"""Exact arithmetic kernel.

Coefficient fields (arbitrary-precision rationals and prime fields),
dense univariate polynomials, rational functions with valuations at
finite points and at infinity, truncated power/Laurent series, Hasse
(iterative) derivatives, and fraction-free linear algebra.

Everything here is immutable after construction and exact; there is no
floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction


class TruncationError(ValueError):
    """An operation would need series coefficients past the known window."""


# ---------------------------------------------------------------------------
# Coefficient fields
# ---------------------------------------------------------------------------

def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FpElement:
    """Residue in GF(p), p prime.  Arithmetic is exact modular arithmetic."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixed characteristics %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return FpElement(other, self.p)
        if isinstance(other, Fraction):
            return FpElement(other.numerator, self.p) / FpElement(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return FpElement(self.value * pow(other.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pow__(self, n):
        if n < 0:
            return FpElement(1, self.p) / self ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        if isinstance(other, Fraction):
            return other.denominator % self.p != 0 and self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "FpElement(%d, %d)" % (self.value, self.p)

    def __str__(self):
        return str(self.value)


class RationalField:
    """The field of rational numbers; elements are `fractions.Fraction`."""

    characteristic = 0

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError("cannot coerce %r into QQ" % (value,))

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(("field", 0))

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) for a prime p."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("characteristic %r is not prime" % (p,))
        self.p = p
        self.characteristic = p

    def __call__(self, value):
        if isinstance(value, FpElement):
            if value.p != self.p:
                raise ValueError("element of GF(%d) in GF(%d)" % (value.p, self.p))
            return value
        if isinstance(value, int):
            return FpElement(value, self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return FpElement(value.numerator, self.p) / FpElement(value.denominator, self.p)
        if isinstance(value, str):
            return self(Fraction(value))
        raise TypeError("cannot coerce %r into GF(%d)" % (value, self.p))

    @property
    def zero(self):
        return FpElement(0, self.p)

    @property
    def one(self):
        return FpElement(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()
_gf_cache = {}


def GF(p):
    if p not in _gf_cache:
        _gf_cache[p] = PrimeField(p)
    return _gf_cache[p]


def field_of_characteristic(p):
    return QQ if p == 0 else GF(p)


class _Infinity:
    """The point at infinity on the projective line (a sentinel)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"


INF = _Infinity()


def binomial(n, k):
    """Binomial coefficient with integer upper argument, possibly negative.

    For n < 0 this is the generalized coefficient
    n(n-1)...(n-k+1)/k!, still an integer.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    return (-1) ** k * math.comb(k - n - 1, k)


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Dense univariate polynomial over QQ or GF(p).

    coeffs[i] is the coefficient of t^i; the list carries no trailing
    zeros, so the zero polynomial has an empty tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field(c) if not isinstance(c, (Fraction, FpElement)) else c for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def variable(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def monomial(cls, field, degree, c=1):
        return cls(field, [0] * degree + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    @property
    def leading_coefficient(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _lift(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise ValueError("mixed coefficient fields")
            return other
        if isinstance(other, (int, Fraction, FpElement)):
            return Polynomial(self.field, [other])
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field,
                          [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field,
                          [self.coefficient(i) - other.coefficient(i) for i in range(n)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial(self.field, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if other is None or other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(self.field, []), self
        quo = [self.field.zero] * (dq + 1)
        inv_lead = self.field.one / other.leading_coefficient
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(self.field, quo), Polynomial(self.field, rem[:other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        """Quotient that is required to be exact (used by Bareiss elimination)."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            c = self.field(other) if isinstance(other, int) else other
            return Polynomial(self.field, [a / c for a in self.coeffs])
        if isinstance(other, Polynomial):
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        lifted = self._lift(other)
        if lifted is None:
            return NotImplemented
        return RationalFunction(lifted, self)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FpElement)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __call__(self, x):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self):
        if self.is_zero():
            return self
        return self / self.leading_coefficient

    def derivative(self):
        return Polynomial(self.field,
                          [i * c for i, c in enumerate(self.coeffs)][1:])

    def hasse(self, i):
        """i-th Hasse derivative: c_j t^j contributes binom(j, i) c_j t^(j-i)."""
        if i < 0:
            raise ValueError("negative Hasse derivative order")
        if i == 0:
            return self
        return Polynomial(self.field,
                          [binomial(j, i) * self.coeffs[j]
                           for j in range(i, len(self.coeffs))])

    def shift(self, a):
        """The polynomial p(t + a)."""
        a = self.field(a) if isinstance(a, (int, str)) else a
        result = Polynomial(self.field, [])
        for c in reversed(self.coeffs):
            result = result * Polynomial(self.field, [a, 1]) + c
        return result

    def reversed_coeffs(self, n=None):
        """t^n * p(1/t) for n >= deg p (default n = deg p)."""
        if self.is_zero():
            return self
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal bound below degree")
        return Polynomial(self.field, [0] * (n - self.degree) + list(reversed(self.coeffs)))

    def valuation_at_zero(self):
        if self.is_zero():
            return math.inf
        v = 0
        while not self.coeffs[v]:
            v += 1
        return v

    def root_multiplicity(self, a):
        """Multiplicity of t = a as a root."""
        if self.is_zero():
            return math.inf
        return self.shift(a).valuation_at_zero()

    def multiplicity_of_factor(self, g):
        """Largest e with g^e dividing self (g nonconstant)."""
        if self.is_zero():
            return math.inf
        if g.degree < 1:
            raise ValueError("factor must be nonconstant")
        e = 0
        h = self
        while True:
            q, r = divmod(h, g)
            if not r.is_zero():
                return e
            e += 1
            h = q

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
            if not b.is_zero():
                b = b.monic()
        return a.monic() if not a.is_zero() else a

    def squarefree_decomposition(self):
        """List of (monic squarefree factor, multiplicity); product recovers
        self up to the leading constant.  Handles p-th powers in GF(p)."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        f = self.monic()
        out = []
        if f.degree == 0:
            return out
        p = self.field.characteristic
        d = f.derivative()
        if d.is_zero():
            # f is a p-th power: over the prime field, coefficients are fixed
            # by Frobenius, so just contract exponents.
            assert p > 0
            inner = Polynomial(self.field, [f.coefficient(j * p) for j in range(f.degree // p + 1)])
            for fac, m in inner.squarefree_decomposition():
                out.append((fac, m * p))
            return out
        g = f.gcd(d)
        sqfree = f.exact_div(g) if g.degree > 0 else f
        rest = g
        m = 1
        while sqfree.degree > 0:
            nxt = sqfree.gcd(rest)
            factor = sqfree.exact_div(nxt) if nxt.degree > 0 else sqfree
            if factor.degree > 0:
                out.append((factor.monic(), m))
            sqfree = nxt
            if nxt.degree > 0:
                rest = rest.exact_div(nxt)
            m += 1
        if rest.degree > 0:
            # leftover p-th power part
            for fac, mult in rest.squarefree_decomposition():
                merged = False
                for i, (f0, m0) in enumerate(out):
                    if f0 == fac:
                        out[i] = (f0, m0 + mult)
                        merged = True
                if not merged:
                    out.append((fac, mult))
        return out

    def rational_roots(self):
        """All roots in the coefficient field, with multiplicity 1 each
        (call on a squarefree polynomial for full information)."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        roots = []
        p = self.field.characteristic
        if p > 0:
            for a in range(p):
                if not self(FpElement(a, p)):
                    roots.append(FpElement(a, p))
            return roots
        # rational root theorem on the primitive integer form
        den_lcm = 1
        for c in self.coeffs:
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        ints = [int(c * den_lcm) for c in self.coeffs]
        v = 0
        while ints[v] == 0:
            v += 1
        if v > 0:
            roots.append(Fraction(0))
        lead = ints[-1]
        const = ints[v]
        for r in _divisors(abs(const)):
            for s in _divisors(abs(lead)):
                for cand in (Fraction(r, s), Fraction(-r, s)):
                    if cand not in roots and not self(cand):
                        roots.append(cand)
        return roots

    def __str__(self):
        return self.to_str("t")

    def to_str(self, var):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                term = str(c)
            else:
                mono = var if i == 1 else "%s^%d" % (var, i)
                if c == self.field.one:
                    term = mono
                elif self.field.characteristic == 0 and c == -1:
                    term = "-" + mono
                else:
                    term = "%s*%s" % (c, mono)
            parts.append(term)
        s = parts[0]
        for term in parts[1:]:
            if term.startswith("-"):
                s += " - " + term[1:]
            else:
                s += " + " + term
        return s

    def __repr__(self):
        return "Polynomial(%r, %r)" % (self.field, list(self.coeffs))


def _divisors(n):
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Quotient of polynomials, stored reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Polynomial(num.field, [1])
        if isinstance(num, (int, Fraction, FpElement)):
            num = Polynomial(den.field, [num])
        if isinstance(den, (int, Fraction, FpElement)):
            den = Polynomial(num.field, [den])
        if num.field != den.field:
            raise ValueError("mixed coefficient fields")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Polynomial(num.field, [1])
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lc = den.leading_coefficient
            if lc != den.field.one:
                num = num / lc
                den = den / lc
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, FpElement)):
            return RationalFunction(Polynomial(self.field, [other]))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n):
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def valuation(self, point):
        """Order of vanishing at a finite point or at INF; negative at poles;
        +inf for the zero function."""
        if self.is_zero():
            return math.inf
        if point is INF:
            return self.den.degree - self.num.degree
        return self.num.root_multiplicity(point) - self.den.root_multiplicity(point)

    def multiplicity_of_factor(self, g):
        """Order along the places cut out by the nonconstant polynomial g."""
        if self.is_zero():
            return math.inf
        return self.num.multiplicity_of_factor(g) - self.den.multiplicity_of_factor(g)

    def hasse(self, i):
        return self.hasse_list(i)[i]

    def hasse_list(self, n):
        """[D^(0)f, ..., D^(n)f] via the product-rule recurrence
        D^(i)(num) = sum_{a+b=i} D^(a)(f) * D^(b)(den).

        Internally D^(i)f is carried as P_i / den^(i+1) with the polynomial
        recurrence P_i = D^(i)(num) den^i - sum_{a<i} P_a den^(i-1-a)
        D^(i-a)(den), so only the final packaging reduces fractions.
        """
        if n < 0:
            raise ValueError("negative Hasse derivative order")
        den = self.den
        dnum = [self.num.hasse(i) for i in range(n + 1)]
        dden = [den.hasse(i) for i in range(n + 1)]
        den_pow = [Polynomial(self.field, [1])]
        for _ in range(n + 1):
            den_pow.append(den_pow[-1] * den)
        parts = [self.num]
        for i in range(1, n + 1):
            acc = dnum[i] * den_pow[i]
            for a in range(i):
                acc = acc - parts[a] * den_pow[i - 1 - a] * dden[i - a]
            parts.append(acc)
        return [self] + [RationalFunction(parts[i], den_pow[i + 1])
                         for i in range(1, n + 1)]

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den)

    def shift(self, a):
        """f(t + a)."""
        return RationalFunction(self.num.shift(a), self.den.shift(a))

    def substitute_inverse(self):
        """f(1/u) as a rational function of u."""
        if self.is_zero():
            return self
        n = max(self.num.degree, self.den.degree)
        return RationalFunction(self.num.reversed_coeffs(n), self.den.reversed_coeffs(n))

    def infinity_chart_differential(self):
        """s(u) with f(t) dt = s(u) du under u = 1/t, i.e. -f(1/u)/u^2."""
        u2 = Polynomial(self.field, [0, 0, 1])
        return -self.substitute_inverse() / u2

    def compose(self, other):
        """f(g(t)) for a rational function g."""
        other = self._lift(other)
        num = RationalFunction(Polynomial(self.field, []))
        for c in reversed(self.num.coeffs):
            num = num * other + c
        den = RationalFunction(Polynomial(self.field, []))
        for c in reversed(self.den.coeffs):
            den = den * other + c
        return num / den

    def leading_coefficient_at(self, point):
        """First nonzero Laurent coefficient at the point (finite or INF)."""
        if self.is_zero():
            raise ValueError("zero function has no leading coefficient")
        if point is INF:
            return self.num.leading_coefficient / self.den.leading_coefficient
        num = self.num.shift(point)
        den = self.den.shift(point)
        return (num.coeffs[num.valuation_at_zero()]
                / den.coeffs[den.valuation_at_zero()])

    def laurent_at(self, point, upto):
        """Laurent expansion at the point as a TruncatedSeries valid on
        exponents [valuation, upto)."""
        if point is INF:
            f = self.substitute_inverse()
            return f.laurent_at(self.field.zero if self.field.characteristic == 0
                                else FpElement(0, self.field.characteristic), upto)
        if self.is_zero():
            return TruncatedSeries(self.field, 0, [], None)
        num = self.num.shift(point)
        den = self.den.shift(point)
        vn = num.valuation_at_zero()
        vd = den.valuation_at_zero()
        v = vn - vd
        if upto <= v:
            return TruncatedSeries(self.field, v, [], upto)
        k = upto - v
        nuni = Polynomial(self.field, num.coeffs[vn:])
        duni = Polynomial(self.field, den.coeffs[vd:])
        inv = TruncatedSeries.from_polynomial(duni, k).inverse(k)
        prod = TruncatedSeries.from_polynomial(nuni, k) * inv
        coeffs = [prod.coefficient(i) for i in range(k)]
        return TruncatedSeries(self.field, v, coeffs, upto)

    def residue_at(self, point):
        """Coefficient of (t - point)^(-1) (or of u^(-1) at INF, of f itself,
        not of f dt)."""
        v = self.valuation(point)
        if v >= 0:
            return self.field.zero
        series = self.laurent_at(point, 0)
        return series.coefficient(-1)

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        ns = str(self.num)
        if " " in ns:
            ns = "(%s)" % ns
        return "%s/(%s)" % (ns, self.den)

    def __repr__(self):
        return "RationalFunction(%r, %r)" % (self.num, self.den)


# ---------------------------------------------------------------------------
# Truncated series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Finite window of a Laurent series: sum of coeffs[k] * t^(offset+k),
    guaranteed correct for exponents [offset, truncation).

    truncation None means the series is exactly known (all higher
    coefficients vanish).  Reading a coefficient past the truncation
    raises TruncationError instead of guessing.
    """

    __slots__ = ("field", "offset", "coeffs", "truncation")

    def __init__(self, field, offset, coeffs, truncation):
        cs = [field(c) if not isinstance(c, (Fraction, FpElement)) else c for c in coeffs]
        if truncation is not None:
            cs = cs[:max(0, truncation - offset)]
        while cs and not cs[0]:
            cs.pop(0)
            offset += 1
        while cs and not cs[-1]:
            cs.pop()
        if not cs:
            offset = 0
        self.field = field
        self.offset = offset
        self.coeffs = tuple(cs)
        self.truncation = truncation

    @classmethod
    def from_polynomial(cls, p, truncation=None):
        return cls(p.field, 0, list(p.coeffs), truncation)

    @classmethod
    def zero(cls, field):
        return cls(field, 0, [], None)

    def is_exact(self):
        return self.truncation is None

    def is_zero_window(self):
        return not self.coeffs

    def valuation(self):
        """Exponent of the first nonzero term; +inf for the exact zero series.

        Raises TruncationError when the window is all zero but the tail is
        unknown.
        """
        if self.coeffs:
            return self.offset
        if self.truncation is None:
            return math.inf
        raise TruncationError("valuation not determined by the known window")

    def coefficient(self, i):
        if self.truncation is not None and i >= self.truncation:
            raise TruncationError("coefficient %d past truncation %d" % (i, self.truncation))
        if self.offset <= i < self.offset + len(self.coeffs):
            return self.coeffs[i - self.offset]
        return self.field.zero

    def _min_trunc(self, other):
        if self.truncation is None:
            return other.truncation
        if other.truncation is None:
            return self.truncation
        return min(self.truncation, other.truncation)

    def _lift(self, other):
        if isinstance(other, TruncatedSeries):
            if other.field != self.field:
                raise ValueError("mixed coefficient fields")
            return other
        if isinstance(other, (int, Fraction, FpElement)):
            return TruncatedSeries(self.field, 0, [other], None)
        if isinstance(other, Polynomial):
            return TruncatedSeries.from_polynomial(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        t = self._min_trunc(other)
        lo = min([self.offset] + [other.offset])
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        if t is not None:
            hi = min(hi, t)
        coeffs = [(self.coefficient(i) if self._covers(i) else self.field.zero)
                  + (other.coefficient(i) if other._covers(i) else self.field.zero)
                  for i in range(lo, hi)]
        return TruncatedSeries(self.field, lo, coeffs, t)

    def _covers(self, i):
        return self.truncation is None or i < self.truncation

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.field, self.offset, [-c for c in self.coeffs],
                               self.truncation)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            return TruncatedSeries(self.field, self.offset,
                                   [c * other for c in self.coeffs], self.truncation)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        # validity: t1 + v2 and t2 + v1 bound what the product determines
        if self.is_zero_window() and self.truncation is None:
            return self
        if other.is_zero_window() and other.truncation is None:
            return other
        v1 = self.offset if self.coeffs else (self.truncation if self.truncation is not None else 0)
        v2 = other.offset if other.coeffs else (other.truncation if other.truncation is not None else 0)
        t = None
        if self.truncation is not None:
            t = self.truncation + v2
        if other.truncation is not None:
            t2 = other.truncation + v1
            t = t2 if t is None else min(t, t2)
        lo = v1 + v2
        hi = lo + len(self.coeffs) + len(other.coeffs)
        if t is not None:
            hi = min(hi, t)
        out = [self.field.zero] * max(0, hi - lo)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                e = self.offset + i + other.offset + j
                if e < hi:
                    out[e - lo] = out[e - lo] + a * b
        return TruncatedSeries(self.field, lo, out, t)

    __rmul__ = __mul__

    def inverse(self, nterms):
        """Multiplicative inverse, valid on nterms coefficients from the
        leading exponent; the leading coefficient must be nonzero."""
        if not self.coeffs:
            raise ZeroDivisionError("inverting a series with no visible terms")
        if self.truncation is not None and self.truncation - self.offset < nterms:
            raise TruncationError("not enough known terms to invert")
        a0 = self.coeffs[0]
        inv = [self.field.one / a0]
        for n in range(1, nterms):
            s = self.field.zero
            for k in range(1, n + 1):
                ak = self.coeffs[k] if k < len(self.coeffs) else self.field.zero
                s = s + ak * inv[n - k]
            inv.append(-s / a0)
        return TruncatedSeries(self.field, -self.offset, inv, -self.offset + nterms)

    def hasse(self, i):
        """Termwise Hasse derivative: binom(j, i) c_j t^(j-i)."""
        if i < 0:
            raise ValueError("negative Hasse derivative order")
        if i == 0:
            return self
        t = None if self.truncation is None else self.truncation - i
        coeffs = [binomial(self.offset + k, i) * c for k, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.field, self.offset - i, coeffs, t)

    def truncate(self, upto):
        return TruncatedSeries(self.field, self.offset, list(self.coeffs),
                               upto if self.truncation is None else min(upto, self.truncation))

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return (self.offset == other.offset and self.coeffs == other.coeffs
                and self.truncation == other.truncation)

    def __hash__(self):
        return hash((self.offset, self.coeffs, self.truncation))

    def to_str(self, var="t"):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for k, c in enumerate(self.coeffs):
                if not c:
                    continue
                e = self.offset + k
                if e == 0:
                    parts.append(str(c))
                else:
                    mono = var if e == 1 else "%s^%d" % (var, e)
                    parts.append(mono if c == self.field.one else "%s*%s" % (c, mono))
            body = " + ".join(parts)
        if self.truncation is None:
            return body
        return "%s + O(%s^%d)" % (body, var, self.truncation)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return "TruncatedSeries(%r, %d, %r, %r)" % (
            self.field, self.offset, list(self.coeffs), self.truncation)


# ---------------------------------------------------------------------------
# Generic operations
# ---------------------------------------------------------------------------

def hasse_derivative(f, i):
    """i-th Hasse derivative of a Polynomial, RationalFunction or
    TruncatedSeries."""
    if i < 0:
        raise ValueError("negative Hasse derivative order")
    return f.hasse(i)


def valuation(f, point):
    """Order of vanishing of a rational function at a finite point or INF."""
    if isinstance(f, Polynomial):
        f = RationalFunction(f)
    return f.valuation(point)


# ---------------------------------------------------------------------------
# Linear algebra
# ---------------------------------------------------------------------------

def fraction_free_rank_det(rows):
    """Rank over the function field and, for square input, the exact
    determinant as a RationalFunction.

    Entries may be Polynomial or RationalFunction (or field scalars); the
    elimination itself is Bareiss-style fraction-free on polynomials, so
    intermediate entries stay within single-minor coefficient bounds.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return 0, None
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    field = None
    for r in rows:
        for x in r:
            if isinstance(x, (Polynomial, RationalFunction)):
                field = x.field if isinstance(x, Polynomial) else x.num.field
                break
        if field is not None:
            break
    if field is None:
        raise ValueError("matrix carries no field information")

    def as_rf(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial):
            return RationalFunction(x)
        return RationalFunction(Polynomial(field, [x]))

    # clear denominators row by row, remembering the multipliers
    poly_rows = []
    row_multipliers = []
    for r in rows:
        rfs = [as_rf(x) for x in r]
        common = Polynomial(field, [1])
        for x in rfs:
            g = common.gcd(x.den)
            common = common * x.den.exact_div(g) if g.degree > 0 else common * x.den
        poly_rows.append([(x.num * common.exact_div(x.den)) for x in rfs])
        row_multipliers.append(common)

    rank, det_poly, sign = _bareiss(poly_rows)
    det = None
    if len(rows) == ncols:
        if rank < ncols:
            det = RationalFunction(Polynomial(field, []))
        else:
            denom = Polynomial(field, [1])
            for m in row_multipliers:
                denom = denom * m
            det = RationalFunction(det_poly * sign, denom)
    return rank, det


def _bareiss(rows):
    """Fraction-free elimination on a polynomial matrix; returns
    (rank, last pivot, sign).  The matrix is modified in place."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    field = rows[0][0].field if m else None
    one = Polynomial(field, [1])
    prev = one
    sign = 1
    r = 0
    last_pivot = one
    for c in range(n):
        if r >= m:
            break
        pivot_row = None
        for i in range(r, m):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            sign = -sign
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                rows[i][j] = (rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]).exact_div(prev)
            rows[i][c] = Polynomial(field, [])
        prev = rows[r][c]
        last_pivot = prev
        r += 1
    return r, last_pivot, sign


def scalar_rank(rows):
    """Rank of a matrix of field scalars (Fraction or FpElement)."""
    return len(scalar_echelon(rows)[0])


def scalar_echelon(rows):
    """Row echelon form over the field; returns (pivot columns, rows).

    Input rows are not modified.
    """
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots = []
    out = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(work)):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = work[r][c] ** -1 if isinstance(work[r][c], FpElement) else 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        out.append(work[r])
        r += 1
    return pivots, work[:r]


def scalar_nullspace(rows, ncols, field):
    """Basis of the right nullspace of the matrix (vectors of length ncols)."""
    if not rows:
        return [[field.one if j == i else field.zero for j in range(ncols)]
                for i in range(ncols)]
    pivots, ech = scalar_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero] * ncols
        vec[fc] = field.one
        for prow, pc in zip(ech, pivots):
            vec[pc] = -prow[fc]
        basis.append(vec)
    return basis


def span_reduce(pivots, echelon_rows, vec):
    """Reduce a vector against echelonized rows; a zero result means the
    vector lies in their span."""
    v = list(vec)
    for prow, pc in zip(echelon_rows, pivots):
        if v[pc]:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, prow)]
    return v


def scalar_in_span(rows, vec):
    """Membership of vec in the row span (rows may be any spanning set)."""
    pivots, ech = scalar_echelon(rows)
    return not any(span_reduce(pivots, ech, vec))


def scalar_solve(rows, rhs, field):
    """One solution x of rows @ x = rhs, or None if inconsistent."""
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots, ech = scalar_echelon(aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for prow, pc in zip(ech, pivots):
        x[pc] = prow[-1]
    return x


def scalar_det(rows):
    """Determinant of a square matrix of field scalars."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    work = [list(r) for r in rows]
    det = None
    sign = 1
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if work[i][c]:
                pivot = i
                break
        if pivot is None:
            return work[0][0] - work[0][0]  # zero of the right field
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            sign = -sign
        det = work[c][c] if det is None else det * work[c][c]
        inv = work[c][c] ** -1 if isinstance(work[c][c], FpElement) else 1 / work[c][c]
        for i in range(c + 1, n):
            if work[i][c]:
                f = work[i][c] * inv
                work[i] = [a - f * b for a, b in zip(work[i], work[c])]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# Place refinement (for divisor reports)
# ---------------------------------------------------------------------------

def coprime_refinement(polys):
    """Pairwise-coprime monic nonconstant polynomials through which every
    input factors; linear factors over the base field are split off.

    Each returned factor has a single well-defined multiplicity in every
    input (inputs are refined through their squarefree layers).
    """
    layers = []
    for p in polys:
        if p.is_zero() or p.degree < 1:
            continue
        for fac, _m in p.squarefree_decomposition():
            layers.append(fac)
    basis = []
    for f in layers:
        f = f.monic()
        queue = [f]
        while queue:
            g = queue.pop()
            if g.degree < 1:
                continue
            refined = False
            for i, b in enumerate(basis):
                d = g.gcd(b)
                if d.degree < 1:
                    continue
                if d == b:
                    rem = g.exact_div(b)
                    if rem.degree >= 1:
                        queue.append(rem)
                    refined = True
                    break
                basis[i] = d
                basis.append(b.exact_div(d))
                queue.append(g)
                refined = True
                break
            if not refined:
                basis.append(g)
    # split off linear factors over the base field
    out = []
    for b in basis:
        for root in b.rational_roots():
            lin = Polynomial(b.field, [-root, 1])
            b = b.exact_div(lin)
            out.append(lin)
        if b.degree >= 1:
            out.append(b)
    out.sort(key=lambda q: (q.degree, [str(c) for c in q.coeffs]))
    return out
