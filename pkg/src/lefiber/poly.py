"""Sparse multivariate polynomials over the rationals.

A polynomial is an immutable map from exponent tuples to nonzero ``Fraction``
coefficients. Terms are kept sorted in descending degrevlex order (identity
permutation) purely so that equal polynomials have equal representations;
order-dependent operations take an explicit :class:`~lefiber.orders.MonomialOrder`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, RingError
from .orders import MonomialOrder

Rational = Fraction

Monomial = tuple[int, ...]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _canon_key(exps: Monomial):
    # reference order for storage only: degrevlex, identity permutation
    return (sum(exps), tuple(-e for e in reversed(exps)))


_IDENT_FIRST = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_REST = _IDENT_FIRST | set("0123456789")


def _valid_identifier(name: str) -> bool:
    return bool(name) and name[0] in _IDENT_FIRST and all(c in _IDENT_REST for c in name)


@dataclass(frozen=True, slots=True)
class PolyRing:
    """A polynomial ring, identified by its ordered tuple of variable names."""

    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        seen = set()
        for v in self.variables:
            if not _valid_identifier(v):
                raise RingError(f"invalid variable name: {v!r}")
            if v in seen:
                raise RingError(f"duplicate variable name: {v!r}")
            seen.add(v)
        if not self.variables:
            raise RingError("a ring needs at least one variable")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r}; ring has {', '.join(self.variables)}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, (((0,) * self.nvars, c),))

    def variable(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise RingError(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, ((tuple(e), Fraction(1)),))

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise RingError(f"bad exponent tuple {exps!r} for {self.nvars} variables")
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, ((exps, c),))

    def from_dict(self, d: dict[Monomial, Fraction]) -> "Polynomial":
        terms = tuple(
            (tuple(e), Fraction(c))
            for e, c in sorted(d.items(), key=lambda kv: _canon_key(kv[0]), reverse=True)
            if c != 0
        )
        return Polynomial(self, terms)


@dataclass(frozen=True, slots=True)
class Polynomial:
    ring: PolyRing
    terms: tuple[tuple[Monomial, Fraction], ...]
    _hash: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.ring.variables, self.terms)))

    def __hash__(self) -> int:
        return self._hash

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def constant_term(self) -> Fraction:
        z = (0,) * self.ring.nvars
        for e, c in self.terms:
            if e == z:
                return c
        return Fraction(0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e, _ in self.terms)

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        return max(self.terms, key=lambda t: order.key(t[0]))

    def coefficient(self, exps: Monomial) -> Fraction:
        for e, c in self.terms:
            if e == exps:
                return c
        return Fraction(0)

    def variables_used(self) -> tuple[int, ...]:
        used = set()
        for e, _ in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return tuple(sorted(used))

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring.variables != other.ring.variables:
            raise RingError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        self._check_ring(other)
        d = dict(self.terms)
        for e, c in other.terms:
            s = d.get(e, Fraction(0)) + c
            if s == 0:
                d.pop(e, None)
            else:
                d[e] = s
        return self.ring.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, tuple((e, k * c) for e, k in self.terms))
        self._check_ring(other)
        d: dict[Monomial, Fraction] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = monomial_mul(ea, eb)
                s = d.get(e, Fraction(0)) + ca * cb
                if s == 0:
                    d.pop(e, None)
                else:
                    d[e] = s
        return self.ring.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InputError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and substitution -------------------------------------------

    def partial_derivative(self, var: int | str) -> "Polynomial":
        i = var if isinstance(var, int) else self.ring.index(var)
        if not 0 <= i < self.ring.nvars:
            raise RingError(f"variable index {i} out of range")
        d: dict[Monomial, Fraction] = {}
        for e, c in self.terms:
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            d[tuple(ne)] = c * e[i]
        return self.ring.from_dict(d)

    def evaluate(self, point) -> Fraction:
        pt = [Fraction(p) for p in point]
        if len(pt) != self.ring.nvars:
            raise RingError("point arity mismatch")
        total = Fraction(0)
        for e, c in self.terms:
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= pt[i] ** k
            total += v
        return total

    def substitute_linear(self, matrix) -> "Polynomial":
        """Return f(M z): each old variable x_i is replaced by sum_j M[i][j] z_j."""
        n = self.ring.nvars
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise RingError("substitution matrix must be square of ring arity")
        images = []
        for row in matrix:
            d = {}
            for j, c in enumerate(row):
                c = Fraction(c)
                if c != 0:
                    e = [0] * n
                    e[j] = 1
                    d[tuple(e)] = c
            images.append(self.ring.from_dict(d))
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(i: int, k: int) -> Polynomial:
            if k == 0:
                return self.ring.one()
            got = powers.get((i, k))
            if got is None:
                got = power(i, k - 1) * images[i]
                powers[(i, k)] = got
            return got

        acc: dict[Monomial, Fraction] = {}
        for e, c in self.terms:
            prod = self.ring.constant(c)
            for i, k in enumerate(e):
                if k:
                    prod = prod * power(i, k)
            for pe, pc in prod.terms:
                s = acc.get(pe, Fraction(0)) + pc
                if s == 0:
                    acc.pop(pe, None)
                else:
                    acc[pe] = s
        return self.ring.from_dict(acc)

    def exact_divide(self, g: "Polynomial") -> "Polynomial":
        """Return self / g, assuming g divides self exactly."""
        self._check_ring(g)
        if g.is_zero():
            raise InputError("division by zero polynomial")
        order = MonomialOrder.degrevlex(self.ring.nvars)
        ge, gc = g.leading_term(order)
        h = self
        q: dict[Monomial, Fraction] = {}
        while not h.is_zero():
            he, hc = h.leading_term(order)
            me = tuple(a - b for a, b in zip(he, ge))
            if any(x < 0 for x in me):
                raise InputError("polynomial division is not exact")
            mc = hc / gc
            q[me] = q.get(me, Fraction(0)) + mc
            h = h - self.ring.monomial(me, mc) * g
        return self.ring.from_dict(q)

    # -- conversions -----------------------------------------------------------

    def primitive_integer_terms(self) -> tuple[tuple[Monomial, int], ...]:
        """Terms rescaled by a positive rational into coprime integers."""
        if not self.terms:
            return ()
        denom = 1
        for _, c in self.terms:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
        ints = [(e, int(c * denom)) for e, c in self.terms]
        g = 0
        for _, c in ints:
            g = math.gcd(g, abs(c))
        return tuple((e, c // g) for e, c in ints)

    def scaled_primitive(self) -> "Polynomial":
        """The polynomial with primitive integer coefficients and positive lead."""
        ints = self.primitive_integer_terms()
        if not ints:
            return self
        sign = 1 if ints[0][1] > 0 else -1
        return Polynomial(self.ring, tuple((e, Fraction(sign * c)) for e, c in ints))

    # -- printing ---------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.terms):
            mono = "*".join(
                self.ring.variables[i] if k == 1 else f"{self.ring.variables[i]}^{k}"
                for i, k in enumerate(e)
                if k
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def partial_derivative(f: Polynomial, var: int | str) -> Polynomial:
    return f.partial_derivative(var)
