"""Ideal arithmetic over the rational polynomial ring and its localization.

Strategy: every ideal-producing operation (quotient, saturation, intersection,
elimination) runs in the global ring under degrevlex, where Buchberger's
algorithm applies; locality enters only at the measuring stage, through Mora
standard bases under the local order, which yield local dimensions and local
quotient dimensions. For polynomial data this is sound: a component of an
algebraic set lies inside V(J) globally if and only if its germ at the origin
does, and all local multiplicities here are colengths of globally constructed
ideals.

Basis computations are memoized per (ring, order, generator set); results are
deterministic, so the cache never changes observable behavior.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import staircase
from .errors import ConsistencyFailureError, InputError, ResourceLimitError, RingError
from .groebner import (
    Budget,
    KIND_GREVLEX,
    KIND_NEGREVLEX,
    KernelOrder,
    Packer,
    content_strip,
    head_reduce,
    standard_basis_kernel,
    verification_primes,
)
from .orders import GLOBAL_DEGREVLEX, MonomialOrder
from .poly import Monomial, Polynomial, PolyRing, monomial_divides

DEFAULT_MAX_STEPS = 10**6

_SATURATION_ROUNDS = 64

_options = {
    "max_steps": DEFAULT_MAX_STEPS,
    "verify_mod_p": False,
    "verify_attempts": 3,
}


def set_engine_options(max_steps: int | None = None, verify_mod_p: bool | None = None):
    if max_steps is not None:
        _options["max_steps"] = int(max_steps)
    if verify_mod_p is not None:
        _options["verify_mod_p"] = bool(verify_mod_p)


def get_engine_options() -> dict:
    return dict(_options)


@dataclass(frozen=True, slots=True)
class Ideal:
    ring: PolyRing
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.ring.variables != self.ring.variables:
                raise RingError("generator lives in a different ring")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @staticmethod
    def of(ring: PolyRing, *gens: Polynomial) -> "Ideal":
        return Ideal(ring, tuple(gens))

    def is_zero(self) -> bool:
        return not self.generators

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring.variables != other.ring.variables:
            raise RingError("ideals live in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True, slots=True)
class BasisResult:
    ideal: Ideal
    order: MonomialOrder
    basis: tuple[Polynomial, ...]
    reduced: bool
    leading_exponents: tuple[Monomial, ...]
    steps_used: int


# -- memoization -----------------------------------------------------------------

_cache_lock = threading.Lock()
_basis_cache: dict[tuple, BasisResult] = {}


def clear_cache():
    with _cache_lock:
        _basis_cache.clear()


def canonical_generator_key(I: Ideal) -> tuple:
    return tuple(sorted(g.primitive_integer_terms() for g in I.generators))


def canonical_signature(I: Ideal) -> str:
    """Stable text signature of an ideal, usable as a deterministic seed source."""
    return repr((I.ring.variables, canonical_generator_key(I)))


# -- kernel conversion -------------------------------------------------------------


def _kernel_order(order: MonomialOrder, elim_last: bool = False) -> KernelOrder:
    kind = KIND_GREVLEX if order.is_global else KIND_NEGREVLEX
    return KernelOrder(kind, order.nvars, order.permutation, elim_last)


def _to_kernel(p: Polynomial, packer: Packer) -> list:
    terms = [(packer.pack(e), c) for e, c in p.primitive_integer_terms()]
    terms.sort(key=lambda t: t[0][0], reverse=True)
    return [(k, r, c) for (k, r), c in terms]


def _from_kernel(kp: list, packer: Packer, ring: PolyRing) -> Polynomial:
    return ring.from_dict({packer.unpack(r): Fraction(c) for _, r, c in kp})


# -- basis computation ---------------------------------------------------------------


def _full_reduce(p: Polynomial, basis: list[Polynomial], order: MonomialOrder,
                 budget: Budget | None = None) -> Polynomial:
    """Exact total normal form by multivariate division; global orders only."""
    if not order.is_global:
        raise InputError("total normal forms are only defined for global orders")
    ring = p.ring
    lts = [(g.leading_term(order), g) for g in basis if not g.is_zero()]
    rem = ring.zero()
    h = p
    while not h.is_zero():
        he, hc = h.leading_term(order)
        hit = None
        for (ge, gc), g in lts:
            if monomial_divides(ge, he):
                hit = (ge, gc, g)
                break
        if budget is not None:
            budget.spend()
        if hit is None:
            t = ring.monomial(he, hc)
            rem = rem + t
            h = h - t
        else:
            ge, gc, g = hit
            m = tuple(a - b for a, b in zip(he, ge))
            h = h - g * ring.monomial(m, hc / gc)
    return rem


def standard_basis(I: Ideal, order: MonomialOrder, max_steps: int | None = None) -> BasisResult:
    """Groebner basis (global order, reduced and canonical) or Mora standard
    basis (local order, minimal, not tail-reduced)."""
    if order.nvars != I.ring.nvars:
        raise RingError("order arity does not match the ring")
    key = (I.ring.variables, order.token(), canonical_generator_key(I))
    with _cache_lock:
        got = _basis_cache.get(key)
    if got is not None:
        return got

    budget = Budget(max_steps if max_steps is not None else _options["max_steps"])
    if I.is_zero():
        result = BasisResult(I, order, (), True, (), 0)
    else:
        packer = Packer(_kernel_order(order))
        kgens = [_to_kernel(g, packer) for g in I.generators]
        kbasis = standard_basis_kernel(kgens, packer, budget)
        polys = [_from_kernel(kp, packer, I.ring).scaled_primitive() for kp in kbasis]
        reduced = order.is_global
        if reduced and len(polys) > 1:
            polys = [
                _full_reduce(p, polys[:i] + polys[i + 1:], order, budget).scaled_primitive()
                for i, p in enumerate(polys)
            ]
        polys.sort(key=lambda p: order.key(p.leading_term(order)[0]))
        leading = tuple(p.leading_term(order)[0] for p in polys)
        result = BasisResult(I, order, tuple(polys), reduced, leading, budget.steps)

    with _cache_lock:
        _basis_cache[key] = result
    return result


def normal_form(g: Polynomial, basis_result: BasisResult, max_steps: int | None = None) -> Polynomial:
    """Normal form of g against a computed basis.

    Global orders give the canonical total normal form. Local orders give a
    Mora weak normal form: the head is irreducible but tail terms may not be;
    it vanishes exactly when g lies in the localized ideal, which is all the
    package needs from it.
    """
    order = basis_result.order
    budget = Budget(max_steps if max_steps is not None else _options["max_steps"])
    if g.is_zero() or not basis_result.basis:
        return g
    if order.is_global:
        return _full_reduce(g, list(basis_result.basis), order, budget)
    packer = Packer(_kernel_order(order))
    recs = []
    for p in basis_result.basis:
        kp = _to_kernel(p, packer)
        ec = (kp[0][0] >> packer.top_shift) - (kp[-1][0] >> packer.top_shift)
        recs.append([kp[0][0], kp[0][1], kp[0][2], kp, ec, len(recs)])
    res = head_reduce(_to_kernel(g, packer), recs, packer, budget)
    return _from_kernel(res, packer, g.ring).scaled_primitive() if res else g.ring.zero()


def is_member(g: Polynomial, I: Ideal, order: MonomialOrder, max_steps: int | None = None) -> bool:
    if g.is_zero():
        return True
    if I.is_zero():
        return False
    return normal_form(g, standard_basis(I, order, max_steps), max_steps).is_zero()


def is_subideal(I: Ideal, J: Ideal, order: MonomialOrder, max_steps: int | None = None) -> bool:
    """True when every generator of I lies in J (under the given order's ring)."""
    base = standard_basis(J, order, max_steps)
    return all(normal_form(g, base, max_steps).is_zero() for g in I.generators)


def ideal_equal(I: Ideal, J: Ideal, max_steps: int | None = None) -> bool:
    if I.ring.variables != J.ring.variables:
        raise RingError("ideals live in different rings")
    order = MonomialOrder.degrevlex(I.ring.nvars)
    return standard_basis(I, order, max_steps).basis == standard_basis(J, order, max_steps).basis


# -- elimination and intersections ---------------------------------------------------


def _fresh_aux_name(ring: PolyRing) -> str:
    base = "t_aux"
    name = base
    k = 0
    while name in ring.variables:
        k += 1
        name = f"{base}{k}"
    return name


def _extend_ring(ring: PolyRing) -> PolyRing:
    return PolyRing(ring.variables + (_fresh_aux_name(ring),))


def _lift(p: Polynomial, ext: PolyRing) -> Polynomial:
    return ext.from_dict({e + (0,): c for e, c in p.terms})


def _project(p: Polynomial, ring: PolyRing) -> Polynomial:
    return ring.from_dict({e[:-1]: c for e, c in p.terms})


def _eliminate_last(gens: list[Polynomial], ext: PolyRing, ring: PolyRing,
                    max_steps: int | None) -> Ideal:
    order = KernelOrder(KIND_GREVLEX, ext.nvars, tuple(range(ext.nvars)), elim_last=True)
    packer = Packer(order)
    budget = Budget(max_steps if max_steps is not None else _options["max_steps"])
    kgens = [_to_kernel(g, packer) for g in gens if not g.is_zero()]
    kbasis = standard_basis_kernel(kgens, packer, budget)
    aux = ext.nvars - 1
    kept = []
    for kp in kbasis:
        exps = packer.unpack(kp[0][1])
        if exps[aux] == 0:
            # under the block order, an aux-free head forces an aux-free polynomial
            kept.append(_project(_from_kernel(kp, packer, ext), ring).scaled_primitive())
    return Ideal(ring, tuple(kept))


def intersection(I: Ideal, J: Ideal, max_steps: int | None = None) -> Ideal:
    """I meet J via the single-auxiliary-variable trick: eliminate t from
    t*I + (1-t)*J."""
    if I.ring.variables != J.ring.variables:
        raise RingError("ideals live in different rings")
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring, ())
    ext = _extend_ring(I.ring)
    t = ext.variable(ext.nvars - 1)
    one = ext.one()
    gens = [t * _lift(g, ext) for g in I.generators]
    gens += [(one - t) * _lift(h, ext) for h in J.generators]
    return _eliminate_last(gens, ext, I.ring, max_steps)


def ideal_quotient(I: Ideal, g: Polynomial, max_steps: int | None = None) -> Ideal:
    """The colon ideal (I : g)."""
    if g.is_zero():
        raise InputError("cannot form a quotient by the zero polynomial")
    if g.ring.variables != I.ring.variables:
        raise RingError("polynomial lives in a different ring")
    if I.is_zero():
        return I
    if g.is_constant():
        return I
    K = intersection(I, Ideal.of(I.ring, g), max_steps)
    return Ideal(I.ring, tuple(k.exact_divide(g) for k in K.generators))


def saturation_by_element(I: Ideal, g: Polynomial, max_steps: int | None = None) -> Ideal:
    """(I : g^infinity) by iterating quotients until they stabilize, with the
    auxiliary-variable fallback (I + (1 - t g), eliminate t) on budget blowup."""
    if g.is_zero():
        raise InputError("cannot saturate by the zero polynomial")
    if I.is_zero() or g.is_constant():
        return I
    order = MonomialOrder.degrevlex(I.ring.nvars)
    try:
        S = I
        for _ in range(_SATURATION_ROUNDS):
            Q = ideal_quotient(S, g, max_steps)
            if is_subideal(Q, S, order, max_steps):
                return S
            S = Q
    except ResourceLimitError:
        pass
    ext = _extend_ring(I.ring)
    t = ext.variable(ext.nvars - 1)
    gens = [_lift(p, ext) for p in I.generators]
    gens.append(ext.one() - t * _lift(g, ext))
    return _eliminate_last(gens, ext, I.ring, max_steps)


def saturation(I: Ideal, J: Ideal, max_steps: int | None = None) -> Ideal:
    """(I : J^infinity) = intersection over generators g of J of (I : g^infinity).

    Saturating by the unit ideal, or by any unit element, returns I itself.
    """
    if I.ring.variables != J.ring.variables:
        raise RingError("ideals live in different rings")
    result: Ideal | None = None
    for g in J.generators:
        part = I if g.is_constant() else saturation_by_element(I, g, max_steps)
        result = part if result is None else intersection(result, part, max_steps)
    return I if result is None else result


# -- dimensions -----------------------------------------------------------------------


def _local_leading(I: Ideal, max_steps: int | None = None) -> tuple[Monomial, ...]:
    order = MonomialOrder.negdegrevlex(I.ring.nvars)
    return standard_basis(I, order, max_steps).leading_exponents


def local_dimension(I: Ideal, max_steps: int | None = None) -> int | None:
    """Dimension at the origin of the zero set of I; None when the origin is
    not in the zero set."""
    if I.is_zero():
        return I.ring.nvars
    leading = _local_leading(I, max_steps)
    return staircase.krull_dimension(list(leading), I.ring.nvars)


def _staircase_count_mod_p(I: Ideal, prime: int, max_steps: int | None) -> int | float:
    order = MonomialOrder.negdegrevlex(I.ring.nvars)
    packer = Packer(_kernel_order(order))
    budget = Budget(max_steps if max_steps is not None else _options["max_steps"])
    kgens = []
    for g in I.generators:
        kg = [(k, r, c % prime) for k, r, c in _to_kernel(g, packer)]
        kg = [(k, r, c) for k, r, c in kg if c]
        if kg:
            kgens.append(kg)
    kbasis = standard_basis_kernel(kgens, packer, budget, prime=prime)
    leading = [packer.unpack(kp[0][1]) for kp in kbasis]
    count = staircase.staircase_count(leading, I.ring.nvars)
    return math.inf if count is None else count


def local_quotient_dimension(I: Ideal, max_steps: int | None = None) -> int | float:
    """Vector-space dimension of the local ring modulo I; math.inf when the
    zero set of I has positive dimension at the origin."""
    if I.is_zero():
        return math.inf
    leading = _local_leading(I, max_steps)
    count = staircase.staircase_count(list(leading), I.ring.nvars)
    value = math.inf if count is None else count
    if _options["verify_mod_p"]:
        agreed = False
        for prime in verification_primes(_options["verify_attempts"]):
            if _staircase_count_mod_p(I, prime, max_steps) == value:
                agreed = True
                break
        if not agreed:
            raise ConsistencyFailureError(
                "local quotient dimension disagrees with every modular recomputation"
            )
    return value


def global_quotient_dimension(I: Ideal, max_steps: int | None = None) -> int | float:
    """Dimension of the full polynomial quotient ring; math.inf when the zero
    set is positive-dimensional anywhere."""
    if I.is_zero():
        return math.inf
    order = MonomialOrder.degrevlex(I.ring.nvars)
    leading = standard_basis(I, order, max_steps).leading_exponents
    count = staircase.staircase_count(list(leading), I.ring.nvars)
    return math.inf if count is None else count


def origin_membership(I: Ideal) -> bool:
    """True when the origin lies in the zero set of I, i.e. every generator
    has zero constant term."""
    return all(g.constant_term() == 0 for g in I.generators)


# -- point counting ---------------------------------------------------------------------


def _uni_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _uni_mod(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        _uni_trim(a)
    return a


def _uni_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _uni_trim(list(a)), _uni_trim(list(b))
    while b:
        a, b = b, _uni_mod(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _uni_derivative(p: list[Fraction]) -> list[Fraction]:
    return _uni_trim([p[i] * i for i in range(1, len(p))])


def _uni_exact_div(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    db, lb = len(b) - 1, b[-1]
    while _uni_trim(a) and len(a) - 1 >= db:
        c = a[-1] / lb
        shift = len(a) - 1 - db
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
    return _uni_trim(q)


def _squarefree_part(p: list[Fraction]) -> list[Fraction]:
    d = _uni_derivative(p)
    if not d:
        return p
    g = _uni_gcd(p, d)
    if len(g) == 1:
        return p
    return _uni_exact_div(p, g)


def _minimal_polynomial(var: int, basis: BasisResult, box: list[Monomial],
                        ring: PolyRing) -> list[Fraction]:
    """Minimal polynomial of a coordinate in a finite quotient, by finding the
    first linear dependence among normal forms of its powers."""
    index = {m: i for i, m in enumerate(box)}
    dim = len(box)
    rows: list[tuple[list[Fraction], list[Fraction]]] = []  # (echelon row, combination)
    x = ring.variable(var)
    power = ring.one()
    for k in range(dim + 1):
        nf = _full_reduce(power, list(basis.basis), basis.order)
        vec = [Fraction(0)] * dim
        for e, c in nf.terms:
            vec[index[e]] = c
        comb = [Fraction(0)] * (dim + 1)
        comb[k] = Fraction(1)
        for row, rcomb in rows:
            pivot = next(i for i, v in enumerate(row) if v != 0)
            if vec[pivot] != 0:
                factor = vec[pivot] / row[pivot]
                for i in range(dim):
                    vec[i] -= factor * row[i]
                for i in range(dim + 1):
                    comb[i] -= factor * rcomb[i]
        if all(v == 0 for v in vec):
            return _uni_trim(comb)
        rows.append((vec, comb))
        power = power * x
    raise ConsistencyFailureError("no linear dependence found in a finite quotient")


def point_count(I: Ideal, max_steps: int | None = None) -> int:
    """Number of distinct solutions over the algebraic closure.

    Requires the quotient to be finite. Adjoins the squarefree part of each
    coordinate's minimal polynomial, which cuts the scheme down to its reduced
    points, then counts the resulting staircase.
    """
    ring = I.ring
    order = MonomialOrder.degrevlex(ring.nvars)
    base = standard_basis(I, order, max_steps)
    if not base.leading_exponents or not staircase.is_zero_dimensional(
        list(base.leading_exponents), ring.nvars
    ):
        raise InputError("point counting needs a zero-dimensional ideal")
    box = staircase.staircase_basis(list(base.leading_exponents), ring.nvars)
    extra: list[Polynomial] = []
    for var in range(ring.nvars):
        mp = _minimal_polynomial(var, base, box, ring)
        sf = _squarefree_part(mp)
        p = ring.zero()
        for k, c in enumerate(sf):
            e = [0] * ring.nvars
            e[var] = k
            p = p + ring.monomial(tuple(e), c)
        extra.append(p.scaled_primitive())
    reduced = Ideal(ring, I.generators + tuple(extra))
    count = global_quotient_dimension(reduced, max_steps)
    if count is math.inf:
        raise ConsistencyFailureError("reduced point scheme failed to be finite")
    return int(count)
