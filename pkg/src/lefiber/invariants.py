"""Cycle invariants of a hypersurface germ under a chosen coordinate frame.

Throughout, f is a polynomial vanishing at the origin, s is the dimension at
the origin of its critical locus, and a frame supplies coordinates z_0..z_n in
which z_0..z_{s-1} are the family directions. Writing g = f(M z):

* the relative conormal ideal I_C = (dg/dz_s, ..., dg/dz_n) cuts out the union
  of the polar curve and the critical locus;
* the polar ideal I_Gamma = saturation(I_C, J(g)) removes every component
  inside the critical locus, leaving the relative polar cycle;
* the remaining cycle ideal I_Lambda = saturation(I_C, I_Gamma) keeps exactly
  the components inside the critical locus, with their multiplicities; its
  intersection number with V(z_0..z_{s-1}) is the top Le number.

All intersection numbers are local quotient dimensions; all saturations run
globally. The additivity check

    mu_0(f_0) = (Gamma . V(z_0..z_{s-1}))_0 + (Lambda . V(z_0..z_{s-1}))_0

is enforced on every complete record and doubles as the runtime guard that the
chosen frame was generic enough for the cycle decomposition to be proper.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConsistencyFailureError,
    GenericityFailureError,
    ImproperIntersectionError,
    InputError,
    NegativeLeNumberError,
    NonIsolatedSliceError,
)
from .frames import CoordinateFrame, apply_frame
from .ideals import (
    Ideal,
    canonical_signature,
    global_quotient_dimension,
    local_dimension,
    local_quotient_dimension,
    origin_membership,
    point_count,
    saturation,
)
from .poly import Polynomial, PolyRing


def validate_germ(f: Polynomial):
    if f.is_zero():
        raise InputError("the zero polynomial does not define a hypersurface germ")
    if f.constant_term() != 0:
        raise InputError("the polynomial must vanish at the origin")


def jacobian_ideal(f: Polynomial) -> Ideal:
    """Ideal of all partial derivatives."""
    validate_germ(f)
    ring = f.ring
    return Ideal(ring, tuple(f.partial_derivative(i) for i in range(ring.nvars)))


def sigma_dim(f: Polynomial, max_steps: int | None = None) -> int | None:
    """Dimension at the origin of the critical locus; None when f is smooth
    at the origin."""
    return local_dimension(jacobian_ideal(f), max_steps)


def _framed(f: Polynomial, frame: CoordinateFrame) -> Polynomial:
    if frame.nvars != f.ring.nvars:
        raise InputError("frame arity does not match the polynomial ring")
    return apply_frame(f, frame)


def _slice_gens(ring: PolyRing, s: int) -> tuple[Polynomial, ...]:
    return tuple(ring.variable(i) for i in range(s))


def _restricted_ideal(g: Polynomial, s: int) -> Ideal:
    """(z_0..z_{s-1}) plus the partials of g in the slice directions: cuts out
    the critical locus of the restriction f_0 inside the slice."""
    ring = g.ring
    gens = _slice_gens(ring, s) + tuple(
        g.partial_derivative(j) for j in range(s, ring.nvars)
    )
    return Ideal(ring, gens)


def restricted_milnor_number(f: Polynomial, frame: CoordinateFrame,
                             max_steps: int | None = None) -> int:
    """Milnor number at the origin of f restricted to the transversal slice
    (for s=0, of f itself)."""
    validate_germ(f)
    g = _framed(f, frame)
    mu = local_quotient_dimension(_restricted_ideal(g, frame.s), max_steps)
    if mu is math.inf:
        raise NonIsolatedSliceError(
            "the restriction to the slice has a non-isolated critical point"
        )
    return int(mu)


def slice_sigma_dim(f: Polynomial, frame: CoordinateFrame,
                    max_steps: int | None = None) -> int | None:
    """Dimension at the origin of the critical locus of the sliced function."""
    validate_germ(f)
    g = _framed(f, frame)
    return local_dimension(_restricted_ideal(g, frame.s), max_steps)


def _conormal_ideal(g: Polynomial, s: int) -> Ideal:
    ring = g.ring
    if s == 0:
        return jacobian_ideal(g)
    return Ideal(ring, tuple(g.partial_derivative(j) for j in range(s, ring.nvars)))


def polar_ideal(f: Polynomial, frame: CoordinateFrame,
                max_steps: int | None = None) -> Ideal:
    """Ideal of the relative polar cycle: saturation of the conormal ideal by
    the full Jacobian ideal. For s = 0 this is the unit ideal by convention."""
    validate_germ(f)
    g = _framed(f, frame)
    return saturation(_conormal_ideal(g, frame.s), jacobian_ideal(g), max_steps)


def gamma_is_zero(f: Polynomial, frame: CoordinateFrame,
                  max_steps: int | None = None) -> bool:
    """True when the relative polar cycle is empty at the origin."""
    return not origin_membership(polar_ideal(f, frame, max_steps))


def le_cycle_ideal(f: Polynomial, frame: CoordinateFrame,
                   max_steps: int | None = None) -> Ideal:
    """Ideal of the top Le cycle: the components of the conormal locus inside
    the critical locus, kept with their multiplicities."""
    validate_germ(f)
    g = _framed(f, frame)
    gamma = saturation(_conormal_ideal(g, frame.s), jacobian_ideal(g), max_steps)
    return saturation(_conormal_ideal(g, frame.s), gamma, max_steps)


def polar_intersection_number(f: Polynomial, frame: CoordinateFrame,
                              max_steps: int | None = None) -> int:
    """(Gamma . V(z_0..z_{s-1}))_0."""
    gamma = polar_ideal(f, frame, max_steps)
    ring = f.ring
    num = local_quotient_dimension(
        Ideal(ring, gamma.generators + _slice_gens(ring, frame.s)), max_steps
    )
    if num is math.inf:
        raise ImproperIntersectionError(
            "the polar cycle meets the slice axes in positive dimension"
        )
    return int(num)


def le_number_top(f: Polynomial, frame: CoordinateFrame,
                  max_steps: int | None = None) -> int:
    """Top Le number lambda^s via mu_0(f_0) - (Gamma . V)_0."""
    mu = restricted_milnor_number(f, frame, max_steps)
    gv = polar_intersection_number(f, frame, max_steps)
    lam = mu - gv
    if lam < 0:
        raise NegativeLeNumberError(
            f"mu_0(f_0) = {mu} is smaller than the polar intersection number {gv}"
        )
    return lam


def curve_case_numbers(f: Polynomial, frame: CoordinateFrame,
                       max_steps: int | None = None) -> tuple[int, int, int]:
    """For s = 1: (gamma^1, lambda^0, tau), the intersection numbers of the
    polar curve with V(z_0), V(dg/dz_0) and V(g). Postcondition: tau equals
    lambda^0 + gamma^1; a violation raises the consistency error."""
    validate_germ(f)
    if frame.s != 1:
        raise InputError("curve-case numbers are defined for s = 1 only")
    g = _framed(f, frame)
    ring = g.ring
    gamma = saturation(_conormal_ideal(g, 1), jacobian_ideal(g), max_steps)

    def meet(p: Polynomial, what: str) -> int:
        num = local_quotient_dimension(Ideal(ring, gamma.generators + (p,)), max_steps)
        if num is math.inf:
            raise ImproperIntersectionError(
                f"the polar curve meets {what} in positive dimension"
            )
        return int(num)

    gamma1 = meet(ring.variable(0), "V(z_0)")
    lambda0 = meet(g.partial_derivative(0), "V(dg/dz_0)")
    tau = meet(g, "V(g)")
    if tau != lambda0 + gamma1:
        raise ConsistencyFailureError(
            f"handle count {tau} differs from lambda^0 + gamma^1 = {lambda0} + {gamma1}"
        )
    return gamma1, lambda0, tau


def transversal_milnor_sum(f: Polynomial, frame: CoordinateFrame, t,
                           max_steps: int | None = None) -> int:
    """Sum of Milnor numbers of the transversal slices of the critical locus
    at z_0 = t: the global quotient dimension of I_Lambda + (z_0 - t)."""
    validate_germ(f)
    if frame.s != 1:
        raise InputError("the transversal sum oracle is defined for s = 1 only")
    lam = le_cycle_ideal(f, frame, max_steps)
    ring = f.ring
    slice_poly = ring.variable(0) - ring.constant(Fraction(t))
    total = global_quotient_dimension(
        Ideal(ring, lam.generators + (slice_poly,)), max_steps
    )
    if total is math.inf:
        raise NonIsolatedSliceError(f"the slice z_0 = {t} is not isolated")
    return int(total)


def slice_point_count(f: Polynomial, frame: CoordinateFrame, t,
                      max_steps: int | None = None) -> int:
    """Number of distinct critical-locus points (over the algebraic closure)
    in the slice z_0 = t."""
    validate_germ(f)
    if frame.s != 1:
        raise InputError("slice point counts are defined for s = 1 only")
    lam = le_cycle_ideal(f, frame, max_steps)
    ring = f.ring
    slice_poly = ring.variable(0) - ring.constant(Fraction(t))
    return point_count(Ideal(ring, lam.generators + (slice_poly,)), max_steps)


@dataclass(frozen=True, slots=True)
class OracleResult:
    total: int
    points: int
    per_point: int | None
    average_exact: bool
    t: Fraction


_ORACLE_TS = (
    Fraction(1, 4), Fraction(1, 3), Fraction(2, 5), Fraction(3, 7),
    Fraction(5, 11), Fraction(7, 13), Fraction(1, 6), Fraction(2, 9),
)


def transversal_oracle(f: Polynomial, frame: CoordinateFrame,
                       retries: int = 5, max_steps: int | None = None) -> OracleResult:
    """Transversal Milnor sum and point count at a generic slice value.

    Evaluates at successive slice values until two consecutive ones agree on
    both numbers, guarding against a slice through special points. The
    per-point value is reported when the total divides evenly; it is certified
    exact only when it equals 1 (each slice point contributes at least 1)."""
    validate_germ(f)
    results = []
    for t in _ORACLE_TS[: retries + 2]:
        try:
            total = transversal_milnor_sum(f, frame, t, max_steps)
            points = slice_point_count(f, frame, t, max_steps)
        except (NonIsolatedSliceError, InputError):
            results.append(None)
            continue
        results.append((total, points))
        if len(results) >= 2 and results[-2] == results[-1]:
            per = total // points if points and total % points == 0 else None
            return OracleResult(total, points, per, per == 1, t)
    raise GenericityFailureError(
        "no two consecutive slice values agreed on the transversal data"
    )


def multiplicity_at_origin(I: Ideal, retries: int = 5,
                           max_steps: int | None = None) -> int:
    """Multiplicity of a curve germ at the origin: the intersection number
    with a generic hyperplane, accepted when two independent samples agree."""
    if local_dimension(I, max_steps) != 1:
        raise InputError("multiplicity at the origin is implemented for curve germs")
    ring = I.ring
    seed = int.from_bytes(
        hashlib.sha256(canonical_signature(I).encode()).digest()[:8], "big"
    )
    rng = random.Random(seed)

    def sample() -> int | float:
        while True:
            coeffs = [rng.randint(-100, 100) for _ in range(ring.nvars)]
            if any(coeffs):
                break
        form = ring.zero()
        for i, c in enumerate(coeffs):
            if c:
                form = form + ring.variable(i) * c
        return local_quotient_dimension(Ideal(ring, I.generators + (form,)), max_steps)

    for _ in range(retries):
        m1, m2 = sample(), sample()
        if m1 is not math.inf and m1 == m2:
            return int(m1)
    raise GenericityFailureError("generic hyperplane sections kept disagreeing")


@dataclass(frozen=True, slots=True)
class InvariantRecord:
    frame: CoordinateFrame
    s: int
    n: int
    slice_sigma_dimension: int
    mu0_f0: int
    gamma_dot_v: int
    lambda_s: int
    gamma_is_zero: bool
    gamma1: int | None
    lambda0: int | None
    tau: int | None


def invariant_record(f: Polynomial, frame: CoordinateFrame,
                     max_steps: int | None = None) -> InvariantRecord:
    """All frame invariants at once, with the additivity guard enforced.

    Raises the non-isolated-slice error when dim_0 of the sliced critical
    locus is positive, the improper-intersection error when a cycle fails to
    meet the slice axes properly, and the consistency error when the two
    routes to lambda^s disagree (which also catches non-generic frames whose
    cycle decomposition is defective).
    """
    validate_germ(f)
    g = _framed(f, frame)
    s = frame.s
    ring = g.ring
    n = ring.nvars - 1

    restricted = _restricted_ideal(g, s)
    mu = local_quotient_dimension(restricted, max_steps)
    if mu is math.inf:
        raise NonIsolatedSliceError(
            "the restriction to the slice has a non-isolated critical point"
        )
    mu = int(mu)
    sdim = local_dimension(restricted, max_steps)
    sdim = 0 if sdim is None else sdim

    conormal = _conormal_ideal(g, s)
    jac = jacobian_ideal(g)
    gamma = saturation(conormal, jac, max_steps)
    gzero = not origin_membership(gamma)
    lam_ideal = saturation(conormal, gamma, max_steps)

    lin = _slice_gens(ring, s)
    gv = local_quotient_dimension(Ideal(ring, gamma.generators + lin), max_steps)
    if gv is math.inf:
        raise ImproperIntersectionError(
            "the polar cycle meets the slice axes in positive dimension"
        )
    gv = int(gv)
    lam = local_quotient_dimension(Ideal(ring, lam_ideal.generators + lin), max_steps)
    if lam is math.inf:
        raise ImproperIntersectionError(
            "the Le cycle meets the slice axes in positive dimension"
        )
    lam = int(lam)
    if mu - gv < 0:
        raise NegativeLeNumberError(
            f"mu_0(f_0) = {mu} is smaller than the polar intersection number {gv}"
        )
    if gv + lam != mu:
        raise ConsistencyFailureError(
            f"cycle additivity failed: {gv} + {lam} != mu_0(f_0) = {mu}"
        )

    gamma1 = lambda0 = tau = None
    if s == 1:
        gamma1, lambda0, tau = curve_case_numbers(f, frame, max_steps)
        if gamma1 != gv:
            raise ConsistencyFailureError(
                f"gamma^1 = {gamma1} differs from the polar intersection number {gv}"
            )
    return InvariantRecord(
        frame=frame, s=s, n=n, slice_sigma_dimension=sdim, mu0_f0=mu,
        gamma_dot_v=gv, lambda_s=lam, gamma_is_zero=gzero,
        gamma1=gamma1, lambda0=lambda0, tau=tau,
    )


def milnor_number(f: Polynomial, max_steps: int | None = None) -> int:
    """Classical Milnor number of an isolated singularity (s = 0); raises the
    non-isolated error otherwise. Returns 0 for a smooth point."""
    mu = local_quotient_dimension(jacobian_ideal(f), max_steps)
    if mu is math.inf:
        raise NonIsolatedSliceError("the critical point is not isolated")
    return int(mu)
