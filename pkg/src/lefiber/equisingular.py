"""Equisingularity verdicts and Betti-number statements.

The decision procedure samples coordinate frames. A frame whose polar cycle is
empty certifies that the family is simple mu-constant, hence Milnor
equisingular, and no further sampling is needed. A nonempty polar cycle for a
single frame proves nothing (the frame may be unlucky), so the negative
verdict requires two random frames agreeing on the minimum sampled top Le
number; by upper semicontinuity of intersection numbers the minimum over
frames is the generic value, and two independent agreeing samples make a
coincidental non-generic match implausible. When the sampling budget runs out
first, the verdict is INDETERMINATE and no topological statement is issued.
"""

from __future__ import annotations

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
    ResourceLimitError,
)
from .frames import CoordinateFrame
from .ideals import Ideal, local_dimension
from .invariants import (
    InvariantRecord,
    OracleResult,
    invariant_record,
    le_cycle_ideal,
    milnor_number,
    multiplicity_at_origin,
    sigma_dim,
    transversal_milnor_sum,
    transversal_oracle,
    validate_germ,
)
from .poly import Polynomial

MILNOR_EQUISINGULAR = "MILNOR_EQUISINGULAR"
NOT_EQUISINGULAR = "NOT_EQUISINGULAR"
INDETERMINATE = "INDETERMINATE"
NOT_APPLICABLE = "NOT_APPLICABLE"
NONSINGULAR = "NONSINGULAR"

SIMPLE_MU_CONSTANT = "SIMPLE_MU_CONSTANT"
NOT_SIMPLE = "NOT_SIMPLE"


@dataclass(frozen=True, slots=True)
class GenericityConfig:
    """Knobs for the frame-sampling search."""

    seed: int = 0
    max_frames: int = 8
    retries: int = 5
    entry_bound: int = 100
    max_steps: int | None = None


@dataclass(frozen=True, slots=True)
class FrameEvidence:
    kind: str                # "explicit" | "identity" | "random"
    frame_label: str
    status: str              # "complete" | "rejected"
    rejection: str | None
    detail: str | None
    mu0_f0: int | None
    gamma_dot_v: int | None
    lambda_s: int | None
    gamma_is_zero: bool | None
    per_frame: str | None


@dataclass(frozen=True, slots=True)
class EquisingularityVerdict:
    verdict: str
    s: int | None
    n: int
    seed: int
    lambda_generic: int | None
    frames_sampled: int
    evidence: tuple[FrameEvidence, ...]
    record: InvariantRecord | None
    # first complete explicit/identity record; slice-oracle statements prefer
    # this frame because affine slice counts are local counts only when the
    # cycle stays finite over z_0, which user-chosen coordinates usually are
    baseline_record: InvariantRecord | None = None


_REJECTABLE = (
    NonIsolatedSliceError,
    ImproperIntersectionError,
    ConsistencyFailureError,
    NegativeLeNumberError,
    GenericityFailureError,
    ResourceLimitError,
)


def _rejected(kind: str, frame: CoordinateFrame, err: Exception) -> FrameEvidence:
    return FrameEvidence(
        kind=kind, frame_label=frame.label(), status="rejected",
        rejection=getattr(err, "code", "ERROR"), detail=str(err),
        mu0_f0=None, gamma_dot_v=None, lambda_s=None,
        gamma_is_zero=None, per_frame=None,
    )


def _complete(kind: str, rec: InvariantRecord) -> FrameEvidence:
    return FrameEvidence(
        kind=kind, frame_label=rec.frame.label(), status="complete",
        rejection=None, detail=None,
        mu0_f0=rec.mu0_f0, gamma_dot_v=rec.gamma_dot_v, lambda_s=rec.lambda_s,
        gamma_is_zero=rec.gamma_is_zero,
        per_frame=SIMPLE_MU_CONSTANT if rec.gamma_is_zero else NOT_SIMPLE,
    )


def simple_mu_constant_check(f: Polynomial, frame: CoordinateFrame,
                             max_steps: int | None = None) -> str:
    """Per-frame test: SIMPLE_MU_CONSTANT when the polar cycle is empty (so
    the transversal Milnor number is constant along the singular set in these
    coordinates), NOT_SIMPLE otherwise. The slice must be isolated."""
    rec = invariant_record(f, frame, max_steps)
    return SIMPLE_MU_CONSTANT if rec.gamma_is_zero else NOT_SIMPLE


def prepolar_check(f: Polynomial, frame: CoordinateFrame,
                   max_steps: int | None = None) -> bool:
    """Whether the hyperplane z_0 = 0 of the framed coordinates is prepolar:
    the critical locus of the restriction has dimension at most s - 1 at the
    origin."""
    validate_germ(f)
    if frame.s < 1:
        raise InputError("prepolarity needs at least one family direction")
    if frame.nvars != f.ring.nvars:
        raise InputError("frame arity does not match the polynomial ring")
    g = f.substitute_linear(frame.matrix)
    ring = g.ring
    gens = (ring.variable(0),) + tuple(
        g.partial_derivative(j) for j in range(1, ring.nvars)
    )
    d = local_dimension(Ideal(ring, gens), max_steps)
    return d is None or d <= frame.s - 1


def mu_constancy_scan(f: Polynomial, frame: CoordinateFrame, params,
                      max_steps: int | None = None) -> tuple[tuple[Fraction, int], ...]:
    """Transversal Milnor sums along a list of slice values of z_0."""
    out = []
    for t in params:
        tq = Fraction(t)
        out.append((tq, transversal_milnor_sum(f, frame, tq, max_steps)))
    return tuple(out)


def milnor_equisingular_check(f: Polynomial,
                              config: GenericityConfig | None = None,
                              explicit_frame: CoordinateFrame | None = None,
                              ) -> EquisingularityVerdict:
    """Decide Milnor equisingularity along the singular set.

    Tries the explicit frame (when given), then the identity, then random
    frames drawn from the seeded generator. Any frame with empty polar cycle
    settles the question positively. Otherwise the verdict is negative once
    two random frames agree on the minimum sampled lambda^s, and
    INDETERMINATE when the budget is exhausted first.
    """
    validate_germ(f)
    config = config or GenericityConfig()
    steps = config.max_steps
    n = f.ring.nvars - 1
    s = sigma_dim(f, steps)
    if s is None:
        return EquisingularityVerdict(NONSINGULAR, None, n, config.seed,
                                      None, 0, (), None)
    if s == 0:
        return EquisingularityVerdict(NOT_APPLICABLE, 0, n, config.seed,
                                      None, 0, (), None)
    if explicit_frame is not None and explicit_frame.s != s:
        raise InputError(
            f"the frame declares {explicit_frame.s} family directions but the "
            f"critical locus has dimension {s}"
        )

    rng = random.Random(config.seed)
    nvars = f.ring.nvars

    def candidates():
        identity = CoordinateFrame.identity(nvars, s)
        if explicit_frame is not None:
            yield "explicit", explicit_frame
            if explicit_frame.matrix == identity.matrix:
                identity = None
        if identity is not None:
            yield "identity", identity
        while True:
            yield "random", CoordinateFrame.random(nvars, s, rng, config.entry_bound)

    evidence: list[FrameEvidence] = []
    counts: dict[int, int] = {}
    first_with: dict[int, InvariantRecord] = {}
    baseline: InvariantRecord | None = None
    random_drawn = 0
    random_rejected = 0

    for kind, frame in candidates():
        if kind == "random":
            if random_drawn >= config.max_frames:
                break
            random_drawn += 1
        try:
            rec = invariant_record(f, frame, steps)
        except _REJECTABLE as err:
            evidence.append(_rejected(kind, frame, err))
            if kind == "random":
                random_rejected += 1
                if random_rejected > config.retries:
                    break
            continue
        evidence.append(_complete(kind, rec))
        if kind != "random" and baseline is None:
            baseline = rec
        if rec.gamma_is_zero:
            return EquisingularityVerdict(
                MILNOR_EQUISINGULAR, s, n, config.seed, rec.lambda_s,
                random_drawn, tuple(evidence), rec, baseline,
            )
        if kind == "random":
            counts[rec.lambda_s] = counts.get(rec.lambda_s, 0) + 1
            first_with.setdefault(rec.lambda_s, rec)
            best = min(counts)
            if counts[best] >= 2:
                return EquisingularityVerdict(
                    NOT_EQUISINGULAR, s, n, config.seed, best,
                    random_drawn, tuple(evidence), first_with[best], baseline,
                )

    hint = min(counts) if counts else None
    return EquisingularityVerdict(INDETERMINATE, s, n, config.seed, hint,
                                  random_drawn, tuple(evidence), None, baseline)


@dataclass(frozen=True, slots=True)
class BettiReport:
    n: int
    s: int | None
    verdict: str
    lambda_generic: int | None
    statements: tuple[dict, ...]
    notes: tuple[str, ...]
    equisingularity: EquisingularityVerdict | None
    record: InvariantRecord | None
    mu_scan: tuple[tuple[Fraction, int], ...] | None
    oracle: OracleResult | None
    le_cycle_multiplicity: int | None
    seed: int


_SCAN_TS = (Fraction(1, 4), Fraction(1, 3))


def _check_no_contradiction(statements: tuple[dict, ...]):
    equalities: dict[int, int] = {}
    bounds: dict[int, list[int]] = {}
    for st in statements:
        if st["type"] == "EQUALITY":
            equalities[st["degree"]] = st["value"]
        elif st["type"] == "STRICT":
            bounds.setdefault(st["degree"], []).append(st["bound"] - 1)
        elif st["type"] == "SIERSMA_BOUND":
            bounds.setdefault(st["degree"], []).append(st["bound"])
        elif st["type"] == "SWING_BOUNDS":
            for b in st["bounds"]:
                bounds.setdefault(b["degree"], []).append(b["bound"])
        elif st["type"] == "SIERSMA_VANISH":
            bounds.setdefault(st["degree"], []).append(0)
    for deg, val in equalities.items():
        for b in bounds.get(deg, []):
            if val > b:
                raise ConsistencyFailureError(
                    f"claimed rank {val} in degree {deg} exceeds the bound {b}"
                )
    for deg, bs in bounds.items():
        if any(b < 0 for b in bs):
            raise ConsistencyFailureError(
                f"negative homology bound in degree {deg}"
            )


def betti_report(f: Polynomial,
                 config: GenericityConfig | None = None,
                 explicit_frame: CoordinateFrame | None = None) -> BettiReport:
    """Verdict plus every Betti-number statement the invariants support.

    Reduced homology of the Milnor fiber of a germ with s-dimensional
    critical locus is concentrated in degrees n-s through n. The rank in the
    lowest degree equals lambda^s exactly when the family is simple
    mu-constant, and is otherwise strictly smaller; for s = 1 the swing,
    Euler, and transversal-sum bounds pin down both remaining degrees.
    """
    validate_germ(f)
    config = config or GenericityConfig()
    steps = config.max_steps
    n = f.ring.nvars - 1

    s = sigma_dim(f, steps)
    if s is None:
        return BettiReport(
            n=n, s=None, verdict=NONSINGULAR, lambda_generic=None,
            statements=(), notes=(
                "the function is nonsingular at the origin; the Milnor fiber "
                "is contractible and all reduced Betti numbers vanish",
            ),
            equisingularity=None, record=None, mu_scan=None, oracle=None,
            le_cycle_multiplicity=None, seed=config.seed,
        )
    if s == 0:
        mu = milnor_number(f, steps)
        rec = invariant_record(f, CoordinateFrame.identity(n + 1, 0), steps)
        statements = (
            {
                "type": "EQUALITY", "degree": n, "value": mu,
                "text": f"the reduced homology is concentrated in degree {n}, "
                        f"free of rank {mu}",
            },
        )
        _check_no_contradiction(statements)
        return BettiReport(
            n=n, s=0, verdict=NOT_APPLICABLE, lambda_generic=mu,
            statements=statements, notes=(
                "the singularity is isolated, so the equisingularity question "
                "along a positive-dimensional singular set does not arise",
            ),
            equisingularity=None, record=rec, mu_scan=None, oracle=None,
            le_cycle_multiplicity=None, seed=config.seed,
        )

    eq = milnor_equisingular_check(f, config, explicit_frame)
    notes: list[str] = [
        f"reduced homology of the Milnor fiber is concentrated in degrees "
        f"{n - s} through {n} and is free in degree {n}"
    ]
    statements: list[dict] = []
    rec = eq.record
    mu_scan = None
    oracle = None
    mult = None

    if eq.verdict == INDETERMINATE:
        notes.append(
            "the frame-sampling budget was exhausted before a verdict; no "
            "topological statement is issued"
        )
        return BettiReport(
            n=n, s=s, verdict=INDETERMINATE, lambda_generic=eq.lambda_generic,
            statements=(), notes=tuple(notes), equisingularity=eq,
            record=None, mu_scan=None, oracle=None,
            le_cycle_multiplicity=None, seed=config.seed,
        )

    lam = eq.lambda_generic
    if eq.verdict == MILNOR_EQUISINGULAR:
        statements.append({
            "type": "EQUALITY", "degree": n - s, "value": lam,
            "text": f"the family is simple mu-constant, so the rank of the "
                    f"reduced homology in degree {n - s} equals "
                    f"lambda^{s} = {lam}",
        })
        if n - s != 2:
            notes.append(
                f"since n - s = {n - s} is not 2, constancy of the transversal "
                "Milnor number along the singular set implies constant local "
                "topological type (not verified by this tool)"
            )
    else:
        st = {
            "type": "STRICT", "degree": n - s, "bound": lam,
            "mod_p_strict": s == 1,
            "text": f"the family is not simple mu-constant, so the rank of "
                    f"the reduced homology in degree {n - s} is strictly "
                    f"smaller than the generic lambda^{s} = {lam}",
        }
        if s == 1:
            st["text"] += (
                "; for s = 1 the strict inequality also holds for the "
                "dimension over Z/p for every prime p"
            )
        statements.append(st)

    if s == 1 and rec is not None:
        statements.append({
            "type": "SWING_BOUNDS",
            "bounds": [
                {"degree": n - 1, "bound": rec.lambda_s},
                {"degree": n, "bound": rec.lambda0},
            ],
            "text": f"b_{n - 1} <= lambda^1 = {rec.lambda_s} and "
                    f"b_{n} <= lambda^0 = {rec.lambda0}",
        })
        statements.append({
            "type": "EULER",
            "tau": rec.tau, "mu0_f0": rec.mu0_f0,
            "difference": rec.tau - rec.mu0_f0,
            "text": f"b_{n} - b_{n - 1} = tau - mu_0(f_0) = "
                    f"{rec.tau} - {rec.mu0_f0} = {rec.tau - rec.mu0_f0}",
        })
        try:
            oracle = transversal_oracle(f, rec.frame, config.retries, steps)
        except GenericityFailureError as err:
            notes.append(f"transversal oracle unavailable: {err}")
        if oracle is not None:
            statements.append({
                "type": "SIERSMA_BOUND", "degree": n - 1,
                "bound": oracle.total, "slice_points": oracle.points,
                "mu_per_point": oracle.per_point,
                "average_exact": oracle.average_exact,
                "text": f"b_{n - 1} <= {oracle.total}, the sum of transversal "
                        f"Milnor numbers over the {oracle.points} generic "
                        f"slice points (valid over any field)",
            })
        try:
            mu_scan = mu_constancy_scan(f, rec.frame, _SCAN_TS, steps)
        except (NonIsolatedSliceError, InputError) as err:
            notes.append(f"constancy scan unavailable: {err}")
        try:
            mult = multiplicity_at_origin(le_cycle_ideal(f, rec.frame, steps),
                                          config.retries, steps)
        except (GenericityFailureError, InputError) as err:
            notes.append(f"Le cycle multiplicity unavailable: {err}")
        if (eq.verdict == NOT_EQUISINGULAR and mult == 1
                and oracle is not None and oracle.per_point == 1):
            statements.append({
                "type": "SIERSMA_VANISH", "degree": n - 1, "value": 0,
                "text": f"the singular set is a single smooth curve with "
                        f"transversal Milnor number 1 and the family is not "
                        f"equisingular, so the reduced homology in degree "
                        f"{n - 1} vanishes",
            })

    stmts = tuple(statements)
    _check_no_contradiction(stmts)
    return BettiReport(
        n=n, s=s, verdict=eq.verdict, lambda_generic=lam, statements=stmts,
        notes=tuple(notes), equisingularity=eq, record=rec, mu_scan=mu_scan,
        oracle=oracle, le_cycle_multiplicity=mult, seed=config.seed,
    )
