"""Machine-readable reports.

Every payload is a plain dict of JSON types. Rationals are rendered as
strings like "1/4" (integers stay integers where the value is integral by
construction). render_json is the single choke point for serialization so
that repeated runs with the same seed stay byte-identical: keys are sorted,
indentation is fixed, and timings are omitted unless explicitly requested.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .equisingular import BettiReport, EquisingularityVerdict, FrameEvidence
from .frames import CoordinateFrame
from .invariants import InvariantRecord, OracleResult
from .poly import Polynomial

SCHEMA = 1


def fraction_str(q) -> str:
    return str(Fraction(q))


def frame_payload(frame: CoordinateFrame | None) -> dict | None:
    if frame is None:
        return None
    return {
        "label": frame.label(),
        "rows": frame.rows_as_strings(),
        "s": frame.s,
    }


def invariants_payload(rec: InvariantRecord | None) -> dict | None:
    if rec is None:
        return None
    return {
        "mu0_f0": rec.mu0_f0,
        "gamma_dot_V": rec.gamma_dot_v,
        "lambda_s": rec.lambda_s,
        "gamma_is_zero": rec.gamma_is_zero,
        "gamma1": rec.gamma1,
        "lambda0": rec.lambda0,
        "tau": rec.tau,
    }


def evidence_payload(ev: FrameEvidence) -> dict:
    return {
        "kind": ev.kind,
        "frame": ev.frame_label,
        "status": ev.status,
        "rejection": ev.rejection,
        "detail": ev.detail,
        "mu0_f0": ev.mu0_f0,
        "gamma_dot_V": ev.gamma_dot_v,
        "lambda_s": ev.lambda_s,
        "gamma_is_zero": ev.gamma_is_zero,
        "per_frame": ev.per_frame,
    }


def oracle_payload(orc: OracleResult | None) -> dict | None:
    if orc is None:
        return None
    return {
        "total": orc.total,
        "slice_points": orc.points,
        "mu_per_point": orc.per_point,
        "average_exact": orc.average_exact,
        "t": fraction_str(orc.t),
    }


def _input_payload(f: Polynomial) -> dict:
    return {
        "polynomial": str(f),
        "variables": list(f.ring.variables),
        "n": f.ring.nvars - 1,
    }


def analysis_payload(f: Polynomial, report: BettiReport,
                     timings: dict | None = None) -> dict:
    eq = report.equisingularity
    return {
        "schema": SCHEMA,
        "input": _input_payload(f),
        "s": report.s,
        "seed": report.seed,
        "verdict": report.verdict,
        "lambda_s_generic": report.lambda_generic,
        "frame_used": frame_payload(report.record.frame if report.record else None),
        "invariants": invariants_payload(report.record),
        "betti_statements": [dict(st) for st in report.statements],
        "mu_scan": (
            None if report.mu_scan is None
            else [[fraction_str(t), v] for t, v in report.mu_scan]
        ),
        "transversal_oracle": oracle_payload(report.oracle),
        "le_cycle_multiplicity": report.le_cycle_multiplicity,
        "evidence": [evidence_payload(e) for e in eq.evidence] if eq else [],
        "frames_sampled": eq.frames_sampled if eq else 0,
        "notes": list(report.notes),
        "timings": timings,
    }


def check_payload(f: Polynomial, verdict: EquisingularityVerdict,
                  timings: dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "input": _input_payload(f),
        "s": verdict.s,
        "seed": verdict.seed,
        "verdict": verdict.verdict,
        "lambda_s_generic": verdict.lambda_generic,
        "frame_used": frame_payload(verdict.record.frame if verdict.record else None),
        "invariants": invariants_payload(verdict.record),
        "evidence": [evidence_payload(e) for e in verdict.evidence],
        "frames_sampled": verdict.frames_sampled,
        "timings": timings,
    }


def milnor_payload(f: Polynomial, mu: int, timings: dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "input": _input_payload(f),
        "milnor_number": mu,
        "timings": timings,
    }


def le_numbers_payload(f: Polynomial, rec: InvariantRecord,
                       timings: dict | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "input": _input_payload(f),
        "s": rec.s,
        "frame_used": frame_payload(rec.frame),
        "invariants": invariants_payload(rec),
        "le_numbers": {
            f"lambda_{rec.s}": rec.lambda_s,
            **({"lambda_0": rec.lambda0} if rec.s == 1 else {}),
        },
        "timings": timings,
    }


def error_payload(err: Exception) -> dict:
    code = getattr(err, "code", "ERROR")
    body = {"code": code, "message": str(err)}
    payload = getattr(err, "payload", None)
    if callable(payload):
        body.update({k: v for k, v in payload().items()
                     if k not in ("code", "message")})
    return {"schema": SCHEMA, "error": body}


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _text_lines_invariants(inv: dict | None, out: list):
    if not inv:
        return
    parts = [f"mu0(f_0) = {inv['mu0_f0']}",
             f"(Gamma . V) = {inv['gamma_dot_V']}",
             f"lambda^s = {inv['lambda_s']}"]
    if inv.get("gamma1") is not None:
        parts += [f"gamma^1 = {inv['gamma1']}",
                  f"lambda^0 = {inv['lambda0']}",
                  f"tau = {inv['tau']}"]
    out.append("invariants: " + ", ".join(parts))


def render_text(payload: dict) -> str:
    if "error" in payload:
        err = payload["error"]
        return f"error [{err['code']}]: {err['message']}\n"
    out: list[str] = []
    inp = payload.get("input", {})
    if inp:
        out.append(f"polynomial: {inp['polynomial']}")
        out.append("variables: " + ", ".join(inp["variables"]))
    if "milnor_number" in payload:
        out.append(f"milnor number: {payload['milnor_number']}")
        return "\n".join(out) + "\n"
    if "s" in payload:
        out.append(f"n = {inp.get('n')}, s = {payload['s']}")
    if "verdict" in payload:
        out.append(f"verdict: {payload['verdict']}")
    if payload.get("lambda_s_generic") is not None:
        out.append(f"generic top Le number: {payload['lambda_s_generic']}")
    fu = payload.get("frame_used")
    if fu:
        out.append(f"frame: {fu['label']}")
    _text_lines_invariants(payload.get("invariants"), out)
    if payload.get("le_numbers"):
        nums = ", ".join(f"{k} = {v}" for k, v in sorted(payload["le_numbers"].items()))
        out.append("le numbers: " + nums)
    if payload.get("mu_scan"):
        scan = ", ".join(f"t={t}: {v}" for t, v in payload["mu_scan"])
        out.append("mu-constancy scan: " + scan)
    orc = payload.get("transversal_oracle")
    if orc:
        out.append(
            f"transversal oracle: total {orc['total']} over "
            f"{orc['slice_points']} points at t = {orc['t']}"
            + (f", mu per point {orc['mu_per_point']}"
               if orc["mu_per_point"] is not None else "")
        )
    for st in payload.get("betti_statements", ()):
        out.append(f"  [{st['type']}] {st['text']}")
    for note in payload.get("notes", ()):
        out.append(f"note: {note}")
    ev = payload.get("evidence")
    if ev:
        out.append(f"frames examined: {len(ev)} "
                   f"({payload.get('frames_sampled', 0)} random)")
    return "\n".join(out) + "\n"
