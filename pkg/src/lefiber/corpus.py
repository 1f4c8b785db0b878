"""Corpus ingestion and regression runs.

A corpus is one JSON document: {"schema": 1, "entries": [...]}. Each entry
has an id, the polynomial text, optional variable order and seed, tags, a map
of expected values, and a provenance note saying where each expected value
comes from ("published-example", "derived-by-hand", or "trivial"); provenance
may be a single string covering every key or a per-key map. Entries with
expectations but no provenance are rejected: every frozen number must say how
it was obtained.

Runs are cached content-addressed: the key hashes the canonical input
(polynomial, variables, seed, budgets) together with the package version and
report schema, so a version bump invalidates stale reports and a cache hit is
byte-identical to a fresh run by construction.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .equisingular import GenericityConfig, betti_report
from .errors import CorpusError, LefiberError
from .parse import infer_variables, parse_polynomial
from .poly import PolyRing
from .report import SCHEMA, analysis_payload, error_payload, render_json

PROVENANCE_KINDS = ("published-example", "derived-by-hand", "trivial")

SUPPORTED_KEYS = (
    "s", "verdict", "lambda_s_generic",
    "mu0_f0", "gamma_dot_V", "lambda_s", "gamma_is_zero",
    "gamma1", "lambda0", "tau",
    "oracle_total", "oracle_points", "mu_per_point",
    "le_cycle_multiplicity", "mu_scan", "statement_types",
    "milnor_number", "frames_sampled",
)


def load_corpus(path: str) -> list[dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CorpusError(f"cannot read corpus file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CorpusError(f"corpus file is not valid JSON: {exc}") from None
    return validate_corpus(doc)


def validate_corpus(doc) -> list[dict]:
    if not isinstance(doc, dict) or not isinstance(doc.get("entries"), list):
        raise CorpusError('corpus must be an object with an "entries" list')
    if doc.get("schema", 1) != 1:
        raise CorpusError(f"unsupported corpus schema {doc.get('schema')!r}")
    seen = set()
    entries = []
    for idx, entry in enumerate(doc["entries"]):
        where = f"entry {idx}"
        if not isinstance(entry, dict):
            raise CorpusError(f"{where}: not an object")
        eid = entry.get("id")
        if not isinstance(eid, str) or not eid:
            raise CorpusError(f"{where}: missing id")
        if eid in seen:
            raise CorpusError(f"duplicate corpus id {eid!r}")
        seen.add(eid)
        if not isinstance(entry.get("poly"), str) or not entry["poly"].strip():
            raise CorpusError(f"{eid}: missing polynomial text")
        if "vars" in entry and (
            not isinstance(entry["vars"], list)
            or not all(isinstance(v, str) for v in entry["vars"])
        ):
            raise CorpusError(f"{eid}: vars must be a list of names")
        if "seed" in entry and not isinstance(entry["seed"], int):
            raise CorpusError(f"{eid}: seed must be an integer")
        expected = entry.get("expected", {})
        if not isinstance(expected, dict):
            raise CorpusError(f"{eid}: expected must be a map")
        for key in expected:
            if key not in SUPPORTED_KEYS:
                raise CorpusError(f"{eid}: unknown expected key {key!r}")
        if expected:
            prov = entry.get("provenance")
            if isinstance(prov, str):
                if prov not in PROVENANCE_KINDS:
                    raise CorpusError(f"{eid}: unknown provenance {prov!r}")
            elif isinstance(prov, dict):
                for key in expected:
                    kind = prov.get(key)
                    if kind not in PROVENANCE_KINDS:
                        raise CorpusError(
                            f"{eid}: expected key {key!r} lacks a valid "
                            f"provenance note"
                        )
            else:
                raise CorpusError(
                    f"{eid}: expected values need a provenance note"
                )
        entries.append(entry)
    return entries


def _extract(payload: dict, key: str):
    inv = payload.get("invariants") or {}
    orc = payload.get("transversal_oracle") or {}
    if key in ("s", "verdict", "lambda_s_generic", "le_cycle_multiplicity",
               "frames_sampled"):
        return payload.get(key)
    if key in ("mu0_f0", "gamma_dot_V", "lambda_s", "gamma_is_zero",
               "gamma1", "lambda0", "tau"):
        return inv.get(key)
    if key == "milnor_number":
        return inv.get("mu0_f0")
    if key == "oracle_total":
        return orc.get("total")
    if key == "oracle_points":
        return orc.get("slice_points")
    if key == "mu_per_point":
        return orc.get("mu_per_point")
    if key == "mu_scan":
        scan = payload.get("mu_scan")
        return None if scan is None else [v for _, v in scan]
    if key == "statement_types":
        return [st["type"] for st in payload.get("betti_statements", [])]
    raise CorpusError(f"unknown expected key {key!r}")


class ResultCache:
    """Flat-file content-addressed store of analysis payloads."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    @staticmethod
    def key(material: dict) -> str:
        return hashlib.sha256(render_json(material).encode()).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def get(self, key: str) -> dict | None:
        try:
            with open(self._path(key), encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, key: str, payload: dict):
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(render_json(payload))
            os.replace(tmp, self._path(key))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def _cache_material(f_text: str, variables: tuple[str, ...], seed: int,
                    max_frames: int, max_steps: int | None) -> dict:
    return {
        "kind": "analysis",
        "schema": SCHEMA,
        "version": __version__,
        "polynomial": f_text,
        "variables": list(variables),
        "seed": seed,
        "max_frames": max_frames,
        "max_steps": max_steps,
    }


def run_entry(entry: dict, cache_dir: str | None = None,
              max_steps: int | None = None, max_frames: int = 8) -> dict:
    eid = entry["id"]
    try:
        text = entry["poly"]
        names = tuple(entry["vars"]) if "vars" in entry else infer_variables(text)
        ring = PolyRing(names)
        f = parse_polynomial(text, ring)
        seed = entry.get("seed", 0)

        cache = ResultCache(cache_dir) if cache_dir else None
        payload = None
        key = None
        if cache is not None:
            key = cache.key(_cache_material(str(f), ring.variables, seed,
                                            max_frames, max_steps))
            payload = cache.get(key)
        cached = payload is not None
        if payload is None:
            config = GenericityConfig(seed=seed, max_frames=max_frames,
                                      max_steps=max_steps)
            payload = analysis_payload(f, betti_report(f, config))
            if cache is not None:
                cache.put(key, payload)
    except LefiberError as exc:
        return {"id": eid, "status": "error",
                "error": error_payload(exc)["error"], "mismatches": []}

    mismatches = []
    for key_name, want in sorted(entry.get("expected", {}).items()):
        got = _extract(payload, key_name)
        if got != want:
            mismatches.append({"key": key_name, "expected": want, "actual": got})
    status = "pass" if not mismatches else "fail"
    return {"id": eid, "status": status, "mismatches": mismatches,
            "cached": cached, "report": payload}


def _worker(args) -> dict:
    entry, cache_dir, max_steps, max_frames = args
    return run_entry(entry, cache_dir, max_steps, max_frames)


def run_corpus(path: str, cache_dir: str | None = None, jobs: int = 1,
               max_steps: int | None = None, max_frames: int = 8) -> dict:
    entries = load_corpus(path)
    work = [(entry, cache_dir, max_steps, max_frames) for entry in entries]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_worker, work))
    else:
        results = [_worker(item) for item in work]

    compact = [
        {k: r[k] for k in ("id", "status", "mismatches") if k in r}
        | ({"error": r["error"]} if "error" in r else {})
        for r in results
    ]
    passed = sum(1 for r in results if r["status"] == "pass")
    failed = sum(1 for r in results if r["status"] == "fail")
    errors = sum(1 for r in results if r["status"] == "error")
    return {
        "schema": SCHEMA,
        "corpus": os.path.basename(path),
        "total": len(results),
        "passed": passed,
        "failed": failed,
        "errors": errors,
        "results": compact,
    }
