"""Strict JSON persistence for bodies, gamma functions, and reports.

Documents carry schema_version 1 and a kind tag; unknown fields are
rejected so regression corpora stay honest.  Floats are serialized via
Python's shortest round-trip repr, which is lossless for IEEE-754 doubles;
loading re-runs full body validation, so a hand-edited document that breaks
an invariant fails with the invariant's name.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .body import BoundarySegment, SphericalBody
from .errors import InvariantViolation, ParseError
from .metrics import ClassifyReport
from .wulff import GammaFn

SCHEMA_VERSION = 1
BODY_KINDS = ("polygon", "arc_boundary", "cap")


def _vec(x, name: str) -> list[float]:
    seq = list(x)
    if len(seq) != 3:
        raise ParseError(f"{name} must have 3 components")
    out = [float(c) for c in seq]
    if not all(math.isfinite(c) for c in out):
        raise ParseError(f"{name} has a non-finite component")
    return out


def _unit(x, name: str) -> np.ndarray:
    arr = np.asarray(_vec(x, name), dtype=float)
    nrm = float(np.linalg.norm(arr))
    if abs(nrm - 1.0) > 1e-9:
        raise InvariantViolation(f"{name}: unit norm violated, |v| = {nrm!r}")
    return arr


def _finite(x, name: str) -> float:
    v = float(x)
    if not math.isfinite(v):
        raise ParseError(f"{name} is not finite")
    return v


def _check_keys(d: dict, required: set, optional: set, where: str) -> None:
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object")
    keys = set(d)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise ParseError(f"{where}: missing fields {sorted(missing)}")
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")


def _check_version(doc: dict, where: str) -> None:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ParseError(
            f"{where}: schema_version must be {SCHEMA_VERSION}, "
            f"got {doc.get('schema_version')!r}")


def _dump(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return doc


# -- bodies -----------------------------------------------------------------


def body_kind(body: SphericalBody) -> str:
    if len(body.segments) == 1 and body.segments[0].is_full_circle:
        return "cap"
    return "polygon" if body.is_polygon else "arc_boundary"


def body_to_doc(body: SphericalBody) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": body_kind(body),
        "vertices": [_vec(v, "vertex") for v in body.vertices],
        "segments": [{
            "center": _vec(seg.center, "segment center"),
            "radius": _finite(seg.radius, "segment radius"),
            "from": _vec(seg.start, "segment start"),
            "to": _vec(seg.end, "segment end"),
        } for seg in body.segments],
        "metadata": body.meta,
    }


def body_from_doc(doc: dict, where: str = "body document") -> SphericalBody:
    _check_keys(doc, {"schema_version", "kind", "vertices", "segments"},
                {"metadata"}, where)
    _check_version(doc, where)
    kind = doc["kind"]
    if kind not in BODY_KINDS:
        raise ParseError(f"{where}: kind must be one of {BODY_KINDS}, got {kind!r}")
    segs = []
    for i, sd in enumerate(doc["segments"]):
        _check_keys(sd, {"center", "radius", "from", "to"}, set(),
                    f"{where}: segment {i}")
        segs.append(BoundarySegment(
            center=_unit(sd["center"], f"{where}: segment {i} center"),
            radius=_finite(sd["radius"], "radius"),
            start=_unit(sd["from"], f"{where}: segment {i} from"),
            end=_unit(sd["to"], f"{where}: segment {i} to")))
    for i, v in enumerate(doc["vertices"]):
        _unit(v, f"{where}: vertex {i}")
    body = SphericalBody(segs, meta=doc.get("metadata") or {})
    actual = body_kind(body)
    if actual != kind:
        raise ParseError(f"{where}: kind {kind!r} but segments describe {actual!r}")
    return body


def save_body(body: SphericalBody, path: str) -> None:
    _dump(body_to_doc(body), path)


def load_body(path: str) -> SphericalBody:
    return body_from_doc(_load(path), where=path)


# -- gamma ------------------------------------------------------------------


def gamma_to_doc(gamma: GammaFn) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "gamma",
        "samples": [[float(a), float(v)]
                    for a, v in zip(gamma.angles, gamma.values)],
    }


def gamma_from_doc(doc: dict, where: str = "gamma document") -> GammaFn:
    _check_keys(doc, {"schema_version", "kind", "samples"}, set(), where)
    _check_version(doc, where)
    if doc["kind"] != "gamma":
        raise ParseError(f"{where}: kind must be 'gamma', got {doc['kind']!r}")
    angles, values = [], []
    for i, pair in enumerate(doc["samples"]):
        seq = list(pair)
        if len(seq) != 2:
            raise ParseError(f"{where}: sample {i} must be [angle, value]")
        angles.append(_finite(seq[0], f"sample {i} angle"))
        values.append(_finite(seq[1], f"sample {i} value"))
    return GammaFn(np.array(angles), np.array(values))


def save_gamma(gamma: GammaFn, path: str) -> None:
    _dump(gamma_to_doc(gamma), path)


def load_gamma(path: str) -> GammaFn:
    return gamma_from_doc(_load(path), where=path)


# -- reports ----------------------------------------------------------------


def report_to_doc(report: ClassifyReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "report",
        "thickness": _finite(report.thickness.value, "thickness"),
        "diameter": _finite(report.diameter.value, "diameter"),
        "verdicts": {
            "constant_width": report.constant_width.to_dict(),
            "constant_diameter": report.constant_diameter.to_dict(),
            "reduced": report.reduced.to_dict(),
        },
        "theorem_checks": {k: bool(v) for k, v in report.checks.items()},
    }


def report_from_doc(doc: dict, where: str = "report document") -> dict:
    """Validate a report document and return it as a plain dict."""
    _check_keys(doc, {"schema_version", "kind", "thickness", "diameter",
                      "verdicts", "theorem_checks"}, set(), where)
    _check_version(doc, where)
    if doc["kind"] != "report":
        raise ParseError(f"{where}: kind must be 'report', got {doc['kind']!r}")
    _finite(doc["thickness"], "thickness")
    _finite(doc["diameter"], "diameter")
    for name, v in doc["verdicts"].items():
        _check_keys(v, {"kind", "pass", "deviation", "tolerance", "witness"},
                    set(), f"{where}: verdict {name}")
        _finite(v["deviation"], f"verdict {name} deviation")
        _finite(v["tolerance"], f"verdict {name} tolerance")
    for name, v in doc["theorem_checks"].items():
        if not isinstance(v, bool):
            raise ParseError(f"{where}: theorem check {name} must be boolean")
    return doc


def save_report(report: ClassifyReport, path: str) -> None:
    _dump(report_to_doc(report), path)


def load_report(path: str) -> dict:
    return report_from_doc(_load(path), where=path)


def load_document(path: str) -> dict:
    """Load any document and dispatch on its kind tag (for the CLI)."""
    doc = _load(path)
    kind = doc.get("kind")
    if kind in BODY_KINDS:
        return {"kind": "body", "body": body_from_doc(doc, where=path)}
    if kind == "gamma":
        return {"kind": "gamma", "gamma": gamma_from_doc(doc, where=path)}
    if kind == "report":
        return {"kind": "report", "report": report_from_doc(doc, where=path)}
    raise ParseError(f"{path}: unrecognized document kind {kind!r}")
