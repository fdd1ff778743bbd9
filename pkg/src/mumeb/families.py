"""JSON persistence for generator families and verification reports.

A family file is {"header": {...}, "d": int, "k": int, "ring": {...},
"generators": [{"label": str, "matrix": [[[re, im], ...], ...]}, ...],
"metadata": {...}}.  The header carries volatile fields (timestamps, tool
version) and is excluded from determinism comparisons; everything else is
written with sorted keys so equal payloads are byte-identical.
"""

import json
import time

import numpy as np

from . import fields
from .construct import MEBFamily


class SchemaError(ValueError):
    """The file parses as JSON but does not describe a family."""


def matrix_to_json(mat):
    mat = np.asarray(mat, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in mat]


def matrix_from_json(rows, size, label):
    if not isinstance(rows, list) or len(rows) != size:
        raise SchemaError(f"generator {label}: matrix must have {size} rows")
    out = np.empty((size, size), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != size:
            raise SchemaError(f"generator {label}: row {i} must have {size} entries")
        for j, cell in enumerate(row):
            if (not isinstance(cell, list) or len(cell) != 2
                    or not all(isinstance(v, (int, float)) for v in cell)):
                raise SchemaError(f"generator {label}: entry ({i},{j}) must be [re, im]")
            out[i, j] = complex(cell[0], cell[1])
    return out


def family_to_dict(family):
    return {
        "d": family.d,
        "k": family.k,
        "ring": family.ring.descriptor(),
        "generators": [{"label": label, "matrix": matrix_to_json(mat)}
                       for label, mat in family.generators],
        "metadata": family.metadata,
    }


def family_from_dict(payload):
    if not isinstance(payload, dict):
        raise SchemaError("top level must be an object")
    for key in ("d", "k", "ring", "generators"):
        if key not in payload:
            raise SchemaError(f"missing required key {key!r}")
    d, k = payload["d"], payload["k"]
    if not isinstance(d, int) or not isinstance(k, int) or d < 2 or k < 1:
        raise SchemaError("d and k must be integers with d >= 2, k >= 1")
    ring_desc = payload["ring"]
    if not isinstance(ring_desc, dict) or "factors" not in ring_desc:
        raise SchemaError("ring must be an object with a factors list")
    try:
        ring = fields.ring_from_descriptor(ring_desc)
    except (ValueError, KeyError, TypeError) as exc:
        raise SchemaError(f"bad ring descriptor: {exc}") from exc
    if ring.d != d:
        raise SchemaError(f"ring size {ring.d} does not match d={d}")
    gens_json = payload["generators"]
    if not isinstance(gens_json, list) or not gens_json:
        raise SchemaError("generators must be a nonempty list")
    generators = []
    for entry in gens_json:
        if not isinstance(entry, dict) or "label" not in entry or "matrix" not in entry:
            raise SchemaError("each generator needs a label and a matrix")
        label = entry["label"]
        generators.append((label, matrix_from_json(entry["matrix"], k * d, label)))
    labels = [lab for lab, _ in generators]
    if len(set(labels)) != len(labels):
        raise SchemaError("generator labels must be unique")
    # unitarity is a verification concern, not a schema one: load permissively
    # so certification can report a tampered generator by name
    return MEBFamily(d, k, ring, generators, payload.get("metadata"),
                     validate_unitarity=False)


def _header(extra=None):
    head = {"created": time.strftime("%Y-%m-%dT%H:%M:%S%z"), "tool": "mumeb 0.1.0"}
    if extra:
        head.update(extra)
    return head


def save_family(family, path, header_extra=None):
    doc = {"header": _header(header_extra)}
    doc.update(family_to_dict(family))
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def load_family(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    if isinstance(payload, dict):
        payload.pop("header", None)
    return family_from_dict(payload)


def save_report(report, path, header_extra=None):
    doc = {"header": _header(header_extra)}
    body = report.to_dict()
    wall = body.pop("wall_time_s")
    doc["header"]["wall_time_s"] = wall
    doc.update(body)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")
