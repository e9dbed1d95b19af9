"""Ring description documents (GRDF): JSON parsing, validation, canonical emission.

A document carries the ring (either an explicit product table with its two
group presentations, or a matrix-ring constructor from which the groups are
derived), plus optional frames, map pairs, and derivation tables.  Emission
is canonical (sorted keys, compact separators, trailing newline) so that
parse -> emit round-trips byte-identically on canonical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import GRDFError
from .groups import make_group
from .multmaps import DerivationTable, MapPair
from .peirce import IdempotentFrame, canonical_frame
from .rings import GammaRing, build_matrix_ring, build_table_ring


@dataclass
class GRDFDocument:
    ring: GammaRing
    frame_specs: list = field(default_factory=list)
    maps: list = field(default_factory=list)
    derivations: list = field(default_factory=list)

    def build_frames(self) -> list:
        """Materialize frame specs; canonical specs are verified on the spot."""
        out = []
        for spec in self.frame_specs:
            if spec["mode"] == "canonical":
                out.append(canonical_frame(self.ring, spec["e"], spec["gamma1"], spec["unity"]))
            else:
                # deferred validation: the condition checkers report violations
                out.append(IdempotentFrame(self.ring, spec["e"], spec["gamma1"],
                                           np.asarray(spec["left_f"], dtype=np.int32),
                                           np.asarray(spec["right_f"], dtype=np.int32)))
        return out

    def to_dict(self) -> dict:
        doc = document_dict(self.ring, maps=self.maps, derivations=self.derivations)
        if self.frame_specs:
            doc["frames"] = [dict(spec) for spec in self.frame_specs]
        return doc


def _need(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise GRDFError(f"{where}: missing required key {key!r}")
    val = obj[key]
    if kind is int and isinstance(val, bool):
        raise GRDFError(f"{where}: key {key!r} must be an integer")
    if not isinstance(val, kind):
        raise GRDFError(f"{where}: key {key!r} has wrong type {type(val).__name__}")
    return val


def _int_list(val, where: str) -> list:
    if not isinstance(val, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in val):
        raise GRDFError(f"{where}: expected a flat list of integers")
    return val


def parse_grdf(text: str) -> GRDFDocument:
    """Parse and structurally validate a GRDF JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as ex:
        raise GRDFError(f"invalid JSON: {ex}") from None
    if not isinstance(doc, dict):
        raise GRDFError("document root must be a JSON object")

    product = _need(doc, "product", dict, "document")
    ptype = _need(product, "type", str, "product")
    if ptype == "matrix":
        for key in ("m_group", "gamma_group", "nu"):
            if key in doc:
                raise GRDFError(f"matrix products derive {key!r}; do not specify it")
        mod = _need(product, "mod", int, "product")
        rows = _need(product, "rows", int, "product")
        cols = _need(product, "cols", int, "product")
        try:
            ring = build_matrix_ring(mod, rows, cols)
        except ValueError as ex:
            raise GRDFError(f"matrix product: {ex}") from None
    elif ptype == "table":
        mg = _need(doc, "m_group", dict, "document")
        gg = _need(doc, "gamma_group", dict, "document")
        try:
            m_group = make_group(_int_list(_need(mg, "invariants", list, "m_group"), "m_group"))
            gamma_group = make_group(_int_list(_need(gg, "invariants", list, "gamma_group"),
                                               "gamma_group"))
            entries = _need(product, "entries", list, "product")
            nu = doc.get("nu")
            ring = build_table_ring(m_group, gamma_group, entries, nu)
        except ValueError as ex:
            raise GRDFError(f"table product: {ex}") from None
    else:
        raise GRDFError(f"unknown product type {ptype!r}")

    frame_specs = []
    for i, fr in enumerate(doc.get("frames", [])):
        where = f"frames[{i}]"
        if not isinstance(fr, dict):
            raise GRDFError(f"{where}: must be an object")
        mode = _need(fr, "mode", str, where)
        e = _need(fr, "e", int, where)
        g1 = _need(fr, "gamma1", int, where)
        if not 0 <= e < ring.m_order or not 0 <= g1 < ring.gamma_order:
            raise GRDFError(f"{where}: e/gamma1 out of range")
        if mode == "canonical":
            unity = _need(fr, "unity", int, where)
            if not 0 <= unity < ring.m_order:
                raise GRDFError(f"{where}: unity out of range")
            frame_specs.append({"mode": mode, "e": e, "gamma1": g1, "unity": unity})
        elif mode == "custom":
            lf = _need(fr, "left_f", list, where)
            rf = _need(fr, "right_f", list, where)
            lfa = np.asarray(lf, dtype=np.int64)
            rfa = np.asarray(rf, dtype=np.int64)
            if lfa.shape != (ring.gamma_order, ring.m_order) or \
               rfa.shape != (ring.m_order, ring.gamma_order):
                raise GRDFError(f"{where}: frame table dimensions are wrong")
            if lfa.min(initial=0) < 0 or lfa.max(initial=0) >= ring.m_order or \
               rfa.min(initial=0) < 0 or rfa.max(initial=0) >= ring.m_order:
                raise GRDFError(f"{where}: frame table entries out of range")
            frame_specs.append({"mode": mode, "e": e, "gamma1": g1,
                                "left_f": lf, "right_f": rf})
        else:
            raise GRDFError(f"{where}: unknown mode {mode!r}")

    maps = []
    for i, mp in enumerate(doc.get("maps", [])):
        where = f"maps[{i}]"
        if not isinstance(mp, dict):
            raise GRDFError(f"{where}: must be an object")
        phi = _int_list(_need(mp, "phi", list, where), where)
        psi = _int_list(_need(mp, "psi", list, where), where)
        try:
            maps.append(MapPair(ring, ring, np.asarray(phi), np.asarray(psi)))
        except ValueError as ex:
            raise GRDFError(f"{where}: {ex}") from None

    derivations = []
    for i, dv in enumerate(doc.get("derivations", [])):
        where = f"derivations[{i}]"
        if not isinstance(dv, dict):
            raise GRDFError(f"{where}: must be an object")
        d = _int_list(_need(dv, "d", list, where), where)
        try:
            derivations.append(DerivationTable(ring, np.asarray(d)))
        except ValueError as ex:
            raise GRDFError(f"{where}: {ex}") from None

    return GRDFDocument(ring, frame_specs, maps, derivations)


def load_grdf(path: str) -> GRDFDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as ex:
        raise GRDFError(f"cannot read {path}: {ex}") from None
    return parse_grdf(text)


def document_dict(ring: GammaRing, frames=None, maps=None, derivations=None) -> dict:
    """Canonical document dictionary for a ring and optional attachments."""
    doc: dict = {}
    desc = ring.descriptor
    if desc.get("type") == "matrix":
        doc["product"] = {"type": "matrix", "mod": desc["mod"],
                          "rows": desc["rows"], "cols": desc["cols"]}
    else:
        doc["m_group"] = {"invariants": list(ring.m_group.factors)}
        doc["gamma_group"] = {"invariants": list(ring.gamma_group.factors)}
        doc["product"] = {"type": "table", "entries": ring.mu.tolist()}
        if ring.nu is not None:
            doc["nu"] = ring.nu.tolist()
    if frames:
        out = []
        for fr in frames:
            if fr.provenance == "canonical-from-unity" and fr.unity is not None:
                out.append({"mode": "canonical", "e": fr.e, "gamma1": fr.gamma1,
                            "unity": fr.unity})
            else:
                out.append({"mode": "custom", "e": fr.e, "gamma1": fr.gamma1,
                            "left_f": fr.left_f.tolist(), "right_f": fr.right_f.tolist()})
        doc["frames"] = out
    if maps:
        doc["maps"] = [{"phi": [int(v) for v in p.phi], "psi": [int(v) for v in p.psi]}
                       for p in maps]
    if derivations:
        doc["derivations"] = [{"d": [int(v) for v in d.d]} for d in derivations]
    return doc


def emit_grdf(doc: dict) -> str:
    """Canonical serialization: sorted keys, compact separators, one trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
