"""Bit-exact JSON encoding of schemes, graphs, states, and reports.

Rationals travel as reduced "num/den" strings so files round-trip
without any floating-point loss.  Documents are emitted with sorted
keys and deterministic list orders, so identical inputs produce
byte-identical payloads.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .amplitude import SqrtRational
from .discrimination import CanonicalBlock, DiscriminationGraph, SingleCopyState
from .exceptions import SchemaError
from .oracle import Composition
from .schemes import ProductScheme, Scheme, SchemeReport, WeightProfile


def fraction_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def fraction_from_str(text: Any) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise SchemaError(f"expected a 'num/den' string, got {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise SchemaError(f"zero denominator in {text!r}") from None


def _require_int(value: Any, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def scheme_to_doc(scheme: Scheme) -> dict:
    if isinstance(scheme, WeightProfile):
        weights = sorted(scheme.weights.items(), key=lambda kv: kv[0].counts, reverse=True)
        return {
            "kind": "entangled",
            "n": scheme.n,
            "t": scheme.t,
            "weights": [
                {"composition": list(comp.counts), "q": fraction_to_str(q)}
                for comp, q in weights
            ],
        }
    blocks = []
    for b in scheme.blocks:
        if not isinstance(b, CanonicalBlock):
            raise ValueError("only canonical-block schemes serialize to JSON")
        if b.kind == "pair":
            blocks.append({"type": "pair", "i": b.indices[0], "j": b.indices[1]})
        elif b.kind == "quad":
            a, bb, c, d = b.indices
            blocks.append({"type": "quad", "a": a, "b": bb, "c": c, "d": d})
        else:
            blocks.append({"type": "star", "i": b.indices[0]})
    return {"kind": "product", "n": scheme.n, "blocks": blocks}


def scheme_from_doc(doc: Any) -> Scheme:
    if not isinstance(doc, dict):
        raise SchemaError("scheme document must be a JSON object")
    kind = doc.get("kind")
    if kind == "product":
        return _product_from_doc(doc)
    if kind == "entangled":
        return _entangled_from_doc(doc)
    raise SchemaError(f"unknown scheme kind {kind!r}")


def _product_from_doc(doc: dict) -> ProductScheme:
    n = _require_int(doc.get("n"), "n")
    raw_blocks = doc.get("blocks")
    if not isinstance(raw_blocks, list):
        raise SchemaError("product scheme needs a 'blocks' list")
    blocks = []
    for entry in raw_blocks:
        if not isinstance(entry, dict):
            raise SchemaError(f"block entry must be an object, got {entry!r}")
        btype = entry.get("type")
        try:
            if btype == "pair":
                block = CanonicalBlock.pair(
                    _require_int(entry.get("i"), "pair i"),
                    _require_int(entry.get("j"), "pair j"),
                    n,
                )
            elif btype == "quad":
                block = CanonicalBlock.quad(
                    _require_int(entry.get("a"), "quad a"),
                    _require_int(entry.get("b"), "quad b"),
                    _require_int(entry.get("c"), "quad c"),
                    _require_int(entry.get("d"), "quad d"),
                    n,
                )
            elif btype == "star":
                block = CanonicalBlock.star(_require_int(entry.get("i"), "star i"), n)
            else:
                raise SchemaError(f"unknown block type {btype!r}")
        except ValueError as exc:
            raise SchemaError(f"bad block {entry!r}: {exc}") from None
        blocks.append(block)
    try:
        return ProductScheme(n, blocks)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def _entangled_from_doc(doc: dict) -> WeightProfile:
    n = _require_int(doc.get("n"), "n")
    t = _require_int(doc.get("t"), "t")
    raw_weights = doc.get("weights")
    if not isinstance(raw_weights, list) or not raw_weights:
        raise SchemaError("entangled scheme needs a nonempty 'weights' list")
    weights: dict[Composition, Fraction] = {}
    for entry in raw_weights:
        if not isinstance(entry, dict):
            raise SchemaError(f"weight entry must be an object, got {entry!r}")
        counts = entry.get("composition")
        if not isinstance(counts, list) or len(counts) != n:
            raise SchemaError(f"composition must be a list of {n} counts, got {counts!r}")
        counts = tuple(_require_int(c, "composition count") for c in counts)
        q = fraction_from_str(entry.get("q"))
        try:
            comp = Composition(counts)
        except ValueError as exc:
            raise SchemaError(f"bad composition {counts}: {exc}") from None
        if comp in weights:
            raise SchemaError(f"duplicate composition {list(counts)}")
        if q < 0:
            raise SchemaError(f"negative mass {fraction_to_str(q)} on {list(counts)}")
        weights[comp] = q
    try:
        return WeightProfile(n, t, weights)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def graph_to_doc(graph: DiscriminationGraph) -> dict:
    return {"n": graph.n, "edges": [list(e) for e in graph.sorted_edges()]}


def report_to_doc(report: SchemeReport) -> dict:
    doc: dict = {
        "valid": report.valid,
        "method": report.method,
        "failing_pairs": [list(d.pair) for d in report.failing_pairs],
    }
    if any(d.defect is not None for d in report.failing_pairs):
        doc["defects"] = [
            fraction_to_str(d.defect) if isinstance(d.defect, Fraction) else d.defect
            for d in report.failing_pairs
        ]
    return doc


def state_from_doc(doc: Any) -> SingleCopyState:
    """Parse a one-copy state file: exact entries carry a squared modulus
    "num/den" (optional sign), float entries carry re/im parts."""
    if not isinstance(doc, dict):
        raise SchemaError("state document must be a JSON object")
    n = _require_int(doc.get("n"), "n")
    raw_amps = doc.get("amps")
    if not isinstance(raw_amps, list) or not raw_amps:
        raise SchemaError("state needs a nonempty 'amps' list")
    amps: dict[int, Any] = {}
    for entry in raw_amps:
        if not isinstance(entry, dict):
            raise SchemaError(f"amp entry must be an object, got {entry!r}")
        i = _require_int(entry.get("i"), "amp index")
        if not 1 <= i <= n:
            raise SchemaError(f"amp index {i} out of range 1..{n}")
        if i in amps:
            raise SchemaError(f"duplicate amp index {i}")
        if "mag2" in entry:
            mag2 = fraction_from_str(entry["mag2"])
            if mag2 < 0:
                raise SchemaError(f"negative mag2 on index {i}")
            sign = entry.get("sign", 1)
            if sign not in (-1, 1):
                raise SchemaError(f"sign must be -1 or 1, got {sign!r}")
            amps[i] = SqrtRational.sqrt(mag2, sign)
        elif "re" in entry or "im" in entry:
            re = entry.get("re", 0.0)
            im = entry.get("im", 0.0)
            if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
                raise SchemaError(f"re/im must be numbers on index {i}")
            amps[i] = complex(re, im)
        else:
            raise SchemaError(f"amp entry for index {i} needs 'mag2' or 're'/'im'")
    try:
        return SingleCopyState(n, amps)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def dumps(doc: dict) -> str:
    """Canonical JSON text: sorted keys, two-space indent, newline at end."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
