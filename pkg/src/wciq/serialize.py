"""Canonical JSON encoding for every exchanged object.

One rule everywhere: UTF-8, sorted keys, two-space indent, LF endings,
single trailing newline. Integers that exceed the double-precision safe
range are written as decimal strings so consumers in other languages can
read the files; loads accept both forms.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from wciq.arith import DegreeTuple, WeightTuple, as_degrees, as_weights
from wciq.complexes import Complex, SRPresentation, WeightedComplex
from wciq.errors import InputError
from wciq.maps import AdmissibleFamily
from wciq.nef import NefPartition
from wciq.realize import RealizationResult

_SAFE_INT = 1 << 53


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def encode_int(n: int) -> int | str:
    return n if abs(n) < _SAFE_INT else str(n)


def decode_int(value, what: str) -> int:
    if isinstance(value, bool):
        raise InputError(f"{what} must be an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        body = value[1:] if value.startswith("-") else value
        if body.isdigit():
            return int(value)
    raise InputError(f"{what} must be an integer or decimal string, got {value!r}")


def load_json(text: str, what: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from exc


def pair_to_json(weights, degrees) -> dict:
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    return {
        "weights": [encode_int(a) for a in wt],
        "degrees": [encode_int(d) for d in dg],
    }


def pair_from_json(data: Any) -> tuple[WeightTuple, DegreeTuple]:
    if not isinstance(data, Mapping):
        raise InputError(f"pair must be a JSON object, got {type(data).__name__}")
    if "weights" not in data:
        raise InputError('pair is missing the "weights" key')
    raw_w = data["weights"]
    raw_d = data.get("degrees", [])
    if not isinstance(raw_w, list) or not isinstance(raw_d, list):
        raise InputError('"weights" and "degrees" must be JSON arrays')
    weights = WeightTuple.of(decode_int(v, "weight") for v in raw_w)
    degrees = DegreeTuple.of(decode_int(v, "degree") for v in raw_d)
    return weights, degrees


def complex_to_json(cx: Complex) -> dict:
    return {
        "n_vertices": cx.n_vertices,
        "facets": [list(f) for f in cx.sorted_facets()],
    }


def complex_from_json(data: Any) -> Complex:
    if not isinstance(data, Mapping) or "n_vertices" not in data or "facets" not in data:
        raise InputError('complex must be an object with "n_vertices" and "facets"')
    n = data["n_vertices"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError(f'"n_vertices" must be an integer, got {n!r}')
    facets = data["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise InputError('"facets" must be an array of vertex arrays')
    return Complex.from_facets(
        n, [[decode_int(v, "vertex") for v in f] for f in facets])


def weighted_complex_to_json(wc: WeightedComplex) -> dict:
    out = complex_to_json(wc.complex)
    out["vertex_weights"] = {
        str(v): encode_int(w) for v, w in sorted(wc.vertex_weights.items())}
    return out


def sr_to_json(sr: SRPresentation) -> dict:
    return {
        "vertices": list(sr.vertices),
        "degrees": [encode_int(d) for d in sr.variable_degrees],
        "generators": [list(g) for g in sr.generators],
    }


def family_to_json(fam: AdmissibleFamily) -> dict:
    return {
        "im_phi": [encode_int(b) for b in fam.im_phi],
        "injections": {
            str(b): {str(i): j for i, j in sorted(fam.injections[b].items())}
            for b in fam.im_phi
        },
    }


def family_from_json(data: Any, weights) -> AdmissibleFamily:
    """Domains are a function of the weights, so only the injections
    travel; the weights rebuild the rest."""
    if not isinstance(data, Mapping) or "im_phi" not in data or "injections" not in data:
        raise InputError('family must be an object with "im_phi" and "injections"')
    wt = as_weights(weights)
    im_phi = tuple(decode_int(b, "face weight") for b in data["im_phi"])
    injections_raw = data["injections"]
    if not isinstance(injections_raw, Mapping):
        raise InputError('"injections" must be an object')
    domains = {}
    injections = {}
    for b in im_phi:
        domains[b] = tuple(i for i, a in enumerate(wt) if a % b == 0)
        raw = injections_raw.get(str(b))
        if not isinstance(raw, Mapping):
            raise InputError(f"missing injection table for face weight {b}")
        try:
            injections[b] = {int(i): decode_int(j, "degree index")
                             for i, j in raw.items()}
        except ValueError as exc:
            raise InputError(f"bad vertex key in injection table for {b}") from exc
    return AdmissibleFamily(im_phi, domains, injections)


def partition_to_json(partition: NefPartition) -> dict:
    return {"parts": [list(p) for p in partition.parts]}


def partition_from_json(data: Any) -> NefPartition:
    if not isinstance(data, Mapping) or "parts" not in data:
        raise InputError('partition must be an object with "parts"')
    parts = data["parts"]
    if not isinstance(parts, list) or not all(isinstance(p, list) for p in parts):
        raise InputError('"parts" must be an array of index arrays')
    return NefPartition(tuple(
        tuple(decode_int(i, "index") for i in p) for p in parts))


def realization_to_json(res: RealizationResult) -> dict:
    return {
        "weights": [str(a) for a in res.weights],
        "prime_assignment": {
            ",".join(str(v) for v in sorted(f)): p
            for f, p in sorted(res.prime_assignment.items(),
                               key=lambda kv: sorted(kv[0]))
        },
    }
