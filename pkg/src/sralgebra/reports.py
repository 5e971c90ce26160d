"""JSON serialization of results and a content-addressed cache for
functional spaces (the expensive part of every experiment)."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import __version__
from .algebra import SRAlgebra
from .errors import InternalError
from .functionals import LinearFunctional, TraceSpace, trace_space
from .linalg import Subspace

SCHEMA = "sralgebra.report/1"
CACHE_SCHEMA = "sralgebra.cache/1"
CACHE_ENV = "SRALGEBRA_CACHE"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def monomial_text(H: SRAlgebra, mono) -> str:
    text = H.format_monomial(mono)
    back = H.parse(text)
    if back.terms != {mono: H.field.one}:
        raise InternalError(f"monomial {text!r} does not round-trip")
    return text


def element_text(H: SRAlgebra, x) -> str:
    text = H.format(x)
    if H.parse(text) != x:
        raise InternalError(f"element {text!r} does not round-trip")
    return text


def sparse_vector(H: SRAlgebra, vec: dict, order=None) -> list:
    keys = sorted(vec, key=H.sort_key) if order is None else [m for m in order if m in vec]
    return [[monomial_text(H, m), str(vec[m])] for m in keys]


def functional_json(t: LinearFunctional) -> dict:
    H = t.algebra
    return {
        "id": t.label,
        "kind": t.kind,
        "degree": t.degree,
        "provenance": t.provenance,
        "values": sparse_vector(H, t.values),
    }


def subspace_json(H: SRAlgebra, S: Subspace) -> dict:
    return {"dim": S.dim, "basis": [sparse_vector(H, dict(r)) for r in S.rows]}


def space_json(space: TraceSpace) -> dict:
    return {
        "kind": space.kind,
        "degree": space.degree,
        "strategy": space.strategy,
        "dim": space.dim,
        "certificate": _plain(space.certificate),
        "functionals": [functional_json(t) for t in space.functionals],
    }


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


# -- cache ----------------------------------------------------------------------

class Cache:
    """Directory of JSON files keyed by a hash of the computation's inputs."""

    def __init__(self, path):
        self.path = Path(path)

    @classmethod
    def from_env(cls, explicit=None):
        path = explicit or os.environ.get(CACHE_ENV)
        return cls(path) if path else None

    @staticmethod
    def key(payload: dict) -> str:
        blob = json.dumps({"code": __version__, "schema": CACHE_SCHEMA, **payload}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def get(self, payload: dict):
        f = self.path / f"{self.key(payload)}.json"
        if not f.exists():
            return None
        try:
            data = json.loads(f.read_text())
        except (OSError, ValueError):
            return None
        if data.get("schema") != CACHE_SCHEMA or data.get("code") != __version__ or data.get("input") != payload:
            return None
        return data["result"]

    def put(self, payload: dict, result) -> None:
        self.path.mkdir(parents=True, exist_ok=True)
        f = self.path / f"{self.key(payload)}.json"
        tmp = f.with_suffix(".tmp")
        tmp.write_text(json.dumps({"schema": CACHE_SCHEMA, "code": __version__, "input": payload, "result": result}))
        os.replace(tmp, f)


def _mono_key(H, mono):
    d0, d1, g = mono
    return [list(d0), list(d1), H.group.elements[g].label]


def _mono_from_key(H, key):
    labels = {el.label: el.index for el in H.group.elements}
    return (tuple(key[0]), tuple(key[1]), labels[key[2]])


def cached_trace_space(H: SRAlgebra, kind: str, D: int, strategy: str, margin_max: int = 6, cache: Cache | None = None) -> TraceSpace:
    """trace_space with an optional on-disk cache; results are identical either way."""
    payload = {
        "group": H.rs.name,
        "eta": [str(H.rs.eta[c]) for c in H.rs.reflection_classes],
        "kind": kind,
        "D": D,
        "strategy": strategy,
        "margin_max": margin_max,
    }
    if cache is not None:
        hit = cache.get(payload)
        if hit is not None:
            return _space_from_cache(H, hit)
    space = trace_space(H, kind, D, strategy, margin_max)
    if cache is not None:
        cache.put(payload, _space_to_cache(H, space))
    return space


def _space_to_cache(H, space):
    index = {m: k for k, m in enumerate(space.subspace.columns)}
    return {
        "kind": space.kind,
        "degree": space.degree,
        "strategy": space.strategy,
        "certificate": _plain(space.certificate),
        "columns": [_mono_key(H, m) for m in space.subspace.columns],
        "rows": [[[index[m], str(v)] for m, v in row] for row in space.subspace.rows],
    }


def _space_from_cache(H, data):
    cols = [_mono_from_key(H, k) for k in data["columns"]]
    field = H.field
    rows = tuple(tuple((cols[k], field.scalar(v)) for k, v in row) for row in data["rows"])
    sub = Subspace(tuple(cols), rows)
    kind, D, strategy = data["kind"], data["degree"], data["strategy"]
    fns = [LinearFunctional(kind, D, dict(r), strategy, H, f"{kind}[{k}]") for k, r in enumerate(rows)]
    return TraceSpace(kind, D, strategy, fns, sub, data["certificate"])
