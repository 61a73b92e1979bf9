"""JSON documents, polynomial text, DOT export and the bundled corpus."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from typing import Any

import jsonschema

from .adinkra import DOWN, Adinkra, Edge, Parity, Vertex
from .complexes import ChainMap, FreeComplex, MatrixFactorization
from .exactalg import Poly, PolyMatrix, VariableSet

SCHEMA_VERSION = 1


class FormatError(ValueError):
    """Text that is not JSON, or a polynomial that does not parse."""


class SchemaError(FormatError):
    """Well-formed JSON that violates the document schema."""


# ---------------------------------------------------------------------------
# polynomials as text

_TOKEN = re.compile(r"\s*([+-]?)\s*([^+-]+)")
_FACTOR = re.compile(r"^([a-z]\d+\*?)(?:\^(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def parse_poly(sig: VariableSet, text: str) -> Poly:
    """Read ``"l1 - 2*m1^2 + r1*r1*"``-style text; names come from the signature."""
    names = {name: k for k, name in enumerate(sig.variable_names())}
    n = sig.n_vars
    s = str(text).strip()
    if not s:
        raise FormatError("empty polynomial")
    if s == "0":
        return Poly.zero(n)
    total = Poly.zero(n)
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or not m.group(2).strip():
            raise FormatError(f"cannot parse {text!r} at offset {pos}")
        sign = -1 if m.group(1) == "-" else 1
        total = total + _parse_term(m.group(2).strip(), names, n, text) * sign
        pos = m.end()
    return total


_PIECE = re.compile(r"(\d+(?:/\d+)?)|([a-z]\d+)")


def _split_factors(term: str) -> list[str]:
    """Split on ``*``; a ``*`` right after a name stars it unless another factor follows."""
    out = []
    k = 0
    while k < len(term):
        m = _PIECE.match(term, k)
        if not m:
            raise FormatError(f"cannot read {term[k:]!r}")
        piece, k = m.group(0), m.end()
        if m.group(2) and k < len(term) and term[k] == "*" and (k + 1 == len(term) or term[k + 1] in "*^"):
            piece += "*"
            k += 1
        e = re.match(r"\^\d+", term[k:])
        if e:
            piece += e.group(0)
            k += e.end()
        out.append(piece)
        if k < len(term):
            if term[k] != "*":
                raise FormatError(f"expected '*' in {term!r}")
            k += 1
    return out


def _parse_term(term: str, names: dict[str, int], n: int, text: str) -> Poly:
    coeff = Fraction(1)
    exps = [0] * n
    for factor in _split_factors(term.replace(" ", "")):
        if _NUMBER.match(factor):
            coeff *= Fraction(factor)
            continue
        m = _FACTOR.match(factor)
        if not m or m.group(1) not in names:
            raise FormatError(f"unknown factor {factor!r} in {text!r}")
        exps[names[m.group(1)]] += int(m.group(2) or 1)
    return Poly(n, {tuple(exps): coeff})


def format_poly(sig: VariableSet, p: Poly) -> str:
    return p.to_str(sig.variable_names())


def matrix_to_json(sig: VariableSet, m: PolyMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[format_poly(sig, e) for e in row] for row in m.entries()]}


def matrix_from_json(sig: VariableSet, raw: dict) -> PolyMatrix:
    grid = [[parse_poly(sig, e) for e in row] for row in raw["entries"]]
    if len(grid) != raw["rows"] or any(len(r) != raw["cols"] for r in grid):
        raise SchemaError(f"matrix entries do not match the declared {raw['rows']}x{raw['cols']} shape")
    return PolyMatrix(sig.n_vars, grid, raw["rows"], raw["cols"])


# ---------------------------------------------------------------------------
# schemas

_SIGNATURE = {
    "type": "object",
    "required": ["n_lambda", "n_mu", "n_rho"],
    "additionalProperties": False,
    "properties": {k: {"type": "integer", "minimum": 0} for k in ("n_lambda", "n_mu", "n_rho")},
}

_MATRIX = {
    "type": "object",
    "required": ["rows", "cols", "entries"],
    "additionalProperties": False,
    "properties": {
        "rows": {"type": "integer", "minimum": 0},
        "cols": {"type": "integer", "minimum": 0},
        "entries": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
    },
}

ADINKRA_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "AdinkraDocument",
    "type": "object",
    "required": ["signature", "vertices", "edges"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "signature": _SIGNATURE,
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "parity", "height"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "parity": {"enum": ["boson", "fermion"]},
                    "height": {"type": "integer"},
                },
            },
        },
        "edges": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["u", "v", "color"],
                "additionalProperties": False,
                "properties": {
                    "u": {"type": "string"},
                    "v": {"type": "string"},
                    "color": {"type": "integer", "minimum": 1},
                    "dash": {"enum": [1, -1]},
                    "arrow": {"enum": [1, -1]},
                },
            },
        },
        "metadata": {
            "type": "object",
            "properties": {"name": {"type": "string"}, "paper_figure": {"type": "string"}},
        },
    },
}

COMPLEX_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FreeComplexDocument",
    "type": "object",
    "required": ["kind", "signature", "ring", "modules", "differentials"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "free_complex"},
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "signature": _SIGNATURE,
        "ring": {"enum": ["R", "RmodQ"]},
        "modules": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "shifts"],
                "additionalProperties": False,
                "properties": {
                    "degree": {"type": "integer"},
                    "shifts": {"type": "array", "items": {"type": "integer"}},
                    "labels": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "differentials": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "matrix"],
                "additionalProperties": False,
                "properties": {"degree": {"type": "integer"}, "matrix": _MATRIX},
            },
        },
    },
}

MF_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "MatrixFactorizationDocument",
    "type": "object",
    "required": ["kind", "signature", "psi", "phi"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "matrix_factorization"},
        "schema_version": {"const": SCHEMA_VERSION},
        "signature": _SIGNATURE,
        "psi": _MATRIX,
        "phi": _MATRIX,
    },
}

_ENDPOINT = {"type": "object", "minProperties": 1, "maxProperties": 1,
             "properties": {"adinkra": {"type": "object"}, "complex": {"type": "object"}}}

CHAIN_MAP_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ChainMapDocument",
    "type": "object",
    "required": ["kind", "source", "target", "shift", "maps"],
    "additionalProperties": False,
    "properties": {
        "kind": {"const": "chain_map"},
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "paper_figure": {"type": "string"},
        "source": _ENDPOINT,
        "target": _ENDPOINT,
        "shift": {"type": "integer"},
        "maps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["degree", "matrix"],
                "additionalProperties": False,
                "properties": {"degree": {"type": "integer"}, "matrix": _MATRIX},
            },
        },
    },
}


def _check(raw: Any, schema: dict) -> None:
    try:
        jsonschema.validate(raw, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from None


def dumps(raw: Any) -> str:
    """Stable text: two-space indent, insertion key order, trailing newline."""
    return json.dumps(raw, indent=2, ensure_ascii=False) + "\n"


def _sig_json(sig: VariableSet) -> dict:
    return {"n_lambda": sig.n_lambda, "n_mu": sig.n_mu, "n_rho": sig.n_rho}


def _sig_from(raw: dict) -> VariableSet:
    return VariableSet(raw["n_lambda"], raw["n_mu"], raw["n_rho"])


# ---------------------------------------------------------------------------
# Adinkra documents


def adinkra_to_json(A: Adinkra) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "signature": _sig_json(A.signature),
        "vertices": [{"id": v.id, "parity": v.parity.label, "height": v.height} for v in A.vertices],
        "edges": [{"u": e.u, "v": e.v, "color": e.color, "dash": e.dash, "arrow": e.arrow}
                  for e in A.edges],
    }
    meta = {}
    if A.name:
        meta["name"] = A.name
    if A.paper_figure:
        meta["paper_figure"] = A.paper_figure
    if meta:
        doc["metadata"] = meta
    return doc


def adinkra_from_json(raw: Any) -> Adinkra:
    _check(raw, ADINKRA_SCHEMA)
    sig = _sig_from(raw["signature"])
    verts = tuple(Vertex(v["id"], Parity.parse(v["parity"]), v["height"]) for v in raw["vertices"])
    edges = tuple(Edge(e["u"], e["v"], e["color"], e.get("dash", 1), e.get("arrow", 1))
                  for e in raw["edges"])
    meta = raw.get("metadata", {})
    return Adinkra(verts, edges, sig, name=meta.get("name", ""), paper_figure=meta.get("paper_figure", ""))


def dump_adinkra(A: Adinkra) -> str:
    return dumps(adinkra_to_json(A))


def load_adinkra(text: str) -> Adinkra:
    return adinkra_from_json(loads(text))


# ---------------------------------------------------------------------------
# complexes, factorizations, chain maps


def complex_to_json(C: FreeComplex) -> dict:
    sig = C.sig
    doc = {"kind": "free_complex", "schema_version": SCHEMA_VERSION}
    if C.name:
        doc["name"] = C.name
    doc.update({
        "signature": _sig_json(sig),
        "ring": C.ring_tag,
        "modules": [{"degree": n, "shifts": list(C.shifts[n]), "labels": list(C.labels[n])}
                    for n in C.degrees()],
        "differentials": [{"degree": n, "matrix": matrix_to_json(sig, C.d(n))}
                          for n in C.degrees() if n + 1 in C.shifts],
    })
    return doc


def complex_from_json(raw: Any) -> FreeComplex:
    _check(raw, COMPLEX_SCHEMA)
    sig = _sig_from(raw["signature"])
    shifts = {m["degree"]: tuple(m["shifts"]) for m in raw["modules"]}
    labels = {m["degree"]: tuple(m.get("labels", ())) for m in raw["modules"]}
    diffs = {d["degree"]: matrix_from_json(sig, d["matrix"]) for d in raw["differentials"]}
    try:
        return FreeComplex(sig, shifts, diffs, labels, raw["ring"] == "RmodQ", raw.get("name", ""))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def mf_to_json(mf: MatrixFactorization) -> dict:
    return {"kind": "matrix_factorization", "schema_version": SCHEMA_VERSION,
            "signature": _sig_json(mf.sig), "psi": matrix_to_json(mf.sig, mf.psi),
            "phi": matrix_to_json(mf.sig, mf.phi)}


def mf_from_json(raw: Any) -> MatrixFactorization:
    _check(raw, MF_SCHEMA)
    sig = _sig_from(raw["signature"])
    return MatrixFactorization(sig, matrix_from_json(sig, raw["psi"]), matrix_from_json(sig, raw["phi"]))


def _endpoint(raw: dict) -> FreeComplex:
    from .complexes import complex_of

    if "adinkra" in raw:
        return complex_of(adinkra_from_json(raw["adinkra"]))
    return complex_from_json(raw["complex"])


def chain_map_from_json(raw: Any) -> ChainMap:
    _check(raw, CHAIN_MAP_SCHEMA)
    X, Y = _endpoint(raw["source"]), _endpoint(raw["target"])
    maps = {m["degree"]: matrix_from_json(X.sig, m["matrix"]) for m in raw["maps"]}
    return ChainMap(X, Y, raw["shift"], maps, raw.get("name", ""))


def chain_map_to_json(f: ChainMap, source: dict | None = None, target: dict | None = None) -> dict:
    """``source``/``target`` may be Adinkra documents; complexes are embedded otherwise."""
    doc = {"kind": "chain_map", "schema_version": SCHEMA_VERSION}
    if f.name:
        doc["name"] = f.name
    doc["source"] = {"adinkra": source} if source else {"complex": complex_to_json(f.source)}
    doc["target"] = {"adinkra": target} if target else {"complex": complex_to_json(f.target)}
    doc["shift"] = f.shift
    doc["maps"] = [{"degree": n, "matrix": matrix_to_json(f.source.sig, m)}
                   for n, m in sorted(f.maps.items())]
    return doc


def document_kind(raw: Any) -> str:
    if isinstance(raw, dict) and isinstance(raw.get("kind"), str):
        return raw["kind"]
    return "adinkra"


# ---------------------------------------------------------------------------
# DOT

_PENS = ("black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta",
         "cyan4", "gold3", "gray40", "navy")


def to_dot(A: Adinkra) -> str:
    """Graphviz source: boson circles, fermion boxes, one rank per height."""
    def q(s: str) -> str:
        return '"' + s.replace('"', r'\"') + '"'

    lines = [f"graph {q(A.name or 'adinkra')} {{", "  rankdir=BT;"]
    for v in A.vertices:
        shape = "circle" if v.parity == Parity.BOSON else "box"
        lines.append(f"  {q(v.id)} [shape={shape}, label={q(v.id)}];")
    for h in A.heights():
        ids = " ".join(q(v.id) for v in A.level(h))
        lines.append(f"  {{ rank=same; {ids} }}")
    for e in A.edges:
        src, tgt = A.source(e), A.target(e)
        attrs = [f"color={_PENS[(e.color - 1) % len(_PENS)]}",
                 f"style={'solid' if e.dash == 1 else 'dashed'}"]
        if A.signature.color_kind(e.color) == "rho":
            # arrowheads point at the lower end when the arrow is down
            attrs += ['label="~"', f"dir={'forward' if e.arrow == DOWN else 'back'}"]
        lines.append(f"  {q(src)} -- {q(tgt)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bundled corpus


def _data_dir():
    return resources.files("adinkralab") / "data"


def bundled_names(kind: str | None = "adinkra") -> list[str]:
    out = []
    for p in sorted(_data_dir().iterdir(), key=lambda p: p.name):
        if not p.name.endswith(".json"):
            continue
        if kind is None or document_kind(loads(p.read_text())) == kind:
            out.append(p.name[:-5])
    return out


def bundled_text(name: str) -> str:
    p = _data_dir() / f"{name}.json"
    if not p.is_file():
        raise KeyError(f"no bundled document {name!r}")
    return p.read_text()


def load_bundled(name: str) -> Adinkra:
    return load_adinkra(bundled_text(name))


def load_bundled_chain_map(name: str) -> ChainMap:
    return chain_map_from_json(loads(bundled_text(name)))


def bundled_code_names() -> list[str]:
    return sorted(p.name[:-5] for p in _data_dir().iterdir() if p.name.endswith(".code"))


def bundled_code_text(name: str) -> str:
    return (_data_dir() / f"{name}.code").read_text()
