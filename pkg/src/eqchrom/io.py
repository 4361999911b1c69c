"""Versioned JSON documents.  Every document carries a ``schema`` field;
``dumps`` is canonical so that ``dumps(load(text)) == text``."""

from __future__ import annotations

import json
from pathlib import Path

from .balmer import format_height, parse_height
from .errors import EqchromError, SchemaViolation
from .groups import PGroupSpec, build_lattice

GROUP = "eqchrom.group/1"
HEIGHT_FN = "eqchrom.heightfn/1"
NODES = "eqchrom.nodes/1"
EFGL = "eqchrom.efgl/1"


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _fail(msg: str, pointer: str):
    raise SchemaViolation(f"{msg} at {pointer or '/'}", pointer=pointer or "/")


def _require(doc, key: str, typ, pointer: str = ""):
    if not isinstance(doc, dict):
        _fail("expected an object", pointer)
    if key not in doc:
        _fail(f"missing field {key!r}", pointer)
    v = doc[key]
    if typ is not None and not isinstance(v, typ) or isinstance(v, bool) and typ is int:
        _fail(f"field {key!r} has the wrong type", f"{pointer}/{key}")
    return v


def _schema(doc, expected: str):
    got = _require(doc, "schema", str)
    if got != expected:
        _fail(f"expected schema {expected!r}, got {got!r}", "/schema")


# -- group specs ---------------------------------------------------------------------

def group_to_json(spec: PGroupSpec) -> dict:
    return {"schema": GROUP, "p": spec.p, "exponents": list(spec.exponents)}


def group_from_json(doc, pointer: str = "") -> PGroupSpec:
    if isinstance(doc, str):
        try:
            return PGroupSpec.parse(doc)
        except EqchromError as exc:
            _fail(str(exc), pointer)
    p = _require(doc, "p", int, pointer)
    ks = _require(doc, "exponents", list, pointer)
    for i, k in enumerate(ks):
        if not isinstance(k, int) or isinstance(k, bool):
            _fail("exponent must be an integer", f"{pointer}/exponents/{i}")
        if k < 1:
            _fail("exponent must be positive", f"{pointer}/exponents/{i}")
        if i and k > ks[i - 1]:
            _fail("exponents must be nonincreasing", f"{pointer}/exponents/{i}")
    try:
        return PGroupSpec(p, tuple(ks))
    except EqchromError as exc:
        _fail(str(exc), f"{pointer}/p")


# -- height / type functions --------------------------------------------------------------

def height_fn_to_json(spec: PGroupSpec, fn: dict) -> dict:
    return {
        "schema": HEIGHT_FN,
        "group": spec.text(),
        "values": {k: format_height(v) for k, v in sorted(fn.items(), key=lambda kv: int(kv[0][1:]))},
    }


def parse_fn_values(values, pointer: str = "/values") -> dict:
    if not isinstance(values, dict):
        _fail("expected an object of subgroup id -> height", pointer)
    out = {}
    for k, v in values.items():
        try:
            out[k] = parse_height(v)
        except (ValueError, TypeError, EqchromError):
            _fail(f"bad height {v!r}", f"{pointer}/{k}")
    return out


def height_fn_from_json(doc):
    _schema(doc, HEIGHT_FN)
    spec = group_from_json(_require(doc, "group", (str, dict)), "/group")
    fn = parse_fn_values(_require(doc, "values", dict))
    lat = build_lattice(spec)
    for k in fn:
        if k not in {s.id for s in lat}:
            _fail(f"unknown subgroup id {k!r}", f"/values/{k}")
    return spec, fn


# -- element tuples on the isotropy diagram ----------------------------------------------

def nodes_from_json(doc):
    _schema(doc, NODES)
    spec = group_from_json(_require(doc, "group", (str, dict)), "/group")
    nodes = _require(doc, "nodes", dict)
    for k, v in nodes.items():
        if not isinstance(v, str):
            _fail("node value must be an element expression", f"/nodes/{k}")
    prec = {}
    for key in ("N", "V", "i_max"):
        if key in doc:
            prec[key] = _require(doc, key, int)
    return spec, dict(nodes), prec


def nodes_to_json(spec: PGroupSpec, nodes: dict, **prec) -> dict:
    out = {"schema": NODES, "group": spec.text(), "nodes": dict(sorted(nodes.items()))}
    out.update(prec)
    return out


# -- equivariant FGL data --------------------------------------------------------------------

def efgl_from_json(doc):
    """Rebuild :class:`EquivariantFGLData` from its ``to_json`` form."""
    from .equivariant import EquivariantFGLData
    from .fgl import FGL
    from .series import CERTIFICATE_ONLY, Generator, PowerSeries1, Ring

    _schema(doc, EFGL)
    spec = group_from_json(_require(doc, "group", dict), "/group")
    lat = build_lattice(spec)
    p = _require(doc, "p", int)
    N = _require(doc, "N", int)
    gens = []
    for i, g in enumerate(_require(doc, "generators", list)):
        ptr = f"/generators/{i}"
        gens.append(Generator(_require(g, "name", str, ptr), _require(g, "degree", int, ptr),
                              _require(g, "kind", str, ptr), bool(g.get("localized", False))))
    R0 = Ring(p, gens, N=N, name=doc.get("name", ""))

    def parse(text, ptr, ring):
        try:
            return ring.parse(text)
        except EqchromError as exc:
            _fail(str(exc), ptr)

    rels = [(parse(t, f"/relations/{i}", R0), CERTIFICATE_ONLY) for i, t in enumerate(_require(doc, "relations", list))]
    R = R0.with_relations(rels) if rels else R0
    fdoc = _require(doc, "fgl", dict)
    M = _require(fdoc, "M", int, "/fgl")
    base_names = _require(fdoc, "base", list, "/fgl")
    base = Ring(p, [g for g in gens if g.name in base_names], N=1)
    coeffs = {}
    for k, t in _require(fdoc, "coefficients", dict, "/fgl").items():
        try:
            i, j = (int(x) for x in k.split(","))
        except ValueError:
            _fail("coefficient key must be 'i,j'", f"/fgl/coefficients/{k}")
        coeffs[(i, j)] = parse(t, f"/fgl/coefficients/{k}", base)
    F = FGL(base, coeffs, M)

    def char(k, ptr):
        try:
            c = tuple(int(x) for x in k.split(","))
        except ValueError:
            _fail("character key must be comma separated integers", ptr)
        if c not in set(lat.all_characters):
            _fail(f"{k!r} is not a character", ptr)
        return c

    euler = {char(k, f"/euler/{k}"): parse(t, f"/euler/{k}", R) for k, t in _require(doc, "euler", dict).items()}
    bseries = {}
    for k, cs in _require(doc, "bseries", dict).items():
        ptr = f"/bseries/{k}"
        if not isinstance(cs, list) or not cs:
            _fail("b-series must be a non-empty list of coefficients", ptr)
        vals = [parse(t, f"{ptr}/{i}", R) for i, t in enumerate(cs)]
        bseries[char(k, ptr)] = PowerSeries1(R, vals, len(vals) - 1, "z")
    return EquivariantFGLData(lat, R, tuple(_require(doc, "J", list)), F, euler, bseries,
                              exact_b=bool(doc.get("exact_b", False)), name=doc.get("name", ""))


def load(path: str | Path, schema: str):
    """Read a JSON document and decode it according to ``schema``."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"invalid JSON: {exc.msg}", pointer="/", line=exc.lineno) from None
    return decode(doc, schema)


def decode(doc, schema: str):
    if schema == GROUP:
        _schema(doc, GROUP)
        return group_from_json(doc)
    if schema == HEIGHT_FN:
        return height_fn_from_json(doc)
    if schema == NODES:
        return nodes_from_json(doc)
    if schema == EFGL:
        return efgl_from_json(doc)
    raise ValueError(f"unknown schema {schema!r}")


def store(path: str | Path, doc: dict) -> None:
    Path(path).write_text(dumps(doc))
