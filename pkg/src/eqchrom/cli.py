"""``eqchrom`` command line.

Exit status: 0 success, 1 domain error (error JSON on stderr), 2 usage error.
``EQCHROM_PRECISION`` sets the default truncation order ``N``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import balmer, dot, io
from .errors import EqchromError
from .groups import PGroupSpec, build_lattice

DEFAULT_N = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_precision() -> int:
    raw = os.environ.get("EQCHROM_PRECISION")
    if raw is None:
        return DEFAULT_N
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"EQCHROM_PRECISION must be an integer, got {raw!r}") from None
    if n < 1:
        raise UsageError("EQCHROM_PRECISION must be positive")
    return n


def _json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON argument: {exc.msg}") from None


def _emit(obj, fmt: str = "json", text: str | None = None):
    if fmt == "json":
        sys.stdout.write(io.dumps(obj))
    else:
        sys.stdout.write(text if text is not None else io.dumps(obj))


def _fn_arg(lat, text):
    raw = _json_arg(text)
    if isinstance(raw, dict) and raw.get("schema") == io.HEIGHT_FN:
        return io.height_fn_from_json(raw)[1]
    if isinstance(raw, list):
        return balmer.from_tuple(lat, [balmer.parse_height(v) for v in raw])
    return io.parse_fn_values(raw, "")


def _fmt_fn(fn: dict) -> dict:
    return {k: balmer.format_height(v) for k, v in sorted(fn.items(), key=lambda kv: int(kv[0][1:]))}


# -- lattice -----------------------------------------------------------------------------

def _selector(text: str):
    kind, _, arg = text.partition(":")
    if kind in ("subeq", "notsupeq"):
        return (kind, arg)
    if kind == "euler":
        return ("euler", tuple(int(c) for c in arg.split(",")))
    if kind == "explicit":
        return ("explicit", set(arg.split(",")))
    raise UsageError(f"unknown family selector {text!r}")


def cmd_lattice(a):
    lat = build_lattice(a.group)
    shaded = balmer.make_family(lat, _selector(a.shade)).members if a.shade else ()
    if a.format == "dot":
        what = a.diagram
        text = dot.sd_dot(lat) if what == "sd" else dot.hasse_dot(lat, shaded)
        _emit(None, "dot", text)
        return
    rows = lat.describe()
    doc = {"schema": "eqchrom.lattice/1", "group": lat.spec.text(), "subgroups": rows,
           "covers": [list(c) for c in lat.hasse]}
    if a.list or a.format == "text":
        lines = [f"{r['id']}\torder={r['order']}\tgenerators={r['generators']}" for r in rows]
        _emit(doc, a.format, "\n".join(lines) + "\n")
    else:
        _emit(doc)


# -- balmer --------------------------------------------------------------------------------

def cmd_balmer(a):
    lat = build_lattice(a.group)
    op = a.op
    if op == "admissible":
        res = balmer.is_admissible(lat, _fn_arg(lat, a.fn))
        _emit({"admissible": res.admissible, "witness": list(res.witness) if res.witness else None})
    elif op == "closed":
        cs = balmer.closed_set_of(lat, _fn_arg(lat, a.fn))
        res = balmer.is_closed(lat, cs)
        _emit({"closed": res.closed, "closed_set": cs.to_json(),
               "witness": [list(map(balmer.format_height, P)) for P in res.witness] if res.witness else None})
    elif op == "enumerate":
        fns = balmer.enumerate_admissible(lat, a.bound)
        _emit({"count": len(fns), "functions": [_fmt_fn(f) for f in fns] if a.full else None})
    elif op == "standard":
        arg = tuple(int(c) for c in a.arg.split(",")) if a.kind == "n_alpha" else int(a.arg)
        fn = balmer.standard_functions(lat, a.kind, arg)
        _emit({"function": _fmt_fn(fn), "admissible": bool(balmer.is_admissible(lat, fn))})
    elif op == "obstruction":
        S = [s for s in a.S.split(",") if s]
        _emit(balmer.obstruction_check(lat, _fn_arg(lat, a.fn), S).to_json())
    elif op == "fracture":
        pts = balmer.fracture_set(lat, _fn_arg(lat, a.fn), _fn_arg(lat, a.fn2))
        _emit({"fracture": [[b, m] for b, m in pts]})
    elif op == "ephi":
        _emit(balmer.ephi_behavior(lat, _fn_arg(lat, a.fn), a.C).to_json())
    elif op == "poset":
        cs = balmer.closed_set_of(lat, _fn_arg(lat, a.fn)) if a.fn else None
        if a.format == "dot":
            _emit(None, "dot", dot.balmer_dot(lat, a.nmax, cs))
        else:
            pts = balmer.points(lat, a.nmax)
            _emit({"points": [dot.point_name(P) for P in pts],
                   "covers": [[dot.point_name(P), dot.point_name(Q)] for P, Q in balmer.point_covers(lat, pts)]})


# -- fgl ------------------------------------------------------------------------------------

def _mod_level(p: int, text: str | None) -> int | None:
    if not text:
        return None
    toks = [t.strip() for t in text.split(",") if t.strip()]
    want = [str(p)] + [f"v{i}" for i in range(1, len(toks))]
    if toks != want:
        raise UsageError(f"--mod must be an ideal I_n = ({', '.join(want)}), got {text!r}")
    return len(toks)


def cmd_fgl(a):
    from .fgl import height_over_field, p_typical, two_series_congruence
    from .series import reduce_mod_In

    if a.op == "p-series":
        n = _mod_level(a.p, a.mod)
        M = max(a.order - 1, 1)
        F = p_typical(a.p, a.convention, a.vmax, M)
        s = F.n_series(a.p)
        if n:
            s = reduce_mod_In(s, n)
        text = s.text()
        _emit({"p": a.p, "convention": a.convention, "vmax": a.vmax, "order": a.order,
               "mod": a.mod, "series": text}, a.format, text + "\n")
    elif a.op == "axioms":
        F = p_typical(a.p, a.convention, a.vmax, a.order)
        ax = F.verify_axioms()
        _emit({k: (v if isinstance(v, bool) else v.text()) for k, v in ax.items()})
    elif a.op == "congruence":
        rep = two_series_congruence(a.p, a.n, a.vmax, None, a.convention, raise_on_fail=False)
        _emit(rep.to_json())
    elif a.op == "height":
        from .fgl import FGL, scalar_ring

        R = scalar_ring(a.p)
        if a.law == "multiplicative":
            F = FGL.multiplicative(R, a.order)
        elif a.law == "additive":
            F = FGL.additive(R, a.order)
        else:
            raise UsageError("height supports --law multiplicative or additive")
        h = height_over_field(F, a.bound)
        _emit({"law": a.law, "p": a.p, "height": h if isinstance(h, int) else str(h)})


# -- equivariant ----------------------------------------------------------------------------

def cmd_equivariant(a):
    from .equivariant import borel_model, check_axioms, factorization_consistency, multiplicative_c2_model
    from .fgl import p_typical

    N = a.order or default_precision()
    if a.input:
        D = io.load(a.input, io.EFGL)
    elif a.model in ("multiplicative", "corrupt"):
        D = multiplicative_c2_model(corrupt=a.model == "corrupt")
    else:
        lat = build_lattice(a.group)
        D = borel_model(lat, p_typical(lat.p, "araki", a.vmax, N + 3), N)
    if a.dump:
        _emit(D.to_json())
        return
    rep = check_axioms(D)
    out = {"schema": "eqchrom.axioms/1", "model": D.name} | rep.to_json()
    if a.factorization:
        fc = factorization_consistency(D)
        out["factorization"] = all(v == "pass" for v in fc.values())
    _emit(out)


# -- strickland -------------------------------------------------------------------------------

def cmd_strickland(a):
    from .isotropy import mahowald_lift_degree_check, ro_degree, strickland_table, vnm_check, ROC2Monomial

    if a.ro_degree:
        m = ROC2Monomial.parse(a.ro_degree)
        nf = m.normalize()
        _emit({"monomial": a.ro_degree, "normal_form": nf.text(),
               "degree": list(ro_degree(nf)) if not nf.is_zero() else None})
        return
    if a.vnm is not None:
        rep = vnm_check(a.vnm)
        _emit(rep.to_json() | {"mahowald_degree": mahowald_lift_degree_check(a.vnm)})
        return
    N = a.order or default_precision()
    T = strickland_table(a.imax, a.jmax, N, a.vmax)
    _emit(T.to_json())


# -- diagram ------------------------------------------------------------------------------------

def cmd_diagram(a):
    from .isotropy import IsotropyDiagram

    if a.check:
        spec, nodes, prec = io.load(a.check, io.NODES)
        if a.group and PGroupSpec.parse(a.group) != spec:
            raise UsageError("--group disagrees with the group recorded in the node file")
        lat = build_lattice(spec)
        N = prec.get("N", a.order or default_precision())
        D = IsotropyDiagram(lat, N, prec.get("V", a.vmax), prec.get("i_max"))
        res = D.limit_membership(D.parse_tuple(nodes))
        _emit(res.to_json())
        return
    if not a.group:
        raise UsageError("diagram needs --group")
    lat = build_lattice(a.group)
    if a.format == "dot":
        _emit(None, "dot", dot.sd_dot(lat))
        return
    N = a.order or default_precision()
    D = IsotropyDiagram(lat, N, a.vmax)
    if a.edge:
        b1, b2 = a.edge.split(",")
        _emit(D.edge(b1, b2).to_json())
    else:
        _emit({"schema": "eqchrom.diagram/1", "group": lat.spec.text(), "N": N,
               "nodes": [D.node(s).describe() for s in lat],
               "edges": [list(e) for e in lat.hasse]})


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eqchrom", description="Equivariant chromatic computations for finite abelian p-groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lattice", help="subgroup lattice")
    s.add_argument("--group", required=True)
    s.add_argument("--list", action="store_true")
    s.add_argument("--format", choices=("text", "json", "dot"), default="json")
    s.add_argument("--diagram", choices=("hasse", "sd"), default="hasse")
    s.add_argument("--shade", help="family selector, e.g. subeq:S1 or euler:1,0")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("balmer", help="Balmer spectrum combinatorics")
    s.add_argument("op", choices=("admissible", "closed", "enumerate", "standard", "obstruction",
                                  "fracture", "ephi", "poset"))
    s.add_argument("--group", required=True)
    s.add_argument("--fn", help="JSON object id -> height, JSON list, or @file")
    s.add_argument("--fn2")
    s.add_argument("--S", default="")
    s.add_argument("--C", default="S0")
    s.add_argument("--bound", type=int, default=3)
    s.add_argument("--full", action="store_true")
    s.add_argument("--kind", choices=("h", "c", "n_alpha"), default="h")
    s.add_argument("--arg", default="0")
    s.add_argument("--nmax", type=int, default=3)
    s.add_argument("--format", choices=("json", "dot"), default="json")
    s.set_defaults(func=cmd_balmer)

    s = sub.add_parser("fgl", help="formal group law arithmetic")
    s.add_argument("op", choices=("p-series", "axioms", "congruence", "height"))
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--convention", choices=("araki", "hazewinkel"), default="araki")
    s.add_argument("--vmax", type=int, default=3)
    s.add_argument("--order", type=int, default=9)
    s.add_argument("--mod")
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--law", default="multiplicative")
    s.add_argument("--bound", type=int, default=4)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_fgl)

    s = sub.add_parser("equivariant", help="equivariant FGL axioms")
    s.add_argument("--model", choices=("multiplicative", "corrupt", "borel"), default="borel")
    s.add_argument("--group", default="2:[1]")
    s.add_argument("--input", help="eqchrom.efgl/1 document")
    s.add_argument("--order", type=int)
    s.add_argument("--vmax", type=int, default=2)
    s.add_argument("--factorization", action="store_true")
    s.add_argument("--dump", action="store_true")
    s.set_defaults(func=cmd_equivariant)

    s = sub.add_parser("strickland", help="C_2 pullback presentation")
    s.add_argument("--imax", type=int, default=8)
    s.add_argument("--jmax", type=int, default=3)
    s.add_argument("--order", type=int)
    s.add_argument("--vmax", type=int, default=3)
    s.add_argument("--vnm", type=int)
    s.add_argument("--ro-degree", dest="ro_degree")
    s.set_defaults(func=cmd_strickland)

    s = sub.add_parser("diagram", help="isotropy diagram")
    s.add_argument("--group")
    s.add_argument("--check", help="eqchrom.nodes/1 document")
    s.add_argument("--edge", help="B1,B2")
    s.add_argument("--order", type=int)
    s.add_argument("--vmax", type=int, default=3)
    s.add_argument("--format", choices=("json", "dot"), default="json")
    s.set_defaults(func=cmd_diagram)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
        return 0
    except UsageError as exc:
        sys.stderr.write(json.dumps({"error": "UsageError", "message": str(exc)}) + "\n")
        return 2
    except EqchromError as exc:
        sys.stderr.write(json.dumps(exc.to_json()) + "\n")
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    except OSError as exc:
        sys.stderr.write(json.dumps({"error": "IOError", "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
