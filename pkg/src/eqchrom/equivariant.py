"""Equivariant formal group law data ``(F, e_alpha, b^alpha(z))`` and its axioms."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .fgl import FGL
from .groups import SubgroupLattice
from .series import CERTIFICATE_ONLY, Element, Generator, Nonzero, PowerSeries1, Ring, SERIES, Zero, relation_member

PASS, FAIL, UNKNOWN, SKIPPED = "pass", "fail", "unknown", "skipped"


def euler_name(lat: SubgroupLattice, alpha, prefix: str = "e") -> str:
    """``e`` for the sign character of C_2, otherwise ``e_1_0`` style names."""
    if lat.spec.p == 2 and lat.spec.exponents == (1,):
        return prefix
    return prefix + "_" + "_".join(str(c) for c in alpha)


def decompose(lat: SubgroupLattice, basis) -> dict:
    """``alpha -> (c_1, ..., c_m)`` with ``alpha = sum c_j alpha_j``, ``0 <= c_j < ord_j``."""
    G = lat.group
    out = {}
    for cs in product(*(range(o) for _, o in basis)):
        a = G.zero()
        for c, (b, _) in zip(cs, basis):
            a = G.add(a, G.mul(c, b))
        out[a] = cs
    return out


@dataclass
class EquivariantFGLData:
    lattice: SubgroupLattice
    base: Ring
    J: tuple
    F: FGL
    euler: dict
    bseries: dict
    exact_b: bool = False
    name: str = ""

    def e(self, alpha) -> Element:
        return self.euler[tuple(alpha)]

    def b(self, alpha) -> PowerSeries1:
        return self.bseries[tuple(alpha)]

    def in_J(self, x: Element) -> bool:
        idx = [self.base.index[n] for n in self.J]
        return all(any(m[i] > 0 for i in idx) for m in x.terms)

    def to_json(self) -> dict:
        def key(a):
            return ",".join(map(str, a))

        F = self.F
        return {
            "schema": "eqchrom.efgl/1",
            "name": self.name,
            "group": self.lattice.spec.to_json(),
            "p": self.base.p,
            "N": self.base.N,
            "generators": [
                {"name": g.name, "degree": g.degree, "kind": g.kind, "localized": g.localized}
                for g in self.base.generators
            ],
            "relations": [r.text() for r in self.base.relations],
            "J": list(self.J),
            "exact_b": self.exact_b,
            "fgl": {
                "M": F.M,
                "base": [g.name for g in F.base.generators],
                "coefficients": {f"{i},{j}": c.text() for (i, j), c in sorted(F.coeffs.items()) if c},
            },
            "euler": {key(a): e.text() for a, e in sorted(self.euler.items())},
            "bseries": {key(a): [s[i].text() for i in range(s.order + 1)] for a, s in sorted(self.bseries.items())},
        }


@dataclass
class AxiomEntry:
    axiom: str
    status: str
    alpha: tuple | None = None
    beta: tuple | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "status": self.status}
        if self.alpha is not None:
            out["alpha"] = list(self.alpha)
        if self.beta is not None:
            out["beta"] = list(self.beta)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class AxiomReport:
    entries: list = field(default_factory=list)

    def add(self, *args, **kw):
        self.entries.append(AxiomEntry(*args, **kw))

    @property
    def failed(self) -> set:
        return {e.axiom for e in self.entries if e.status == FAIL}

    @property
    def unknown(self) -> set:
        return {e.axiom for e in self.entries if e.status == UNKNOWN}

    @property
    def ok(self) -> bool:
        return not self.failed and not self.unknown

    def status(self, axiom: str) -> str:
        sts = {e.status for e in self.entries if e.axiom == axiom}
        for s in (FAIL, UNKNOWN, PASS):
            if s in sts:
                return s
        return SKIPPED

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "axioms": {a: self.status(a) for a in ("i", "ii", "iii", "iv")},
            "failures": [e.to_json() for e in self.entries if e.status in (FAIL, UNKNOWN)],
        }


def equal_mod_relations(x: Element, y: Element) -> tuple[str, object]:
    d = x - y
    if d.is_zero():
        return PASS, None
    res = relation_member(d)
    if isinstance(res, Zero):
        return PASS, res
    if isinstance(res, Nonzero):
        return FAIL, res
    return UNKNOWN, res


def _series_equal(f: PowerSeries1, g: PowerSeries1, order: int):
    worst, why = PASS, ""
    for i in range(order + 1):
        st, res = equal_mod_relations(f[i], g[i])
        if st == FAIL:
            return FAIL, f"z^{i} coefficients differ: {(f[i] - g[i]).text()}"
        if st == UNKNOWN:
            worst, why = UNKNOWN, f"z^{i}: {res.reason}"
    return worst, why


def check_axioms(D: EquivariantFGLData) -> AxiomReport:
    """Check (i) normalization, (ii) ``b^a(0) = e_a``, (iii) ``e_ab = b^b(e_a)``
    and (iv) the completed identities at ``e_a`` in ``J``."""
    rep = AxiomReport()
    lat, base, F = D.lattice, D.base, D.F
    G = lat.group
    one = G.zero()
    chars = list(lat.all_characters)
    N = base.N

    # (i)
    e1 = D.euler.get(one, base.zero)
    b1 = D.bseries.get(one)
    z_ok = b1 is not None and b1[0].is_zero() and b1.order >= 1 and b1[1] == 1 and all(
        not b1[i] for i in range(2, b1.order + 1)
    )
    rep.add("i", PASS if e1.is_zero() else FAIL, one, detail="" if e1.is_zero() else f"e_1 = {e1.text()}")
    rep.add("i", PASS if z_ok else FAIL, one, detail="" if z_ok else "b^1(z) is not z")

    # (ii)
    for a in chars:
        st, _ = equal_mod_relations(D.b(a)[0], D.e(a))
        rep.add("ii", st, a, detail="" if st == PASS else f"b(0) - e = {(D.b(a)[0] - D.e(a)).text()}")

    complete_K = F.M - N + 1 if base.series_idx else None

    # (iii)
    for a in chars:
        ea = D.e(a)
        a_in_J = D.in_J(ea)
        for b in chars:
            bb = D.b(b)
            if not (D.exact_b or (a_in_J and bb.order >= N - 1)):
                rep.add("iii", SKIPPED, a, b, detail="needs e_alpha in J or an exact b-series")
                continue
            lhs = D.e(G.add(a, b))
            rhs = bb(ea)
            st, res = equal_mod_relations(lhs, rhs)
            rep.add("iii", st, a, b, detail="" if st == PASS else f"e_ab - b^b(e_a) = {(lhs - rhs).text()}")

    # (iv)
    for a in chars:
        ea = D.e(a)
        if not D.in_J(ea):
            continue
        order = D.b(a).order
        if complete_K is not None:
            order = min(order, complete_K)
        if order >= 1:
            st, why = _series_equal(D.b(a), F.translation_series(ea, order), order)
            rep.add("iv", st, a, detail=why and f"b^a(z) vs e_a +_F z: {why}")
        k = lat.character_order(a)
        st, _ = equal_mod_relations(F.n_series(k)(ea), base.zero)
        rep.add("iv", st, a, detail="" if st == PASS else f"[{k}](e_a) is not certified zero")
        for b in chars:
            eb = D.e(b)
            if not D.in_J(eb):
                continue
            st, _ = equal_mod_relations(D.e(G.add(a, b)), F.evaluate(ea, eb))
            rep.add("iv", st, a, b, detail="" if st == PASS else "e_ab != e_a +_F e_b")
    return rep


def factorization_consistency(D: EquivariantFGLData) -> dict:
    """For each character, compare ``e_a +_F e_b`` over all factorizations ``ab``."""
    G = D.lattice.group
    out = {}
    for a in D.lattice.all_characters:
        for b in D.lattice.all_characters:
            g = G.add(a, b)
            st, _ = equal_mod_relations(D.F.evaluate(D.e(a), D.e(b)), D.e(g))
            out[(a, b)] = st
    return out


def borel_model(lat: SubgroupLattice, F: FGL, N: int = 5) -> EquivariantFGLData:
    """``BP_*[[e_j]]/([p^k_j](e_j))`` on a character basis, ``e_a`` by formal sums."""
    if F.M < N - 1:
        raise ValueError(f"formal group law precision M = {F.M} is below N - 1 = {N - 1}")
    _, basis = lat.quotient_characters(lat.bottom)
    names = [euler_name(lat, a) for a, _ in basis]
    R0 = F.base.extend([Generator(n, -2, SERIES) for n in names], N=N, keep_relations=False,
                       name=f"Borel({lat.spec.name()})")
    rels = []
    for (a, k), n in zip(basis, names):
        rels.append((F.n_series(k)(R0.gen(n)), CERTIFICATE_ONLY))
    base = R0.with_relations(rels)
    coords = decompose(lat, basis)
    euler = {}
    for a, cs in coords.items():
        acc = base.zero
        for c, n in zip(cs, names):
            if c:
                acc = F.evaluate(acc, F.n_series(c)(base.gen(n)))
        euler[a] = acc
    K = F.M - N + 1 if N > 1 else F.M
    bseries = {a: F.translation_series(e, K) for a, e in euler.items()}
    return EquivariantFGLData(lat, base, tuple(names), F, euler, bseries, name="borel")


def multiplicative_c2_model(corrupt: bool = False) -> EquivariantFGLData:
    """``Z[e]/(e^2 + 2e)``, ``F = x + y + xy``, ``b^sigma(z) = e + (1+e)z`` (or ``e + z``)."""
    from .fgl import scalar_ring
    from .groups import PGroupSpec, build_lattice

    lat = build_lattice(PGroupSpec(2, (1,)))
    R0 = Ring(2, [Generator("e", 0)], N=1, name="Z[e]/(e^2+2e)")
    e = R0.gen("e")
    base = R0.with_relations([(e * e + 2 * e, CERTIFICATE_ONLY)])
    e = base.gen("e")
    F = FGL.multiplicative(scalar_ring(2), 4)
    sigma, one = (1,), (0,)
    bs = PowerSeries1(base, [e, base.one if corrupt else 1 + e], 1, "z")
    data = EquivariantFGLData(
        lat, base, ("e",), F,
        {one: base.zero, sigma: e},
        {one: PowerSeries1(base, [0, 1], 1, "z"), sigma: bs},
        exact_b=True,
        name="multiplicative-corrupt" if corrupt else "multiplicative",
    )
    return data
