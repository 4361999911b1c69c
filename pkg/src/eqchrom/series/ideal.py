"""Ideal arithmetic: reduction mod I_n, unit tests and certified membership.

Membership in a quotient by certificate-only relations is decided by a
search for multipliers ``g_j`` with ``shift * a = sum g_j r_j`` (exact up to the
ring's truncation).  The linear algebra runs over Z_(p): elimination with
minimal-valuation pivots decides whether a p-local solution exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from gmpy2 import mpq

from ..errors import MissingGenerator, UnsupportedRingKind
from .power import PowerSeries1
from .ring import INVERTED, POLY, SERIES, Element, Ring, reduce_coeff_mod_p, val_p


# -- reduction mod I_n --------------------------------------------------------

def _kill_names(ring: Ring, n: int) -> list[str]:
    names = [f"v{i}" for i in range(1, n)]
    missing = [v for v in names if not ring.has(v)]
    if missing:
        raise MissingGenerator(f"ring lacks {', '.join(missing)} needed for I_{n}", generator=missing[0])
    return names


def _reduce_elt(a: Element, n: int) -> Element:
    if n <= 0:
        return a
    r = a.ring
    kill = [r.index[v] for v in _kill_names(r, n)]
    p = r.p
    out = {}
    for m, c in a.terms.items():
        if any(m[i] for i in kill):
            continue
        c = reduce_coeff_mod_p(c, p)
        if c:
            out[m] = mpq(c)
    return Element(r, out, canonical=True)


def reduce_mod_In(a, n: int):
    """Reduce modulo ``I_n = (p, v_1, ..., v_{n-1})``.

    Coefficients land in ``{0, ..., p-1}``; ``n = 0`` is the identity.
    """
    if isinstance(a, PowerSeries1):
        if n <= 0:
            return a
        _kill_names(a.base, n)
        return a.map(lambda c: _reduce_elt(c, n))
    return _reduce_elt(a, n)


# -- units -----------------------------------------------------------------------

def _is_graded_unit(a: Element) -> bool:
    if len(a.terms) != 1:
        return False
    ((m, c),) = a.terms.items()
    r = a.ring
    for e, g in zip(m, r.generators):
        if e and g.kind != INVERTED:
            return False
    return val_p(c, r.p) == 0


def is_unit(a: Element, ring: Ring | None = None) -> bool:
    """Unit test in a graded Laurent ring or a complete local ring.

    Rings with a localized series variable (Tate rings) are rejected.
    """
    r = ring or a.ring
    if any(g.localized for g in r.generators):
        raise UnsupportedRingKind(f"unit test is undefined for localized ring {r!r}")
    if a.ring is not r and not a.ring.compatible(r):
        a = a.to(r)
    if r.series_idx:
        return _is_graded_unit(a.constant_term())
    return _is_graded_unit(a)


# -- membership ---------------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    """``shift * a = sum(multipliers[j] * relations[j])`` to truncation."""

    multipliers: tuple
    shift: dict = field(default_factory=dict)

    def shift_text(self) -> str:
        return "*".join(f"{k}^{v}" if v != 1 else k for k, v in sorted(self.shift.items()) if v) or "1"


@dataclass(frozen=True)
class Nonzero:
    reason: str


@dataclass(frozen=True)
class Unknown:
    reason: str


def relation_member(a: Element, ring: Ring | None = None, relations=None):
    """Decide whether ``a`` lies in the ideal generated by the ring's relations."""
    r = ring or a.ring
    if not a.ring.compatible(r):
        a = a.to(r)
    rels = tuple(relations) if relations is not None else r.relations
    rels = tuple(x if x.ring.compatible(r) else x.to(r) for x in rels)
    if not a:
        return Zero(tuple(r.zero for _ in rels))
    if not rels:
        return _obstruct(a, rels) or Unknown("ring has no relations")

    if len(rels) == 1:
        res = _monic_division(a, rels[0])
        if res is not None:
            return res

    loc = [g.name for g in r.generators if g.localized and (a.uses(g.name) or any(x.uses(g.name) for x in rels))]
    shifts = [{}]
    if loc:
        neg = {n: max(0, -a.min_exponent(n)) for n in loc}
        shifts = [neg, {k: v + 1 for k, v in neg.items()}]
    shifted = []
    for sh in shifts:
        b = a
        for name, k in sh.items():
            if k:
                b = b * r.gen(name, k)
        if b:
            shifted.append((sh, b))
    for sh, b in shifted:
        cert = _quick(b, rels)
        if cert is not None:
            return _as_shift(cert, dict(sh), r)
    last = None
    for sh, b in shifted:
        res = _linear(b, rels)
        if isinstance(res, tuple):
            return Zero(res, {k: v for k, v in sh.items() if v})
        last = res
        if isinstance(last, Nonzero):
            break
    if isinstance(last, Nonzero):
        return last
    obs = _obstruct(a, rels)
    if obs is not None:
        return obs
    return last or Unknown("no certificate found")


def _as_shift(cert, sh: dict, r: Ring) -> Zero:
    """Move negative powers of localized variables in a monomial multiplier into the shift."""
    live = [g for g in cert if g]
    if len(live) == 1 and live[0].is_monomial():
        ((m, _),) = live[0].terms.items()
        for i, e in enumerate(m):
            if e < 0 and r.generators[i].localized:
                name = r.generators[i].name
                sh[name] = sh.get(name, 0) - e
                cert = tuple(g.shift(name, -e) for g in cert)
    return Zero(cert, {k: v for k, v in sh.items() if v})


def verify_certificate(a: Element, cert: Zero, relations=None) -> bool:
    r = a.ring
    rels = relations if relations is not None else r.relations
    lhs = a
    for name, k in cert.shift.items():
        lhs = lhs * r.gen(name, k)
    rhs = r.zero
    for g, rel in zip(cert.multipliers, rels):
        rhs = rhs + g * rel
    return lhs == rhs


def _lead(e: Element):
    return e.sorted_terms()[0]


def _quick(a: Element, rels):
    r = a.ring
    ma, ca = _lead(a)
    for j, rel in enumerate(rels):
        mr, cr = _lead(rel)
        m = tuple(x - y for x, y in zip(ma, mr))
        if any(e < 0 and i not in r.neg_ok for i, e in enumerate(m)):
            continue
        g = Element(r, {m: ca / cr})
        if g * rel == a:
            out = [r.zero] * len(rels)
            out[j] = g
            return tuple(out)
    return None


def _monic_division(a: Element, rel: Element):
    """Exact division by a relation monic in a polynomial generator.

    Applies when ``rel = c*g^d + (lower in g)`` with ``c`` a p-local unit and
    no series variable in play; the remainder is then a normal form.
    """
    r = a.ring
    if any(m[i] for x in (a, rel) for m in x.terms for i in r.series_idx):
        return None
    for gi, g in enumerate(r.generators):
        if g.kind != POLY:
            continue
        d = max(m[gi] for m in rel.terms)
        if d < 1:
            continue
        top = [(m, c) for m, c in rel.terms.items() if m[gi] == d]
        if len(top) != 1:
            continue
        (mt, ct), = top
        if any(e for i, e in enumerate(mt) if i != gi) or val_p(ct, r.p) != 0:
            continue
        rem = dict(a.terms)
        quot: dict = {}
        while True:
            hi = [m for m in rem if m[gi] >= d]
            if not hi:
                break
            m = max(hi, key=lambda mm: mm[gi])
            c = rem[m] / ct
            qm = tuple(e - d if i == gi else e for i, e in enumerate(m))
            quot[qm] = quot.get(qm, 0) + c
            for mr, cr in rel.terms.items():
                mm = tuple(x + y for x, y in zip(qm, mr))
                v = rem.get(mm, 0) - c * cr
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        if rem:
            return Nonzero(f"nonzero remainder after division by the relation monic in {g.name}")
        return Zero((Element(r, quot),))
    return None


def _obstruct(a: Element, rels):
    """Ring-map obstruction: reduce mod p and send polynomial generators to 0
    (optionally series variables too); if relations die but ``a`` survives,
    ``a`` is not in the ideal."""
    r = a.ring
    p = r.p
    kill_sets = [[i for i, g in enumerate(r.generators) if g.kind == POLY]]
    if not any(g.localized for g in r.generators) and r.series_idx:
        kill_sets.append(kill_sets[0] + list(r.series_idx))

    def image(e: Element, kill):
        out = {}
        for m, c in e.terms.items():
            if any(m[i] for i in kill):
                continue
            if int(c.denominator) % p == 0:
                return None
            c = reduce_coeff_mod_p(c, p)
            if c:
                out[m] = (out.get(m, 0) + c) % p
        return {m: c for m, c in out.items() if c}

    for kill in kill_sets:
        ims = [image(x, kill) for x in rels]
        if any(im is None or im for im in ims):
            continue
        ia = image(a, kill)
        if ia:
            what = "polynomial generators" + (" and series variables" if len(kill) > len(kill_sets[0]) else "")
            return Nonzero(f"survives reduction mod {p} with {what} sent to 0, where every relation vanishes")
    return None


# -- linear solving ------------------------------------------------------------

def _candidates(a: Element, rel: Element, exhaustive_ok: bool):
    """Monomial multipliers ``m`` for ``rel`` that can contribute to ``a``."""
    r = a.ring
    N = r.N
    gens = r.generators
    da, dr = a.degree(), rel.degree()
    target = None if da is None or dr is None else da - dr
    ord_r = rel.series_order() or 0
    lo_r = {i: min(m[i] for m in rel.terms) for i in range(r.nvars)}
    hi_r = {i: max(m[i] for m in rel.terms) for i in range(r.nvars)}
    lo_a = {i: min(m[i] for m in a.terms) for i in range(r.nvars)}
    hi_a = {i: max(m[i] for m in a.terms) for i in range(r.nvars)}

    ranges = []
    for i, g in enumerate(gens):
        if g.kind == SERIES:
            lo = min(0, lo_a[i] - hi_r[i]) if g.localized else 0
            ranges.append(range(lo, N - ord_r + (hi_r[i] - lo_r[i]) + 1))
        elif g.kind == INVERTED:
            ranges.append(range(lo_a[i] - hi_r[i] - 1, hi_a[i] - lo_r[i] + 2))
        elif exhaustive_ok and g.degree > 0 and target is not None:
            ranges.append(None)  # bounded by degree below
        else:
            ranges.append(range(0, max(hi_a[i] - lo_r[i], 0) + 2))

    sidx = r.series_idx
    fixed = [i for i, rg in enumerate(ranges) if rg is not None]
    free = [i for i, rg in enumerate(ranges) if rg is None]
    out = []
    for exps in product(*(ranges[i] for i in fixed)):
        m = [0] * r.nvars
        for i, e in zip(fixed, exps):
            m[i] = e
        if sidx and sum(m[i] for i in sidx) + ord_r >= N:
            continue
        deg = sum(m[i] * gens[i].degree for i in fixed)
        if not free:
            if target is None or deg == target:
                out.append(tuple(m))
            continue
        rest = target - deg
        if rest < 0:
            continue
        for tail in _partitions(rest, [gens[i].degree for i in free]):
            mm = list(m)
            for i, e in zip(free, tail):
                mm[i] = e
            out.append(tuple(mm))
    return out


def _partitions(total: int, degs: list[int]):
    if not degs:
        if total == 0:
            yield ()
        return
    d = degs[0]
    for k in range(total // d + 1):
        for rest in _partitions(total - k * d, degs[1:]):
            yield (k,) + rest


def _linear(a: Element, rels):
    r = a.ring
    exhaustive = not any(g.kind == INVERTED or g.localized for g in r.generators) and not any(
        g.kind == POLY and g.degree <= 0 for g in r.generators
    ) and a.degree() is not None and all(x.degree() is not None for x in rels)
    cols = []
    for j, rel in enumerate(rels):
        for m in _candidates(a, rel, exhaustive):
            prod = Element(r, {m: mpq(1)}) * rel
            if prod:
                cols.append((j, m, prod))
    if not cols:
        if exhaustive:
            return Nonzero("no multiplier of the right degree survives truncation")
        return Unknown("no candidate multipliers in the search box")
    row_index: dict = {}
    for _, _, prod in cols:
        for m in prod.terms:
            row_index.setdefault(m, len(row_index))
    extra = [m for m in a.terms if m not in row_index]
    if extra:
        if exhaustive:
            return Nonzero("a has monomials outside the span of all candidate products")
        return Unknown("a has monomials outside the span of the search box")
    rows = [dict() for _ in row_index]
    for c, (_, _, prod) in enumerate(cols):
        for m, v in prod.terms.items():
            rows[row_index[m]][c] = v
    rhs = [mpq(0)] * len(row_index)
    for m, v in a.terms.items():
        rhs[row_index[m]] = v
    status, x = solve_local(rows, rhs, r.p)
    if status == "ok":
        mults = [dict() for _ in rels]
        for c, v in x.items():
            if v:
                j, m, _ = cols[c]
                mults[j][m] = v
        return tuple(Element(r, d) for d in mults)
    if not exhaustive:
        return Unknown(f"linear system {status} within the search box")
    if status == "inconsistent":
        return Nonzero("linear system over Q is inconsistent for every admissible multiplier")
    return Nonzero(f"only non-{r.p}-local multipliers solve the linear system")


def solve_local(rows: list[dict], rhs: list, p: int):
    """Solve ``rows . x = rhs`` over Z_(p).

    Returns ``("ok", x)``, ``("nonlocal", x_rational)`` or ``("inconsistent", None)``.
    Minimal-valuation full pivoting keeps every row operation unimodular over
    Z_(p), so a p-local solution exists iff each ``rhs/pivot`` is p-local.
    """
    rows = [dict(rw) for rw in rows]
    rhs = list(rhs)
    active = set(range(len(rows)))
    pivots = []
    while True:
        best = None
        for i in active:
            for c, v in rows[i].items():
                key = (val_p(v, p), c, i)
                if best is None or key < best[0]:
                    best = (key, i, c)
        if best is None:
            break
        _, pr, pc = best
        active.discard(pr)
        piv = rows[pr][pc]
        prow = rows[pr]
        for i in active:
            v = rows[i].get(pc)
            if v is None:
                continue
            f = v / piv
            row = rows[i]
            for c, w in prow.items():
                nv = row.get(c, 0) - f * w
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            rhs[i] -= f * rhs[pr]
        pivots.append((pr, pc))
    if any(rhs[i] for i in active):
        return "inconsistent", None
    x: dict = {}
    local = True
    for pr, pc in reversed(pivots):
        acc = rhs[pr]
        for c, w in rows[pr].items():
            if c != pc and c in x:
                acc -= w * x[c]
        piv = rows[pr][pc]
        if rhs[pr] and val_p(rhs[pr], p) < val_p(piv, p):
            local = False
        x[pc] = acc / piv
    return ("ok" if local else "nonlocal"), x
