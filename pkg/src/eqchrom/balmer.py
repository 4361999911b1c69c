"""The p-local Balmer spectrum of a finite abelian p-group, combinatorially.

Points are pairs ``(B, n)`` with ``B`` a subgroup id and ``n`` in N or ``INF``.
``point_leq(P, Q)`` is the inclusion ``P ⊆ Q`` of prime ideals.  A closed set is
stored by thresholds: over each ``B`` the points form the chain
``(B,0) ⊇ (B,1) ⊇ ... ⊇ (B,INF)``, so a specialization-closed set is
``{(B, n) : n >= t(B)}`` plus possibly ``(B, INF)`` alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from .errors import NotAdmissible, NotDownwardClosed, PreconditionViolated, SNotInFiniteDomain, TooLarge
from .groups import SubgroupLattice

INF = math.inf


# -- height values ------------------------------------------------------------

def parse_height(v):
    """Accept ints, ``"inf"``/``"∞"`` and numeric strings such as ``"-1"``."""
    if isinstance(v, bool):
        raise ValueError(f"bad height value {v!r}")
    if isinstance(v, (int,)) or v == INF:
        out = v
    elif isinstance(v, float) and v.is_integer():
        out = int(v)
    elif isinstance(v, str) and v.strip().lower() in ("inf", "∞", "infinity"):
        out = INF
    elif isinstance(v, str):
        try:
            out = int(v.strip())
        except ValueError:
            raise ValueError(f"bad height value {v!r}") from None
    else:
        raise ValueError(f"bad height value {v!r}")
    if out != INF and out < -1:
        raise ValueError(f"height values are >= -1, got {out}")
    return out


def format_height(v):
    if v == INF:
        return "inf"
    if v == -1:
        return "-1"
    return int(v)


def _fn(lat: SubgroupLattice, fn) -> dict:
    """Normalize a function to ``{subgroup id: value}``; must be total."""
    out = {}
    for k, v in dict(fn).items():
        out[lat[k].id] = parse_height(v)
    missing = [s.id for s in lat if s.id not in out]
    if missing:
        raise PreconditionViolated(f"function is not total, missing {missing}", missing=missing)
    return out


def from_tuple(lat: SubgroupLattice, values) -> dict:
    """Function given as values in subgroup-id order."""
    values = list(values)
    if len(values) != len(lat):
        raise PreconditionViolated(f"expected {len(lat)} values, got {len(values)}")
    return {s.id: parse_height(v) for s, v in zip(lat, values)}


# -- points ------------------------------------------------------------------

def point_leq(lat: SubgroupLattice, P, Q) -> bool:
    (b, n), (c, m) = P, Q
    if not lat.le(b, c):
        return False
    if n == INF:
        return True
    if m == INF:
        return False
    return n >= m + lat.p_rank(b, c)


def points(lat: SubgroupLattice, n_max: int, with_infinity: bool = True) -> list:
    out = []
    for s in lat:
        out.extend((s.id, n) for n in range(n_max + 1))
        if with_infinity:
            out.append((s.id, INF))
    return out


def point_covers(lat: SubgroupLattice, pts) -> list:
    """Hasse reduction of ``point_leq`` on a finite point set: pairs ``(P, Q)``, ``P < Q``."""
    pts = list(pts)
    lt = {(P, Q) for P in pts for Q in pts if P != Q and point_leq(lat, P, Q)}
    return [
        (P, Q)
        for (P, Q) in sorted(lt, key=_pair_key)
        if not any((P, R) in lt and (R, Q) in lt for R in pts if R not in (P, Q))
    ]


def _pair_key(pq):
    (P, Q) = pq
    return (_pt_key(P), _pt_key(Q))


def _pt_key(P):
    b, n = P
    return (int(b[1:]), math.inf if n == INF else n)


# -- admissibility -------------------------------------------------------------

@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.admissible


def is_admissible(lat: SubgroupLattice, fn) -> Admissibility:
    """``fn(B) <= fn(C) + rk_p(C/B)`` for every pair ``B < C``."""
    f = _fn(lat, fn)
    for B in lat:
        for C in lat:
            if B.index != C.index and lat.leq[B.index][C.index]:
                if f[B.id] > f[C.id] + lat.p_rank(B, C):
                    return Admissibility(False, (B.id, C.id))
    return Admissibility(True)


def enumerate_admissible(lat: SubgroupLattice, value_bound: int) -> list[dict]:
    """All type functions with values in ``{0..value_bound, INF}`` that are admissible."""
    if value_bound > 8:
        raise TooLarge(f"value bound {value_bound} exceeds 8")
    if len(lat) > 12:
        raise TooLarge(f"{len(lat)} subgroups exceeds 12")
    subs = list(lat)
    n = len(subs)
    values = list(range(value_bound + 1)) + [INF]
    # constraints against earlier subgroups, as (j, slack, earlier_is_smaller)
    checks = []
    for i in range(n):
        cs = []
        for j in range(i):
            if lat.leq[j][i]:
                cs.append((j, lat.p_rank(subs[j], subs[i]), True))
            elif lat.leq[i][j]:
                cs.append((j, lat.p_rank(subs[i], subs[j]), False))
        checks.append(cs)
    out = []
    cur = [0] * n

    def rec(i):
        if i == n:
            out.append({s.id: v for s, v in zip(subs, cur)})
            return
        for v in values:
            ok = True
            for j, r, smaller in checks[i]:
                if smaller:
                    if cur[j] > v + r:
                        ok = False
                        break
                elif v > cur[j] + r:
                    ok = False
                    break
            if ok:
                cur[i] = v
                rec(i + 1)

    rec(0)
    return out


# -- closed sets ------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedSet:
    """``thresholds[B] = t`` means ``(B, n)`` is present for all ``n >= t``;
    ``infinity`` lists subgroups whose point ``(B, INF)`` is present."""

    thresholds: dict = field(default_factory=dict)
    infinity: frozenset = frozenset()

    def contains(self, P) -> bool:
        b, n = P
        if n == INF:
            return b in self.infinity
        t = self.thresholds.get(b)
        return t is not None and n >= t

    def points(self, lat, n_max: int) -> frozenset:
        return frozenset(P for P in points(lat, n_max) if self.contains(P))

    def union(self, other: "ClosedSet") -> "ClosedSet":
        th = dict(self.thresholds)
        for b, t in other.thresholds.items():
            th[b] = min(t, th.get(b, t))
        return ClosedSet(th, self.infinity | other.infinity)

    def intersect(self, other: "ClosedSet") -> "ClosedSet":
        th = {b: max(t, other.thresholds[b]) for b, t in self.thresholds.items() if b in other.thresholds}
        return ClosedSet(th, self.infinity & other.infinity)

    def to_json(self) -> dict:
        return {
            "thresholds": dict(sorted(self.thresholds.items(), key=lambda kv: int(kv[0][1:]))),
            "infinity": sorted(self.infinity, key=lambda b: int(b[1:])),
        }


def closed_set_of(lat: SubgroupLattice, fn) -> ClosedSet:
    """``V_n = {(B, i) : i >= n(B)}`` together with ``(B, INF)`` when ``n(B) < INF``."""
    f = _fn(lat, fn)
    if any(v == -1 for v in f.values()):
        raise PreconditionViolated("type functions take values in N ∪ {inf}")
    th = {b: int(v) for b, v in f.items() if v != INF}
    return ClosedSet(th, frozenset(th))


@dataclass(frozen=True)
class Closedness:
    closed: bool
    witness: tuple | None = None  # (Q, P): Q <= P, P in V, Q not in V

    def __bool__(self):
        return self.closed


def is_closed(lat: SubgroupLattice, cs: ClosedSet) -> Closedness:
    """Closed under specialization: ``P in V`` and ``Q <= P`` imply ``Q in V``."""
    for C in lat:
        for B in lat.subgroups_of(C):
            r = lat.p_rank(B, C)
            t = cs.thresholds.get(C.id)
            if t is not None:
                Q = (B.id, t + r)
                if not cs.contains(Q):
                    return Closedness(False, (Q, (C.id, t)))
                if not cs.contains((B.id, INF)):
                    return Closedness(False, ((B.id, INF), (C.id, t)))
            if C.id in cs.infinity and not cs.contains((B.id, INF)):
                return Closedness(False, ((B.id, INF), (C.id, INF)))
    return Closedness(True)


def threshold_function(lat: SubgroupLattice, cs: ClosedSet):
    """Inverse of :func:`closed_set_of` when ``cs`` comes from a type function."""
    out = {}
    for s in lat:
        t = cs.thresholds.get(s.id)
        if t is None:
            if s.id in cs.infinity:
                return None
            out[s.id] = INF
        else:
            if s.id not in cs.infinity:
                return None
            out[s.id] = t
    return out


def type_to_height(fn: dict) -> dict:
    """``m = n - 1`` with ``INF - 1 = INF``: ``V_n^c = U_m``."""
    return {b: (v if v == INF else v - 1) for b, v in fn.items()}


def height_to_type(fn: dict) -> dict:
    return {b: (v if v == INF else v + 1) for b, v in fn.items()}


def height_stratum(lat: SubgroupLattice, n: int) -> ClosedSet:
    """``V_n^A = {(B, m) : m >= n - rk_p(B)}``."""
    th = {s.id: max(n - lat.p_rank(s), 0) for s in lat}
    return ClosedSet(th, frozenset(th))


# -- families -------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    members: frozenset

    def __contains__(self, b):
        return b in self.members

    def sorted(self):
        return sorted(self.members, key=lambda b: int(b[1:]))


def _check_family(lat: SubgroupLattice, members) -> Family:
    ids = frozenset(lat[b].id for b in members)
    for b in ids:
        for c in lat.subgroups_of(b):
            if c.id not in ids:
                raise NotDownwardClosed(f"{c.id} <= {b} but {c.id} is missing", subgroup=c.id, above=b)
    return Family(ids)


def make_family(lat: SubgroupLattice, selector) -> Family:
    """``selector`` is a tuple such as ``("subeq", "S1")``, ``("euler", (1, 0))``,
    ``("union", F, G)`` or ``("explicit", {"S0", "S1"})``."""
    kind, *args = selector
    if kind == "subeq":
        C = lat[args[0]]
        return Family(frozenset(B.id for B in lat if B <= C))
    if kind == "notsupeq":
        C = lat[args[0]]
        return Family(frozenset(B.id for B in lat if not C <= B))
    if kind == "euler":
        alpha = tuple(args[0])
        return Family(frozenset(B.id for B in lat if lat.restricts_trivially(alpha, B)))
    if kind in ("union", "intersect"):
        F, G = (a if isinstance(a, Family) else make_family(lat, a) for a in args)
        return Family(F.members | G.members if kind == "union" else F.members & G.members)
    if kind == "explicit":
        return _check_family(lat, args[0])
    raise ValueError(f"unknown family selector {kind!r}")


def V(lat: SubgroupLattice, F: Family) -> ClosedSet:
    """Points over subgroups in the family."""
    th = {b: 0 for b in F.members}
    return ClosedSet(th, frozenset(th))


def all_families(lat: SubgroupLattice) -> list[Family]:
    """Every downward closed set of subgroups (desk scale only)."""
    out = []
    subs = list(lat)
    for mask in product((False, True), repeat=len(subs)):
        ids = {s.id for s, keep in zip(subs, mask) if keep}
        if all(c.id in ids for b in ids for c in lat.subgroups_of(b)):
            out.append(Family(frozenset(ids)))
    return out


# -- standard functions ---------------------------------------------------------------

def standard_functions(lat: SubgroupLattice, kind: str, arg) -> dict:
    """``h(n)``: ``max(n - rk B, -1)``; ``c(n)``: constant; ``n_alpha``: ``-1`` on ``F_alpha``, else INF."""
    if kind == "h":
        if arg < 0:
            raise PreconditionViolated("h(n) needs n >= 0")
        return {s.id: max(arg - lat.p_rank(s), -1) for s in lat}
    if kind == "c":
        if arg < 0:
            raise PreconditionViolated("c(n) needs n >= 0")
        return {s.id: arg for s in lat}
    if kind == "n_alpha":
        alpha = tuple(arg)
        return {s.id: (-1 if lat.restricts_trivially(alpha, s) else INF) for s in lat}
    raise ValueError(f"unknown standard function {kind!r}")


def restrict(fn: dict, S) -> dict:
    """``n|_S``: agrees with ``n`` on ``S`` and is ``-1`` elsewhere."""
    S = set(S)
    bad = [b for b in S if fn[b] < 0]
    if bad:
        raise PreconditionViolated(f"{bad} lie outside dom_{{>=0}}", subgroups=bad)
    return {b: (v if b in S else -1) for b, v in fn.items()}


def domain(fn: dict, pred) -> set:
    return {b for b, v in fn.items() if pred(v)}


# -- self maps and fracture ----------------------------------------------------------------

@dataclass(frozen=True)
class Allowed:
    def to_json(self):
        return {"result": "Allowed"}


@dataclass(frozen=True)
class Obstructed:
    witness: tuple

    def to_json(self):
        return {"result": "Obstructed", "witness": list(self.witness)}


def obstruction_check(lat: SubgroupLattice, fn, S):
    """Allowed iff ``n + chi_S`` is admissible."""
    f = _fn(lat, fn)
    S = {lat[b].id for b in S}
    bad = sorted(b for b in S if f[b] == INF)
    if bad:
        raise SNotInFiniteDomain(f"{bad} have infinite value", subgroups=bad)
    adm = is_admissible(lat, f)
    if not adm:
        raise NotAdmissible(f"type function violates admissibility at {adm.witness}", witness=adm.witness)
    shifted = {b: v + (1 if b in S else 0) for b, v in f.items()}
    res = is_admissible(lat, shifted)
    return Allowed() if res else Obstructed(res.witness)


def fracture_set(lat: SubgroupLattice, fn1, fn2) -> list:
    """``{(B, m) : n1(B) < m <= n2(B) < INF}``."""
    f1, f2 = _fn(lat, fn1), _fn(lat, fn2)
    for b in f1:
        if f1[b] > f2[b]:
            raise PreconditionViolated(f"n1 <= n2 fails at {b}", clause="pointwise", subgroup=b)
    adm = is_admissible(lat, f1)
    if not adm:
        raise PreconditionViolated(f"n1 is not admissible (witness {adm.witness})", clause="admissible",
                                   witness=adm.witness)
    if domain(f1, lambda v: v == INF) != domain(f2, lambda v: v == INF):
        raise PreconditionViolated("n1 and n2 have different infinite domains", clause="infinite-domain")
    out = []
    for s in lat:
        lo, hi = f1[s.id], f2[s.id]
        if hi != INF:
            out.extend((s.id, m) for m in range(int(lo) + 1, int(hi) + 1))
    return out


@dataclass(frozen=True)
class EPhi:
    kind: str  # Identity | Localize | Zero
    m: int | None = None

    def to_json(self):
        return {"result": self.kind} | ({"m": self.m} if self.m is not None else {})


def ephi_behavior(lat: SubgroupLattice, fn, C) -> EPhi:
    f = _fn(lat, fn)
    adm = is_admissible(lat, f)
    if not adm:
        raise NotAdmissible(f"height function violates admissibility at {adm.witness}", witness=adm.witness)
    v = f[lat[C].id]
    if v == INF:
        return EPhi("Identity")
    if v == -1:
        return EPhi("Zero")
    return EPhi("Localize", int(v))
