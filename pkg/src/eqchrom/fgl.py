"""One-dimensional formal group laws over graded rings.

``F(x, y) = sum a_ij x^i y^j`` is kept to total degree ``M``.  Laws are built
from logarithms as ``exp(log x + log y)``; the universal p-typical laws use
Araki or Hazewinkel generators ``v_i`` of degree ``2(p^i - 1)`` with ``x`` in
degree ``-2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .balmer import INF
from .errors import (
    BadLogLinearTerm,
    CongruenceFails,
    ConventionSelfTestFailed,
    MissingGenerator,
    NotOverPrimeField,
)
from .series import (
    PowerSeries1,
    Element,
    Generator,
    Ring,
    SERIES,
    is_unit,
    reduce_mod_In,
    relation_member,
    Zero,
)
from .series.ring import reduce_coeff_mod_p

ARAKI = "araki"
HAZEWINKEL = "hazewinkel"


def bp_ring(p: int, V: int, name: str = "") -> Ring:
    gens = [Generator(f"v{i}", 2 * (p**i - 1)) for i in range(1, V + 1)]
    return Ring(p, gens, N=1, name=name or f"BP[v1..v{V}]")


def scalar_ring(p: int) -> Ring:
    return Ring(p, [], N=1, name="Z_(p)")


class FGL:
    def __init__(self, base: Ring, coeffs: dict, M: int, log: PowerSeries1 | None = None, name: str = ""):
        self.base = base
        self.M = M
        self.coeffs = {k: v for k, v in coeffs.items() if v and k[0] + k[1] <= M}
        self.log = log
        self.name = name
        self._conv: dict = {}

    # -- construction -----------------------------------------------------------
    @classmethod
    def from_coefficients(cls, base: Ring, coeffs: dict, M: int, name: str = "") -> "FGL":
        cs = {k: (v if isinstance(v, Element) else base.const(v)) for k, v in coeffs.items()}
        return cls(base, cs, M, name=name)

    @classmethod
    def additive(cls, base: Ring, M: int) -> "FGL":
        return cls.from_coefficients(base, {(1, 0): 1, (0, 1): 1}, M, "additive")

    @classmethod
    def multiplicative(cls, base: Ring, M: int, u=1) -> "FGL":
        return cls.from_coefficients(base, {(1, 0): 1, (0, 1): 1, (1, 1): u}, M, "multiplicative")

    def two_var_ring(self, names=("x", "y")) -> Ring:
        return self.base.extend([Generator(n, -2, SERIES) for n in names], N=self.M + 1, keep_relations=False)

    def as_element(self, ring: Ring | None = None, names=("x", "y")) -> Element:
        S = ring or self.two_var_ring(names)
        x, y = S.gen(names[0]), S.gen(names[1])
        return self.evaluate(x, y)

    def coef(self, i: int, j: int) -> Element:
        if i + j > self.M:
            raise IndexError(f"a_{i}{j} beyond truncation M = {self.M}")
        return self.coeffs.get((i, j), self.base.zero)

    def _coeffs_in(self, T: Ring) -> dict:
        got = self._conv.get(T.key)
        if got is None:
            got = {k: (v if v.ring.compatible(T) else v.to(T)) for k, v in self.coeffs.items()}
            self._conv[T.key] = got
        return got

    # -- evaluation -------------------------------------------------------------
    def evaluate(self, X: Element, Y: Element) -> Element:
        """``F(X, Y)`` for ``X, Y`` in a common ring; both should be topologically nilpotent."""
        T = X.ring
        if not Y.ring.compatible(T):
            Y = Y.to(T)
        cs = self._coeffs_in(T)
        M = self.M
        ypow = [T.one]
        for _ in range(M):
            ypow.append(ypow[-1] * Y)
        acc = T.zero
        for i in range(M, -1, -1):
            Pi = T.zero
            for j in range(M - i + 1):
                c = cs.get((i, j))
                if c is not None and ypow[j]:
                    Pi = Pi + c * ypow[j]
            acc = acc * X + Pi
        return acc

    def translation_series(self, X: Element, order: int, var: str = "z") -> PowerSeries1:
        """``X +_F z`` as a series in ``z`` over ``X.ring``.

        The ``z^i`` coefficient is ``sum_j a_ji X^j``, computed directly so it
        is exact to the ring's truncation when ``M >= i + N - 1``.
        """
        T = X.ring
        cs = self._coeffs_in(T)
        order = min(order, self.M)
        top = self.M
        xpow = [T.one]
        for _ in range(top):
            xpow.append(xpow[-1] * X)
        out = []
        for i in range(order + 1):
            acc = T.zero
            for j in range(top - i + 1):
                c = cs.get((j, i))
                if c is not None and xpow[j]:
                    acc = acc + c * xpow[j]
            out.append(acc)
        return PowerSeries1(T, out, order, var)

    def add_series(self, f: PowerSeries1, g: PowerSeries1) -> PowerSeries1:
        """``F(f(x), g(x))`` as a one-variable series over the base."""
        order = min(f.order, g.order, self.M)
        S = self.base.extend([Generator(f.var, -2, SERIES)], N=order + 1, keep_relations=False)
        X = f.to_element(S)
        Y = g.to_element(S)
        return PowerSeries1.from_element(self.evaluate(X, Y), f.var, self.base, order)

    def sum_series(self, terms) -> PowerSeries1:
        terms = list(terms)
        acc = terms[0]
        for t in terms[1:]:
            acc = self.add_series(acc, t)
        return acc

    def x_series(self, order: int | None = None, var: str = "x") -> PowerSeries1:
        return PowerSeries1.x(self.base, self.M if order is None else order, var)

    def inverse_series(self, order: int | None = None) -> PowerSeries1:
        """Formal inverse ``i(x)`` with ``F(x, i(x)) = 0``."""
        M = self.M if order is None else order
        x = self.x_series(M)
        coeffs = [self.base.zero, -self.base.one] + [self.base.zero] * (M - 1)
        for k in range(2, M + 1):
            cur = PowerSeries1(self.base, coeffs, M, "x")
            c = self.add_series(x, cur)[k]
            coeffs[k] = coeffs[k] - c
        return PowerSeries1(self.base, coeffs, M, "x")

    def n_series(self, n: int, order: int | None = None) -> PowerSeries1:
        """``[n](x)``: ``[0] = 0``, ``[n+1](x) = F(x, [n](x))``, negatives via the inverse."""
        M = self.M if order is None else order
        x = self.x_series(M)
        if n == 0:
            return PowerSeries1(self.base, [], M, "x")
        unit = x if n > 0 else self.inverse_series(M)
        acc = unit
        # double-and-add on the formal group
        k = abs(n)
        result = None
        while k:
            if k & 1:
                result = acc if result is None else self.add_series(result, acc)
            k >>= 1
            if k:
                acc = self.add_series(acc, acc)
        return result

    # -- checks -------------------------------------------------------------------
    def verify_axioms(self) -> dict:
        """Residuals (as elements) of unit, commutativity and associativity."""
        M = self.M
        unit = [k for k, v in self.coeffs.items() if k[1] == 0 and k != (1, 0)]
        unit += [k for k, v in self.coeffs.items() if k[0] == 0 and k != (0, 1)]
        if self.coef(1, 0) != 1 or self.coef(0, 1) != 1:
            unit.append((1, 0))
        comm = [k for k in self.coeffs if self.coeffs[k] != self.coef(k[1], k[0])]
        S = self.base.extend([Generator(n, -2, SERIES) for n in ("x", "y", "z")], N=M + 1, keep_relations=False)
        x, y, z = S.gen("x"), S.gen("y"), S.gen("z")
        lhs = self.evaluate(self.evaluate(x, y), z)
        rhs = self.evaluate(x, self.evaluate(y, z))
        assoc = lhs - rhs
        return {
            "unit": sorted(set(unit)),
            "commutativity": sorted(comm),
            "associativity": assoc,
            "ok": not unit and not comm and assoc.is_zero(),
        }

    def is_p_integral(self) -> bool:
        return all(c.is_p_local() for c in self.coeffs.values())

    def specialize(self, images: dict, target: Ring | None = None) -> "FGL":
        """Apply a ring map to the coefficients (unnamed generators map to 0)."""
        target = target or scalar_ring(self.base.p)
        imgs = {g.name: images.get(g.name, 0) for g in self.base.generators}
        cs = {k: v.hom(target, imgs) for k, v in self.coeffs.items()}
        return FGL(target, cs, self.M, name=f"{self.name}|specialized")

    def reduce_mod_p(self) -> "FGL":
        """Coefficients mod p; requires constant, p-local coefficients."""
        p = self.base.p
        cs = {}
        for k, v in self.coeffs.items():
            if not v.is_constant():
                raise NotOverPrimeField(f"coefficient a_{k[0]}{k[1]} = {v.text()} is not a scalar")
            if not v.is_p_local():
                raise NotOverPrimeField(f"coefficient a_{k[0]}{k[1]} = {v.text()} is not {p}-local")
            cs[k] = self.base.const(reduce_coeff_mod_p(v.constant_coeff(), p))
        return FGL(self.base, cs, self.M, name=f"{self.name} mod {p}")

    def text(self) -> str:
        return self.as_element().text()


def fgl_from_log(log: PowerSeries1, M: int | None = None, name: str = "") -> FGL:
    """``F(x, y) = exp(log x + log y)`` with ``exp`` the compositional inverse."""
    if log[0] or log.order < 1 or log[1] != 1:
        raise BadLogLinearTerm(f"logarithm must be x + O(x^2), got {log.text()}")
    M = log.order if M is None else min(M, log.order)
    base = log.base
    exp = log.truncate(M).reverse()
    S = base.extend([Generator("x", -2, SERIES), Generator("y", -2, SERIES)], N=M + 1, keep_relations=False)
    lx = log.truncate(M).to_element(S, "x")
    ly = log.truncate(M).to_element(S, "y")
    w = lx + ly
    F = S.zero
    wk = S.one
    for k in range(1, M + 1):
        wk = wk * w
        c = exp[k]
        if c:
            F = F + c.to(S) * wk
    ix, iy = S.index["x"], S.index["y"]
    keep = [i for i in range(S.nvars) if i not in (ix, iy)]
    buckets: dict = {}
    for m, c in F.terms.items():
        buckets.setdefault((m[ix], m[iy]), {})[tuple(m[i] for i in keep)] = c
    coeffs = {k: Element(base, v) for k, v in buckets.items()}
    return FGL(base, coeffs, M, log=log.truncate(M), name=name)


def p_typical_log(p: int, convention: str, V: int, M: int, base: Ring | None = None) -> PowerSeries1:
    base = base or bp_ring(p, V)

    def v(k):
        return base.gen(f"v{k}") if 1 <= k <= V else base.zero

    ms = [base.one]
    n = 1
    while p**n <= M:
        if convention == ARAKI:
            acc = v(n)
            for i in range(1, n):
                acc = acc + ms[i] * v(n - i) ** (p**i)
            ms.append(acc.scale(mpq(1, p - p ** (p**n))))
        elif convention == HAZEWINKEL:
            acc = base.zero
            for i in range(n):
                acc = acc + ms[i] * v(n - i) ** (p**i)
            ms.append(acc.scale(mpq(1, p)))
        else:
            raise ValueError(f"unknown convention {convention!r}")
        n += 1
    coeffs = [base.zero] * (M + 1)
    for k, m in enumerate(ms):
        coeffs[p**k] = m
    return PowerSeries1(base, coeffs, M, "x")


def p_typical(p: int, convention: str = ARAKI, V: int = 3, M: int = 9, check: bool = True) -> FGL:
    if V < 1:
        raise ValueError("V must be >= 1")
    base = bp_ring(p, V)
    log = p_typical_log(p, convention, V, M, base)
    F = fgl_from_log(log, M, name=f"{convention} p={p}")
    F.convention = convention
    if check:
        if not F.is_p_integral():
            raise ConventionSelfTestFailed("formal group law has non-p-local coefficients")
        if convention == ARAKI:
            res = araki_residual(F)
            if not all(c.is_zero() for c in res.coeffs):
                raise ConventionSelfTestFailed(f"[p](x) - sum^F v_i x^(p^i) = {res.text()}")
    return F


def araki_residual(F: FGL) -> PowerSeries1:
    """``[p](x) - sum^F_i v_i x^{p^i}`` with ``v_0 = p``."""
    p, M, base = F.base.p, F.M, F.base
    terms = []
    i = 0
    while p**i <= M:
        c = base.const(p) if i == 0 else (base.gen(f"v{i}") if base.has(f"v{i}") else base.zero)
        cs = [base.zero] * (M + 1)
        cs[p**i] = c
        terms.append(PowerSeries1(base, cs, M, "x"))
        i += 1
    return F.n_series(p) - F.sum_series(terms)


# -- heights and v_n generators --------------------------------------------------

@dataclass(frozen=True)
class AtLeast:
    bound: int

    def __str__(self):
        return f"AtLeast({self.bound})"


def height_over_field(F: FGL, bound: int):
    """Least ``n`` with ``[p](x) = c x^{p^n} + ...``, ``c != 0`` in F_p."""
    Fp = F.reduce_mod_p()
    p = F.base.p
    ps = Fp.n_series(p).map(lambda c: c.map_coefficients(lambda a: reduce_coeff_mod_p(a, p)))
    n = 0
    while p**n <= ps.order and n <= bound:
        k = p**n
        lower = [j for j in range(1, k) if ps[j]]
        if lower:
            raise CongruenceFails(f"[p](x) mod p has a term x^{lower[0]} below x^{k}")
        if ps[k]:
            return n
        n += 1
    return AtLeast(n - 1 if p ** (n - 1) <= ps.order else n)


@dataclass(frozen=True)
class VnCheck:
    ok: bool
    n: object
    unit: Element | None = None
    reduced: Element | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def vn_generator_check(x: Element, ring: Ring | None = None, n=0) -> VnCheck:
    """``x ≐≡ v_n mod I_n`` with ``v_0 = p``; ``-1`` means ``x = 0``, ``INF`` means unit."""
    r = ring or x.ring
    if not x.ring.compatible(r):
        x = x.to(r)
    if n == -1:
        if x.is_zero():
            return VnCheck(True, n, detail="x = 0")
        res = relation_member(x)
        return VnCheck(isinstance(res, Zero), n, detail=type(res).__name__)
    if n == INF:
        return VnCheck(is_unit(x, r), n)
    p = r.p
    if n == 0:
        y = x.scale(mpq(1, p))
        ok = y.is_p_local() and bool(y) and is_unit(y, r)
        return VnCheck(ok, n, unit=y if ok else None)
    name = f"v{n}"
    if not r.has(name):
        raise MissingGenerator(f"ring has no generator {name}", generator=name)
    red = reduce_mod_In(x, n)
    iv = r.index[name]
    if not red or any(m[iv] < 1 for m in red.terms):
        return VnCheck(False, n, reduced=red, detail=f"reduction is not divisible by {name}")
    u_red = red.shift(name, -1)
    if not is_unit(u_red, r):
        return VnCheck(False, n, reduced=red, detail="cofactor is not a unit")
    kill = [r.index[f"v{i}"] for i in range(1, n)]
    lifted = {}
    for m, c in x.terms.items():
        if any(m[i] for i in kill) or reduce_coeff_mod_p(c, p) == 0:
            continue
        lifted[m] = c
    unit = Element(r, lifted).shift(name, -1)
    return VnCheck(True, n, unit=unit, reduced=red)


# -- congruences -----------------------------------------------------------------------

@dataclass
class CongruenceReport:
    p: int
    n: int
    convention: str
    reduced: PowerSeries1
    below_vanish: bool
    leading: VnCheck
    next: VnCheck
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.below_vanish and self.leading.ok and self.next.ok

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "convention": self.convention,
            "reduced_series": self.reduced.text(),
            "below_vanish": self.below_vanish,
            "leading_unit": self.leading.unit.text() if self.leading.unit is not None else None,
            "next_unit": self.next.unit.text() if self.next.unit is not None else None,
            "ok": self.ok,
        }


def two_series_congruence(p: int, n: int, V: int | None = None, M: int | None = None,
                          convention: str = ARAKI, F: FGL | None = None,
                          raise_on_fail: bool = True) -> CongruenceReport:
    """Check ``[p](x) ≡ v_{n-1} x^{p^{n-1}} + v_n x^{p^n} + ... mod I_{n-1}`` up to units."""
    if n < 1:
        raise ValueError("n must be >= 1")
    V = n if V is None else V
    M = p**n + 1 if M is None else M
    if V < n or M < p**n:
        raise ValueError(f"need V >= {n} and M >= {p**n}")
    F = F or p_typical(p, convention, V, M)
    ps = F.n_series(p)
    red = reduce_mod_In(ps, n - 1)
    lo = p ** (n - 1)
    below = all(not red[j] for j in range(lo))
    lead = vn_generator_check(ps[lo], F.base, n - 1)
    nxt = vn_generator_check(ps[p**n], F.base, n)
    rep = CongruenceReport(p, n, convention, red, below, lead, nxt)
    if raise_on_fail and not rep.ok:
        raise CongruenceFails(f"[p]-series pattern fails for n = {n}", report=str(rep.to_json()))
    return rep
