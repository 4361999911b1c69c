"""Sparse exact polynomial / truncated power series rings.

A :class:`Ring` is a list of graded generators of three kinds:

* ``polynomial`` -- ordinary polynomial variables (``v1``, ``b2``, ...),
* ``inverted``   -- Laurent variables (``e`` in a geometric fixed point ring),
* ``series``     -- power series variables, truncated jointly: a monomial is
  kept only while its total series degree is ``< N``.  A series variable can
  additionally be *localized*, which permits negative exponents (Tate rings).

Elements are dicts ``exponent tuple -> mpq``.  Everything is exact.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from itertools import product

from gmpy2 import mpq

from ..errors import (
    MissingGenerator,
    NegativePowerOfNonUnit,
    NotPLocal,
    ParseError,
    RingMismatch,
)

POLY = "polynomial"
INVERTED = "inverted"
SERIES = "series"
KINDS = (POLY, INVERTED, SERIES)

SET_TO_ZERO = "set-to-zero"
CERTIFICATE_ONLY = "certificate-only"

_add = operator.add


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    kind: str = POLY
    localized: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.localized and self.kind != SERIES:
            raise ValueError("only series variables can be localized")


def as_mpq(c) -> mpq:
    if isinstance(c, str):
        num, _, den = c.partition("/")
        return mpq(int(num), int(den or 1))
    return mpq(c)


def val_p(c: mpq, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if c == 0:
        raise ValueError("valuation of zero")
    v = 0
    num, den = int(c.numerator), int(c.denominator)
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def reduce_coeff_mod_p(c: mpq, p: int) -> int:
    den = int(c.denominator)
    if den % p == 0:
        raise NotPLocal(f"coefficient {c} is not {p}-local", coefficient=str(c))
    return int(c.numerator) * pow(den, -1, p) % p


class Ring:
    """Graded ring over Z_(p) (coefficients stored in Q).

    ``relations`` is a tuple of ``(Element, tag)`` pairs.  ``set-to-zero``
    relations must be monomials and are applied as rewrites; all others are
    only used through certificates (see :mod:`eqchrom.series.ideal`).
    """

    def __init__(self, p: int, generators, N: int = 9, relations=(), name: str = ""):
        gens = tuple(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if N < 1:
            raise ValueError("truncation order N must be >= 1")
        self.p = int(p)
        self.generators = gens
        self.N = int(N)
        self.name = name
        self.index = {g.name: i for i, g in enumerate(gens)}
        self.nvars = len(gens)
        self.series_idx = tuple(i for i, g in enumerate(gens) if g.kind == SERIES)
        self.neg_ok = frozenset(
            i for i, g in enumerate(gens) if g.kind == INVERTED or g.localized
        )
        self.key = (self.p, gens, self.N)
        self._zero_monos: tuple = ()
        rels = []
        for r in relations:
            elt, tag = r if isinstance(r, tuple) else (r, CERTIFICATE_ONLY)
            elt = elt.to(self)
            if tag == SET_TO_ZERO and len(elt.terms) != 1:
                raise ValueError("set-to-zero relations must be monomials")
            rels.append((elt, tag))
        self._zero_monos = tuple(
            next(iter(elt.terms)) for elt, tag in rels if tag == SET_TO_ZERO
        )
        self.relation_tags = tuple(tag for _, tag in rels)
        self.relations = tuple(Element(self, elt.terms) for elt, _ in rels)

    # construction helpers -------------------------------------------------
    def __repr__(self):
        gens = ", ".join(
            g.name + ("^±" if g.kind == INVERTED else "") + ("[[]]" if g.kind == SERIES else "")
            for g in self.generators
        )
        label = f"{self.name} " if self.name else ""
        return f"<Ring {label}p={self.p} N={self.N} [{gens}]>"

    def compatible(self, other: "Ring") -> bool:
        return self is other or self.key == other.key

    def with_relations(self, relations, name=None) -> "Ring":
        return Ring(self.p, self.generators, self.N, relations, name or self.name)

    def with_N(self, N: int) -> "Ring":
        rels = [(r, t) for r, t in zip(self.relations, self.relation_tags)]
        out = Ring(self.p, self.generators, N, (), self.name)
        return out.with_relations([(r.to(out), t) for r, t in rels]) if rels else out

    def localize(self, names, name=None) -> "Ring":
        gens = [
            Generator(g.name, g.degree, g.kind, True) if g.name in names else g
            for g in self.generators
        ]
        base = Ring(self.p, gens, self.N, (), name or self.name)
        rels = [(r.to(base), t) for r, t in zip(self.relations, self.relation_tags)]
        return base.with_relations(rels) if rels else base

    def extend(self, generators, N=None, name=None, keep_relations=True) -> "Ring":
        base = Ring(self.p, self.generators + tuple(generators), N or self.N, (), name or self.name)
        if keep_relations and self.relations:
            rels = [(r.to(base), t) for r, t in zip(self.relations, self.relation_tags)]
            return base.with_relations(rels)
        return base

    def without_relations(self) -> "Ring":
        return Ring(self.p, self.generators, self.N, (), self.name)

    # elements ---------------------------------------------------------------
    def element(self, terms) -> "Element":
        return Element(self, terms)

    def const(self, c) -> "Element":
        c = as_mpq(c)
        return Element(self, {(0,) * self.nvars: c} if c else {}, canonical=True)

    @property
    def zero(self) -> "Element":
        return Element(self, {}, canonical=True)

    @property
    def one(self) -> "Element":
        return self.const(1)

    def gen(self, name: str, power: int = 1) -> "Element":
        try:
            i = self.index[name]
        except KeyError:
            raise MissingGenerator(f"ring has no generator {name!r}", generator=name) from None
        m = [0] * self.nvars
        m[i] = power
        if power < 0 and i not in self.neg_ok:
            raise NegativePowerOfNonUnit(f"{name} is not invertible in this ring")
        return Element(self, {tuple(m): mpq(1)})

    def monomial(self, exps: dict, coeff=1) -> "Element":
        m = [0] * self.nvars
        for k, v in exps.items():
            m[self.index[k]] = v
        return Element(self, {tuple(m): as_mpq(coeff)})

    def has(self, name: str) -> bool:
        return name in self.index

    def mono_degree(self, m) -> int:
        return sum(e * g.degree for e, g in zip(m, self.generators))

    def series_degree(self, m) -> int:
        return sum(m[i] for i in self.series_idx)

    def parse(self, text: str) -> "Element":
        """Parse canonical text such as ``"v1*e^2 + 2*e^-3 - 1/2*v2"``."""
        src = text.replace("^", "**").strip()
        if not src:
            raise ParseError("empty expression")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
        return _eval_ast(self, tree.body, text)


def _eval_ast(ring: Ring, node, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return ring.const(node.value)
    if isinstance(node, ast.Name):
        return ring.gen(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_ast(ring, node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval_ast(ring, node.left, text)
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ParseError(f"non-integer exponent in {text!r}")
            return base ** (sign * exp.value)
        left = _eval_ast(ring, node.left, text)
        right = _eval_ast(ring, node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise ParseError(f"division by non-scalar in {text!r}")
            return left * (1 / right.constant_coeff())
    raise ParseError(f"unsupported syntax in {text!r}")


class Element:
    """Immutable sparse element of a :class:`Ring`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms, canonical: bool = False):
        self.ring = ring
        if canonical:
            self.terms = terms
            return
        N = ring.N
        sidx = ring.series_idx
        zm = ring._zero_monos
        clean = {}
        for m, c in terms.items():
            if not c:
                continue
            m = tuple(m)
            if sidx and sum(m[i] for i in sidx) >= N:
                continue
            if zm and any(all(a >= b for a, b in zip(m, z)) for z in zm):
                continue
            clean[m] = as_mpq(c)
        self.terms = clean

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if not self.ring.compatible(other.ring):
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, type(mpq(0)))):
            return self.ring.const(other)
        from fractions import Fraction

        if isinstance(other, Fraction):
            return self.ring.const(mpq(other.numerator, other.denominator))
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Element(self.ring, out, canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.ring, {m: -c for m, c in self.terms.items()}, canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = as_mpq(c)
        if not c:
            return self.ring.zero
        return Element(self.ring, {m: v * c for m, v in self.terms.items()}, canonical=True)

    def __mul__(self, other):
        if isinstance(other, int) or type(other) is type(mpq(0)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.ring, _mul_terms(self.ring, self.terms, other.terms), canonical=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, type(mpq(0)))):
            return self.scale(1 / mpq(other))
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ring.compatible(other.ring) and self.terms == other.terms
        if isinstance(other, (int, type(mpq(0)))):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.key, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure queries ----------------------------------------------------
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_coeff(self) -> mpq:
        return self.terms.get((0,) * self.ring.nvars, mpq(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degrees(self) -> set:
        return {self.ring.mono_degree(m) for m in self.terms}

    def degree(self):
        """Homogeneous degree, or ``None`` for inhomogeneous (or zero) elements."""
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def series_order(self):
        """Smallest total series degree among terms (``None`` for zero)."""
        if not self.terms:
            return None
        r = self.ring
        return min(r.series_degree(m) for m in self.terms)

    def min_exponent(self, name: str) -> int:
        i = self.ring.index[name]
        return min((m[i] for m in self.terms), default=0)

    def max_exponent(self, name: str) -> int:
        i = self.ring.index[name]
        return max((m[i] for m in self.terms), default=0)

    def uses(self, name: str) -> bool:
        i = self.ring.index.get(name)
        return i is not None and any(m[i] for m in self.terms)

    def coeff(self, exps: dict | tuple) -> mpq:
        if isinstance(exps, dict):
            m = [0] * self.ring.nvars
            for k, v in exps.items():
                m[self.ring.index[k]] = v
            exps = tuple(m)
        return self.terms.get(tuple(exps), mpq(0))

    def constant_term(self) -> "Element":
        """Image under series variables -> 0 (terms with no series exponent)."""
        sidx = self.ring.series_idx
        return Element(
            self.ring,
            {m: c for m, c in self.terms.items() if all(m[i] == 0 for i in sidx)},
            canonical=True,
        )

    def is_p_local(self) -> bool:
        p = self.ring.p
        return all(int(c.denominator) % p for c in self.terms.values())

    def truncate(self, N: int) -> "Element":
        r = self.ring
        return Element(r, {m: c for m, c in self.terms.items() if r.series_degree(m) < N}, canonical=True)

    def map_coefficients(self, fn) -> "Element":
        return Element(self.ring, {m: fn(c) for m, c in self.terms.items()})

    def filter(self, pred) -> "Element":
        return Element(self.ring, {m: c for m, c in self.terms.items() if pred(m, c)}, canonical=True)

    def shift(self, name: str, k: int) -> "Element":
        """Multiply by ``name^k`` without truncation loss bookkeeping."""
        i = self.ring.index[name]
        out = {}
        for m, c in self.terms.items():
            mm = list(m)
            mm[i] += k
            out[tuple(mm)] = c
        return Element(self.ring, out)

    # -- inversion ------------------------------------------------------------
    def is_unit_monomial(self) -> bool:
        if len(self.terms) != 1:
            return False
        (m,) = self.terms
        return all(e == 0 or i in self.ring.neg_ok for i, e in enumerate(m))

    def inverse(self) -> "Element":
        """Multiplicative inverse.

        Works for unit monomials (nonzero scalar times invertible variables),
        and for ``u*(1 + t)`` where ``u`` is the lowest-series-degree part,
        ``u`` is a unit monomial and ``t`` has positive series degree.
        """
        r = self.ring
        if not self.terms:
            raise NegativePowerOfNonUnit("zero is not invertible")
        if self.is_unit_monomial():
            ((m, c),) = self.terms.items()
            return Element(r, {tuple(-e for e in m): 1 / c})
        if not r.series_idx:
            raise NegativePowerOfNonUnit(f"{self.text()} is not a unit monomial")
        low = min(r.series_degree(m) for m in self.terms)
        lead = self.filter(lambda m, c: r.series_degree(m) == low)
        if not lead.is_unit_monomial():
            raise NegativePowerOfNonUnit(f"leading part {lead.text()} is not a unit")
        u_inv = lead.inverse()
        t = (self - lead) * u_inv  # positive series degree
        acc = r.one
        term = r.one
        for _ in range(r.N + abs(low) + 1):
            term = -(term * t)
            if not term:
                break
            acc = acc + term
        return acc * u_inv

    # -- ring maps --------------------------------------------------------------
    def to(self, target: Ring) -> "Element":
        """Re-home into ``target`` by generator name (no truncation loss except target N)."""
        src = self.ring
        if src.compatible(target):
            if src is target:
                return self
            return Element(target, self.terms, canonical=not target._zero_monos)
        pos = []
        for i, g in enumerate(src.generators):
            if any(m[i] for m in self.terms):
                j = target.index.get(g.name)
                if j is None:
                    raise MissingGenerator(
                        f"target ring lacks generator {g.name!r}", generator=g.name
                    )
                pos.append((i, j))
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            mm = [0] * n
            for i, j in pos:
                mm[j] = m[i]
            out[tuple(mm)] = c
        return Element(target, out)

    def hom(self, target: Ring, images: dict | None = None) -> "Element":
        """Evaluate a ring map: generators in ``images`` map to the given
        elements of ``target``; all others map to the same-named generator."""
        images = images or {}
        src = self.ring
        used = [i for i in range(src.nvars) if any(m[i] for m in self.terms)]
        img = {}
        for i in used:
            name = src.generators[i].name
            if name in images:
                v = images[name]
                img[i] = v if isinstance(v, Element) and v.ring.compatible(target) else _lift(target, v)
            else:
                img[i] = target.gen(name)
        cache: dict = {}

        def power(i, e):
            key = (i, e)
            v = cache.get(key)
            if v is None:
                if e < 0:
                    v = power(i, -1) ** (-e) if e != -1 else img[i].inverse()
                elif e == 1:
                    v = img[i]
                else:
                    h = e // 2
                    v = power(i, h) * power(i, e - h)
                cache[key] = v
            return v

        acc = {}
        one = target.one
        for m, c in self.terms.items():
            t = one
            for i in used:
                if m[i]:
                    t = t * power(i, m[i])
            for mm, cc in t.terms.items():
                v = acc.get(mm)
                acc[mm] = cc * c if v is None else v + cc * c
        return Element(target, acc)

    # -- formatting -------------------------------------------------------------
    def sorted_terms(self):
        r = self.ring
        return sorted(
            self.terms.items(),
            key=lambda mc: (r.series_degree(mc[0]), sum(abs(e) for e in mc[0]), tuple(-e for e in mc[0])),
        )

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = _mono_text(self.ring, m)
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = _coeff_text(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_coeff_text(a)}*{mono}"
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = text

    def __repr__(self):
        return f"Element({self.text()})"


def _lift(target: Ring, v) -> Element:
    if isinstance(v, Element):
        return v.to(target)
    return target.const(v)


def _coeff_text(c: mpq) -> str:
    return str(int(c.numerator)) if c.denominator == 1 else f"{int(c.numerator)}/{int(c.denominator)}"


def _mono_text(ring: Ring, m) -> str:
    parts = []
    for e, g in zip(m, ring.generators):
        if e == 1:
            parts.append(g.name)
        elif e:
            parts.append(f"{g.name}^{e}")
    return "*".join(parts)


def _mul_terms(ring: Ring, A: dict, B: dict) -> dict:
    if not A or not B:
        return {}
    out: dict = {}
    get = out.get
    sidx = ring.series_idx
    zm = ring._zero_monos
    if not sidx:
        for ma, ca in A.items():
            for mb, cb in B.items():
                m = tuple(map(_add, ma, mb))
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
    else:
        N = ring.N
        sb = sorted(((sum(mb[i] for i in sidx), mb, cb) for mb, cb in B.items()), key=operator.itemgetter(0))
        for ma, ca in A.items():
            lim = N - sum(ma[i] for i in sidx)
            for db, mb, cb in sb:
                if db >= lim:
                    break
                m = tuple(map(_add, ma, mb))
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
    if zm:
        return {
            m: c for m, c in out.items()
            if c and not any(all(a >= b for a, b in zip(m, z)) for z in zm)
        }
    return {m: c for m, c in out.items() if c}


def monomials_up_to(nvars: int, idx, total: int):
    """Exponent vectors supported on ``idx`` with total degree ``<= total``."""
    idx = tuple(idx)
    if not idx:
        yield (0,) * nvars
        return
    for exps in product(range(total + 1), repeat=len(idx)):
        if sum(exps) <= total:
            m = [0] * nvars
            for i, e in zip(idx, exps):
                m[i] = e
            yield tuple(m)
