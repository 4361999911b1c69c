"""Finite abelian p-groups ``Z/p^k1 x ... x Z/p^kr`` and their subgroup lattices.

Subgroups are stored as explicit sorted element tuples; ids ``S0, S1, ...``
follow the (order, lexicographic element list) sort so they are stable.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .errors import GroupTooLarge, InvalidGroupSpec, NotASubgroup

DEFAULT_BOUND_EXP = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class PGroupSpec:
    p: int
    exponents: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(k) for k in self.exponents))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise InvalidGroupSpec(f"p = {self.p!r} is not prime")
        if any(k < 1 for k in self.exponents):
            raise InvalidGroupSpec("exponents must be positive")
        if list(self.exponents) != sorted(self.exponents, reverse=True):
            raise InvalidGroupSpec("exponents must be nonincreasing")

    @classmethod
    def parse(cls, text: str) -> "PGroupSpec":
        """Parse ``"2:[2,1]"``."""
        m = re.fullmatch(r"\s*(\d+)\s*:\s*\[\s*([\d\s,]*)\]\s*", text)
        if not m:
            raise InvalidGroupSpec(f"cannot parse group spec {text!r}; expected p:[k1,k2,...]")
        ks = [int(t) for t in m.group(2).replace(" ", "").split(",") if t]
        return cls(int(m.group(1)), tuple(ks))

    def text(self) -> str:
        return f"{self.p}:[{','.join(map(str, self.exponents))}]"

    @property
    def moduli(self) -> tuple:
        return tuple(self.p**k for k in self.exponents)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def name(self) -> str:
        if not self.exponents:
            return "e"
        return "x".join(f"C{m}" for m in self.moduli)

    def to_json(self) -> dict:
        return {"p": self.p, "exponents": list(self.exponents)}


@dataclass(frozen=True)
class Subgroup:
    id: str
    index: int
    elements: tuple
    generators: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, x):
        return tuple(x) in self.element_set

    def __le__(self, other: "Subgroup") -> bool:
        return self.element_set <= other.element_set

    def __lt__(self, other: "Subgroup") -> bool:
        return self.element_set < other.element_set


@dataclass(frozen=True)
class CharacterInfo:
    character: tuple
    kernel: Subgroup
    order: int


class AbelianPGroup:
    """Element-level arithmetic; characters use the same tuple shape as elements."""

    def __init__(self, spec: PGroupSpec):
        self.spec = spec
        self.p = spec.p
        self.moduli = spec.moduli
        self.top = self.moduli[0] if self.moduli else 1

    def elements(self):
        return list(product(*(range(m) for m in self.moduli)))

    def zero(self):
        return (0,) * len(self.moduli)

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def mul(self, k: int, x):
        return tuple((k * a) % m for a, m in zip(x, self.moduli))

    def neg(self, x):
        return self.mul(-1, x)

    def order_of(self, x) -> int:
        o = 1
        for a, m in zip(x, self.moduli):
            o = max(o, m // math.gcd(a, m))
        return o

    def cyclic(self, x) -> frozenset:
        out = {self.zero()}
        y = x
        while y not in out:
            out.add(y)
            y = self.add(y, x)
        return frozenset(out)

    def span(self, gens) -> frozenset:
        H = frozenset({self.zero()})
        for g in gens:
            if g not in H:
                H = self.sumset(H, self.cyclic(g))
        return H

    def sumset(self, H, K) -> frozenset:
        return frozenset(self.add(h, k) for h in H for k in K)

    def pair(self, alpha, x) -> int:
        """``<alpha, x>`` as an integer mod ``p^k1`` (i.e. in units of 1/p^k1)."""
        top = self.top
        return sum(c * a * (top // m) for c, a, m in zip(alpha, x, self.moduli)) % top

    def char_mul(self, a, b):
        return self.add(a, b)

    def char_pow(self, a, k: int):
        return self.mul(k, a)


def _min_generators(G: AbelianPGroup, elems: tuple, rank: int) -> tuple:
    zero = G.zero()
    pool = sorted((x for x in elems if x != zero), key=lambda x: (-G.order_of(x), x))
    target = frozenset(elems)
    gens, H = [], frozenset({zero})
    while H != target and len(gens) < rank:
        gens.append(min((y for y in pool if y not in H), key=lambda y: (-G.order_of(y), y)))
        H = G.span(gens)
    if H == target:
        return tuple(gens)
    for combo in combinations(pool, rank):
        if G.span(combo) == target:
            return tuple(combo)
    raise AssertionError("no generating set of size equal to the rank")


class SubgroupLattice:
    def __init__(self, spec: PGroupSpec, bound: int | None = None):
        if bound is None:
            bound = spec.p**DEFAULT_BOUND_EXP
        if spec.order > bound:
            raise GroupTooLarge(f"|A| = {spec.order} exceeds bound {bound}", order=spec.order, bound=bound)
        self.spec = spec
        self.group = G = AbelianPGroup(spec)
        self.p = spec.p
        self.elements = G.elements()
        self._rank_cache: dict = {}

        found = {frozenset({G.zero()})}
        frontier = list(found)
        while frontier:
            nxt = []
            for H in frontier:
                for g in self.elements:
                    if g in H:
                        continue
                    K = G.sumset(H, G.cyclic(g))
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
            frontier = nxt
        ordered = sorted((tuple(sorted(H)) for H in found), key=lambda t: (len(t), t))
        subs = []
        for i, elems in enumerate(ordered):
            rank = self._rank_of_set(elems)
            subs.append(Subgroup(f"S{i}", i, elems, _min_generators(G, elems, rank)))
        self.subgroups = tuple(subs)
        self._by_set = {s.element_set: s for s in subs}
        self._by_id = {s.id: s for s in subs}
        n = len(subs)
        self.leq = tuple(tuple(subs[i] <= subs[j] for j in range(n)) for i in range(n))
        self.hasse = tuple(
            (subs[i].id, subs[j].id)
            for i in range(n)
            for j in range(n)
            if i != j and self.leq[i][j]
            and not any(k not in (i, j) and self.leq[i][k] and self.leq[k][j] for k in range(n))
        )

    def _rank_of_set(self, elems) -> int:
        cnt = sum(1 for x in elems if self.group.mul(self.p, x) == self.group.zero())
        return round(math.log(cnt, self.p))

    # lookup ---------------------------------------------------------------
    def __len__(self):
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    def __getitem__(self, key) -> Subgroup:
        if isinstance(key, Subgroup):
            return key
        if isinstance(key, int):
            return self.subgroups[key]
        try:
            return self._by_id[key]
        except KeyError:
            raise NotASubgroup(f"unknown subgroup id {key!r}") from None

    def find(self, elements) -> Subgroup:
        s = self._by_set.get(frozenset(tuple(x) for x in elements))
        if s is None:
            raise NotASubgroup("element set is not a subgroup")
        return s

    def generated_by(self, gens) -> Subgroup:
        return self.find(self.group.span([tuple(g) for g in gens]))

    @property
    def bottom(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def top(self) -> Subgroup:
        return self.subgroups[-1]

    def le(self, B, C) -> bool:
        return self.leq[self[B].index][self[C].index]

    def lt(self, B, C) -> bool:
        B, C = self[B], self[C]
        return B.index != C.index and self.leq[B.index][C.index]

    def covers(self):
        return self.hasse

    def is_cover(self, B, C) -> bool:
        return (self[B].id, self[C].id) in set(self.hasse)

    def subgroups_of(self, C):
        C = self[C]
        return [B for B in self.subgroups if self.leq[B.index][C.index]]

    def describe(self) -> list[dict]:
        return [
            {
                "id": s.id,
                "order": s.order,
                "rank": self.p_rank(s),
                "generators": [list(g) for g in s.generators],
                "elements": [list(x) for x in s.elements],
            }
            for s in self.subgroups
        ]

    # ranks -------------------------------------------------------------------
    def p_rank(self, B, C=None) -> int:
        """``rk_p(B)`` or, with ``C``, ``rk_p(C/B)``."""
        B = self[B]
        if C is None:
            return self._rank_of_set(B.elements)
        C = self[C]
        key = (B.index, C.index)
        r = self._rank_cache.get(key)
        if r is None:
            if not B <= C:
                raise NotASubgroup(f"{B.id} is not contained in {C.id}", B=B.id, C=C.id)
            G = self.group
            hits = sum(1 for c in C.elements if G.mul(self.p, c) in B.element_set)
            r = self._rank_cache[key] = round(math.log(hits // B.order, self.p))
        return r

    def p_torsion_rank(self, B) -> int:
        """``log_p |B[p]|`` computed from elements of order dividing p."""
        B = self[B]
        G = self.group
        cnt = sum(1 for x in B.elements if G.order_of(x) <= self.p)
        return round(math.log(cnt, self.p))

    # characters ----------------------------------------------------------------
    @cached_property
    def all_characters(self) -> tuple:
        return tuple(self.elements)

    def kernel(self, alpha) -> Subgroup:
        G = self.group
        return self.find([x for x in self.elements if G.pair(alpha, x) == 0])

    def character_order(self, alpha) -> int:
        return self.group.order_of(tuple(alpha))

    def characters(self) -> list[CharacterInfo]:
        return [CharacterInfo(a, self.kernel(a), self.character_order(a)) for a in self.all_characters]

    def restricts_trivially(self, alpha, B) -> bool:
        G = self.group
        return all(G.pair(alpha, x) == 0 for x in self[B].elements)

    def restriction(self, alpha, B) -> tuple:
        """``alpha|_B`` as its tuple of values on the sorted elements of ``B``."""
        G = self.group
        return tuple(G.pair(alpha, x) for x in self[B].elements)

    def quotient_characters(self, B):
        """Characters trivial on ``B`` and a direct basis ``((alpha, order), ...)``."""
        B = self[B]
        chars = [a for a in self.all_characters if self.restricts_trivially(a, B)]
        G = self.group
        total = len(chars)
        basis = _direct_basis(G, chars, total)
        return chars, basis

    def section(self, B) -> dict:
        """Map ``restriction -> lex-min character of A`` with that restriction."""
        B = self[B]
        out: dict = {}
        for a in self.all_characters:  # already in lex order
            key = self.restriction(a, B)
            if key not in out:
                out[key] = a
        return out

    def section_chars(self, B) -> list:
        """Images ``s(beta)`` for ``beta in B^dual``, sorted lexicographically."""
        return sorted(self.section(B).values())

    # barycentric subdivision -------------------------------------------------------
    def sd_diagram(self) -> "SdDiagram":
        verts = tuple(s.id for s in self.subgroups)
        edges = tuple(self.hasse)
        arrows = tuple(a for (b1, b2) in edges for a in ((b1, (b1, b2)), (b2, (b1, b2))))
        return SdDiagram(verts, edges, arrows)


def _direct_basis(G: AbelianPGroup, chars, total: int):
    zero = G.zero()
    pool = sorted((a for a in chars if a != zero), key=lambda a: (-G.order_of(a), a))

    def search(basis, span):
        if len(span) == total:
            return basis
        for a in pool:
            cyc = G.cyclic(a)
            if cyc & span != {zero}:
                continue
            got = search(basis + [(a, len(cyc))], G.sumset(span, cyc))
            if got is not None:
                return got
        return None

    basis = search([], frozenset({zero}))
    if basis is None or math.prod(o for _, o in basis) != total:
        raise AssertionError("failed to find a direct character basis")
    return tuple(basis)


@dataclass(frozen=True)
class SdDiagram:
    vertices: tuple
    edges: tuple
    arrows: tuple = field(default=())

    def objects(self) -> list:
        return list(self.vertices) + [tuple(e) for e in self.edges]


def build_lattice(spec: PGroupSpec | str, bound: int | None = None) -> SubgroupLattice:
    if isinstance(spec, str):
        spec = PGroupSpec.parse(spec)
    return SubgroupLattice(spec, bound)
