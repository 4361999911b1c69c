"""One-variable truncated power series with coefficients in a :class:`Ring`."""

from __future__ import annotations

from gmpy2 import mpq

from ..errors import NonunitLinearTerm, NonzeroConstantTerm, RingMismatch
from .ring import Element, Generator, Ring, SERIES, as_mpq


class PowerSeries1:
    """``c_0 + c_1 x + ... + c_M x^M + O(x^{M+1})``.

    ``order`` is ``M``, the last known coefficient; binary operations keep the
    minimum of their operands' orders.
    """

    __slots__ = ("base", "coeffs", "order", "var")

    def __init__(self, base: Ring, coeffs, order: int, var: str = "x"):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = []
        for c in list(coeffs)[: order + 1]:
            if isinstance(c, Element):
                if not c.ring.compatible(base):
                    c = c.to(base)
            else:
                c = base.const(c)
            cs.append(c)
        while len(cs) < order + 1:
            cs.append(base.zero)
        self.base = base
        self.coeffs = tuple(cs)
        self.order = order
        self.var = var

    # -- constructors ---------------------------------------------------------
    @classmethod
    def x(cls, base: Ring, order: int, var: str = "x") -> "PowerSeries1":
        return cls(base, [0, 1], order, var)

    @classmethod
    def from_element(cls, elt: Element, var: str, base: Ring, order: int | None = None) -> "PowerSeries1":
        """Split ``elt`` by powers of generator ``var``; coefficients go to ``base``."""
        r = elt.ring
        i = r.index[var]
        if order is None:
            order = r.N - 1
        buckets: dict[int, dict] = {}
        for m, c in elt.terms.items():
            k = m[i]
            if k < 0:
                raise ValueError(f"negative power of {var}")
            if k > order:
                continue
            mm = m[:i] + m[i + 1:]
            buckets.setdefault(k, {})[mm] = c
        sub = Ring(r.p, r.generators[:i] + r.generators[i + 1:], r.N)
        coeffs = []
        for k in range(order + 1):
            coeffs.append(Element(sub, buckets.get(k, {})).to(base))
        return cls(base, coeffs, order, var)

    def to_element(self, ring: Ring, var: str | None = None) -> Element:
        """Embed as an element of ``ring`` in which ``var`` is a generator."""
        x = ring.gen(var or self.var)
        acc = ring.zero
        xp = ring.one
        for c in self.coeffs:
            if c:
                acc = acc + c.to(ring) * xp
            xp = xp * x
        return acc

    # -- basic protocol ---------------------------------------------------------
    def __getitem__(self, k: int) -> Element:
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond known order {self.order}")
        return self.coeffs[k]

    def coef(self, k: int) -> Element:
        return self[k]

    def __len__(self):
        return self.order + 1

    def _check(self, other: "PowerSeries1"):
        if not self.base.compatible(other.base):
            raise RingMismatch("power series over different bases")

    def __add__(self, other):
        if not isinstance(other, PowerSeries1):
            other = PowerSeries1(self.base, [other], self.order, self.var)
        self._check(other)
        M = min(self.order, other.order)
        return PowerSeries1(self.base, [a + b for a, b in zip(self.coeffs[: M + 1], other.coeffs)], M, self.var)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries1(self.base, [-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries1):
            if isinstance(other, Element):
                other = other.to(self.base) if not other.ring.compatible(self.base) else other
            return PowerSeries1(self.base, [c * other for c in self.coeffs], self.order, self.var)
        self._check(other)
        M = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(M + 1):
            acc = self.base.zero
            for k in range(n + 1):
                if a[k] and b[n - k]:
                    acc = acc + a[k] * b[n - k]
            out.append(acc)
        return PowerSeries1(self.base, out, M, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PowerSeries1(self.base, [1], self.order, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, PowerSeries1):
            return NotImplemented
        if not self.base.compatible(other.base):
            return False
        M = min(self.order, other.order)
        return self.coeffs[: M + 1] == other.coeffs[: M + 1]

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, M: int) -> "PowerSeries1":
        return PowerSeries1(self.base, self.coeffs, min(M, self.order), self.var)

    def map(self, fn) -> "PowerSeries1":
        return PowerSeries1(self.base, [fn(c) for c in self.coeffs], self.order, self.var)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    # -- composition -------------------------------------------------------------
    def compose(self, g: "PowerSeries1") -> "PowerSeries1":
        """``self(g(x))``; requires ``g(0) = 0``."""
        self._check(g)
        if g.coeffs[0]:
            raise NonzeroConstantTerm(f"inner series has constant term {g.coeffs[0].text()}")
        M = min(self.order, g.order)
        acc = PowerSeries1(self.base, [self.coeffs[M]], M, self.var)
        for k in range(M - 1, -1, -1):
            acc = acc * g + PowerSeries1(self.base, [self.coeffs[k]], M, self.var)
        return acc

    def __call__(self, a: Element) -> Element:
        """Evaluate at an element of a ring containing the base generators."""
        target = a.ring
        acc = target.zero
        for c in reversed(self.coeffs):
            acc = acc * a + (c if c.ring.compatible(target) else c.to(target))
        return acc

    def inverse(self) -> "PowerSeries1":
        """Multiplicative inverse; needs an invertible constant coefficient."""
        u = self.coeffs
        h0 = u[0].inverse()
        h = [h0]
        for n in range(1, self.order + 1):
            acc = self.base.zero
            for k in range(1, n + 1):
                if u[k]:
                    acc = acc + u[k] * h[n - k]
            h.append(-(h0 * acc))
        return PowerSeries1(self.base, h, self.order, self.var)

    def reverse(self) -> "PowerSeries1":
        """Compositional inverse by Lagrange inversion.

        ``g_n = (1/n) [x^{n-1}] (x/f)^n``.
        """
        if self.coeffs[0]:
            raise NonzeroConstantTerm("reversion needs f(0) = 0")
        M = self.order
        if M < 1:
            raise NonunitLinearTerm("series too short to revert")
        f1 = self.coeffs[1]
        try:
            f1.inverse()
        except Exception:
            raise NonunitLinearTerm(f"linear coefficient {f1.text()} is not a unit") from None
        u = PowerSeries1(self.base, self.coeffs[1:], M - 1, self.var)
        h = u.inverse()
        g = [self.base.zero]
        hp = PowerSeries1(self.base, [1], M - 1, self.var)
        for n in range(1, M + 1):
            hp = hp * h
            g.append(hp.coeffs[n - 1].scale(mpq(1, n)))
        return PowerSeries1(self.base, g, M, self.var)

    # -- formatting ----------------------------------------------------------
    def text(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            xk = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            ct = c.text()
            if not xk:
                parts.append(ct)
            elif ct == "1":
                parts.append(xk)
            elif ct == "-1":
                parts.append("-" + xk)
            elif len(c.terms) == 1:
                parts.append(f"{ct}*{xk}")
            else:
                parts.append(f"({ct})*{xk}")
        big_o = f"O({self.var}^{self.order + 1})"
        if not parts:
            return big_o
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return f"{out} + {big_o}"

    __str__ = text

    def __repr__(self):
        return f"PowerSeries1({self.text()})"


def series_ring(base: Ring, var: str, N: int, degree: int = -2, name: str = "") -> Ring:
    """``base[[var]]`` truncated at ``var^N`` (``base`` must have no series variables)."""
    return base.extend([Generator(var, degree, SERIES)], N=N, name=name or f"{base.name}[[{var}]]")


def scalar_series(base: Ring, values, order: int, var: str = "x") -> PowerSeries1:
    return PowerSeries1(base, [as_mpq(v) for v in values], order, var)
