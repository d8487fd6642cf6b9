"""Kazhdan-Lusztig polynomials and the elements ``C_w`` of the group algebra.

``P_{y,w}`` is computed by the standard recursion on a left descent
``s`` of ``w`` (``v = s w``)::

    P_{y,w} = q^{1-c} P_{sy,v} + q^c P_{y,v}
              - sum_{y <= z < v, sz < z} mu(z, v) q^{(l(w)-l(z))/2} P_{y,z}

with ``c = 1`` if ``sy < y`` and ``c = 0`` otherwise.  ``mu(z, v)`` is read
off the already computed ``P_{z,v}``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from itertools import zip_longest

import numpy as np

from .coxeter import CoxeterElement, CoxeterSystem, bruhat_leq, left_descents, word


class Poly:
    """Integer polynomial in ``q``; coefficients stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> Poly:
        return cls([0] * k + [c])

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _as_poly(other)
        return Poly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-a for a in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> Poly:
        """Multiply by ``q**k``."""
        return Poly([0] * k + list(self.coeffs)) if self.coeffs else Poly()

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(a))
            elif a == 1:
                terms.append(mono)
            elif a == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{a}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


ONE = Poly([1])
ZERO = Poly()


def _table(W: CoxeterSystem) -> dict:
    tab = getattr(W, "_kl_memo", None)
    if tab is None:
        tab = W._kl_memo = {}
        W._mu_memo = {}
    return tab


def _mu_list(v: CoxeterElement) -> list[tuple[CoxeterElement, int]]:
    """All ``z < v`` with ``mu(z, v) != 0``, paired with ``mu``."""
    W = v.system
    _table(W)
    hit = W._mu_memo.get(v.index)
    if hit is not None:
        return hit
    out = []
    for z in W.elements:
        d = v.length - z.length
        if d <= 0 or d % 2 == 0:
            continue
        if not bruhat_leq(z, v):
            continue
        m = kl_polynomial(z, v).coeff((d - 1) // 2)
        if m:
            out.append((z, m))
    W._mu_memo[v.index] = out
    return out


def mu(z: CoxeterElement, v: CoxeterElement) -> int:
    """Coefficient of ``q^{(l(v)-l(z)-1)/2}`` in ``P_{z,v}`` (0 when undefined)."""
    d = v.length - z.length
    if d <= 0 or d % 2 == 0:
        return 0
    return kl_polynomial(z, v).coeff((d - 1) // 2)


def kl_polynomial(y: CoxeterElement, w: CoxeterElement) -> Poly:
    """The Kazhdan-Lusztig polynomial ``P_{y,w}`` (zero when ``y`` is not below ``w``).

    >>> from flagmod.coxeter import build_system, parse_word
    >>> W = build_system("A3")
    >>> str(kl_polynomial(parse_word(W, "s1"), parse_word(W, "s1*s0*s2*s1")))
    '1 + q'
    """
    if y.system is not w.system:
        raise ValueError("elements belong to different Coxeter systems")
    W = w.system
    tab = _table(W)
    key = (y.index, w.index)
    hit = tab.get(key)
    if hit is not None:
        return hit
    if y == w:
        res = ONE
    elif not bruhat_leq(y, w):
        res = ZERO
    else:
        s = min(left_descents(w))
        v = W.lmul_simple(s, w)
        sy = W.lmul_simple(s, y)
        if sy.length < y.length:
            res = kl_polynomial(sy, v) + kl_polynomial(y, v).shift(1)
        else:
            res = kl_polynomial(sy, v).shift(1) + kl_polynomial(y, v)
        for z, m in _mu_list(v):
            if W.lmul_simple(s, z).length < z.length and bruhat_leq(y, z):
                res = res - kl_polynomial(y, z).shift((w.length - z.length) // 2) * m
    tab[key] = res
    return res


def kl_table(W: CoxeterSystem, nontrivial_only: bool = False) -> list[tuple[CoxeterElement, CoxeterElement, Poly]]:
    """All ``(y, w, P_{y,w})`` with ``y <= w``, in system order of ``(w, y)``."""
    out = []
    for w in W.elements:
        for y in W.elements:
            if y.length > w.length or not bruhat_leq(y, w):
                continue
            p = kl_polynomial(y, w)
            if nontrivial_only and p == ONE:
                continue
            out.append((y, w, p))
    return out


class GroupAlgebraVector:
    """Finitely supported ``field``-linear combination of elements of ``W``."""

    __slots__ = ("system", "field", "coeffs")

    def __init__(self, system: CoxeterSystem, field, coeffs: Mapping[CoxeterElement, object] | None = None):
        self.system = system
        self.field = field
        self.coeffs: dict[CoxeterElement, object] = {}
        for g, c in (coeffs or {}).items():
            c = field(c)
            if c:
                self.coeffs[g] = c

    @classmethod
    def basis(cls, g: CoxeterElement, field) -> GroupAlgebraVector:
        return cls(g.system, field, {g: 1})

    def __getitem__(self, g: CoxeterElement):
        return self.coeffs.get(g, self.field.zero)

    def support(self) -> list[CoxeterElement]:
        return sorted(self.coeffs)

    def _combine(self, other: GroupAlgebraVector, sign: int) -> GroupAlgebraVector:
        if other.system is not self.system:
            raise ValueError("vectors live in different group algebras")
        f = self.field
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = f.normalize(out.get(g, f.zero) + sign * c)
        return GroupAlgebraVector(self.system, f, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> GroupAlgebraVector:
        f = self.field
        c = f(c)
        return GroupAlgebraVector(self.system, f, {g: f.normalize(c * x) for g, x in self.coeffs.items()})

    def left_mul(self, g: CoxeterElement) -> GroupAlgebraVector:
        """``g * self``."""
        return GroupAlgebraVector(self.system, self.field, {g * y: c for y, c in self.coeffs.items()})

    def __mul__(self, other: GroupAlgebraVector) -> GroupAlgebraVector:
        f = self.field
        out: dict[CoxeterElement, object] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                ab = a * b
                out[ab] = f.normalize(out.get(ab, f.zero) + x * y)
        return GroupAlgebraVector(self.system, f, out)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraVector):
            return NotImplemented
        return self.system is other.system and self.coeffs == other.coeffs

    def to_array(self) -> np.ndarray:
        """Dense coordinates in the system's element order."""
        arr = self.field.zeros(self.system.order)
        for g, c in self.coeffs.items():
            arr[g.index] = c
        return arr

    def __repr__(self):
        if not self.coeffs:
            return "0"
        f = self.field
        return " + ".join(f"{f.to_str(self.coeffs[g])}*[{word(g)}]" for g in self.support())


def c_element(w: CoxeterElement, field) -> GroupAlgebraVector:
    """``C_w = sum_{y <= w} (-1)^{l(w)-l(y)} P_{y,w}(1) y``."""
    W = w.system
    coeffs = {}
    for y in W.elements:
        if y.length <= w.length and bruhat_leq(y, w):
            sign = -1 if (w.length - y.length) % 2 else 1
            coeffs[y] = field.from_int(sign * kl_polynomial(y, w)(1))
    return GroupAlgebraVector(W, field, coeffs)


def eta_element(W: CoxeterSystem, J, field) -> GroupAlgebraVector:
    """Alternating sum ``sum_{w in W_J} (-1)^{l(w)} w``."""
    return GroupAlgebraVector(W, field, {w: field.from_int((-1) ** w.length) for w in W.parabolic(J)})
