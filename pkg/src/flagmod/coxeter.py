"""Finite crystallographic Coxeter systems built from Cartan matrices.

A group element is stored as its action on the ordered list of positive
roots: a tuple whose ``k``-th entry is ``+(j+1)`` when the ``k``-th positive
root is sent to the ``j``-th positive root and ``-(j+1)`` when it is sent to
the negative of it.  Equality of elements is equality of these tuples, and
the length is the number of negative entries.

Simple reflections are indexed ``0 .. rank-1`` by the rows of the Cartan
matrix.  Subsets ``J`` of the index set are plain ``frozenset`` objects.

>>> W = build_system("A2")
>>> W.order, len(W.positive_roots)
(6, 3)
>>> s0, s1 = W.simple(0), W.simple(1)
>>> word(s1 * s0)
's1*s0'
>>> sorted(right_descents(s1 * s0))
[0]
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from functools import cached_property

__all__ = [
    "CoxeterSystem",
    "CoxeterElement",
    "build_system",
    "cartan_matrix",
    "multiply",
    "right_descents",
    "left_descents",
    "bruhat_leq",
    "longest_element",
    "min_coset_reps",
    "y_set",
    "count_involutions",
    "word",
    "parse_word",
    "subset",
    "format_subset",
    "parse_subset",
]

MAX_ORDER = 200_000


def cartan_matrix(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entries ``a[i][j] = <alpha_i^vee, alpha_j>``."""
    family = family.upper()
    if n < 1:
        raise ValueError("rank must be at least 1")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if family == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif family in ("B", "C"):
        if n < 2:
            raise ValueError(f"type {family}{n} needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        # Bourbaki numbering: the last simple root is short in B_n, long in C_n
        if family == "B":
            link(n - 2, n - 1, aij=-1, aji=-2)
        else:
            link(n - 2, n - 1, aij=-2, aji=-1)
    elif family == "D":
        if n < 3:
            raise ValueError("type D needs rank >= 3")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        if n not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        # Bourbaki numbering shifted to 0-based: node 1 hangs off node 3.
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        if n != 4:
            raise ValueError("type F needs rank 4")
        link(0, 1)
        link(1, 2, aij=-1, aji=-2)
        link(2, 3)
    elif family == "G":
        if n != 2:
            raise ValueError("type G needs rank 2")
        link(0, 1, aij=-3, aji=-1)
    else:
        raise ValueError(f"unknown Cartan type {family!r}")
    return tuple(tuple(r) for r in a)


_LABEL = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def build_system(type_label: str) -> CoxeterSystem:
    """Build the Coxeter system of a finite Cartan type such as ``"B3"``."""
    m = _LABEL.match(type_label)
    if not m:
        raise ValueError(f"unknown type label {type_label!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if n == 0:
        raise ValueError("rank 0 is not allowed")
    return CoxeterSystem(cartan_matrix(family, n), label=f"{family}{n}")


def subset(*indices: int) -> frozenset[int]:
    return frozenset(indices)


def format_subset(J: Iterable[int]) -> str:
    return "[" + ",".join(str(j) for j in sorted(J)) + "]"


def parse_subset(text: str) -> frozenset[int]:
    s = text.strip().strip("[]{}() ")
    if not s:
        return frozenset()
    return frozenset(int(t) for t in re.split(r"[,\s]+", s) if t)


class CoxeterSystem:
    """A finite Coxeter group realized on its positive roots.

    Construction enumerates the whole group breadth-first by length; ties
    inside a length are broken by the lexicographic order of the action
    tuples.  That order is used everywhere an ordered list is returned.
    """

    def __init__(self, cartan, label: str | None = None, max_order: int = MAX_ORDER):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        f = len(cartan)
        if f == 0:
            raise ValueError("rank 0 is not allowed")
        for i, row in enumerate(cartan):
            if len(row) != f:
                raise ValueError("Cartan matrix must be square")
            for j, x in enumerate(row):
                if i == j and x != 2:
                    raise ValueError("Cartan diagonal entries must equal 2")
                if i != j and x > 0:
                    raise ValueError("off-diagonal Cartan entries must be non-positive")
                if i != j and (x == 0) != (cartan[j][i] == 0):
                    raise ValueError("Cartan matrix is not symmetrizable")
        self.cartan = cartan
        self.rank = f
        self.label = label or "cartan"
        self.index_set = frozenset(range(f))
        self.positive_roots = self._positive_roots(max_order)
        self._root_index = {r: k for k, r in enumerate(self.positive_roots)}
        self._simple_pos = [self._root_index[tuple(int(i == j) for j in range(f))] for i in range(f)]
        self._simple_actions = [self._reflection_action(i) for i in range(f)]
        self._enumerate(max_order)
        self._bruhat_memo: dict[tuple[int, int], bool] = {}
        self._word_memo: dict[int, tuple[int, ...]] = {}

    def __repr__(self):
        return f"CoxeterSystem({self.label}, order={self.order})"

    # -- construction -----------------------------------------------------

    def _reflect(self, i: int, beta: tuple[int, ...]) -> tuple[int, ...]:
        # s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
        pairing = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        out = list(beta)
        out[i] -= pairing
        return tuple(out)

    def _positive_roots(self, max_order: int) -> list[tuple[int, ...]]:
        f = self.rank
        simple = [tuple(int(i == j) for j in range(f)) for i in range(f)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(f):
                    gamma = self._reflect(i, beta)
                    if all(c >= 0 for c in gamma) and gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
            if len(seen) > max_order:
                raise ValueError("root system is not finite")
        return sorted(seen, key=lambda r: (sum(r), tuple(-c for c in r)))

    def _reflection_action(self, i: int) -> tuple[int, ...]:
        act = []
        for beta in self.positive_roots:
            gamma = self._reflect(i, beta)
            if gamma in self._root_index:
                act.append(self._root_index[gamma] + 1)
            else:
                act.append(-(self._root_index[tuple(-c for c in gamma)] + 1))
        return tuple(act)

    @staticmethod
    def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        # (a o b)(beta_k) = a(b(beta_k))
        out = []
        for x in b:
            y = a[abs(x) - 1]
            out.append(y if x > 0 else -y)
        return tuple(out)

    def _enumerate(self, max_order: int):
        ident = tuple(range(1, len(self.positive_roots) + 1))
        levels = [[ident]]
        seen = {ident}
        while True:
            nxt = set()
            for a in levels[-1]:
                for s in self._simple_actions:
                    b = self._compose(a, s)
                    if b not in seen:
                        nxt.add(b)
            if not nxt:
                break
            seen.update(nxt)
            if len(seen) > max_order:
                raise ValueError(f"group order exceeds {max_order}; refusing to enumerate")
            levels.append(sorted(nxt))
        actions = [a for level in levels for a in level]
        self._actions = actions
        self._index = {a: k for k, a in enumerate(actions)}
        self.elements = [CoxeterElement(self, a, k) for k, a in enumerate(actions)]
        self.order = len(actions)
        f = self.rank
        self._rmul = [[self._index[self._compose(a, self._simple_actions[i])] for a in actions] for i in range(f)]
        self._lmul = [[self._index[self._compose(self._simple_actions[i], a)] for a in actions] for i in range(f)]

    # -- element access -----------------------------------------------------

    def element(self, action) -> CoxeterElement:
        return self.elements[self._index[tuple(action)]]

    @property
    def identity(self) -> CoxeterElement:
        return self.elements[0]

    def simple(self, i: int) -> CoxeterElement:
        self._check_index(i)
        return self.elements[self._index[self._simple_actions[i]]]

    @cached_property
    def longest(self) -> CoxeterElement:
        return self.elements[-1]

    def _check_index(self, i: int):
        if not 0 <= i < self.rank:
            raise IndexError(f"simple index {i} out of range for rank {self.rank}")

    def _check_subset(self, J):
        J = frozenset(J)
        if not J <= self.index_set:
            raise ValueError(f"subset {sorted(J)} is not inside I = {sorted(self.index_set)}")
        return J

    def rmul_simple(self, w: CoxeterElement, i: int) -> CoxeterElement:
        """``w * s_i``."""
        return self.elements[self._rmul[i][w.index]]

    def lmul_simple(self, i: int, w: CoxeterElement) -> CoxeterElement:
        """``s_i * w``."""
        return self.elements[self._lmul[i][w.index]]

    def from_word(self, letters: Iterable[int]) -> CoxeterElement:
        w = self.identity
        for i in letters:
            self._check_index(i)
            w = self.rmul_simple(w, i)
        return w

    # -- parabolic data ------------------------------------------------------

    def parabolic(self, J) -> list[CoxeterElement]:
        """Elements of the standard parabolic subgroup ``W_J`` in system order."""
        J = self._check_subset(J)
        return [w for w in self.elements if support(w) <= J]

    def longest_element(self, J=None) -> CoxeterElement:
        J = self.index_set if J is None else self._check_subset(J)
        w = self.identity
        grew = True
        while grew:
            grew = False
            for j in sorted(J):
                v = self.rmul_simple(w, j)
                if v.length > w.length:
                    w, grew = v, True
        return w

    def min_coset_reps(self, J) -> list[CoxeterElement]:
        J = self._check_subset(J)
        return [x for x in self.elements if not (right_descents(x) & J)]

    def y_set(self, J) -> list[CoxeterElement]:
        J = self._check_subset(J)
        wJ = self.longest_element(J)
        return [x for x in self.min_coset_reps(J) if right_descents(x * wJ) == J]

    def count_involutions(self) -> int:
        e = self.identity
        return sum(1 for w in self.elements if w * w == e)

    def subsets(self) -> list[frozenset[int]]:
        """All subsets of ``I``, ordered by size then lexicographically."""
        from itertools import combinations

        out = []
        for k in range(self.rank + 1):
            out.extend(frozenset(c) for c in combinations(range(self.rank), k))
        return out


class CoxeterElement:
    """An element of a :class:`CoxeterSystem` (immutable, hashable)."""

    __slots__ = ("system", "action", "index", "length")

    def __init__(self, system: CoxeterSystem, action: tuple[int, ...], index: int):
        self.system = system
        self.action = action
        self.index = index
        self.length = sum(1 for x in action if x < 0)

    def __eq__(self, other):
        if not isinstance(other, CoxeterElement):
            return NotImplemented
        return self.system is other.system and self.index == other.index

    def __hash__(self):
        return hash((id(self.system), self.index))

    def __lt__(self, other):
        return self.index < other.index

    def __mul__(self, other: CoxeterElement) -> CoxeterElement:
        return multiply(self, other)

    def inverse(self) -> CoxeterElement:
        inv = [0] * len(self.action)
        for k, x in enumerate(self.action):
            j = abs(x) - 1
            inv[j] = (k + 1) if x > 0 else -(k + 1)
        return self.system.element(inv)

    def __repr__(self):
        return f"<{self.system.label} {word(self)}>"

    @property
    def word(self) -> tuple[int, ...]:
        return reduced_word(self)


def multiply(w: CoxeterElement, v: CoxeterElement) -> CoxeterElement:
    if w.system is not v.system:
        raise ValueError("elements belong to different Coxeter systems")
    W = w.system
    return W.elements[W._index[W._compose(w.action, v.action)]]


def right_descents(w: CoxeterElement) -> frozenset[int]:
    """``{i : w s_i < w}``, i.e. the simple roots that ``w`` makes negative."""
    W = w.system
    return frozenset(i for i in range(W.rank) if w.action[W._simple_pos[i]] < 0)


def left_descents(w: CoxeterElement) -> frozenset[int]:
    return right_descents(w.inverse())


def reduced_word(w: CoxeterElement) -> tuple[int, ...]:
    """The ShortLex-least reduced word of ``w`` (``w = s_{a0} s_{a1} ...``)."""
    W = w.system
    memo = W._word_memo
    if w.index in memo:
        return memo[w.index]
    if w.length == 0:
        out: tuple[int, ...] = ()
    else:
        i = min(left_descents(w))
        out = (i,) + reduced_word(W.lmul_simple(i, w))
    memo[w.index] = out
    return out


def word(w: CoxeterElement) -> str:
    """Serialize as ``"s0*s1*s0"``; the identity is ``"e"``."""
    letters = reduced_word(w)
    if not letters:
        return "e"
    return "*".join(f"s{i}" for i in letters)


def parse_word(W: CoxeterSystem, text: str) -> CoxeterElement:
    """Inverse of :func:`word`; accepts ``""``, ``"e"``, ``"s0*s1"`` or ``"0 1"``."""
    s = text.strip()
    if s in ("", "e", "1"):
        return W.identity
    letters = []
    for tok in re.split(r"[*\s,]+", s):
        if not tok:
            continue
        m = re.fullmatch(r"s?(\d+)", tok)
        if not m:
            raise ValueError(f"malformed word {text!r}")
        letters.append(int(m.group(1)))
    try:
        return W.from_word(letters)
    except IndexError as exc:
        raise ValueError(f"malformed word {text!r}: {exc}") from None


def support(w: CoxeterElement) -> frozenset[int]:
    """Simple reflections occurring in (any) reduced word of ``w``."""
    return frozenset(reduced_word(w))


def bruhat_leq(y: CoxeterElement, w: CoxeterElement) -> bool:
    """Bruhat order by the descent recursion, memoized per pair.

    If ``s w < w`` then ``y <= w`` iff ``s y <= s w`` (when ``s y < y``) or
    ``y <= s w`` (when ``s y > y``).  Memo entries are written once with their
    final value, so concurrent readers never see partial state.
    """
    if y.system is not w.system:
        raise ValueError("elements belong to different Coxeter systems")
    W = w.system
    memo = W._bruhat_memo

    def rec(yi: int, wi: int) -> bool:
        key = (yi, wi)
        hit = memo.get(key)
        if hit is not None:
            return hit
        yy, ww = W.elements[yi], W.elements[wi]
        if yy.length > ww.length:
            res = False
        elif ww.length == 0:
            res = yi == 0
        else:
            s = min(left_descents(ww))
            sw = W._lmul[s][wi]
            sy = W._lmul[s][yi]
            if W.elements[sy].length < yy.length:
                res = rec(sy, sw)
            else:
                res = rec(yi, sw)
        memo[key] = res
        return res

    return rec(y.index, w.index)


def longest_element(W: CoxeterSystem, J=None) -> CoxeterElement:
    return W.longest_element(J)


def min_coset_reps(W: CoxeterSystem, J) -> list[CoxeterElement]:
    return W.min_coset_reps(J)


def y_set(W: CoxeterSystem, J) -> list[CoxeterElement]:
    return W.y_set(J)


def count_involutions(W: CoxeterSystem) -> int:
    return W.count_involutions()


def telephone(n: int) -> int:
    """Number of involutions in the symmetric group on ``n`` letters."""
    a, b = 1, 1  # T(0), T(1)
    if n == 0:
        return 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b
