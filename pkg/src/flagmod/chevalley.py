"""Matrix points of ``SL_n(F_q)``: root elements, Weyl representatives,
Bruhat normal form of flags and the rank-one decomposition used by the
``tau`` operators.

Matrices are tuples of row tuples of field codes (see :class:`flagmod.fields.GF`).
The positive root ``e_a - e_b`` (``a < b``) is the pair ``(a, b)``; negative
roots are pairs with ``a > b``.  The simple root with index ``i`` is
``(i, i + 1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .coxeter import CoxeterElement, build_system, reduced_word, word
from .fields import GF, is_prime

Matrix = tuple[tuple[int, ...], ...]


class SLn:
    """The group ``SL_n(F_q)`` with its standard Borel of upper triangular matrices."""

    def __init__(self, n: int, q: int):
        if n < 2:
            raise ValueError("SL_n needs n >= 2")
        p, e = _prime_power(q)
        self.n = n
        self.q = q
        self.p = p
        self.F = GF(p, e)
        self.W = build_system(f"A{n - 1}")
        # positive roots of W (simple-root coordinates) <-> pairs (a, b)
        self._root_pair = []
        for r in self.W.positive_roots:
            ones = [k for k, c in enumerate(r) if c]
            self._root_pair.append((ones[0], ones[-1] + 1))
        self._pair_root = {ab: k for k, ab in enumerate(self._root_pair)}

    def __repr__(self):
        return f"SL{self.n}(F{self.q})"

    def __eq__(self, other):
        return isinstance(other, SLn) and (self.n, self.q) == (other.n, other.q)

    def __hash__(self):
        return hash((self.n, self.q))

    @cached_property
    def order(self) -> int:
        q, n = self.q, self.n
        out = q ** (n * (n - 1) // 2)
        for k in range(2, n + 1):
            out *= q**k - 1
        return out

    # -- matrix arithmetic ------------------------------------------------

    @cached_property
    def identity(self) -> Matrix:
        return tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n))

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        n, F = self.n, self.F
        if F.e == 1:
            p = F.p
            return tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)) for i in range(n)
            )
        add, mul = F._tables[0], F._tables[1]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    if a[i][k] and b[k][j]:
                        acc = int(add[acc, mul[a[i][k], b[k][j]]])
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def prod(self, *ms: Matrix) -> Matrix:
        out = self.identity
        for m in ms:
            out = self.mul(out, m)
        return out

    def det(self, a: Matrix) -> int:
        F = self.F
        m = [list(r) for r in a]
        n = self.n
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = F.neg(d)
            d = F.mul(d, m[c][c])
            inv = F.inv(m[c][c])
            for r in range(c + 1, n):
                if m[r][c]:
                    f = F.mul(m[r][c], inv)
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return d

    def inv(self, a: Matrix) -> Matrix:
        F, n = self.F, self.n
        m = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise ValueError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            inv = F.inv(m[c][c])
            m[c] = [F.mul(inv, x) for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[r], m[c])]
        return tuple(tuple(row[n:]) for row in m)

    def element(self, rows) -> Matrix:
        """Validate and freeze a matrix of ``SL_n(F_q)``."""
        m = tuple(tuple(self.F(x) for x in r) for r in rows)
        if len(m) != self.n or any(len(r) != self.n for r in m):
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        if self.det(m) != 1:
            raise ValueError("matrix does not have determinant 1")
        return m

    # -- distinguished elements ---------------------------------------------

    def root_element(self, root: tuple[int, int], c: int) -> Matrix:
        """``x_alpha(c) = 1 + c E_{ab}`` for the root ``alpha = (a, b)``."""
        a, b = root
        if not (0 <= a < self.n and 0 <= b < self.n) or a == b:
            raise ValueError(f"invalid root {root!r} for SL{self.n}")
        c = self.F(c)
        return tuple(
            tuple(int(i == j) if (i, j) != (a, b) else c for j in range(self.n)) for i in range(self.n)
        )

    def simple_root(self, i: int) -> tuple[int, int]:
        self.W._check_index(i)
        return (i, i + 1)

    def simple_rep(self, i: int) -> Matrix:
        """``s_i`` representative: identity with ``[[0, 1], [-1, 0]]`` in rows/columns ``i, i+1``."""
        self.W._check_index(i)
        m = [list(r) for r in self.identity]
        m[i][i] = m[i + 1][i + 1] = 0
        m[i][i + 1] = 1
        m[i + 1][i] = self.F.neg(1)
        return tuple(tuple(r) for r in m)

    def weyl_rep(self, w: CoxeterElement) -> Matrix:
        """Product of the fixed ``s_i`` representatives along the ShortLex word of ``w``."""
        return self.prod(*(self.simple_rep(i) for i in reduced_word(w)))

    def torus_element(self, diag) -> Matrix:
        diag = [self.F(x) for x in diag]
        return self.element([[diag[i] if i == j else 0 for j in range(self.n)] for i in range(self.n)])

    def torus_generators(self) -> list[Matrix]:
        """``h_i(z) = diag(.., z, z^-1, ..)`` at ``i, i+1`` for a primitive ``z``."""
        if self.q == 2:
            return []
        z = self.F.primitive_element
        zi = self.F.inv(z)
        out = []
        for i in range(self.n - 1):
            d = [1] * self.n
            d[i], d[i + 1] = z, zi
            out.append(self.torus_element(d))
        return out

    def generators(self) -> list[tuple[str, Matrix]]:
        """``x_{+-alpha_i}(b)`` for ``b`` in an additive basis of ``F_q``, and ``s_i``."""
        out = []
        for i in range(self.n - 1):
            for b in self.F.additive_basis():
                out.append((f"x+{i}({b})", self.root_element((i, i + 1), b)))
                out.append((f"x-{i}({b})", self.root_element((i + 1, i), b)))
            out.append((f"s{i}", self.simple_rep(i)))
        return out

    def borel_generators(self) -> list[tuple[str, Matrix]]:
        out = [(f"h{i}", t) for i, t in enumerate(self.torus_generators())]
        for i in range(self.n - 1):
            for b in self.F.additive_basis():
                out.append((f"x+{i}({b})", self.root_element((i, i + 1), b)))
        return out

    # -- Weyl group <-> permutations -----------------------------------------

    def permutation_of(self, m: Matrix) -> tuple[int, ...]:
        """``sigma`` with ``m e_k = +-e_{sigma(k)}`` for a monomial matrix ``m``."""
        sigma = []
        for k in range(self.n):
            rows = [i for i in range(self.n) if m[i][k]]
            if len(rows) != 1:
                raise ValueError("not a monomial matrix")
            sigma.append(rows[0])
        return tuple(sigma)

    def element_from_permutation(self, sigma) -> CoxeterElement:
        """Weyl group element acting on roots by ``e_a - e_b -> e_sigma(a) - e_sigma(b)``."""
        act = []
        for a, b in self._root_pair:
            c, d = sigma[a], sigma[b]
            if c < d:
                act.append(self._pair_root[(c, d)] + 1)
            else:
                act.append(-(self._pair_root[(d, c)] + 1))
        return self.W.element(act)

    def inversion_roots(self, w: CoxeterElement) -> list[tuple[int, int]]:
        """Positive roots ``alpha`` with ``w(alpha) < 0``, as pairs in root order."""
        return [self._root_pair[k] for k, x in enumerate(w.action) if x < 0]

    def unipotent_subgroup(self, roots) -> list[Matrix]:
        """All elements of the subgroup generated by the root groups of ``roots``.

        ``roots`` must be a closed set of positive roots; elements are listed as
        ordered products over the roots in the given order.
        """
        roots = list(roots)
        present = set(roots)
        for (a, b), (c, d) in product(roots, repeat=2):
            if b == c and (a, d) not in present:
                raise ValueError(f"root set is not closed: missing ({a}, {d})")
        out = []
        seen = set()
        for cs in product(range(self.q), repeat=len(roots)):
            g = self.prod(*(self.root_element(r, c) for r, c in zip(roots, cs)))
            if g not in seen:
                seen.add(g)
                out.append(g)
        if len(out) != self.q ** len(roots):
            raise ValueError("root set is not closed; products are not a bijection")
        return out

    def u_w(self, w: CoxeterElement) -> list[Matrix]:
        """``U_w``: generated by ``U_alpha`` for ``alpha > 0`` with ``w(alpha) < 0``."""
        return self.unipotent_subgroup(self.inversion_roots(w))

    def unipotent_radical(self) -> list[Matrix]:
        return self.unipotent_subgroup(self._root_pair)


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r == 1:
                return p, e
            break
    raise ValueError(f"q = {q} is not a prime power")


_GROUP = re.compile(r"^\s*SL\s*_?\s*(\d*)\s*$", re.IGNORECASE)


def parse_group(label: str, n: int | None, q: int) -> SLn:
    """Group descriptor as used on the command line (``--group SL3 --n 3 --q 2``)."""
    m = _GROUP.match(label)
    if not m:
        raise ValueError(f"unsupported group {label!r}; only SLn is available")
    if m.group(1):
        n_label = int(m.group(1))
        if n is not None and n != n_label:
            raise ValueError(f"--group {label} disagrees with --n {n}")
        n = n_label
    if n is None:
        raise ValueError("the matrix size n is required")
    return SLn(n, q)


# -- Bruhat normal form ---------------------------------------------------------


@dataclass(frozen=True)
class FlagPoint:
    """The coset ``u w B`` with ``u`` in ``U_{w^-1}``.

    ``u_part`` lists the entries ``u_{ab}`` over the roots ``(a, b)`` of
    ``U_{w^-1}`` in lexicographic order of the pairs.
    """

    weyl: CoxeterElement
    u_part: tuple[int, ...]

    def __str__(self):
        return f"({word(self.weyl)}; {','.join(str(c) for c in self.u_part)})"


def column_echelon(G: SLn, g: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Canonical representative of ``gB`` and its pivot permutation.

    Column ``k`` ends with a 1 in row ``sigma(k)``, zeros below it and zeros
    in the pivot rows of earlier columns.
    """
    F, n = G.F, G.n
    cols = [[g[i][k] for i in range(n)] for k in range(n)]
    pivots: list[int] = []
    for k in range(n):
        col = cols[k]
        for l, pr in enumerate(pivots):
            c = col[pr]
            if c:
                col = [F.sub(x, F.mul(c, y)) for x, y in zip(col, cols[l])]
        nz = [i for i in range(n) if col[i]]
        if not nz:
            raise ValueError("singular matrix")
        pr = nz[-1]
        inv = F.inv(col[pr])
        cols[k] = [F.mul(inv, x) for x in col]
        pivots.append(pr)
    mat = tuple(tuple(cols[k][i] for k in range(n)) for i in range(n))
    return mat, tuple(pivots)


def flag_canonical(G: SLn, g: Matrix) -> FlagPoint:
    """The unique ``(w, u)`` with ``gB = u w B``."""
    mat, sigma = column_echelon(G, g)
    w = G.element_from_permutation(sigma)
    col_of = {r: k for k, r in enumerate(sigma)}
    coords = []
    for a, b in sorted(G.inversion_roots(w.inverse())):
        coords.append(mat[a][col_of[b]])
    return FlagPoint(w, tuple(coords))


def flag_matrix(G: SLn, point: FlagPoint) -> Matrix:
    """``u * weyl_rep(w)`` for a :class:`FlagPoint`."""
    roots = sorted(G.inversion_roots(point.weyl.inverse()))
    if len(roots) != len(point.u_part):
        raise ValueError("u_part has the wrong length for this Weyl element")
    u = [list(r) for r in G.identity]
    for (a, b), c in zip(roots, point.u_part):
        u[a][b] = G.F(c)
    return G.mul(tuple(tuple(r) for r in u), G.weyl_rep(point.weyl))


def enumerate_flags(G: SLn) -> list[FlagPoint]:
    """All flags, cell by cell in Weyl-group order."""
    out = []
    for w in G.W.elements:
        k = len(G.inversion_roots(w.inverse()))
        for cs in product(range(G.q), repeat=k):
            out.append(FlagPoint(w, cs))
    return out


# -- rank one ------------------------------------------------------------------------


@dataclass(frozen=True)
class Sl2Decomposition:
    """``s_i u s_i^-1 = x s_i t y`` with ``x, y`` in ``U_{alpha_i}`` and ``t`` in ``T``."""

    x: Matrix
    t: Matrix
    y: Matrix
    x_param: int
    y_param: int


def root_parameter(G: SLn, root: tuple[int, int], u: Matrix) -> int:
    """``c`` with ``u = x_root(c)``; raises ValueError when ``u`` is not in the root group."""
    a, b = root
    c = u[a][b]
    if u != G.root_element(root, c):
        raise ValueError(f"matrix is not in the root subgroup {root}")
    return c


def sl2_decompose(G: SLn, i: int, u: Matrix) -> Sl2Decomposition:
    """Solve the 2x2 block equation for ``u = x_{alpha_i}(a)``, ``a != 0``.

    The solution is ``x = y = x_{alpha_i}(-1/a)`` and
    ``t = diag(.., a, 1/a, ..)``; it is the only one.
    """
    F = G.F
    root = G.simple_root(i)
    a = root_parameter(G, root, u)
    if a == 0:
        raise ValueError("u must not be the identity")
    m = F.neg(F.inv(a))
    x = G.root_element(root, m)
    d = [1] * G.n
    d[i], d[i + 1] = a, F.inv(a)
    t = G.torus_element(d)
    s = G.simple_rep(i)
    lhs = G.prod(s, u, G.inv(s))
    rhs = G.prod(x, s, t, x)
    assert lhs == rhs, "rank-one decomposition failed"
    return Sl2Decomposition(x, t, x, m, m)


def tau_group_element(G: SLn, i: int, u: Matrix) -> list[tuple[Matrix, int]]:
    """``u^-1 s_i^-1 (x - 1)`` as ``[(u^-1 s_i^-1 x, +1), (u^-1 s_i^-1, -1)]``."""
    dec = sl2_decompose(G, i, u)
    head = G.mul(G.inv(u), G.inv(G.simple_rep(i)))
    return [(G.mul(head, dec.x), 1), (head, -1)]
