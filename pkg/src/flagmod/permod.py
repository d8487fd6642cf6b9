"""Permutation modules ``k[G_q / P_K]`` for ``G_q = SL_n(F_q)`` and the
submodules, quotients and identities built from the alternating sums
``eta_J`` and ``D_J``.

A module vector is a 1-d array over the coefficient field indexed by the
enumerated coset points.  Group elements act by permuting coordinates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import meataxe
from .chevalley import Matrix, SLn, sl2_decompose, tau_group_element
from .coxeter import CoxeterElement, format_subset, word
from .exactlinalg import SubspaceBasis, express, intersect, left_nullspace, spin, subspace_sum
from .klpoly import c_element
from .walgebra import EModel


DEFAULT_CAP = 10_000


class CrossCharacteristicError(ValueError):
    """The coefficient field has the defining characteristic of the group."""


def _rref_rows(G: SLn, vectors: list[list[int]]) -> tuple:
    """Reduced row-echelon form over ``F_q`` of a list of row vectors (hashable)."""
    F = G.F
    rows = [list(v) for v in vectors]
    col = 0
    width = len(rows[0]) if rows else 0
    r = 0
    while r < len(rows) and col < width:
        piv = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if piv is None:
            col += 1
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][col])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[k], rows[r])]
        r += 1
        col += 1
    return tuple(tuple(v) for v in rows[:r])


def parabolic_cuts(n: int, K) -> list[int]:
    """Sizes ``d`` of the subspaces in a partial flag of type ``K``."""
    return [d for d in range(1, n) if (d - 1) not in K]


class PermutationModule:
    """``k[G/P_K]`` with a fixed generating set of ``G`` acting by permutations."""

    def __init__(self, group: SLn, K, field, cap: int = DEFAULT_CAP):
        K = group.W._check_subset(K)
        if field.characteristic == group.p:
            raise CrossCharacteristicError(
                f"coefficient characteristic {field.characteristic} equals the defining characteristic of {group}"
            )
        self.group = group
        self.W = group.W
        self.K = K
        self.field = field
        expected = sum(group.q**x.length for x in self.W.min_coset_reps(K))
        if expected > cap:
            raise ValueError(f"module dimension {expected} exceeds the cap {cap}")
        self._cuts = parabolic_cuts(group.n, K)
        self.generators = group.generators()
        self._enumerate()
        assert self.dim == expected, (self.dim, expected)
        self._perm_cache: dict[Matrix, np.ndarray] = {}
        self.gen_perms = [self.perm_of(g) for _, g in self.generators]

    def __repr__(self):
        return f"PermutationModule({self.group}, K={format_subset(self.K)}, {self.field!r}, dim={self.dim})"

    def key(self, g: Matrix) -> tuple:
        n = self.group.n
        d_max = self._cuts[-1] if self._cuts else 0
        cols = [[g[i][k] for i in range(n)] for k in range(d_max)]
        return tuple(_rref_rows(self.group, cols[:d]) for d in self._cuts)

    def _enumerate(self):
        G = self.group
        base = G.identity
        self.reps: list[Matrix] = [base]
        self.index: dict[tuple, int] = {self.key(base): 0}
        queue = deque([base])
        while queue:
            g = queue.popleft()
            for _, s in self.generators:
                h = G.mul(s, g)
                k = self.key(h)
                if k not in self.index:
                    self.index[k] = len(self.reps)
                    self.reps.append(h)
                    queue.append(h)
        self.dim = len(self.reps)

    # -- action ---------------------------------------------------------------

    def point(self, g: Matrix) -> int:
        """Index of the coset ``g P_K``."""
        return self.index[self.key(g)]

    def perm_of(self, g: Matrix) -> np.ndarray:
        """``perm[k]`` is the index of ``g`` applied to point ``k``."""
        hit = self._perm_cache.get(g)
        if hit is None:
            G = self.group
            hit = np.array([self.point(G.mul(g, r)) for r in self.reps], dtype=np.int64)
            self._perm_cache[g] = hit
        return hit

    def act(self, g: Matrix, v: np.ndarray) -> np.ndarray:
        out = self.field.zeros(self.dim)
        out[self.perm_of(g)] = v
        return out

    def act_algebra(self, terms, v: np.ndarray) -> np.ndarray:
        """Apply ``sum c_g g`` given as ``[(g, c), ...]``."""
        f = self.field
        out = f.zeros(self.dim)
        for g, c in terms:
            out = f.normalize(out + f(c) * self.act(g, v))
        return out

    def point_vector(self, g: Matrix, c=1) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[self.point(g)] = self.field(c)
        return v

    def weyl_point(self, w: CoxeterElement) -> int:
        return self.point(self.group.weyl_rep(w))

    def operators(self) -> list:
        return [self._perm_operator(p) for p in self.gen_perms]

    def borel_operators(self) -> list:
        return [self._perm_operator(self.perm_of(g)) for _, g in self.group.borel_generators()]

    def _perm_operator(self, perm):
        f, dim = self.field, self.dim

        def op(v):
            out = f.zeros(dim)
            out[perm] = v
            return out

        return op

    def generator_matrices(self) -> list[np.ndarray]:
        """Generators as permutation matrices acting on column vectors."""
        out = []
        for perm in self.gen_perms:
            m = np.zeros((self.dim, self.dim), dtype=np.int64)
            m[perm, np.arange(self.dim)] = 1
            out.append(m)
        return out

    def ones(self) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[:] = self.field.one
        return v


def build_perm_module(group: SLn, K, field, cap: int = DEFAULT_CAP) -> PermutationModule:
    return PermutationModule(group, K, field, cap)


def alternating_sum(M: PermutationModule, J, start: Matrix | None = None) -> np.ndarray:
    """``sum_{w in W_J} (-1)^{l(w)} [start * w P_K]``."""
    G, f = M.group, M.field
    start = G.identity if start is None else start
    v = f.zeros(M.dim)
    for w in M.W.parabolic(J):
        k = M.point(G.mul(start, G.weyl_rep(w)))
        v[k] = f.normalize(v[k] + f.from_int((-1) ** w.length))
    return v


def eta_vector(M: PermutationModule, J) -> np.ndarray:
    """``eta_J`` (in ``k[G/B]`` when ``M.K`` is empty)."""
    return alternating_sum(M, M.W._check_subset(J))


def d_vector(M: PermutationModule, J) -> np.ndarray:
    """``D_J`` in ``k[G/P_{J'}]`` with ``J' = I \\ J``."""
    J = M.W._check_subset(J)
    if M.K != M.W.index_set - J:
        raise ValueError(f"D_J needs the parabolic module for J' = {format_subset(M.W.index_set - J)}")
    return alternating_sum(M, J)


def submodule_of(M: PermutationModule, v: np.ndarray, check_weyl_span: bool = False) -> SubspaceBasis:
    """``kG v`` by spin-up under the generators.

    With ``check_weyl_span`` the result is compared with the span of
    ``u w v`` over ``u`` in ``U_q`` and ``w`` in ``W``.
    """
    S = spin([v], M.operators(), M.field, M.dim)
    if check_weyl_span:
        T = weyl_unipotent_span(M, v)
        if T != S:
            raise AssertionError(f"kUW-span has dimension {T.dim}, spin-up {S.dim}")
    return S


def weyl_unipotent_span(M: PermutationModule, v: np.ndarray) -> SubspaceBasis:
    G = M.group
    T = SubspaceBasis(M.field, M.dim)
    U = G.unipotent_radical()
    for w in M.W.elements:
        wv = M.act(G.weyl_rep(w), v)
        for u in U:
            T.add(M.act(u, wv))
    return T


@dataclass
class EQuotient:
    J: frozenset
    submodule: SubspaceBasis        # kG eta_J
    upper: SubspaceBasis            # sum of kG eta_K over K strictly containing J
    section: list[int]              # coordinates spanning a complement of upper inside submodule

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.submodule.dim, self.upper.dim, self.submodule.dim - self.upper.dim


class Lattice:
    """Caches ``kG eta_J`` for every ``J`` on one module ``k[G/B]``."""

    def __init__(self, M: PermutationModule):
        if M.K:
            raise ValueError("the eta_J lattice lives in k[G/B] (K must be empty)")
        self.M = M
        self._sub: dict[frozenset, SubspaceBasis] = {}

    def submodule(self, J) -> SubspaceBasis:
        J = frozenset(J)
        if J not in self._sub:
            self._sub[J] = submodule_of(self.M, eta_vector(self.M, J))
        return self._sub[J]

    def upper(self, J) -> SubspaceBasis:
        J = frozenset(J)
        out = SubspaceBasis(self.M.field, self.M.dim)
        for K in self.M.W.subsets():
            if J < K:
                S = self.submodule(K)
                if not self.submodule(J).contains_space(S):
                    raise AssertionError(f"kG eta_{format_subset(K)} is not inside kG eta_{format_subset(J)}")
                out = subspace_sum(out, S)
        return out

    def e_quotient(self, J) -> EQuotient:
        J = frozenset(J)
        S, U = self.submodule(J), self.upper(J)
        # residuals of S modulo U span a complement; their pivots give a section
        comp = SubspaceBasis(self.M.field, self.M.dim)
        for r in S.rows:
            comp.add(U.reduce(r))
        return EQuotient(J, S, U, list(comp.pivots))


def e_quotient_dim(M: PermutationModule, J, lattice: Lattice | None = None) -> tuple[int, int, int]:
    """``(dim kG eta_J, dim sum_{K > J} kG eta_K, dim E_J)``."""
    lattice = lattice or Lattice(M)
    return lattice.e_quotient(J).dims


def quotient_action(M: PermutationModule, big: SubspaceBasis, small: SubspaceBasis) -> list[np.ndarray]:
    """Generator matrices on ``big / small`` (both invariant, ``small`` inside ``big``)."""
    f = M.field
    comp = SubspaceBasis(f, M.dim)
    for r in big.rows:
        comp.add(small.reduce(r))
    mats = []
    for op in M.operators():
        cols = []
        for b in comp.rows:
            image = small.reduce(op(b))
            cols.append(comp.coordinates(image))
        mats.append(np.array(cols, dtype=f.dtype).T.copy() if cols else np.zeros((0, 0), dtype=f.dtype))
    return mats


def submodule_action(M: PermutationModule, S: SubspaceBasis) -> list[np.ndarray]:
    """Generator matrices on an invariant subspace in the basis ``S.rows``."""
    mats = []
    for op in M.operators():
        cols = [S.coordinates(op(b)) for b in S.rows]
        mats.append(np.array(cols, dtype=M.field.dtype).T.copy())
    return mats


def meataxe_length(M: PermutationModule, S: SubspaceBasis | None = None, seed: int = 0,
                   budget: int = 200) -> meataxe.CompositionReport:
    """Composition factor dimensions of ``M`` (or of the invariant subspace ``S``)."""
    if M.field.characteristic == 0:
        raise ValueError("use GF(r) with r not dividing |G| for characteristic-zero lengths")
    gens = M.generator_matrices() if S is None else submodule_action(M, S)
    return meataxe.composition_factors(gens, M.field, seed=seed, budget=budget)


def b_fixed_points(S: SubspaceBasis, M: PermutationModule) -> SubspaceBasis:
    """Vectors of the ``B_q``-invariant subspace ``S`` fixed by every generator of ``B_q``."""
    f = M.field
    ops = M.borel_operators()
    out = SubspaceBasis(f, M.dim)
    if S.dim == 0:
        return out
    blocks = []
    for op in ops:
        images = np.array([op(b) for b in S.rows], dtype=f.dtype)
        for im in images:
            if im not in S:
                raise ValueError("subspace is not invariant under B")
        blocks.append(f.normalize(images - S.rows))
    if not blocks:
        return SubspaceBasis.from_rows(S.rows, f, M.dim)
    stacked = np.concatenate(blocks, axis=1)
    for c in left_nullspace(stacked, f):
        out.add(f.normalize(c @ S.rows))
    return out


def orbit_sum(M: PermutationModule, elements, v: np.ndarray) -> np.ndarray:
    """``sum_{g in elements} g v``."""
    f = M.field
    out = f.zeros(M.dim)
    for g in elements:
        out = f.normalize(out + M.act(g, v))
    return out


# -- identity checks ------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "detail": self.detail}


def u_average_check(M: PermutationModule) -> list[Check]:
    """Expand ``U_q eta`` for ``eta = sum_w [w B]`` in two ways.

    Directly, and as ``sum_w q^{l(w0 w)} U_{w^-1} [w B]``.  When the defining
    prime is 1 modulo the coefficient characteristic, also check that the
    result is a nonzero vector fixed by every generator.
    """
    if M.K:
        raise ValueError("u_average_check runs on k[G/B]")
    G, W, f = M.group, M.W, M.field
    eta = f.zeros(M.dim)
    for w in W.elements:
        eta[M.weyl_point(w)] = f.one
    lhs = orbit_sum(M, G.unipotent_radical(), eta)
    rhs = f.zeros(M.dim)
    N = W.longest.length
    for w in W.elements:
        cell = orbit_sum(M, G.u_w(w.inverse()), M.point_vector(G.weyl_rep(w)))
        rhs = f.normalize(rhs + f.from_int(G.q ** (N - w.length)) * cell)
    checks = [Check("u_average_identity", bool(np.array_equal(lhs, rhs)), f"{G} over {f!r}")]
    r = f.characteristic
    if r and G.p % r == 1:
        fixed = any(lhs) and all(np.array_equal(op(lhs), lhs) for op in M.operators())
        checks.append(Check("u_average_trivial_submodule", bool(fixed),
                            f"p = {G.p} = 1 mod {r}: U eta spans a trivial submodule"))
    return checks


def rank_one_checks(M: PermutationModule, J) -> list[Check]:
    """Rank-one identities for ``eta_J`` in ``k[G/B]`` over all ``i``, ``w`` in ``X_J``, ``u != 1``.

    * ``w w_J < s_i w w_J``: ``s_i u w eta_J = s_i w eta_J``;
    * ``s_i w < w``: ``s_i u w eta_J = x w eta_J``;
    * ``s_i w > w``, ``s_i w w_J < w w_J``: ``s_i u w eta_J = (x - 1) w eta_J``.
    """
    if M.K:
        raise ValueError("rank_one_checks runs on k[G/B]")
    G, W, f = M.group, M.W, M.field
    J = W._check_subset(J)
    wJ = W.longest_element(J)
    eta = eta_vector(M, J)
    counts = {"2": 0, "3": 0, "4": 0}
    failures = []
    for i in range(W.rank):
        s = G.simple_rep(i)
        for w in W.min_coset_reps(J):
            weta = M.act(G.weyl_rep(w), eta)
            wwJ = w * wJ
            siwwJ = W.lmul_simple(i, wwJ)
            siw = W.lmul_simple(i, w)
            for a in range(1, G.q):
                u = G.root_element(G.simple_root(i), a)
                lhs = M.act(G.mul(s, u), weta)
                if siwwJ.length > wwJ.length:
                    case, rhs = "2", M.act(s, weta)
                elif siw.length < w.length:
                    x = sl2_decompose(G, i, u).x
                    case, rhs = "3", M.act(x, weta)
                else:
                    x = sl2_decompose(G, i, u).x
                    case, rhs = "4", f.normalize(M.act(x, weta) - weta)
                counts[case] += 1
                if not np.array_equal(lhs, rhs):
                    failures.append(f"case {case}: i={i} w={word(w)} u=x({a})")
    detail = f"J={format_subset(J)} cases={counts}" + (f" failures={failures[:3]}" if failures else "")
    return [Check(f"rank_one_J{format_subset(J)}", not failures, detail)]


def _dj_basis(M: PermutationModule, model: EModel) -> dict[CoxeterElement, np.ndarray]:
    G = M.group
    return {w: alternating_sum(M, model.J, G.weyl_rep(w)) for w in model.Y}


def tau_consistency_checks(group: SLn, J, field) -> list[Check]:
    """Compare the group-algebra ``tau_i`` on ``{w D_J}`` with the Weyl-level table, for every ``u``."""
    W = group.W
    J = W._check_subset(J)
    M = PermutationModule(group, W.index_set - J, field)
    model = EModel(W, J, field)
    basis = _dj_basis(M, model)
    order = list(model.Y)
    vecs = [basis[w] for w in order]
    failures, compared = [], 0
    for i in range(W.rank):
        for a in range(1, group.q):
            u = group.root_element(group.simple_root(i), a)
            terms = tau_group_element(group, i, u)
            for w in order:
                image = M.act_algebra(terms, basis[w])
                coeffs = express(vecs, image, field)
                expected = model.tau_basis(i, w)
                want = [field.from_int(expected.get(y, 0)) for y in order]
                compared += 1
                if coeffs is None or list(coeffs) != want:
                    failures.append(f"i={i} u=x({a}) w={word(w)}")
    detail = f"J={format_subset(J)} {compared} comparisons" + (f" failures={failures[:3]}" if failures else "")
    return [Check(f"tau_consistency_J{format_subset(J)}", not failures, detail)]


def dimension_formula(group: SLn, J) -> int:
    """``sum_{w in Y_J} q^{l(w_J w^-1)}``."""
    W = group.W
    wJ = W.longest_element(J)
    return sum(group.q ** (wJ * w.inverse()).length for w in W.y_set(J))


def d_submodule(group: SLn, J, field) -> tuple[PermutationModule, SubspaceBasis]:
    W = group.W
    J = W._check_subset(J)
    M = PermutationModule(group, W.index_set - J, field)
    return M, submodule_of(M, d_vector(M, J))


def vanishing_checks(group: SLn, J, field) -> list[Check]:
    """``c_{x w_J} = (-1)^{l} C_{x w_J} 1_{J'}`` is 0 for ``x`` in ``X_J \\ Y_J`` and ``D_J`` at ``x = e``."""
    W = group.W
    J = W._check_subset(J)
    M = PermutationModule(group, W.index_set - J, field)
    wJ = W.longest_element(J)
    Y = set(W.y_set(J))
    failures = []
    for x in W.min_coset_reps(J):
        cw = c_element(x * wJ, field)
        sign = field.from_int((-1) ** (x * wJ).length)
        v = field.zeros(M.dim)
        for y, c in cw.coeffs.items():
            k = M.weyl_point(y)
            v[k] = field.normalize(v[k] + sign * c)
        if x == W.identity and not np.array_equal(v, d_vector(M, J)):
            failures.append("c_{w_J} != D_J")
        if x not in Y and np.any(v):
            failures.append(f"c_(x w_J) != 0 for x={word(x)}")
    return [Check(f"c_vanishing_J{format_subset(J)}", not failures, "; ".join(failures))]


def b_fixed_in_orbit_sums(group: SLn, J, field) -> Check:
    """B-fixed vectors of ``kG D_J`` lie in the span of the orbit sums ``U_{w_J w^-1} w D_J``."""
    M, S = d_submodule(group, J, field)
    W = group.W
    wJ = W.longest_element(J)
    fixed = b_fixed_points(S, M)
    sums = SubspaceBasis(field, M.dim)
    for w in W.y_set(J):
        dw = alternating_sum(M, J, group.weyl_rep(w))
        sums.add(orbit_sum(M, group.u_w(wJ * w.inverse()), dw))
    ok = sums.contains_space(fixed)
    return Check(f"b_fixed_in_orbit_sums_J{format_subset(J)}", ok,
                 f"dim fixed={fixed.dim}, orbit sums={sums.dim}")


def parabolic_quotient_check(group: SLn, J, field, lattice: Lattice | None = None) -> list[Check]:
    """``k[G/B] / sum_{i in J} kG eta_{i}`` has the dimension of ``k[G/P_J]``.

    Over a field where the module is semisimple the dimension also equals
    ``sum_{K disjoint from J} dim E_K``.
    """
    W = group.W
    J = W._check_subset(J)
    if lattice is None:
        lattice = Lattice(PermutationModule(group, frozenset(), field))
    M = lattice.M
    N = SubspaceBasis(field, M.dim)
    for i in sorted(J):
        N = subspace_sum(N, lattice.submodule({i}))
    MJ = PermutationModule(group, J, field)
    checks = [Check(f"quotient_dim_J{format_subset(J)}", M.dim - N.dim == MJ.dim,
                    f"{M.dim} - {N.dim} vs dim M_J = {MJ.dim}")]
    if field.characteristic and group.order % field.characteristic != 0:
        total = sum(lattice.e_quotient(K).dims[2] for K in W.subsets() if not (K & J))
        checks.append(Check(f"quotient_factors_J{format_subset(J)}", total == MJ.dim,
                            f"sum of dim E_K over K disjoint from J = {total}"))
    return checks


def extension_moves_fixed_vector(n: int, q: int, J, field) -> Check:
    """Over ``F_{q^2}``, a ``B_q``-fixed orbit sum ``U_{w_J w^-1, q} w D_J`` is moved
    by some element of ``U_{w_J w^-1}(F_{q^2})``.  Only prime ``q`` (so that
    ``F_q`` is the prime subfield of ``F_{q^2}``)."""
    big = SLn(n, q * q)
    if big.F.e != 2:
        raise ValueError("q must be prime for the extension experiment")
    W = big.W
    J = W._check_subset(J)
    if not J:
        raise ValueError("J must be nonempty")
    M = PermutationModule(big, W.index_set - J, field)
    wJ = W.longest_element(J)
    for w in W.y_set(J):
        roots = big.inversion_roots(wJ * w.inverse())
        small = [g for g in big.unipotent_subgroup(roots) if all(x < q for row in g for x in row)]
        dw = alternating_sum(M, J, big.weyl_rep(w))
        v = orbit_sum(M, small, dw)
        for g in big.unipotent_subgroup(roots):
            if not np.array_equal(M.act(g, v), v):
                return Check("extension_moves_b_fixed", True, f"w={word(w)} moved over F_{q * q}")
    return Check("extension_moves_b_fixed", False, "no element moved the orbit sums")


def semisimple_prime(group: SLn) -> int:
    """Least prime larger than ``|G_q|`` (so coprime to it)."""
    from .fields import next_prime

    return next_prime(group.order)


def check_intersection_sanity(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    return a.dim + b.dim == subspace_sum(a, b).dim + intersect(a, b).dim


def sl2_identity_check(group: SLn) -> Check:
    """``s_i u s_i^-1 = x s_i t y`` for every ``i`` and ``u != 1`` in ``U_{alpha_i}``,
    with the solution unique among ``x, y`` in ``U_{alpha_i}`` and diagonal ``t``
    supported on the ``alpha_i`` block."""
    G, F = group, group.F
    failures, total = [], 0
    for i in range(G.n - 1):
        root = G.simple_root(i)
        s = G.simple_rep(i)
        s_inv = G.inv(s)
        units = [a for a in F.elements() if a]
        tori = []
        for a in units:
            d = [1] * G.n
            d[i], d[i + 1] = a, F.inv(a)
            tori.append(G.torus_element(d))
        roots = [G.root_element(root, c) for c in F.elements()]
        for a in units:
            u = G.root_element(root, a)
            dec = sl2_decompose(G, i, u)
            lhs = G.prod(s, u, s_inv)
            found = [(x, t, y) for x in roots for t in tori for y in roots if G.prod(x, s, t, y) == lhs]
            total += 1
            if found != [(dec.x, dec.t, dec.y)]:
                failures.append(f"i={i} u=x({a}): {len(found)} solutions")
    return Check("sl2_decomposition", not failures,
                 f"{total} root elements" + (f" failures={failures[:3]}" if failures else ""))
