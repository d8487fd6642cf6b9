"""The Weyl-group level model of the module generated by ``D_J``.

Vectors are combinations of the basis ``{w D_J : w in Y_J}``.  The operators
``tau_i`` act on basis vectors by the three-case table

* ``w D - (s_i w) D``  if ``s_i w < w``,
* ``w D``              if ``s_i w > w`` and ``s_i w w_J < w w_J``,
* ``0``                if ``s_i w w_J > w w_J``,

and :func:`reduce_to_generator` turns the descent-measure induction into an
algorithm that drives any nonzero vector to a nonzero multiple of ``D_J``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import NamedTuple

from .coxeter import CoxeterElement, CoxeterSystem, reduced_word, support, word
from .klpoly import GroupAlgebraVector, c_element


class EModel:
    """Basis data for one ``(W, J, field)``."""

    def __init__(self, W: CoxeterSystem, J, field):
        self.W = W
        self.J = W._check_subset(J)
        self.field = field
        self.wJ = W.longest_element(self.J)
        self.Y = W.y_set(self.J)
        self._Y = set(self.Y)

    def __repr__(self):
        return f"EModel({self.W.label}, J={sorted(self.J)}, {self.field!r})"

    def vector(self, coords=None) -> EModelVector:
        return EModelVector(self, coords or {})

    def basis_vector(self, w: CoxeterElement, c=1) -> EModelVector:
        return EModelVector(self, {w: c})

    def d_vector(self, c=1) -> EModelVector:
        """``c * D_J`` (the basis vector at the identity)."""
        return EModelVector(self, {self.W.identity: c})

    def random_vector(self, rng, density: float = 0.6) -> EModelVector:
        """Random nonzero vector; each coordinate is nonzero with probability ``density``."""
        f = self.field
        while True:
            coords = {w: f.random(rng, nonzero=True) for w in self.Y if rng.random() < density}
            if coords:
                return EModelVector(self, coords)

    def tau_basis(self, i: int, w: CoxeterElement) -> dict[CoxeterElement, int]:
        """Integer coefficients of ``tau_i (w D_J)``."""
        W = self.W
        W._check_index(i)
        siw = W.lmul_simple(i, w)
        if siw.length < w.length:
            assert siw in self._Y, f"s_{i}*{word(w)} left Y_J"
            return {w: 1, siw: -1}
        wwJ = w * self.wJ
        if W.lmul_simple(i, wwJ).length < wwJ.length:
            return {w: 1}
        return {}

    def tau(self, i: int, v: EModelVector) -> EModelVector:
        f = self.field
        out: dict[CoxeterElement, object] = {}
        for w, a in v.coords.items():
            for x, c in self.tau_basis(i, w).items():
                out[x] = f.normalize(out.get(x, f.zero) + c * a)
        return EModelVector(self, out)


class EModelVector:
    """Element of the free module on ``{w D_J : w in Y_J}``."""

    __slots__ = ("model", "coords")

    def __init__(self, model: EModel, coords):
        self.model = model
        f = model.field
        self.coords: dict[CoxeterElement, object] = {}
        for w, c in coords.items():
            if w not in model._Y:
                raise ValueError(f"{word(w)} is not in Y_J")
            c = f(c)
            if c:
                self.coords[w] = c

    def __getitem__(self, w: CoxeterElement):
        return self.coords.get(w, self.model.field.zero)

    def __bool__(self):
        return bool(self.coords)

    def __eq__(self, other):
        if not isinstance(other, EModelVector):
            return NotImplemented
        return self.model is other.model and self.coords == other.coords

    def __add__(self, other: EModelVector) -> EModelVector:
        f = self.model.field
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = f.normalize(out.get(w, f.zero) + c)
        return EModelVector(self.model, out)

    def __sub__(self, other: EModelVector) -> EModelVector:
        return self + other.scale(-1)

    def scale(self, c) -> EModelVector:
        f = self.model.field
        c = f(c)
        return EModelVector(self.model, {w: f.normalize(c * a) for w, a in self.coords.items()})

    def support(self) -> list[CoxeterElement]:
        return sorted(self.coords)

    def __repr__(self):
        if not self.coords:
            return "0"
        f = self.model.field
        return " + ".join(f"{f.to_str(self.coords[w])}*[{word(w)}]D" for w in self.support())


def tau_apply(i: int, v: EModelVector) -> EModelVector:
    return v.model.tau(i, v)


class PsiMeasure(NamedTuple):
    """``(h, c)``: top length in the support and how many support elements reach it.

    Tuple comparison is the dictionary order used by the reduction.
    """

    h: int
    c: int


def psi(v: EModelVector) -> PsiMeasure:
    if not v.coords:
        raise ValueError("psi is undefined on the zero vector")
    h = max(w.length for w in v.coords)
    return PsiMeasure(h, sum(1 for w in v.coords if w.length == h))


def kappa(w1: CoxeterElement, taus, w2: CoxeterElement, model: EModel):
    """Coefficient of ``w1 D_J`` in ``tau_{j_k} ... tau_{j_1} (w2 D_J)``."""
    for w in (w1, w2):
        if w not in model._Y:
            raise ValueError(f"{word(w)} is not in Y_J")
    v = model.basis_vector(w2)
    for j in taus:
        v = model.tau(j, v)
        if not v:
            break
    return v[w1]


@dataclass
class ReductionCertificate:
    """Record of a run of :func:`reduce_to_generator`.

    ``trace[0]`` is the measure of the input and ``trace[k+1]`` the measure
    after ``steps[k]``; ``cases[k]`` says which branch of the induction issued
    that step (``"i"``, ``"ii"`` or ``"ii/i"`` for the follow-up after an
    unchanged measure).
    """

    steps: list[int]
    final_scalar: object
    trace: list[PsiMeasure]
    cases: list[str] = dc_field(default_factory=list)

    def replay(self, A: EModelVector) -> EModelVector:
        v = A
        for j in self.steps:
            v = A.model.tau(j, v)
        return v

    def validate(self, A: EModelVector) -> bool:
        """Replay the steps on ``A`` and compare with ``final_scalar * D_J``."""
        if not self.final_scalar:
            return False
        if self.replay(A) != A.model.d_vector(self.final_scalar):
            return False
        for k, case in enumerate(self.cases):
            if case in ("i", "ii/i") and not self.trace[k + 1] < self.trace[k]:
                return False
        return all(b <= a for a, b in zip(self.trace, self.trace[1:]))


class ReductionError(RuntimeError):
    pass


def reduce_to_generator(A: EModelVector, max_steps: int | None = None) -> ReductionCertificate:
    """Apply tau operators to ``A`` until a nonzero multiple of ``D_J`` remains.

    Choices: the ShortLex-least element of top length, its ShortLex reduced
    word, the least admissible ``j``, and in the fallback branch the least
    ``l`` with index subsets tried in lexicographic order.
    """
    if not A:
        raise ValueError("cannot reduce the zero vector")
    model = A.model
    W, J, wJ = model.W, model.J, model.wJ
    bound = max_steps if max_steps is not None else 10 * W.order**2
    steps: list[int] = []
    cases: list[str] = []
    trace = [psi(A)]
    cur = A

    def apply(j: int, case: str):
        nonlocal cur
        cur = model.tau(j, cur)
        steps.append(j)
        cases.append(case)
        if not cur:
            raise AssertionError(f"tau_{j} annihilated the vector (case {case})")
        trace.append(psi(cur))
        if len(steps) > bound:
            raise ReductionError(f"no convergence after {bound} tau applications")

    while trace[-1] > PsiMeasure(0, 1):
        h = trace[-1].h
        w = min((x for x in cur.coords if x.length == h), key=reduced_word)
        letters = reduced_word(w)
        wwJ = w * wJ
        K = J | support(wwJ)
        j = min(k for k in K if W.lmul_simple(k, wwJ).length > wwJ.length)

        x, w1, tp = wwJ, w, 0
        for tp in range(1, len(letters) + 1):
            s = letters[tp - 1]
            x = W.lmul_simple(s, x)
            w1 = W.lmul_simple(s, w1)
            if W.lmul_simple(j, x).length < x.length:
                break
        else:
            raise AssertionError(f"no t' found for {word(w)}, j={j}")
        assert w1 in model._Y, f"{word(w1)} is not in Y_J"

        if cur[w1]:
            before = trace[-1]
            apply(j, "i")
            assert trace[-1] < before
            continue

        witness = _case_ii_witness(cur, letters[:tp], w1)
        before = trace[-1]
        for k in witness:
            apply(letters[k], "ii")
        if trace[-1] == before:
            assert cur[w] and cur[w1], "unchanged measure but top coefficient vanished"
            apply(j, "ii/i")
            assert trace[-1] < before
    return ReductionCertificate(steps, next(iter(cur.coords.values())), trace, cases)


def _case_ii_witness(cur: EModelVector, prefix: tuple[int, ...], w1: CoxeterElement) -> tuple[int, ...]:
    """Least ``l`` and lexicographically first ``n(1) < ... < n(l)`` (0-based)
    such that ``w2 = s_{i_{n(1)}} ... s_{i_{n(l)}} w1`` has length
    ``l(w1) + l`` and a nonzero coefficient in ``cur``."""
    W = cur.model.W
    for l in range(1, len(prefix) + 1):
        for combo in combinations(range(len(prefix)), l):
            w2 = w1
            for k in reversed(combo):
                w2 = W.lmul_simple(prefix[k], w2)
            if w2.length == w1.length + l and w2 in cur.coords:
                return combo
    raise AssertionError("case (ii): no witness, although the full prefix should qualify")


def c_ideal_basis(W: CoxeterSystem, J, variant: int, field) -> list[GroupAlgebraVector]:
    """Three bases of the left ideal ``kW C_{w_J}``.

    1. ``w C_{w_J}`` for ``w`` in ``X_J``;
    2. ``C_{x w_J}`` for ``x`` in ``X_J``;
    3. ``w C_{w_J}`` for ``w`` in ``Y_J`` together with ``C_{x w_J}`` for ``x``
       in ``X_J \\ Y_J``.
    """
    if variant not in (1, 2, 3):
        raise ValueError(f"variant must be 1, 2 or 3, got {variant!r}")
    wJ = W.longest_element(J)
    cwJ = c_element(wJ, field)
    X = W.min_coset_reps(J)
    if variant == 1:
        return [cwJ.left_mul(x) for x in X]
    if variant == 2:
        return [c_element(x * wJ, field) for x in X]
    Y = set(W.y_set(J))
    return [cwJ.left_mul(x) for x in X if x in Y] + [c_element(x * wJ, field) for x in X if x not in Y]
