"""Composition factors of matrix representations over prime fields.

A module is a list of square generator matrices over ``GF(r)`` acting on
column vectors.  Splitting uses Norton's irreducibility test: for a random
algebra element ``A`` and an irreducible factor ``f`` of its characteristic
polynomial, a nonzero ``v`` in ``ker f(A)`` is spun up; a proper result
splits the module.  When ``ker f(A)`` has dimension ``deg f`` the same is
tried on the transposed action, and if both spins are full the module is
irreducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
import sympy

from .exactlinalg import SubspaceBasis, nullspace, spin

MAX_WORD = 6
TERMS = 3


class MeataxeBudgetError(RuntimeError):
    """No decision after the allowed number of random algebra elements."""


@dataclass
class CompositionReport:
    factor_dims: list[int]
    seed: int
    splits: int = 0
    attempts: int = 0
    witnesses: list[dict] = dc_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.factor_dims)

    def as_dict(self) -> dict:
        return {
            "factor_dims": self.factor_dims,
            "length": self.length,
            "seed": self.seed,
            "splits": self.splits,
            "attempts": self.attempts,
            "witnesses": self.witnesses,
        }


def charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial of ``A`` mod ``p``, coefficients low degree first."""
    n = A.shape[0]
    H = (A % p).astype(np.int64)
    # similarity transform to upper Hessenberg form
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[i, m], :] = H[[m, i], :]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), p - 2, p)
        for r in range(m + 1, n):
            u = (int(H[r, m - 1]) * inv) % p
            if u:
                H[r, :] = (H[r, :] - u * H[m, :]) % p
                H[:, m] = (H[:, m] + u * H[:, r]) % p
    # p_k = (x - h_kk) p_{k-1} - sum_i h_{ik} prod(subdiag) p_{i-1}
    polys = [[1]]
    for k in range(n):
        prev = polys[-1]
        cur = [0] + prev
        for d, c in enumerate(prev):
            cur[d] = (cur[d] - int(H[k, k]) * c) % p
        prodsub = 1
        for i in range(k - 1, -1, -1):
            prodsub = (prodsub * int(H[i + 1, i])) % p
            if prodsub == 0:
                break
            coef = (int(H[i, k]) * prodsub) % p
            if coef:
                for d, c in enumerate(polys[i]):
                    cur[d] = (cur[d] - coef * c) % p
        polys.append(cur)
    return polys[-1]


def factor_poly(coeffs: list[int], p: int) -> list[list[int]]:
    """Distinct monic irreducible factors mod ``p`` (low degree first), by degree."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(reversed(coeffs)), x, modulus=p)
    _, facs = poly.factor_list()
    out = []
    for f, _mult in facs:
        c = [int(a) % p for a in reversed(f.all_coeffs())]
        lead = pow(c[-1], p - 2, p)
        out.append([(a * lead) % p for a in c])
    out.sort(key=lambda c: (len(c), c))
    return out


def poly_at_matrix(coeffs: list[int], A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(coeffs):
        out = (out @ A + c * eye) % p
    return out


def _random_element(gens: list[np.ndarray], p: int, rng) -> np.ndarray:
    n = gens[0].shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for _ in range(TERMS):
        length = int(rng.integers(1, MAX_WORD + 1))
        m = np.eye(n, dtype=np.int64)
        for _ in range(length):
            m = (m @ gens[int(rng.integers(len(gens)))]) % p
        out = (out + int(rng.integers(1, p)) * m) % p
    return out


def restrict(gens: list[np.ndarray], sub: SubspaceBasis, field) -> list[np.ndarray]:
    """Action matrices on an invariant subspace, in the basis ``sub.rows``."""
    out = []
    for g in gens:
        images = field.normalize(sub.rows @ g.T)  # row k is g applied to basis row k
        out.append(np.array([sub.coordinates(v) for v in images], dtype=np.int64).T.copy())
    return out


def quotient(gens: list[np.ndarray], sub: SubspaceBasis, field) -> list[np.ndarray]:
    """Action matrices on ``field**d / sub`` in the basis of unit vectors off the pivots."""
    comp = sub.complement_pivots()
    out = []
    for g in gens:
        cols = []
        for c in comp:
            image = field.normalize(g[:, c].copy())
            cols.append(sub.reduce(image)[comp])
        out.append(np.array(cols, dtype=np.int64).T.copy())
    return out


def composition_factors(
    gens: list[np.ndarray],
    field,
    seed: int = 0,
    budget: int = 200,
    report: CompositionReport | None = None,
) -> CompositionReport:
    """Multiset of composition factor dimensions of the module given by ``gens``."""
    if field.characteristic == 0:
        raise ValueError("the Meataxe needs a finite prime field; use GF(r) with r not dividing |G|")
    rng = np.random.default_rng(seed)
    rep = report or CompositionReport([], seed)
    dims = _split(gens, field, rng, budget, rep)
    rep.factor_dims = sorted(dims)
    return rep


def _split(gens, field, rng, budget, rep) -> list[int]:
    d = gens[0].shape[0] if gens else 0
    if d == 0:
        return []
    if d == 1:
        return [1]
    p = field.p
    tgens = [g.T.copy() for g in gens]
    for _ in range(budget):
        rep.attempts += 1
        A = _random_element(gens, p, rng)
        for f in factor_poly(charpoly(A, p), p):
            deg = len(f) - 1
            fA = poly_at_matrix(f, A, p)
            ker = nullspace(fA, field)
            sub = spin([ker[0]], gens, field, d, verify=False)
            if sub.dim < d:
                return _recurse(gens, sub, field, rng, budget, rep)
            if len(ker) != deg:
                continue
            kerT = nullspace(fA.T.copy(), field)
            subT = spin([kerT[0]], tgens, field, d, verify=False)
            if subT.dim < d:
                # annihilator of an invariant subspace of the dual is invariant
                ann = SubspaceBasis.from_rows(nullspace(subT.rows, field), field, d)
                return _recurse(gens, ann, field, rng, budget, rep)
            rep.witnesses.append({"dim": d, "factor_degree": deg, "nullity": len(ker)})
            return [d]
    raise MeataxeBudgetError(f"no decision on a {d}-dimensional module after {budget} random elements")


def _recurse(gens, sub, field, rng, budget, rep) -> list[int]:
    rep.splits += 1
    lower = _split(restrict(gens, sub, field), field, rng, budget, rep)
    upper = _split(quotient(gens, sub, field), field, rng, budget, rep)
    return lower + upper
