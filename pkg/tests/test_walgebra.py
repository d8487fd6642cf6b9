import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagmod.coxeter import build_system
from flagmod.exactlinalg import SubspaceBasis, rank
from flagmod.fields import GF, QQ
from flagmod.walgebra import (
    EModel,
    PsiMeasure,
    ReductionError,
    kappa,
    c_ideal_basis,
    psi,
    reduce_to_generator,
    tau_apply,
)


@pytest.fixture
def a2():
    W = build_system("A2")
    return W, EModel(W, {0}, QQ)


def test_tau_table_examples(a2):
    W, m = a2
    s1 = W.simple(1)
    D = m.d_vector()
    assert tau_apply(1, m.basis_vector(s1)) == m.basis_vector(s1) - D
    assert tau_apply(0, D) == D
    assert not tau_apply(1, D)


def test_tau_rejects_bad_index(a2):
    _, m = a2
    with pytest.raises(IndexError):
        m.tau(2, m.d_vector())


def test_vectors_live_on_y(a2):
    W, m = a2
    with pytest.raises(ValueError):
        m.basis_vector(W.simple(0))


def test_psi_examples(a2):
    W, m = a2
    D, v = m.d_vector(), m.basis_vector(W.simple(1))
    assert psi(D) == (0, 1)
    assert psi(v) == (1, 1)
    assert psi(v - D) == (1, 1)
    assert PsiMeasure(1, 2) < PsiMeasure(2, 1) and PsiMeasure(1, 1) < PsiMeasure(1, 2)
    with pytest.raises(ValueError):
        psi(m.vector())


def test_kappa_examples(a2):
    W, m = a2
    e, s1 = W.identity, W.simple(1)
    assert kappa(s1, [], s1, m) == 1
    assert kappa(e, [1], s1, m) == -1
    assert kappa(e, [1, 0], s1, m) == -1
    with pytest.raises(ValueError):
        kappa(W.simple(0), [1], s1, m)


def test_reduction_examples(a2):
    W, m = a2
    s1 = W.simple(1)
    cert = reduce_to_generator(m.d_vector(5))
    assert cert.steps == [] and cert.final_scalar == 5
    A = m.basis_vector(s1)
    cert = reduce_to_generator(A)
    assert cert.steps == [1, 0]
    assert cert.final_scalar == -1
    assert cert.trace == [(1, 1), (1, 1), (0, 1)]
    assert cert.cases == ["ii", "ii/i"]
    assert cert.validate(A)
    A = m.basis_vector(s1) - m.d_vector()
    cert = reduce_to_generator(A)
    assert cert.steps == [0] and cert.final_scalar == -1 and cert.cases == ["i"]
    with pytest.raises(ValueError):
        reduce_to_generator(m.vector())


def test_step_bound_is_enforced():
    W = build_system("A3")
    m = EModel(W, {1}, QQ)
    A = m.basis_vector(max(m.Y, key=lambda w: w.length))
    with pytest.raises(ReductionError):
        reduce_to_generator(A, max_steps=1)


def _sweep(label):
    W = build_system(label)
    stats = {"vanish": 0, "top": 0, "support": 0}
    for J in W.subsets():
        m = EModel(W, J, QQ)
        for k in range(5):
            for taus in itertools.product(range(W.rank), repeat=k):
                for w2 in m.Y:
                    v = m.basis_vector(w2)
                    for j in taus:
                        v = m.tau(j, v)
                    target = w2
                    for j in taus:
                        target = W.lmul_simple(j, target)
                    for w1 in m.Y:
                        c, d = v[w1], w2.length - w1.length
                        assert c == kappa(w1, taus, w2, m) or k > 2
                        if k < d:
                            assert c == 0
                            stats["vanish"] += 1
                        if k == d:
                            assert (c != 0) == (target == w1)
                            if c:
                                assert c == (-1) ** k
                            stats["top"] += 1
                        if c and w1 != w2:
                            t = w2.length - w1.length
                            assert t > 0
                            found = False
                            for sub in itertools.combinations(range(k), t):
                                x = w2
                                for i in sub:
                                    x = W.lmul_simple(taus[i], x)
                                found |= x == w1
                            assert found
                            stats["support"] += 1
    return stats


@pytest.mark.parametrize("label,expected", [
    ("A2", {"vanish": 2, "top": 10, "support": 20}),
    ("B2", {"vanish": 10, "top": 24, "support": 60}),
])
def test_tau_words_exhaustive(label, expected):
    assert _sweep(label) == expected


@pytest.mark.parametrize("label", ["A2", "A3", "B2"])
@pytest.mark.parametrize("F", [QQ, GF(5)])
def test_random_reductions(label, F):
    W = build_system(label)
    rng = np.random.default_rng(11)
    for J in W.subsets():
        m = EModel(W, J, F)
        for _ in range(60):
            A = m.random_vector(rng)
            cert = reduce_to_generator(A)
            assert cert.final_scalar != 0
            assert cert.validate(A)
            for k, case in enumerate(cert.cases):
                if case in ("i", "ii/i"):
                    assert cert.trace[k + 1] < cert.trace[k]


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_reduction_property(data):
    label = data.draw(st.sampled_from(["A2", "B2", "A3", "G2"]))
    W = build_system(label)
    J = data.draw(st.sampled_from(W.subsets()))
    m = EModel(W, J, GF(7))
    coords = {w: data.draw(st.integers(0, 6)) for w in m.Y}
    A = m.vector(coords)
    if not A:
        return
    cert = reduce_to_generator(A)
    assert cert.validate(A)
    assert cert.replay(A) == m.d_vector(cert.final_scalar)


def test_reduction_is_deterministic():
    W = build_system("A3")
    m = EModel(W, {1}, QQ)
    rng = np.random.default_rng(3)
    A = m.random_vector(rng)
    assert reduce_to_generator(A) == reduce_to_generator(A)


def _span(vectors, F, n):
    return SubspaceBasis.from_rows([v.to_array() for v in vectors], F, n)


@pytest.mark.parametrize("label", ["A2", "B2", "A3"])
def test_three_bases_agree(label):
    W = build_system(label)
    F = QQ
    for J in W.subsets():
        spans = []
        for variant in (1, 2, 3):
            vs = c_ideal_basis(W, J, variant, F)
            assert len(vs) == len(W.min_coset_reps(J))
            assert rank(np.array([v.to_array() for v in vs], dtype=object), F) == len(vs)
            spans.append(_span(vs, F, W.order))
        assert spans[0] == spans[1] == spans[2]


def test_basis_edge_cases():
    W = build_system("A2")
    assert len(c_ideal_basis(W, W.index_set, 1, QQ)) == 1
    v1 = c_ideal_basis(W, set(), 1, QQ)
    assert sorted(next(iter(v.coeffs)) for v in v1) == sorted(W.elements)
    assert [len(c_ideal_basis(W, {0}, k, QQ)) for k in (1, 2, 3)] == [3, 3, 3]
    with pytest.raises(ValueError):
        c_ideal_basis(W, {0}, 4, QQ)
