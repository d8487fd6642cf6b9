import numpy as np
import pytest

from flagmod.chevalley import SLn
from flagmod.coxeter import format_subset
from flagmod.exactlinalg import SubspaceBasis
from flagmod.fields import GF, QQ
from flagmod.permod import (
    CrossCharacteristicError,
    Lattice,
    PermutationModule,
    b_fixed_points,
    check_intersection_sanity,
    b_fixed_in_orbit_sums,
    d_submodule,
    d_vector,
    dimension_formula,
    e_quotient_dim,
    eta_vector,
    extension_moves_fixed_vector,
    rank_one_checks,
    meataxe_length,
    parabolic_quotient_check,
    semisimple_prime,
    sl2_identity_check,
    submodule_of,
    tau_consistency_checks,
    u_average_check,
    vanishing_checks,
)

SMALL = [(2, 2), (2, 3), (3, 2)]

# dims of E_J over GF(5), keyed by formatted J (frozen from the lattice computation)
E_DIMS = {
    (2, 2): {"[]": 1, "[0]": 2},
    (2, 3): {"[]": 1, "[0]": 3},
    (3, 2): {"[]": 1, "[0]": 6, "[1]": 6, "[0,1]": 8},
}


@pytest.fixture(scope="module")
def lattices():
    cache = {}

    def get(n, q, r=5):
        if (n, q, r) not in cache:
            cache[n, q, r] = Lattice(PermutationModule(SLn(n, q), frozenset(), GF(r)))
        return cache[n, q, r]

    return get


@pytest.mark.parametrize("n,q,K,dim", [(2, 2, set(), 3), (3, 2, set(), 21), (3, 2, {0}, 7), (3, 2, {0, 1}, 1),
                                       (3, 3, set(), 52), (3, 3, {1}, 13), (4, 2, {0, 2}, 35)])
def test_module_dimensions(n, q, K, dim):
    assert PermutationModule(SLn(n, q), K, GF(5)).dim == dim


def test_generators_act_as_permutations():
    M = PermutationModule(SLn(3, 2), frozenset(), GF(5))
    for perm in M.gen_perms:
        assert sorted(perm.tolist()) == list(range(M.dim))
    G = M.group
    g, h = M.generators[0][1], M.generators[2][1]
    assert np.array_equal(M.perm_of(G.mul(g, h)), M.perm_of(g)[M.perm_of(h)])


def test_rejects_defining_characteristic_and_cap():
    with pytest.raises(CrossCharacteristicError):
        PermutationModule(SLn(3, 2), frozenset(), GF(2))
    with pytest.raises(ValueError):
        PermutationModule(SLn(3, 3), frozenset(), GF(5), cap=40)


@pytest.mark.parametrize("n,q", SMALL)
def test_e_quotient_dims(lattices, n, q):
    L = lattices(n, q)
    got = {format_subset(J): L.e_quotient(J).dims[2] for J in L.M.W.subsets()}
    assert got == E_DIMS[n, q]
    assert sum(got.values()) == L.M.dim
    assert e_quotient_dim(L.M, frozenset(), L) == (L.M.dim, L.M.dim - 1, 1)


@pytest.mark.parametrize("n,q", SMALL)
def test_eta_lattice_is_monotone(lattices, n, q):
    L = lattices(n, q)
    W = L.M.W
    for J in W.subsets():
        for K in W.subsets():
            if J <= K:
                assert L.submodule(J).contains_space(L.submodule(K))


def test_steinberg_span():
    G = SLn(3, 2)
    M = PermutationModule(G, frozenset(), GF(5))
    S = submodule_of(M, eta_vector(M, G.W.index_set), check_weyl_span=True)
    assert S.dim == 8


@pytest.mark.parametrize("n,q", SMALL)
def test_d_submodule_dimension_formula(n, q):
    G = SLn(n, q)
    for J in G.W.subsets():
        M, S = d_submodule(G, J, GF(5))
        assert S.dim == dimension_formula(G, J)


def test_dimension_formula_example():
    G = SLn(3, 2)
    # J = {1} in 1-based numbering is {0} here: Y_J = {e, s1}, 2^2 + 2^1
    assert dimension_formula(G, {0}) == 6
    assert d_submodule(G, {0}, GF(5))[1].dim == 6


def test_d_vector_needs_complementary_parabolic():
    G = SLn(3, 2)
    M = PermutationModule(G, {1}, GF(5))
    assert np.count_nonzero(d_vector(M, {0})) == 2
    with pytest.raises(ValueError):
        d_vector(M, {1})


@pytest.mark.parametrize("n,q", SMALL)
def test_rank_one_identities(lattices, n, q):
    L = lattices(n, q)
    for J in L.M.W.subsets():
        (check,) = rank_one_checks(L.M, J)
        assert check.passed, check.detail
    assert sl2_identity_check(L.M.group).passed


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)])
def test_tau_consistency(n, q):
    G = SLn(n, q)
    for J in G.W.subsets():
        (check,) = tau_consistency_checks(G, J, GF(7) if q != 7 else GF(5))
        assert check.passed, check.detail


@pytest.mark.parametrize("n,q", SMALL)
def test_vanishing_and_orbit_sums(n, q):
    G = SLn(n, q)
    for J in G.W.subsets():
        (check,) = vanishing_checks(G, J, GF(5))
        assert check.passed, check.detail
        assert b_fixed_in_orbit_sums(G, J, GF(5)).passed


@pytest.mark.parametrize("n,q", [(2, 3), (3, 2)])
def test_u_average_identity(n, q):
    M = PermutationModule(SLn(n, q), frozenset(), GF(5))
    assert all(c.passed for c in u_average_check(M))


def test_u_average_trivial_when_p_is_one_mod_r():
    M = PermutationModule(SLn(2, 3), frozenset(), GF(2))
    checks = u_average_check(M)
    assert [c.name for c in checks] == ["u_average_identity", "u_average_trivial_submodule"]
    assert all(c.passed for c in checks)


@pytest.mark.parametrize("n,q", SMALL)
def test_parabolic_quotients(lattices, n, q):
    L = lattices(n, q)
    G = L.M.group
    for J in G.W.subsets():
        for c in parabolic_quotient_check(G, J, GF(5), L):
            assert c.passed, c.detail


def test_b_fixed_points():
    G = SLn(2, 3)
    M = PermutationModule(G, frozenset(), GF(5))
    whole = SubspaceBasis.from_rows(np.eye(M.dim, dtype=np.int64), GF(5))
    # B has two orbits on the projective line
    assert b_fixed_points(whole, M).dim == 2
    line = SubspaceBasis.from_rows([M.point_vector(G.weyl_rep(G.W.simple(0)))], GF(5), M.dim)
    with pytest.raises(ValueError):
        b_fixed_points(line, M)


def test_extension_moves_orbit_sum():
    assert extension_moves_fixed_vector(2, 2, {0}, GF(5)).passed
    assert extension_moves_fixed_vector(3, 2, {0}, GF(5)).passed


@pytest.mark.parametrize("n,q,r,dims", [
    (2, 2, 5, [1, 2]),
    (2, 3, 5, [1, 3]),
    (3, 2, 5, [1, 6, 6, 8]),
    (2, 2, 3, [1, 1, 1]),
    (3, 2, 7, [1, 1, 1, 3, 5, 5, 5]),
])
def test_composition_factors(n, q, r, dims):
    M = PermutationModule(SLn(n, q), frozenset(), GF(r))
    assert meataxe_length(M, seed=0).factor_dims == dims


def test_composition_of_submodule():
    G = SLn(3, 2)
    M, S = d_submodule(G, {0}, GF(5))
    assert meataxe_length(M, S).factor_dims == [6]


def test_characteristic_zero_stand_in():
    G = SLn(3, 2)
    assert semisimple_prime(G) == 173
    assert G.order % semisimple_prime(G) != 0
    with pytest.raises(ValueError):
        meataxe_length(PermutationModule(G, frozenset(), QQ))


def test_rational_coefficients_agree_with_finite_field():
    G = SLn(2, 3)
    M = PermutationModule(G, frozenset(), QQ)
    L = Lattice(M)
    assert {format_subset(J): L.e_quotient(J).dims[2] for J in G.W.subsets()} == E_DIMS[2, 3]


def test_intersection_sanity(lattices):
    L = lattices(3, 2)
    assert check_intersection_sanity(L.submodule({0}), L.submodule({1}))
