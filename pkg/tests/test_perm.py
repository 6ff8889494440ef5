import itertools
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hadspec.perm import (
    Perm,
    all_perms,
    cycle_decomposition,
    expand_specifying_vector,
    perm_to_matrix,
    random_perm,
    refines_perm,
    refines_vec,
    sigma_sub_l,
    specifying_vector,
)


def test_perm_validation():
    with pytest.raises(ValueError):
        Perm((0, 0))
    with pytest.raises(ValueError):
        Perm((1, 2))


def test_compose_inverse_identity():
    rng = np.random.default_rng(1)
    for k in (1, 2, 4, 6):
        p = random_perm(k, rng)
        assert p.compose(p.inverse()).image == tuple(range(k))
        assert p.inverse().compose(p).image == tuple(range(k))


def test_sign_matches_cycle_parity():
    # sign = (-1)**(k - number of cycles), checked against transposition count
    for k in (2, 3, 4):
        for p in all_perms(k):
            s = len(cycle_decomposition(p).cycles)
            assert p.sign() == (-1) ** (k - s)
    assert Perm.identity(3).sign() == 1
    assert Perm.transposition(3, 0, 2).sign() == -1


# --- sigma_sub_l -----------------------------------------------------------


def test_sigma_sub_l_identity_k1():
    assert sigma_sub_l(Perm((0,)), 0).image == (1, 0)


def test_sigma_sub_l_fixes_new_symbol():
    assert sigma_sub_l(Perm((0, 1)), 2).image == (0, 1, 2)


def test_sigma_sub_l_swap_insert():
    # oracle: the unique permutation of {0,1,2} acting as sigma after (0 2)
    sigma = Perm((1, 0))

    def as_function(p):
        return tuple(p(i) for i in range(3))

    tau = Perm.transposition(3, 0, 2)
    ext = Perm((1, 0, 2))
    expected = [
        q for q in all_perms(3) if as_function(q) == tuple(ext(tau(i)) for i in range(3))
    ]
    assert len(expected) == 1
    result = sigma_sub_l(sigma, 0)
    assert result.image == expected[0].image == (2, 0, 1)
    assert result.inverse()(2) == 0


def test_sigma_sub_l_out_of_range():
    with pytest.raises(ValueError):
        sigma_sub_l(Perm((0, 1)), 3)
    with pytest.raises(ValueError):
        sigma_sub_l(Perm((0, 1)), -1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sigma_sub_l_inverse_property(k):
    for sigma in all_perms(k):
        for l in range(k + 1):
            assert sigma_sub_l(sigma, l).inverse()(k) == l


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_sigma_sub_l_bijection_onto_larger_group(k):
    images = {
        sigma_sub_l(sigma, l).image for sigma in all_perms(k) for l in range(k + 1)
    }
    assert images == {p.image for p in all_perms(k + 1)}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sigma_sub_l_sign(k):
    for sigma in all_perms(k):
        for l in range(k):
            assert sigma_sub_l(sigma, l).sign() == -sigma.sign()
        assert sigma_sub_l(sigma, k).sign() == sigma.sign()


# --- cycles ----------------------------------------------------------------


def test_cycle_decomposition_identity():
    d = cycle_decomposition(Perm((0, 1, 2)))
    assert d.cycles == ((0,), (1,), (2,))
    assert d.cycle_id == (0, 1, 2)


def test_cycle_decomposition_swap():
    d = cycle_decomposition(Perm((1, 0, 2)))
    assert d.cycles == ((0, 1), (2,))


def test_cycle_decomposition_three_cycle():
    # orbit of 0 under image [2,0,1,3]: 0 -> 2 -> 1 -> 0
    d = cycle_decomposition(Perm((2, 0, 1, 3)))
    assert d.cycles == ((0, 2, 1), (3,))
    assert d.cycle_id == (0, 0, 0, 1)


def test_cycle_canonical_order():
    rng = np.random.default_rng(5)
    for _ in range(20):
        p = random_perm(6, rng)
        d = cycle_decomposition(p)
        covered = set()
        for c in d.cycles:
            assert c[0] == min(set(range(6)) - covered)
            covered |= set(c)
        assert covered == set(range(6))


# --- refinement ------------------------------------------------------------


def test_refines_vec_examples():
    assert refines_vec((1, 1, 2), (3, 3, 4))
    assert not refines_vec((1, 2, 2), (3, 3, 4))
    assert refines_vec((5, 5, 5), (1, 2, 3))
    assert refines_vec((5, 5, 5), (9, 9, 9))
    with pytest.raises(ValueError):
        refines_vec((1, 2), (1, 2, 3))


def test_refines_perm_examples():
    swap = Perm((1, 0, 2))
    assert refines_perm((7, 7, 1), swap)
    assert not refines_perm((7, 2, 1), swap)
    assert refines_perm((3, 1, 4), Perm.identity(3))
    with pytest.raises(ValueError):
        refines_perm((1, 2), swap)


def test_specifying_vector_examples():
    swap = Perm((1, 0, 2))
    assert specifying_vector((7, 7, 1), swap).tolist() == [7, 1]
    three_cycle = Perm((1, 2, 0))
    assert specifying_vector((4, 4, 4), three_cycle).tolist() == [4]
    with pytest.raises(ValueError):
        specifying_vector((7, 2, 1), swap)


@given(st.integers(2, 6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_specify_expand_round_trip(k, perm_seed, val_seed):
    nu = random_perm(k, np.random.default_rng(perm_seed))
    s = len(cycle_decomposition(nu).cycles)
    p = np.random.default_rng(val_seed).standard_normal(s)
    x = expand_specifying_vector(p, nu)
    assert refines_perm(x, nu)
    assert np.array_equal(specifying_vector(x, nu), p)


# --- permutation matrices --------------------------------------------------


def test_perm_to_matrix_identity_and_swap():
    assert np.array_equal(perm_to_matrix(Perm((0, 1))), np.eye(2))
    assert np.array_equal(perm_to_matrix(Perm((1, 0))), np.array([[0.0, 1.0], [1.0, 0.0]]))


def test_perm_to_matrix_action():
    rng = np.random.default_rng(3)
    sigma = random_perm(5, rng)
    h = rng.standard_normal(5)
    pm = perm_to_matrix(sigma)
    assert np.array_equal(pm @ h, h[np.asarray(sigma.image)])
    assert np.allclose(pm.T @ pm, np.eye(5))
    for i in range(5):
        e = np.zeros(5)
        e[i] = 1.0
        target = np.zeros(5)
        target[sigma(i)] = 1.0
        assert np.array_equal(pm.T @ e, target)


def test_perm_json_round_trip():
    p = Perm((2, 0, 1))
    restored = Perm(tuple(json.loads(json.dumps(list(p.image)))))
    assert restored == p


def test_all_perms_count():
    assert len(list(all_perms(4))) == 24
    assert len(set(p.image for p in all_perms(4))) == 24
