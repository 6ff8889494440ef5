import itertools

import numpy as np
import pytest

from hadspec.blocks import (
    block_diagonalizer,
    haar_orthogonal,
    is_block_constant,
    is_mu_symmetric,
    make_block_constant,
    partition_from_mu,
    random_block_orthogonal,
    split_in_out,
    stabilizer_generators,
)
from hadspec.tensor import DenseTensor


def test_partition_sorted_runs():
    p = partition_from_mu([5.0, 5.0, 3.0])
    assert p.blocks == ((0, 1), (2,))
    assert p.block_id == (0, 0, 1)
    assert p.reps == (1, 2)


def test_partition_unsorted_enumeration():
    # block containing index 0 comes first even when mu is unsorted
    p = partition_from_mu([1.0, 2.0, 1.0])
    assert p.blocks == ((0, 2), (1,))
    assert p.reps == (2, 1)
    assert not p.is_contiguous()


def test_partition_distinct_singletons():
    p = partition_from_mu([3.0, 1.0, 2.0, 7.0])
    assert p.blocks == ((0,), (1,), (2,), (3,))
    assert p.is_contiguous()


def test_partition_exact_equality_only():
    p = partition_from_mu([1.0, 1.0 + 1e-12])
    assert p.num_blocks == 2


def test_partition_tolerance_grouping():
    p = partition_from_mu([1.0, 1.0 + 1e-12], tol=1e-9)
    assert p.num_blocks == 1
    # single linkage: chained closeness merges
    p2 = partition_from_mu([0.0, 1e-9, 2e-9], tol=1.5e-9)
    assert p2.num_blocks == 1


def test_partition_json():
    p = partition_from_mu([2.0, 2.0, 1.0])
    obj = p.to_json()
    assert obj == {"mu": [2.0, 2.0, 1.0], "blocks": [[0, 1], [2]]}


# --- in/out split ----------------------------------------------------------


def test_split_single_block():
    p = partition_from_mu([1.0, 1.0, 1.0])
    h = np.arange(9.0).reshape(3, 3)
    h_in, h_out = split_in_out(h, p)
    assert np.array_equal(h_in, h)
    assert np.array_equal(h_out, np.zeros((3, 3)))


def test_split_singletons():
    p = partition_from_mu([3.0, 2.0, 1.0])
    h = np.arange(9.0).reshape(3, 3)
    h_in, h_out = split_in_out(h, p)
    assert np.array_equal(h_in, np.diag(np.diag(h)))
    assert np.array_equal(h_out, h - np.diag(np.diag(h)))


def test_split_two_blocks_ones():
    p = partition_from_mu([2.0, 2.0, 1.0])
    h_in, h_out = split_in_out(np.ones((3, 3)), p)
    assert np.array_equal(
        h_in, np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    )
    assert np.array_equal(h_in + h_out, np.ones((3, 3)))


def test_split_exact_and_idempotent():
    rng = np.random.default_rng(0)
    p = partition_from_mu([4.0, 4.0, 1.0, 1.0, 0.0])
    h = rng.standard_normal((5, 5))
    h_in, h_out = split_in_out(h, p)
    assert np.array_equal(h_in + h_out, h)  # bitwise
    again_in, again_out = split_in_out(h_in, p)
    assert np.array_equal(again_in, h_in)
    assert np.array_equal(again_out, np.zeros((5, 5)))


def test_split_preserves_symmetry():
    rng = np.random.default_rng(1)
    p = partition_from_mu([4.0, 4.0, 1.0])
    a = rng.standard_normal((3, 3))
    m = (a + a.T) / 2
    h_in, h_out = split_in_out(m, p)
    assert np.array_equal(h_in, h_in.T)
    assert np.array_equal(h_out, h_out.T)


# --- block-constancy and symmetry predicates --------------------------------


def test_block_constant_singletons_any():
    rng = np.random.default_rng(2)
    p = partition_from_mu([3.0, 2.0, 1.0])
    assert is_block_constant(DenseTensor.random(3, 3, rng), p)


def test_block_constant_single_block():
    p = partition_from_mu([1.0, 1.0])
    assert is_block_constant(DenseTensor.from_array([[7.0, 7.0], [7.0, 7.0]]), p)
    assert not is_block_constant(DenseTensor.from_array([[7.0, 7.0], [7.0, 8.0]]), p)


def test_make_block_constant_round_trip():
    rng = np.random.default_rng(3)
    p = partition_from_mu([2.0, 2.0, 1.0, 0.0])
    for k in (1, 2, 3):
        t = make_block_constant(p, k, rng=rng)
        assert is_block_constant(t, p)


def test_make_block_constant_examples():
    p1 = partition_from_mu([1.0, 1.0, 1.0])
    t = make_block_constant(p1, 2, values=[[9.0]])
    assert np.array_equal(t.nd, np.full((3, 3), 9.0))

    p2 = partition_from_mu([2.0, 2.0, 1.0])
    t = make_block_constant(p2, 1, values=[4.0, 7.0])
    assert np.array_equal(t.nd, np.array([4.0, 4.0, 7.0]))


def test_block_constant_atol():
    p = partition_from_mu([1.0, 1.0])
    t = DenseTensor.from_array([1.0, 1.0 + 1e-8])
    assert not is_block_constant(t, p)
    assert is_block_constant(t, p, atol=1e-6)


def test_mu_symmetric_block_constant_implies():
    rng = np.random.default_rng(4)
    p = partition_from_mu([3.0, 3.0, 1.0])
    t = make_block_constant(p, 2, rng=rng)
    assert is_mu_symmetric(t, p)


def test_mu_symmetric_trivial_stabilizer():
    rng = np.random.default_rng(5)
    p = partition_from_mu([3.0, 2.0, 1.0])
    assert is_mu_symmetric(DenseTensor.random(2, 3, rng), p)


def test_mu_symmetric_without_block_constancy():
    # the swap on both slots needs T[0,1] == T[1,0] and T[0,0] == T[1,1];
    # an off-diagonal symmetric pattern satisfies that without being
    # block-constant
    p = partition_from_mu([1.0, 1.0])
    t = DenseTensor.from_array([[0.0, 1.0], [1.0, 0.0]])
    assert is_mu_symmetric(t, p)
    assert not is_block_constant(t, p)
    # the antisymmetric pattern flips sign under the swap and fails
    assert not is_mu_symmetric(DenseTensor.from_array([[0.0, 1.0], [-1.0, 0.0]]), p)


def test_stabilizer_generators():
    p = partition_from_mu([2.0, 2.0, 2.0, 1.0])
    assert stabilizer_generators(p) == [(0, 1), (1, 2)]


# --- orthogonal factors ------------------------------------------------------


def test_haar_orthogonal_is_orthogonal():
    rng = np.random.default_rng(6)
    for n in (1, 2, 5):
        u = haar_orthogonal(n, rng)
        assert np.max(np.abs(u.T @ u - np.eye(n))) < 1e-12


def test_random_block_orthogonal_singletons_signs():
    rng = np.random.default_rng(7)
    p = partition_from_mu([3.0, 2.0, 1.0])
    u = random_block_orthogonal(p, rng)
    assert np.array_equal(np.abs(u), np.eye(3))


def test_random_block_orthogonal_structure():
    rng = np.random.default_rng(8)
    p = partition_from_mu([2.0, 2.0, 1.0, 1.0, 1.0])
    u = random_block_orthogonal(p, rng)
    assert np.max(np.abs(u.T @ u - np.eye(5))) < 1e-12
    _, u_out = split_in_out(u, p)
    assert np.array_equal(u_out, np.zeros((5, 5)))


def test_random_block_orthogonal_single_block():
    rng = np.random.default_rng(9)
    p = partition_from_mu([1.0, 1.0, 1.0])
    u = random_block_orthogonal(p, rng)
    assert np.max(np.abs(u.T @ u - np.eye(3))) < 1e-12


# --- block diagonalizer ------------------------------------------------------


def test_block_diagonalizer_diagonal_singletons():
    p = partition_from_mu([3.0, 2.0, 1.0])
    m = np.diag([5.0, -1.0, 2.0])
    u, h = block_diagonalizer(m, p)
    assert np.array_equal(np.abs(u), np.eye(3))
    assert np.array_equal(h, np.array([5.0, -1.0, 2.0]))


def test_block_diagonalizer_hand_case():
    # 2x2 block [[0,1],[1,0]] has eigenvalues +1, -1
    p = partition_from_mu([1.0, 1.0, 0.0])
    m = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 5.0]])
    _, h = block_diagonalizer(m, p)
    assert np.allclose(h, [1.0, -1.0, 5.0], atol=1e-12)


def test_block_diagonalizer_reconstruction():
    rng = np.random.default_rng(10)
    p = partition_from_mu([2.0, 2.0, 2.0, 1.0, 1.0])
    a = rng.standard_normal((5, 5))
    m = (a + a.T) / 2
    u, h = block_diagonalizer(m, p)
    m_in, _ = split_in_out(m, p)
    assert np.max(np.abs(u.T @ m_in @ u - np.diag(h))) < 1e-10
    assert np.max(np.abs(u @ np.diag(h) @ u.T - m_in)) < 1e-10
    assert np.max(np.abs(u.T @ u - np.eye(5))) < 1e-12
    _, u_out = split_in_out(u, p)
    assert np.array_equal(u_out, np.zeros((5, 5)))


def test_block_diagonalizer_rejects_asymmetric():
    p = partition_from_mu([1.0, 0.0])
    with pytest.raises(ValueError):
        block_diagonalizer(np.array([[0.0, 1.0], [0.0, 0.0]]), p)
