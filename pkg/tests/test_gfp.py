import numpy as np
import pytest

from amegraph import gfp


def test_is_prime():
    assert [p for p in range(30) if gfp.is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_ensure_prime_rejects():
    with pytest.raises(gfp.NotPrimeError):
        gfp.ensure_prime(9)


@pytest.mark.parametrize("a,p,inv", [(1, 3, 1), (2, 5, 3), (4, 7, 2)])
def test_field_inv_examples(a, p, inv):
    assert gfp.field_inv(a, p) == inv


def test_field_inv_zero():
    with pytest.raises(gfp.NotInvertibleError):
        gfp.field_inv(0, 5)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_field_inv_involution(p):
    for a in range(1, p):
        assert gfp.field_inv(gfp.field_inv(a, p), p) == a


@pytest.mark.parametrize(
    "rows,p,rank",
    [
        ([[1, 1], [2, 1]], 3, 2),
        ([[1, 1], [1, 1]], 2, 1),
        ([[2, 3], [3, 1]], 7, 1),
        ([[2, 3], [3, 1]], 5, 2),
    ],
)
def test_mat_rank_examples(rows, p, rank):
    assert gfp.mat_rank(rows, p) == rank


def test_mat_rank_zero_and_empty():
    assert gfp.mat_rank(np.zeros((3, 3), dtype=int), 5) == 0
    assert gfp.mat_rank(np.zeros((0, 4), dtype=int), 5) == 0


def test_rank_transpose_random():
    rng = np.random.default_rng(1)
    for _ in range(200):
        p = int(rng.choice([2, 3, 5]))
        r, c = rng.integers(1, 6, size=2)
        m = rng.integers(0, p, size=(r, c))
        assert gfp.mat_rank(m, p) == gfp.mat_rank(m.T, p)


def test_mat_inverse_examples():
    assert (gfp.mat_inverse(np.eye(3, dtype=int), 3) == np.eye(3, dtype=int)).all()
    m = np.array([[1, 0], [1, 1]])
    assert (gfp.mat_inverse(m, 2) == m).all()


def test_mat_inverse_known_ternary_block():
    # unit-upper block arising in the code-to-graph reduction; its unique
    # inverse is the row mix that restores the identity
    block = np.array([[1, 0, 1, 2], [0, 1, 1, 1], [0, 0, 1, 2], [0, 0, 1, 1]])
    want = np.array([[1, 0, 2, 0], [0, 1, 0, 2], [0, 0, 2, 2], [0, 0, 1, 2]])
    assert (gfp.mat_inverse(block, 3) == want).all()


def test_mat_inverse_roundtrip_and_singular():
    rng = np.random.default_rng(2)
    hits = 0
    for _ in range(200):
        p = int(rng.choice([2, 3, 5, 7]))
        n = int(rng.integers(1, 5))
        m = rng.integers(0, p, size=(n, n))
        if gfp.mat_rank(m, p) < n:
            with pytest.raises(gfp.SingularMatrixError):
                gfp.mat_inverse(m, p)
        else:
            hits += 1
            inv = gfp.mat_inverse(m, p)
            assert ((m @ inv) % p == np.eye(n, dtype=int)).all()
            assert ((inv @ m) % p == np.eye(n, dtype=int)).all()
    assert hits > 50


def test_kernel_basis_zero_matrix():
    basis = gfp.kernel_basis(np.zeros((2, 2), dtype=int), 2)
    assert basis.shape == (2, 2)
    assert gfp.mat_rank(basis, 2) == 2


def test_kernel_basis_hamming():
    # the ternary self-dual code: kernel of G^T has the same row space as G^T
    g = np.array([[1, 0], [0, 1], [1, 1], [2, 1]])
    basis = gfp.kernel_basis(g.T, 3)
    assert basis.shape == (2, 4)
    stacked = np.vstack([basis, g.T])
    assert gfp.mat_rank(stacked, 3) == 2


def test_kernel_basis_annihilates():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = int(rng.choice([2, 3, 5]))
        r, c = int(rng.integers(1, 5)), int(rng.integers(1, 6))
        m = rng.integers(0, p, size=(r, c))
        basis = gfp.kernel_basis(m, p)
        assert basis.shape[0] == c - gfp.mat_rank(m, p)
        for v in basis:
            assert ((m @ v) % p == 0).all()


def test_rank_batch_matches_scalar():
    rng = np.random.default_rng(4)
    for p in (2, 3, 5, 31):
        mats = rng.integers(0, p, size=(300, 3, 4))
        got = gfp.rank_batch(mats, p)
        want = [gfp.mat_rank(m, p) for m in mats]
        assert got.tolist() == want


def test_bitpacked_rank_matches_generic():
    rng = np.random.default_rng(5)
    for _ in range(300):
        r, c = int(rng.integers(1, 6)), int(rng.integers(1, 8))
        m = rng.integers(0, 2, size=(r, c))
        assert gfp.rank_gf2(gfp.pack_rows_gf2(m)) == gfp.mat_rank(m, 2)
