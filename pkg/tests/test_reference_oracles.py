import math

import numpy as np
import pytest

from conftest import EPS, random_toeplitz
from toeplitz_sne import NotPositiveDefinite, ShapeError, SingularTriangular, Tally, partition_vectors
from toeplitz_sne.reference_oracles import (cholesky, cond1_triangular, displacement, gram,
                                            householder_qr, norm1, tri_solve_backward,
                                            tri_solve_forward)


def test_gram_examples(identity3, tridiag):
    np.testing.assert_array_equal(gram(identity3), np.eye(3))
    np.testing.assert_array_equal(gram(tridiag), [[5, 4, 1], [4, 6, 4], [1, 4, 5]])
    np.testing.assert_array_equal(gram(tridiag, 2.0) - gram(tridiag), 2 * np.eye(3))


def test_gram_exactly_symmetric(rng):
    G = gram(random_toeplitz(rng, 30, 17))
    np.testing.assert_array_equal(G, G.T)


def test_householder_examples(identity3, tridiag, rng):
    np.testing.assert_allclose(householder_qr(np.eye(3)), np.eye(3), atol=0)
    np.testing.assert_allclose(householder_qr(tridiag.dense()), cholesky(gram(tridiag)),
                               rtol=1e-14, atol=1e-14)
    A = rng.standard_normal((4, 2))
    R = householder_qr(A)
    assert np.all(np.diag(R) > 0)
    assert norm1(R.T @ R - A.T @ A) <= 100 * EPS * norm1(A.T @ A)


def test_householder_rejects_wide():
    with pytest.raises(ShapeError):
        householder_qr(np.ones((2, 3)))


def test_cholesky_examples():
    np.testing.assert_array_equal(cholesky(np.eye(4)), np.eye(4))
    np.testing.assert_allclose(cholesky([[5, 4], [4, 5]]),
                               [[math.sqrt(5), 4 / math.sqrt(5)], [0, 3 / math.sqrt(5)]],
                               rtol=1e-15)
    with pytest.raises(NotPositiveDefinite) as info:
        cholesky([[1, 2], [2, 1]])
    assert info.value.pivot == 1


def test_triangular_solves(rng):
    R = np.array([[2.0, 1.0], [0.0, 4.0]])
    x = tri_solve_backward(R, [3.0, 8.0])
    np.testing.assert_allclose(R @ x, [3.0, 8.0], rtol=1e-15)
    w = tri_solve_forward(R, [4.0, 6.0])
    np.testing.assert_allclose(R.T @ w, [4.0, 6.0], rtol=1e-15)
    np.testing.assert_array_equal(tri_solve_backward(np.eye(3), [1, 2, 3]), [1, 2, 3])
    np.testing.assert_array_equal(tri_solve_forward(R, [0, 0]), [0, 0])
    t = Tally()
    tri_solve_forward(np.eye(5), np.ones(5), t)
    assert t.count == 15
    with pytest.raises(SingularTriangular):
        tri_solve_backward(np.zeros((2, 2)), [1, 1])


def test_cond1_examples(rng):
    assert cond1_triangular(np.eye(6)) == 1.0
    assert cond1_triangular(np.diag([1.0, 1e-3])) == pytest.approx(1e3, rel=1e-15)
    R = np.triu(rng.standard_normal((5, 5))) + 3 * np.eye(5)
    expect = norm1(R) * norm1(np.linalg.inv(R))
    assert cond1_triangular(R) == pytest.approx(expect, rel=1e-12)


def test_displacement_examples(rng, tridiag):
    assert np.all(displacement(random_toeplitz(rng, 7, 5).dense()) == 0)
    np.testing.assert_array_equal(displacement([[1, 2], [3, 5]]), [[4]])
    pv = partition_vectors(tridiag)
    np.testing.assert_array_equal(displacement(gram(tridiag)),
                                  np.outer(pv.y, pv.y) - np.outer(pv.zbar, pv.zbar))
    with pytest.raises(ShapeError):
        displacement(np.ones((1, 3)))


@pytest.mark.parametrize("n", [8, 32, 64])
def test_oracles_agree(rng, n):
    T = random_toeplitz(rng, n, mu=3.0)
    Rq = householder_qr(T.dense())
    Rc = cholesky(gram(T))
    kappa = cond1_triangular(Rq)
    assert kappa <= 1e6
    assert norm1(Rq - Rc) / norm1(Rq) <= 1e3 * kappa * n * EPS
