import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bckit.linalg import Mat, Quotient, block_diag, random_injective, random_matrix, rref

seeds = st.integers(0, 2 ** 32)


def test_rref_example():
    rows, piv = rref([[2, 4, 0], [1, 2, 1]], 3)
    assert piv == [0, 2]
    assert rows == [[1, 2, 0], [0, 0, 1]]


def test_identity_kron_and_block_diag():
    a = Mat(2, 2, [[1, 2], [3, 4]])
    assert Mat.identity(1).kron(a) == a
    assert a.kron(Mat.identity(1)) == a
    assert block_diag(a, Mat.zero(0, 0)) == a
    assert Mat(1, 1, [[2]]).kron(a) == Mat(2, 2, [[2, 4], [6, 8]])


def test_shape_errors():
    with pytest.raises(ValueError):
        Mat(2, 2, [[1, 2]])
    with pytest.raises(ValueError):
        Mat.identity(2) * Mat.identity(3)
    with pytest.raises(ZeroDivisionError):
        Mat(2, 2, [[1, 2], [2, 4]]).inverse()


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 4), st.integers(0, 4))
def test_rank_matches_minor_oracle(seed, r, c):
    m = random_matrix(random.Random(seed), r, c, -1, 1)
    assert m.rank() == oracles.rank(m.data, c)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 4))
def test_inverse(seed, n):
    rng = random.Random(seed)
    m = random_injective(rng, n, n)
    assert m * m.inverse() == Mat.identity(n)
    assert oracles.det(m.data) != 0


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(0, 5), st.integers(0, 3))
def test_quotient_projection(seed, dim, k):
    rng = random.Random(seed)
    k = min(k, dim)
    sub = random_injective(rng, dim, k) if k else Mat.zero(dim, 0)
    q = Quotient(dim, sub.columns())
    p = q.matrix()
    assert q.qdim == dim - k
    assert (p * sub).is_zero()
    # the projection restricted to the complement coordinates is the identity
    assert p * q.lift() == Mat.identity(q.qdim)
    assert p.rank() == q.qdim


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_quotients_compose(seed, dim):
    rng = random.Random(seed)
    k2 = rng.randint(0, dim)
    k1 = rng.randint(0, k2)
    big = random_injective(rng, dim, k2) if k2 else Mat.zero(dim, 0)
    small = big.select_columns(list(range(k1)))
    first = Quotient(dim, small.columns())
    image = first.matrix() * big
    second = Quotient(first.qdim, image.columns())
    direct = Quotient(dim, big.columns())
    assert second.matrix() * first.matrix() == direct.matrix()
    assert [first.complement[c] for c in second.complement] == direct.complement


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_kron_is_multiplicative(seed):
    rng = random.Random(seed)
    a, b = random_matrix(rng, 2, 3), random_matrix(rng, 3, 2)
    c, d = random_matrix(rng, 2, 2), random_matrix(rng, 2, 1)
    assert (a * b).kron(c * d) == a.kron(c) * b.kron(d)


def test_matrices_are_exact_and_hashable():
    m = Mat(1, 2, [[Fraction(1, 3), 2]])
    assert m.data[0][0] == Fraction(1, 3)
    assert hash(m) == hash(Mat(1, 2, [[Fraction(1, 3), 2]]))
    assert m.transpose().shape == (2, 1)
    assert Mat.zero(0, 3).transpose().shape == (3, 0)
