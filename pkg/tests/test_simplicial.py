import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bckit.cubes import (CubeChain, boundary, degeneracy, face, permute, tensor_chain, transposition,
                         zero_cube)
from bckit.linalg import Mat
from bckit.simplicial import (FlagError, GElement, SElement, as_row, bi_cub, bi_transpose, chi, cub,
                              cub_labels, embed_l, embed_r, g2_cub, g2_transpose, g_cub, g_degeneracy,
                              g_face, iota_face, m_g, random_g_element, random_s_element, s_degeneracy,
                              s_face, s_tensor, split_chains, zero_s_element)

seeds = st.integers(0, 2 ** 32)


def incl(q, p):
    return Mat(q, p, [[int(r == c) for c in range(p)] for r in range(q)])


def chain(*dims):
    return SElement(dims, [incl(dims[k + 1], dims[k]) for k in range(len(dims) - 1)])


# the S-construction

@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 4))
def test_face_of_degeneracy_is_identity(seed, n):
    e = random_s_element(n, 2, seed)
    for k in range(n + 1):
        assert s_face(s_degeneracy(e, k), k) == e
        assert s_face(s_degeneracy(e, k), k + 1) == e


def test_zeroth_face_takes_quotients():
    e = chain(1, 3, 4)
    d0 = s_face(e, 0)
    assert d0.dims == (2, 3)
    assert d0.maps[0].rank() == 2


def test_same_seed_gives_the_same_element():
    assert random_s_element(4, 2, 17) == random_s_element(4, 2, 17)
    assert random_g_element(2, 1, 5) == random_g_element(2, 1, 5)


def test_split_chain_enumeration():
    assert len(split_chains(1, 2)) == 3
    # dims (a, b) with a <= b <= 2 and all coordinate embeddings of a into b
    assert len(split_chains(2, 2)) == 1 + 1 + 1 + 1 + 2 + 2


def test_face_index_errors():
    e = chain(1, 2)
    with pytest.raises(FlagError):
        s_face(e, 3)
    with pytest.raises(FlagError):
        s_degeneracy(e, -1)


# Cub

@pytest.mark.parametrize("n", [2, 3])
def test_cub_labels_match_the_pictures(n):
    assert cub_labels(n) == oracles.CUB_TABLES[n]


def test_cub_of_s1_is_a_point():
    c = cub(chain(3))
    assert c.n == 0 and c.dims() == (3,)


def test_cub_of_s2_is_the_short_exact_sequence():
    c = cub(chain(1, 3))
    assert c.dims() == (1, 3, 2)
    a, b = c.maps[(1, (-1,))], c.maps[(1, (0,))]
    assert (b * a).is_zero() and a.rank() == 1 and b.rank() == 2


def test_cub_of_s3_dimensions():
    dims = (0, 1, 3, 4)        # d_0 = 0 for the base point E_{0,0}
    c = cub(chain(*dims[1:]))
    table = oracles.CUB_TABLES[3]
    for a, lab in table.items():
        want = 0 if lab is None else dims[lab[1]] - dims[lab[0]]
        assert c.verts[a].dim == want, a


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 4))
def test_cub_is_a_chain_map(seed, n):
    e = random_s_element(n, 2, seed)
    lhs = CubeChain([(cub(s_face(e, k)), (-1) ** k) for k in range(n + 1)], "tilde")
    assert lhs == -boundary(CubeChain.of(cub(e), "tilde"))


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 4))
def test_cub_of_degeneracies(seed, n):
    e = random_s_element(n, 2, seed)
    c = cub(e)
    assert cub(s_degeneracy(e, 0)) == degeneracy(c, 1, -1)
    assert cub(s_degeneracy(e, n)) == degeneracy(c, n, 1)
    for i in range(1, n):
        x = cub(s_degeneracy(e, i))
        assert permute(x, transposition(n, i)) == x


def test_cub_of_the_zero_chain():
    assert cub(zero_s_element(3)) == zero_cube(2)


# bisimplicial elements

def test_tensor_of_rows_and_transposes():
    e, f = chain(1, 2), chain(2)
    x = s_tensor(e, f)
    assert x.shape == (2, 1)
    assert bi_transpose(bi_transpose(x)) == x
    assert bi_cub(as_row(e)) == cub(e)
    assert bi_cub(bi_transpose(as_row(e))) == cub(e)


# the G-construction

def test_g_element_needs_equal_zeroth_faces():
    with pytest.raises(FlagError):
        GElement(chain(1, 2), chain(1, 3))


def test_diagonal_g_element_is_zero():
    e = random_s_element(3, 2, 4)
    assert not g_cub(GElement(e, e), "tilde")


def test_g_element_against_its_split_companion():
    e = random_s_element(3, 2, 9)
    split = s_degeneracy(s_face(e, 0), 0)
    got = g_cub(GElement(e, split), "tilde")
    assert got == CubeChain.of(cub(e), "tilde")


def test_chi_examples():
    e = random_g_element(2, 1, 3)
    assert chi(0, e, 1) == chi(0, e, -1) == s_face(e.plus, 0)
    assert chi(1, e, 1) == s_face(e.plus, 1)
    assert chi(3, e, -1) == zero_s_element(2)
    assert chi(2, e, 1) == s_degeneracy(s_face(s_face(e.plus, 1), 1), 0)
    with pytest.raises(FlagError):
        chi(4, e, 1)


def test_iota_faces():
    assert [iota_face(2, i) for i in range(3)] == [1, 1, 2]
    assert [iota_face(0, i) for i in range(2)] == [0, 0]


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 2))
def test_chi_commutes_with_faces(seed, n):
    e = random_g_element(n, 1, seed)
    for sign in (1, -1):
        for k in range(n + 2):
            for i in range(n + 1):
                assert chi(iota_face(k, i), g_face(e, i), sign) == s_face(chi(k, e, sign), i)


def test_products_of_g_elements():
    rng = random.Random(1)
    e, f = random_g_element(1, 1, rng), random_g_element(1, 1, rng)
    assert g2_cub(m_g(e, f), "cub") == tensor_chain(g_cub(e, "cub"), g_cub(f, "cub"))
    assert g2_transpose(embed_r(e)) == embed_l(e)
    assert g2_cub(embed_r(e), "cub") == g_cub(e, "cub")
    assert not g2_cub(m_g(g_degeneracy(e, 0), f), "cub")


def test_g_face_index_errors():
    e = random_g_element(1, 1, 0)
    with pytest.raises(FlagError):
        g_face(e, 2)
    assert g_face(e, 0).n == 0
    assert face(cub(e.plus), 1, 0) == cub(s_face(e.plus, 1))
