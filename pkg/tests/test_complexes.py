import pytest

from zsmatch.abelian import homology_groups
from zsmatch.catalog import G2
from zsmatch.category import cyclic_group_category, discrete_category
from zsmatch.complexes import (
    DoubleComplex,
    categorical_complex,
    degeneracy_map,
    diagonal_complex,
    face_map,
    total_complex,
)
from zsmatch.errors import DegreeTooLarge, IndexOutOfRange
from zsmatch.matched_pair import gamma_category

from conftest import simplicial_identities

CORPUS = ("trivial_G2", "S3", "model_2", "swap", "fork", "klein")


def _groups(cx, K):
    return [str(g) for g in homology_groups(cx, K)]


def test_categorical_boundary_squares_to_zero():
    for C in (cyclic_group_category(3), G2(), gamma_category(2)):
        cx = categorical_complex(C, 3)
        for k in range(3):
            assert (cx.boundary(k) @ cx.boundary(k + 1)).is_zero()


def test_small_categories():
    assert _groups(categorical_complex(discrete_category("abc"), 1), 1) == ["Z^3", "0"]
    assert _groups(categorical_complex(G2(), 2), 2) == ["Z", "0", "0"]
    assert _groups(categorical_complex(gamma_category(2), 2), 2) == ["Z", "0", "0"]


def test_categorical_simplicial_identities():
    for C in (cyclic_group_category(2), G2()):
        fails = list(simplicial_identities(lambda k, i: face_map("categorical", C, k, i),
                                           lambda k, i: degeneracy_map("categorical", C, k, i), 4))
        assert fails == []


def test_face_index_out_of_range():
    C = cyclic_group_category(2)
    with pytest.raises(IndexOutOfRange):
        face_map("categorical", C, 2, 3)
    with pytest.raises(IndexOutOfRange):
        degeneracy_map("categorical", C, 1, 2)


@pytest.mark.parametrize("name", CORPUS)
def test_double_complex_relations(pairs, name):
    dc = DoubleComplex(pairs[name], 3)  # checks d^h d^h, d^v d^v, anticommutation to total 4
    assert dc.max_total == 4


@pytest.mark.parametrize("name", ["S3", "swap", "fork"])
def test_double_complex_simplicial_identities(pairs, name):
    dc = DoubleComplex(pairs[name], 3)
    for q in range(3):
        fails = list(simplicial_identities(lambda k, i: dc.face_h(k, q, i),
                                           lambda k, i: dc.degeneracy_h(k, q, i), 3 - q))
        assert fails == [], (q, fails[:3])
    for p in range(3):
        fails = list(simplicial_identities(lambda k, j: dc.face_v(p, k, j),
                                           lambda k, j: dc.degeneracy_v(p, k, j), 3 - p))
        assert fails == [], (p, fails[:3])
    fails = list(simplicial_identities(lambda k, i: face_map("diagonal", dc, k, i),
                                       lambda k, i: degeneracy_map("diagonal", dc, k, i), 2))
    assert fails == []


def test_horizontal_and_vertical_faces_anticommute(pairs):
    # face_v carries (-1)^p, so the signed faces anticommute
    dc = DoubleComplex(pairs["S3"], 3)
    for p in range(1, 3):
        for q in range(1, 3):
            for i in range(p + 1):
                for j in range(q + 1):
                    assert dc.face_h(p, q - 1, i) @ dc.face_v(p, q, j) == \
                        (dc.face_v(p - 1, q, j) @ dc.face_h(p, q, i)).scale(-1)


@pytest.mark.parametrize("name", CORPUS)
def test_diagonal_and_total_are_complexes(pairs, name):
    for cx in (diagonal_complex(pairs[name], 3), total_complex(pairs[name], 3),
               diagonal_complex(pairs[name], 3, sign="literal")):
        for k in range(3):
            assert (cx.boundary(k) @ cx.boundary(k + 1)).is_zero()


def test_literal_diagonal_signs_differ_but_same_homology(pairs):
    mp = pairs["S3"]
    a, b = diagonal_complex(mp, 3), diagonal_complex(mp, 3, sign="literal")
    assert a.boundary(0) == b.boundary(0).scale(-1)
    assert a.boundary(1) == b.boundary(1)
    assert _groups(a, 3) == _groups(b, 3)


def test_bidegree_counts(pairs):
    dc = DoubleComplex(pairs["S3"])
    # C = Z/2, D = Z/3 on one object: |C_{p,q}| = 2^p 3^q
    assert [dc.count(p, q) for p, q in [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3)]] == [1, 2, 3, 12, 54]
    assert len(dc.basis(2, 1)) == 12


def test_cap(pairs):
    dc = DoubleComplex(pairs["S3"], cap=10)
    with pytest.raises(DegreeTooLarge):
        dc.basis(2, 1)


def test_cap_env(pairs, monkeypatch):
    monkeypatch.setenv("ZSMATCH_CAP", "5")
    with pytest.raises(DegreeTooLarge):
        categorical_complex(cyclic_group_category(3), 1)
