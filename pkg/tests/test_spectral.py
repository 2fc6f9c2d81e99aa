import pytest

from zsmatch.abelian import AbelianGroup, homology_groups
from zsmatch.complexes import DoubleComplex, total_complex
from zsmatch.spectral import page1, page2, ses_compatible, two_row_check


def _row(P, q, K):
    return [str(P.groups[p, q]) for p in range(K + 1 - q)]


def test_trivial_pair_single_row(pairs):
    P = page2(pairs["trivial_G2"], "vh", 3)
    assert _row(P, 0, 3) == ["Z", "0", "0", "0"]
    assert all(g.is_trivial for (p, q), g in P.groups.items() if q >= 1)


def test_fork_has_two_rows(pairs):
    P = page2(pairs["fork"], "vh", 3)
    assert _row(P, 1, 3) == ["Z", "0", "0"]
    assert all(g.is_trivial for (p, q), g in P.groups.items() if q >= 2)


@pytest.mark.parametrize("name", ["trivial_G2", "fork", "swap"])
def test_two_row_bookkeeping(pairs, name):
    rep = two_row_check(pairs[name], 3)
    assert rep["vanishing"]
    assert all(ok for _n, ok in rep["ses"])


def test_s3_pages(pairs):
    hv = page2(pairs["S3"], "hv", 3)
    vh = page2(pairs["S3"], "vh", 3)
    # column p = 0: coinvariants of H_q(Z/3) under inversion, which acts by -1 on
    # H_1 and by +1 on H_3; row q = 0 is H(Z/2)
    assert [str(hv.groups[0, q]) for q in range(4)] == ["Z", "0", "0", "Z/3"]
    assert [str(hv.groups[p, 0]) for p in range(4)] == ["Z", "Z/2", "0", "Z/2"]
    H = homology_groups(total_complex(pairs["S3"], 3), 3)
    # the orders along each antidiagonal multiply to |H_n| (the sequence collapses here)
    for P in (hv, vh):
        for n in range(1, 4):
            orders = [P.groups[p, n - p] for p in range(n + 1)]
            assert sum(g.free_rank for g in orders) == H[n].free_rank
            prod = 1
            for g in orders:
                prod *= g.torsion_order
            assert prod % H[n].torsion_order == 0


def test_page1_differentials_square_to_zero(pairs):
    P = page1(DoubleComplex(pairs["swap"], 3), "hv", 2)
    assert P.page == 1 and (0, 0) in P.groups


def test_text_and_json(pairs):
    P = page2(pairs["fork"], "vh", 2)
    text = P.to_text()
    assert text.splitlines()[0] == "E^2 (vh)" and "p=2" in text
    data = P.to_json()
    assert data["orientation"] == "vh"
    assert {"p": 0, "q": 1, "free_rank": 1, "torsion": []} in data["groups"]


def test_bad_orientation(pairs):
    with pytest.raises(ValueError):
        page2(pairs["fork"], "diagonal", 1)


def test_ses_compatible():
    Z, Z2, Z4 = AbelianGroup(1), AbelianGroup(0, (2,)), AbelianGroup(0, (4,))
    assert ses_compatible(Z2, Z4, Z2)
    assert ses_compatible(Z2, Z2 + Z2, Z2)
    assert not ses_compatible(Z2, Z, Z2)
    assert ses_compatible(Z, Z, Z2)  # 0 -> Z -2-> Z -> Z/2 -> 0
    assert not ses_compatible(Z4, Z2, AbelianGroup())
