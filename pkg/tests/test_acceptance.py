"""The nine acceptance criteria, one test each, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) for the summary alone.
Criterion 9 contains a sub-check that cannot hold: over Q/Z the class of
``c(a, a) = 1/2`` on Z/2 is trivial (``H^2(Z/2; Q/Z) = 0``).  That sub-check
is reported as FAIL and kept as a strict xfail; the rest of criterion 9 is
tested on its own.
"""

import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from zsmatch.abelian import AbelianGroup, homology_groups
from zsmatch.catalog import klein_pair, matched_pairs, odometer_loop
from zsmatch.category import cyclic_group_category, product_category
from zsmatch.chain_maps import (
    alexander_whitney,
    compare_homology,
    eilenberg_zilber,
    matched_complexes,
    pi_map,
    psi_map,
    verify_chain_map,
)
from zsmatch.cocycle import (
    Phase,
    categorical_cochain,
    coboundary,
    is_cohomologous,
    psi2,
    total_coboundary,
    total_cocycle_basis,
    validate_categorical_2cocycle,
    validate_total_2cocycle,
)
from zsmatch.complexes import DoubleComplex, categorical_complex, degeneracy_map, face_map
from zsmatch.matched_pair import gamma_category, zs_category
from zsmatch.odometer import odometer_homology, random_strongly_connected, verify_decomposition
from zsmatch.spectral import two_row_check

sys.path.insert(0, __file__.rsplit("/", 1)[0])
from conftest import simplicial_identities  # noqa: E402

PAIRS = matched_pairs()


def report(n, ok, detail, capsys=None):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def strs(groups):
    return [str(g) for g in groups]


# -- 1 ------------------------------------------------------------------------

def criterion_1():
    detail, ok = [], True
    for n in (1, 2, 3):
        t = time.perf_counter()
        mc = matched_complexes(PAIRS[f"model_{n}"], 3)
        bow, dia = homology_groups(mc.bowtie, 3), homology_groups(mc.diagonal, 3)
        dt = time.perf_counter() - t
        good = strs(bow) == strs(dia) == ["Z", "0", "0", "0"] and dt < 60
        ok &= good
        detail.append(f"n={n} {','.join(strs(bow))} ({dt:.1f}s)")
    return ok, "; ".join(detail)


# -- 2 ------------------------------------------------------------------------

def criterion_2():
    ok, detail = True, []
    for name, K in (("trivial_G2", 2), ("S3", 3), ("model_2", 2)):
        rows = compare_homology(PAIRS[name], K)
        good = all(r["bowtie"] == r["diagonal"] == r["total"] and r["Pi_iso"] and r["Psi_iso"]
                   and r["nabla_iso"] and r["round_trip_identity"] for r in rows)
        ok &= good
        detail.append(f"{name}: {','.join(str(r['bowtie']) for r in rows)}")
    return ok, "; ".join(detail)


# -- 3 ------------------------------------------------------------------------

def criterion_3():
    t = time.perf_counter()
    bad = []
    for name in ("trivial_G2", "S3", "model_2"):
        mp = PAIRS[name]
        dc = DoubleComplex(mp, 3)  # d^h d^h, d^v d^v, d^h d^v + d^v d^h up to total degree 4
        mc = matched_complexes(mp, 3)
        for cx in (mc.bowtie, mc.diagonal, mc.total):
            for k in range(3):
                if not (cx.boundary(k) @ cx.boundary(k + 1)).is_zero():
                    bad.append((name, cx.name, k))
        Z = zs_category(mp)
        bad += [(name, "categorical", f) for f in simplicial_identities(
            lambda k, i: face_map("categorical", Z, k, i),
            lambda k, i: degeneracy_map("categorical", Z, k, i), 4)]
        for q in range(4):
            bad += [(name, "h", q, f) for f in simplicial_identities(
                lambda k, i: dc.face_h(k, q, i), lambda k, i: dc.degeneracy_h(k, q, i), 4 - q)]
        for p in range(4):
            bad += [(name, "v", p, f) for f in simplicial_identities(
                lambda k, j: dc.face_v(p, k, j), lambda k, j: dc.degeneracy_v(p, k, j), 4 - p)]
        bad += [(name, "diagonal", f) for f in simplicial_identities(
            lambda k, i: face_map("diagonal", dc, k, i),
            lambda k, i: degeneracy_map("diagonal", dc, k, i), 3)]
        for f in (eilenberg_zilber(mc, 3), alexander_whitney(mc, 3), pi_map(mc, 3), psi_map(mc, 3)):
            if not verify_chain_map(f)["ok"]:
                bad.append((name, f.name))
    dt = time.perf_counter() - t
    return not bad and dt < 300, f"{len(bad)} failures, {dt:.1f}s"


# -- 4 ------------------------------------------------------------------------

def bar_homology(n_group, K):
    """Independent oracle: the unnormalised bar complex of Z/n written with
    numpy and reduced with sympy's invariant factors."""
    import itertools

    def basis(k):
        return list(itertools.product(range(n_group), repeat=k))

    def d(k):  # C_k -> C_{k-1}
        src, tgt = basis(k), {t: i for i, t in enumerate(basis(k - 1))}
        M = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for j, t in enumerate(src):
            for i in range(k + 1):
                if i == 0:
                    face = t[1:]
                elif i == k:
                    face = t[:-1]
                else:
                    face = t[:i - 1] + ((t[i - 1] + t[i]) % n_group,) + t[i + 1:]
                M[tgt[face], j] += (-1) ** i
        return M

    out = []
    mats = {k: d(k) for k in range(1, K + 2)}
    for k in range(K + 1):
        dim = n_group ** k
        rank_out = np.linalg.matrix_rank(mats[k]) if k >= 1 else 0
        M = mats[k + 1]
        inv = [abs(int(x)) for x in invariant_factors(Matrix(M.tolist()), domain=ZZ) if x != 0]
        free = dim - rank_out - len(inv)
        out.append(AbelianGroup.from_orders(free, inv))
    return out


def criterion_4():
    ok, detail = True, []
    for n, expected in ((2, ["Z", "Z/2", "0", "Z/2"]), (3, ["Z", "Z/3", "0", "Z/3"])):
        ours = strs(homology_groups(categorical_complex(cyclic_group_category(n), 3), 3))
        oracle = strs(bar_homology(n, 3))
        ok &= ours == oracle == expected
        detail.append(f"Z/{n}: {','.join(ours)}")
    s3 = strs(homology_groups(categorical_complex(zs_category(PAIRS["S3"]), 2), 2))
    ok &= s3[1:] == ["Z/2", "0"]
    detail.append(f"S3: H1={s3[1]}, H2={s3[2]}")
    return ok, "; ".join(detail)


# -- 5 ------------------------------------------------------------------------

def criterion_5():
    P = product_category(cyclic_group_category(2), cyclic_group_category(2))
    a = homology_groups(categorical_complex(P, 2), 2)[2]
    b = homology_groups(matched_complexes(klein_pair(), 2).total, 2)[2]
    H = homology_groups(categorical_complex(cyclic_group_category(2), 2), 2)
    c = AbelianGroup()
    for i in range(3):
        c = c + H[i].tensor(H[2 - i])
    for i in range(2):
        c = c + H[i].tor(H[1 - i])
    ok = str(a) == str(b) == str(c) == "Z/2"
    return ok, f"categorical {a}, total {b}, Kunneth {c}"


# -- 6 ------------------------------------------------------------------------

def criterion_6():
    t = time.perf_counter()
    r1, r2 = odometer_homology(odometer_loop(1)), odometer_homology(odometer_loop(2))
    ok = (str(r1["H0"]), str(r1["H1"]), str(r1["H2"])) == ("Z", "Z^2", "Z")
    ok &= (str(r2["H0"]), str(r2["H1"]), str(r2["H2"])) == ("Z", "Z", "0")
    met = 0
    for seed in range(20):
        E = random_strongly_connected(seed)
        r = odometer_homology(E)
        q = r["H1_ses"]["quotient"]
        ok &= E.is_strongly_connected() and any(w > 1 for w in E.p.values())
        ok &= r["H2"] == AbelianGroup(max(0, -E.euler_characteristic))
        ok &= q.free_rank == 0 and len(q.torsion) <= 1
        if r["gcd_criterion"]["met"]:
            met += 1
            ok &= q.is_trivial
    dt = time.perf_counter() - t
    return ok and dt < 30, f"loops ok, 20 graphs, criterion met on {met}, {dt:.1f}s"


# -- 7 ------------------------------------------------------------------------

def criterion_7():
    ok, checked = True, 0
    for seed in range(8):
        E = random_strongly_connected(100 + seed, n_vertices=1 + seed % 4, extra_edges=seed % 3,
                                      max_weight=3)
        assert len(E.vertices) <= 4 and len(E.edges) <= 6
        rep = verify_decomposition(E, 4)
        ok &= rep["ok"] and rep["intersection_zero"]
        checked += rep["checked"]
    return ok, f"{checked} paths on 8 graphs"


# -- 8 ------------------------------------------------------------------------

def criterion_8():
    ok, detail = True, []
    for name in ("trivial_G2", "fork", "swap", "model_2"):
        rep = two_row_check(PAIRS[name], 3)
        good = rep["vanishing"] and all(s for _n, s in rep["ses"])
        ok &= good
        detail.append(name)
    return ok, "rows q>=2 vanish and SES bookkeeping holds on " + ", ".join(detail)


# -- 9 ------------------------------------------------------------------------

def criterion_9_constructive():
    rng = random.Random(2024)
    ok = True
    cats = {"Gamma_2": gamma_category(2), "S3": zs_category(PAIRS["S3"])}
    for C in cats.values():
        for _ in range(50):
            b = {f: Phase(Fraction(rng.randrange(24), 24))
                 for f in range(C.n_morphisms) if not C.is_identity(f)}
            c = coboundary(C, b)
            ok &= validate_categorical_2cocycle(C, c)["ok"]
            ok &= is_cohomologous(C, {}, c)["cohomologous"]
    n_total = 0
    for name in ("S3", "klein", "swap", "fork", "trivial_G2", "model_2"):
        mp = PAIRS[name]
        Z = zs_category(mp)
        cands = [make(Fraction(1, order) if order else Fraction(1, 5))
                 for order, make in total_cocycle_basis(mp)]
        for _ in range(5):
            bC = {c: Fraction(rng.randrange(6), 6) for c in range(mp.C.n_morphisms)
                  if not mp.C.is_identity(c)}
            bD = {d: Fraction(rng.randrange(6), 6) for d in range(mp.D.n_morphisms)
                  if not mp.D.is_identity(d)}
            cands.append(total_coboundary(mp, bC, bD))
        for phi in cands:
            ok &= validate_total_2cocycle(mp, phi, mode="dual")["ok"]
            ok &= validate_categorical_2cocycle(Z, psi2(mp, phi))["ok"]
            n_total += 1
    # the H^2 obstruction does show up where it exists
    K = zs_category(klein_pair())
    klein_class = psi2(klein_pair(), next(m for o, m in total_cocycle_basis(klein_pair())
                                          if o == 2)(Fraction(1, 2)))
    ok &= not is_cohomologous(K, {}, klein_class)["cohomologous"]
    return ok, n_total


def criterion_9_z2_claim():
    C = cyclic_group_category(2)
    c = categorical_cochain(C, [["g1", "g1", "1/2"]])
    return validate_categorical_2cocycle(C, c)["ok"] and \
        not is_cohomologous(C, {}, c)["cohomologous"]


def criterion_9():
    ok_a, n_total = criterion_9_constructive()
    ok_b = criterion_9_z2_claim()
    parts = [f"coboundaries and {n_total} total cocycles {'ok' if ok_a else 'FAILED'}",
             "Z/2 class non-cohomologous to 0: unattainable, H^2(Z/2; Q/Z) = 0"
             if not ok_b else "Z/2 class non-cohomologous to 0: ok"]
    return ok_a and ok_b, "; ".join(parts)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 9))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    assert report(n, ok, detail, capsys), detail


def test_criterion_9_constructive_part():
    ok, _n_total = criterion_9_constructive()
    assert ok


@pytest.mark.xfail(strict=True, reason="H^2(Z/2; Q/Z) = 0, so c(a,a) = 1/2 is a coboundary")
def test_criterion_9(capsys):
    ok, detail = criterion_9()
    assert report(9, ok, detail, capsys), detail


if __name__ == "__main__":
    results = [report(i + 1, *f()) for i, f in enumerate(CRITERIA)]
    sys.exit(0 if all(results) else 1)
