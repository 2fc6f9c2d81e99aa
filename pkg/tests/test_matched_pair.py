import itertools

import pytest

from zsmatch.catalog import mp2_broken
from zsmatch.category import cyclic_group_category
from zsmatch.errors import ActionIllTyped, FR2Violation, MP2Violation, NotAnAction, ObjectMismatch
from zsmatch.matched_pair import (
    FactorisationRule,
    from_factorisation_rule,
    gamma_category,
    induced_morphism,
    is_left_cancellative,
    model_pair,
    semidirect_s3,
    to_factorisation_rule,
    tuple_action,
    validate_matched_pair,
    zappa_szep,
    zs_category,
)


def test_gamma_sizes():
    assert [gamma_category(n).n_morphisms for n in range(4)] == [1, 6, 20, 50]
    assert gamma_category(1).count_tuples(2) == 10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_model_pair_product_is_gamma(n):
    M = model_pair(n)
    Z = zs_category(M.mp)
    G = M.gamma
    assert Z.n_morphisms == G.n_morphisms
    assert sorted(M.iso.values()) == sorted(G.morphism_ids)
    # the bijection is a functor
    zid = Z.morphism_ids
    for f in range(Z.n_morphisms):
        for g, fg in Z._comp[f].items():
            assert G.compose(M.iso[zid[f]], M.iso[zid[g]]) == M.iso[zid[fg]]


def test_s3_product_is_nonabelian_group():
    mp = semidirect_s3()
    Z = zs_category(mp)
    assert Z.n_morphisms == 6
    comm = all(Z._comp[f][g] == Z._comp[g][f] for f in range(6) for g in range(6))
    assert not comm
    assert is_left_cancellative(mp) == (True, None)


def test_zappa_szep_embeddings():
    mp = semidirect_s3()
    Z, eC, eD = zappa_szep(mp)
    assert len(eC) == 2 and len(eD) == 3
    # c . d = (c |> d)(c <| d)
    for c, d in mp.pairs():
        dl, cr = mp.bowtie(c, d)
        lhs = Z.compose(eC[mp.C.morphism_ids[c]], eD[mp.D.morphism_ids[d]])
        rhs = Z.compose(eD[mp.D.morphism_ids[dl]], eC[mp.C.morphism_ids[cr]])
        assert lhs == rhs


def test_mp2_broken_witness():
    with pytest.raises(MP2Violation) as exc:
        validate_matched_pair(mp2_broken())
    assert exc.value.witness == ("g1", "h1", "h1")


def test_action_errors():
    raw = semidirect_s3().to_dict()
    raw["act_L"] = raw["act_L"][1:]
    with pytest.raises(ActionIllTyped):
        validate_matched_pair(raw)
    raw = semidirect_s3().to_dict()
    # the identity of C must act trivially
    raw["act_L"] = [[c, d, "h2" if (c, d) == ("g0", "h1") else x] for c, d, x in raw["act_L"]]
    with pytest.raises(NotAnAction):
        validate_matched_pair(raw)


def test_json_roundtrip(pairs):
    for mp in pairs.values():
        again = validate_matched_pair(mp.to_dict())
        assert again.to_dict() == mp.to_dict()


def test_factorisation_rule_roundtrip(pairs):
    for mp in pairs.values():
        fr = to_factorisation_rule(mp)
        assert to_factorisation_rule(from_factorisation_rule(fr)) == fr


def test_factorisation_rule_fr2():
    mp = semidirect_s3()
    fr = to_factorisation_rule(mp)
    # make c |><| d ignore the action: composable but not a matched pair
    bad = FactorisationRule(fr.C, fr.D, {k: (k[1], k[0]) for k in fr.table})
    bad.table[("g1", "h1")] = ("h2", "g1")
    with pytest.raises(FR2Violation):
        from_factorisation_rule(bad)


def test_object_mismatch():
    fr = FactorisationRule(cyclic_group_category(2), cyclic_group_category(2, obj="o"), {})
    with pytest.raises(ObjectMismatch):
        from_factorisation_rule(fr)


def test_cross_order_independent(pairs):
    for name in ("S3", "model_2", "swap", "fork", "klein"):
        mp = pairs[name]
        for m, n in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]:
            for ct in mp.C.tuples(m):
                for dt in mp.D.tuples(n):
                    if mp.C.src[ct[-1]] != mp.D.dst[dt[0]]:
                        continue
                    assert mp.cross(ct, dt, "left") == mp.cross(ct, dt, "right")


def test_tuple_action_agrees_with_products(pairs):
    mp = pairs["S3"]
    Z = zs_category(mp)
    L, R = tuple_action(mp, 2, 2)
    for (ct, dt), d2 in L.items():
        c2 = R[ct, dt]
        lhs = Z.comp_many([Z.embed_C(c) for c in ct] + [Z.embed_D(d) for d in dt])
        rhs = Z.comp_many([Z.embed_D(d) for d in d2] + [Z.embed_C(c) for c in c2])
        assert lhs == rhs


def test_induced_morphisms_from_model_pairs(pairs):
    mp = pairs["S3"]
    Z = zs_category(mp)
    for gamma in itertools.product(range(Z.n_morphisms), repeat=2):
        h = induced_morphism(mp, gamma)
        # the two model edges on the outer boundary go to gamma
        Zm = zs_category(h.model.mp)
        images = sorted(h.on_product(m) for m in range(Zm.n_morphisms))
        assert set(gamma) <= set(images)
