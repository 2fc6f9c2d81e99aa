import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsmatch.category import (
    FiniteCategory,
    cyclic_group_category,
    discrete_category,
    monoid_category,
    path_category,
    product_category,
    validate_category,
)
from zsmatch.catalog import G2
from zsmatch.errors import (
    AssociativityViolation,
    CompositionIllTyped,
    CompositionUndefined,
    CyclicGraph,
    MissingIdentity,
    NoUnit,
    NotAssociative,
)


def test_cyclic_group_tuples():
    Z3 = cyclic_group_category(3)
    assert Z3.n_objects == 1 and Z3.n_morphisms == 3
    assert [Z3.count_tuples(k) for k in range(4)] == [1, 3, 9, 27]
    assert Z3.compose("g2", "g2") == "g1"


def test_path_category_of_g2():
    C = G2()
    assert C.n_morphisms == 6
    assert C.compose("e0", "e1") == "e0.e1"
    # composable pairs: 3 identity-identity, 2*2 for each edge with identities,
    # 2 for the long path, plus (e0, e1)
    assert C.count_tuples(2) == len(C.tuples(2)) == 10


def test_path_category_rejects_cycle():
    with pytest.raises(CyclicGraph):
        path_category(["a", "b"], [("x", "a", "b"), ("y", "b", "a")])


def test_discrete():
    C = discrete_category(["a", "b", "c"])
    assert C.n_morphisms == 3
    assert C.count_tuples(4) == 3


def test_json_roundtrip():
    for C in (G2(), cyclic_group_category(4), discrete_category(["x"])):
        D = validate_category(C.to_dict())
        assert D.to_dict() == C.to_dict()


def _z2_raw():
    return {
        "objects": ["*"],
        "morphisms": [{"id": "e", "src": "*", "dst": "*"}, {"id": "a", "src": "*", "dst": "*"}],
        "identities": {"*": "e"},
        "compose": [["e", "e", "e"], ["e", "a", "a"], ["a", "e", "a"], ["a", "a", "e"]],
    }


def test_missing_identity():
    raw = _z2_raw()
    raw["identities"] = {}
    with pytest.raises(MissingIdentity):
        validate_category(raw)


def test_identity_law_violation():
    raw = _z2_raw()
    raw["compose"][1] = ["e", "a", "e"]
    with pytest.raises(MissingIdentity):
        validate_category(raw)


def test_composition_undefined_has_witness():
    raw = _z2_raw()
    raw["compose"].pop()
    with pytest.raises(CompositionUndefined) as exc:
        validate_category(raw)
    assert exc.value.witness == ("a", "a")


def test_ill_typed_composition():
    raw = {
        "objects": ["x", "y"],
        "morphisms": [["x", "x", "x"], ["y", "y", "y"], ["f", "x", "y"]],
        "identities": {"x": "x", "y": "y"},
        "compose": [["x", "x", "x"], ["y", "y", "y"], ["f", "x", "f"], ["y", "f", "f"],
                    ["f", "y", "f"]],
    }
    with pytest.raises(CompositionIllTyped):
        validate_category(raw)


def test_associativity_violation():
    # three-element "monoid" e, a, b with a table that is not associative
    elems = ["e", "a", "b"]
    table = {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"}
    compose = []
    for x in elems:
        for y in elems:
            compose.append((x, y, y if x == "e" else x if y == "e" else table[x, y]))
    with pytest.raises(AssociativityViolation):
        FiniteCategory(["*"], [(x, "*", "*") for x in elems], {"*": "e"}, compose)


def test_monoid_table_checks():
    with pytest.raises(NotAssociative):
        monoid_category(["e", "a", "b"], [["e", "a", "b"], ["a", "b", "a"], ["b", "b", "a"]])
    with pytest.raises(NoUnit):
        monoid_category(["a", "b"], [["a", "a"], ["a", "a"]])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 3))
def test_product_counts(m, n, k):
    A, B = cyclic_group_category(m), cyclic_group_category(n)
    P = product_category(A, B)
    assert P.n_morphisms == m * n
    assert P.count_tuples(k) == (m * n) ** k


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=7))
def test_random_dag_path_categories_are_categories(pairs):
    # orient every edge from the larger to the smaller vertex: always acyclic
    verts = [str(i) for i in range(5)]
    edges = [(f"e{j}", str(max(a, b)), str(min(a, b))) for j, (a, b) in enumerate(pairs) if a != b]
    C = path_category(verts, edges)
    # the constructor already validated; tuple counts agree with enumeration
    for k in range(3):
        assert C.count_tuples(k) == len(C.tuples(k)) if k else C.n_objects
