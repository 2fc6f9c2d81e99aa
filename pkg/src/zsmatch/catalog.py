"""Named small examples, used by the tests, the demos and the shipped corpus."""

from .category import cyclic_group_category, discrete_category, path_category, product_category
from .matched_pair import (
    MatchedPair,
    gamma_category,
    model_pair,
    monoid_category_rename,
    product_pair,
    semidirect_s3,
    trivial_pair,
)
from .odometer import WeightedGraph

__all__ = [
    "G2",
    "trivial_G2",
    "klein_pair",
    "swap_pair",
    "fork_pair",
    "mp2_broken",
    "odometer_loop",
    "odometer_graphs",
    "categories",
    "matched_pairs",
]


def G2():
    """Path category of ``2 -> 1 -> 0``."""
    return path_category(["0", "1", "2"], [("e0", "1", "0"), ("e1", "2", "1")], name="G2")


def trivial_G2():
    return trivial_pair(G2(), name="trivial_G2")


def klein_pair():
    """``Z/2 x Z/2`` as a trivially matched pair of two ``Z/2``."""
    return product_pair(cyclic_group_category(2), cyclic_group_category(2), name="klein")


def _two_point_groups():
    # Z/2 at each of two objects
    return {
        "objects": ["u", "v"],
        "morphisms": [("u", "u", "u"), ("v", "v", "v"), ("au", "u", "u"), ("av", "v", "v")],
        "identities": {"u": "u", "v": "v"},
        "compose": [("u", "u", "u"), ("u", "au", "au"), ("au", "u", "au"), ("au", "au", "u"),
                    ("v", "v", "v"), ("v", "av", "av"), ("av", "v", "av"), ("av", "av", "v")],
    }


def swap_pair():
    """Z/2 at each of two vertices acting on two parallel edges ``u -> v``.

    The nontrivial element at ``v`` swaps the edges and leaves the flip at
    ``u`` behind; everything else acts trivially.
    """
    from .category import FiniteCategory

    raw = _two_point_groups()
    C = FiniteCategory(raw["objects"], raw["morphisms"], raw["identities"], raw["compose"], name="Z2+Z2")
    D = path_category(["u", "v"], [("e1", "u", "v"), ("e2", "u", "v")], name="two_edges")
    L, R = [], []
    for c in C.morphism_ids:
        x = C.objects[C.src[C.index(c)]]
        for d in D.morphism_ids:
            di = D.index(d)
            if D.objects[D.dst[di]] != x:
                continue
            dsrc = D.objects[D.src[di]]
            if d in ("e1", "e2") and c == "av":
                L.append((c, d, "e2" if d == "e1" else "e1"))
                R.append((c, d, "au"))
            elif d in ("e1", "e2"):
                L.append((c, d, d))
                R.append((c, d, dsrc))
            else:
                L.append((c, d, d))
                R.append((c, d, c))
    return MatchedPair(C, D, L, R, name="swap")


def fork_pair():
    """Discrete ``C`` with the path category of ``a -> b -> c`` plus ``a -> c``."""
    D = path_category(["a", "b", "c"], [("x", "a", "b"), ("y", "b", "c"), ("z", "a", "c")],
                      name="fork")
    C = discrete_category(["a", "b", "c"])
    L = [(C.objects[D.dst[d]], D.morphism_ids[d], D.morphism_ids[d]) for d in range(D.n_morphisms)]
    R = [(C.objects[D.dst[d]], D.morphism_ids[d], C.objects[D.src[d]]) for d in range(D.n_morphisms)]
    return MatchedPair(C, D, L, R, name="fork")


def mp2_broken():
    """Raw description (not validated) of Z/2 acting on Z/4 by swapping
    ``h1`` and ``h2``: both actions are actions, but the left one is not
    multiplicative."""
    C = cyclic_group_category(2)
    D = monoid_category_rename(4, "h")
    swap = {"h0": "h0", "h1": "h2", "h2": "h1", "h3": "h3"}
    L, R = [], []
    for c in C.morphism_ids:
        for d in D.morphism_ids:
            L.append([c, d, swap[d] if c == "g1" else d])
            R.append([c, d, c])
    return {"name": "mp2_broken", "C": C.to_dict(), "D": D.to_dict(), "act_L": L, "act_R": R}


def odometer_loop(p):
    return WeightedGraph(["v"], [("e", "v", "v", p)], name=f"loop_p{p}")


def odometer_graphs():
    return {
        "loop_p1": odometer_loop(1),
        "binary_odometer": odometer_loop(2),
        "loop_p3": odometer_loop(3),
        "two_cycle": WeightedGraph(["u", "v"], [("a", "u", "v", 2), ("b", "v", "u", 3),
                                                ("c", "u", "u", 1)], name="two_cycle"),
    }


def categories():
    out = {
        "Z2": cyclic_group_category(2),
        "Z3": cyclic_group_category(3),
        "discrete3": discrete_category(["a", "b", "c"]),
        "G2": G2(),
        "Z2xZ2": product_category(cyclic_group_category(2), cyclic_group_category(2), name="Z2xZ2"),
    }
    for n in (1, 2):
        out[f"gamma_{n}"] = gamma_category(n)
    return out


def matched_pairs():
    out = {
        "trivial_G2": trivial_G2(),
        "S3": semidirect_s3(),
        "klein": klein_pair(),
        "swap": swap_pair(),
        "fork": fork_pair(),
    }
    for n in (1, 2, 3):
        out[f"model_{n}"] = model_pair(n).mp
    return out
