"""Matched pairs of finite categories and their Zappa--Szep products.

A matched pair ``(C, D, L, R)`` has ``C`` and ``D`` on the same ordered
object list, a left action ``L(c, d) = c |> d`` in ``D`` and a right action
``R(c, d) = c <| d`` in ``C``, both defined when ``s(c) = r(d)``.  Composites
of the product are pairs ``(d, c)`` with ``s(d) = r(c)`` and

    (d1, c1)(d2, c2) = (d1 L(c1, d2), R(c1, d2) c2).

Tuple actions follow the expansions

    c |> (d1, ..., dk)    = (c |> d1, (c <| d1) |> d2, ...)
    (c1, ..., ck) <| d    = ((c1, ..., c(k-1)) <| (ck |> d), ck <| d)

and crossing a C-tuple past a D-tuple may be done in any order.
"""

from dataclasses import dataclass
from itertools import product as _cartesian

from .category import FiniteCategory, path_category, validate_category
from .errors import (
    ActionIllTyped,
    FactorisationError,
    FR1Violation,
    FR2Violation,
    MP1Violation,
    MP2Violation,
    MP3Violation,
    NotAnAction,
    NotComposable,
    ObjectMismatch,
    ValidationError,
)

__all__ = [
    "MatchedPair",
    "FactorisationRule",
    "ModelPair",
    "ZappaSzepCategory",
    "validate_matched_pair",
    "to_factorisation_rule",
    "from_factorisation_rule",
    "from_strict_factorisation",
    "zappa_szep",
    "tuple_action",
    "trivial_pair",
    "model_pair",
    "induced_morphism",
    "is_left_cancellative",
]


def _action_items(table):
    if hasattr(table, "items"):
        return [(k[0], k[1], v) for k, v in table.items()]
    return [tuple(t) for t in table]


class MatchedPair:
    """A validated matched pair.

    ``act_L`` and ``act_R`` are tables keyed by ``(c, d)`` identifiers (a
    mapping, or a list of ``[c, d, value]`` triples) and must be total on
    composable pairs.  Construction runs the full axiom check; see
    :func:`validate_matched_pair` for the error types.
    """

    def __init__(self, C, D, act_L, act_R, name=None):
        self.C, self.D, self.name = C, D, name
        if C.objects != D.objects:
            raise ObjectMismatch("C and D must have the same ordered object list",
                                 witness=(C.objects, D.objects))
        self.L = {}
        self.R = {}
        for tab, store, tgt in ((act_L, self.L, D), (act_R, self.R, C)):
            for item in _action_items(tab):
                if len(item) != 3:
                    raise ActionIllTyped(f"action entry {item!r} is not a triple", witness=item)
                c, d, v = (str(x) for x in item)
                try:
                    key = (C.index(c), D.index(d))
                    val = tgt.index(v)
                except KeyError as exc:
                    raise ActionIllTyped(f"action entry mentions unknown morphism {exc}",
                                         witness=item) from None
                if key in store and store[key] != val:
                    raise ActionIllTyped(f"action given twice at {(c, d)}", witness=(c, d))
                store[key] = val
        self._pairs = [(c, d) for c in range(C.n_morphisms) for d in D.by_dst[C.src[c]]]
        self._check()
        self._ltuple = {}
        self._rtuple = {}

    # -- axioms -------------------------------------------------------------
    def _check(self):
        C, D, L, R = self.C, self.D, self.L, self.R
        cid, did = C.morphism_ids, D.morphism_ids

        def w(*xs):
            return tuple(xs)

        for key in list(L) + list(R):
            c, d = key
            if C.src[c] != D.dst[d]:
                raise ActionIllTyped(f"action given on non-composable pair ({cid[c]}, {did[d]})",
                                     witness=(cid[c], did[d]))
        for c, d in self._pairs:
            if (c, d) not in L or (c, d) not in R:
                raise ActionIllTyped(f"action undefined at ({cid[c]}, {did[d]})",
                                     witness=(cid[c], did[d]))
            dl, cr = L[c, d], R[c, d]
            if D.dst[dl] != C.dst[c]:
                raise ActionIllTyped(f"r(c|>d) != r(c) at ({cid[c]}, {did[d]})", witness=(cid[c], did[d]))
            if C.src[cr] != D.src[d]:
                raise ActionIllTyped(f"s(c<|d) != s(d) at ({cid[c]}, {did[d]})", witness=(cid[c], did[d]))
            if D.src[dl] != C.dst[cr]:
                raise MP1Violation(f"s(c|>d) != r(c<|d) at ({cid[c]}, {did[d]})",
                                   witness=(cid[c], did[d]))
        # unit and composition laws of the two actions
        for d in range(D.n_morphisms):
            i = C.identity[D.dst[d]]
            if L[i, d] != d:
                raise NotAnAction(f"identity does not act trivially on {did[d]}", witness=(cid[i], did[d]))
            if R[i, d] != C.identity[D.src[d]]:
                raise NotAnAction(f"id <| {did[d]} is not an identity", witness=(cid[i], did[d]))
        for c in range(C.n_morphisms):
            j = D.identity[C.src[c]]
            if R[c, j] != c:
                raise NotAnAction(f"identity does not act trivially on {cid[c]}", witness=(cid[c], did[j]))
            if L[c, j] != D.identity[C.dst[c]]:
                raise NotAnAction(f"{cid[c]} |> id is not an identity", witness=(cid[c], did[j]))
        for c1 in range(C.n_morphisms):
            for c2, c12 in C._comp[c1].items():
                for d in D.by_dst[C.src[c2]]:
                    if L[c12, d] != L[c1, L[c2, d]]:
                        raise NotAnAction("(c1 c2) |> d != c1 |> (c2 |> d)",
                                          witness=w(cid[c1], cid[c2], did[d]))
        for c in range(C.n_morphisms):
            for d1 in D.by_dst[C.src[c]]:
                for d2, d12 in D._comp[d1].items():
                    if R[c, d12] != R[R[c, d1], d2]:
                        raise NotAnAction("c <| (d1 d2) != (c <| d1) <| d2",
                                          witness=w(cid[c], did[d1], did[d2]))
        # MP2 and MP3
        for c in range(C.n_morphisms):
            for d1 in D.by_dst[C.src[c]]:
                for d2, d12 in D._comp[d1].items():
                    if L[c, d12] != D.comp(L[c, d1], L[R[c, d1], d2]):
                        raise MP2Violation("c |> (d1 d2) != (c |> d1)((c <| d1) |> d2)",
                                           witness=w(cid[c], did[d1], did[d2]))
        for c1 in range(C.n_morphisms):
            for c2, c12 in C._comp[c1].items():
                for d in D.by_dst[C.src[c2]]:
                    if R[c12, d] != C.comp(R[c1, L[c2, d]], R[c2, d]):
                        raise MP3Violation("(c1 c2) <| d != (c1 <| (c2 |> d))(c2 <| d)",
                                           witness=w(cid[c1], cid[c2], did[d]))

    # -- basic --------------------------------------------------------------
    @property
    def objects(self):
        return self.C.objects

    def pairs(self):
        """Composable ``(c, d)`` index pairs, c-major."""
        return list(self._pairs)

    def act_l(self, c, d):
        return self.L[c, d]

    def act_r(self, c, d):
        return self.R[c, d]

    def bowtie(self, c, d):
        """``c |><| d = (c |> d, c <| d)`` on indices."""
        return self.L[c, d], self.R[c, d]

    # -- tuple actions --------------------------------------------------------
    def l_tuple(self, c, dt):
        """``c |> (d1, ..., dk)``; ``dt`` a tuple of D indices."""
        key = (c, dt)
        out = self._ltuple.get(key)
        if out is None:
            L, R = self.L, self.R
            res = []
            for d in dt:
                res.append(L[c, d])
                c = R[c, d]
            out = tuple(res)
            self._ltuple[key] = out
        return out

    def r_tuple(self, ct, d):
        """``(c1, ..., ck) <| d``; ``ct`` a tuple of C indices."""
        key = (ct, d)
        out = self._rtuple.get(key)
        if out is None:
            L, R = self.L, self.R
            res = []
            for c in reversed(ct):
                res.append(R[c, d])
                d = L[c, d]
            out = tuple(reversed(res))
            self._rtuple[key] = out
        return out

    def cross(self, ct, dt, order="left"):
        """Cross a C-tuple past a D-tuple: returns ``(dt', ct')`` with
        ``ct . dt = dt' . ct'`` in the product.

        ``order`` picks the sequence of elementary crossings: ``"left"``
        sweeps each d leftwards through all of ``ct`` (the d-major order),
        ``"right"`` sweeps each c rightwards through all of ``dt``.
        """
        L, R = self.L, self.R
        if not ct or not dt:
            return tuple(dt), tuple(ct)
        if order == "left":
            ct = list(ct)
            out_d = []
            for d in dt:
                for i in range(len(ct) - 1, -1, -1):
                    c = ct[i]
                    ct[i] = R[c, d]
                    d = L[c, d]
                out_d.append(d)
            return tuple(out_d), tuple(ct)
        if order == "right":
            dt = list(dt)
            out_c = []
            for c in reversed(ct):
                for j in range(len(dt)):
                    d = dt[j]
                    dt[j] = L[c, d]
                    c = R[c, d]
                out_c.append(c)
            return tuple(dt), tuple(reversed(out_c))
        raise ValueError(f"unknown crossing order {order!r}")

    def to_dict(self):
        cid, did = self.C.morphism_ids, self.D.morphism_ids
        return {
            "C": self.C.to_dict(),
            "D": self.D.to_dict(),
            "act_L": [[cid[c], did[d], did[self.L[c, d]]] for c, d in self._pairs],
            "act_R": [[cid[c], did[d], cid[self.R[c, d]]] for c, d in self._pairs],
        }

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return (f"<MatchedPair{label}: {self.C.n_objects} objects, |C|={self.C.n_morphisms}, "
                f"|D|={self.D.n_morphisms}>")


def validate_matched_pair(raw, name=None):
    """Build a :class:`MatchedPair` from ``{"C", "D", "act_L", "act_R"}``.

    Errors: ``ObjectMismatch``, ``ActionIllTyped``, ``MP1Violation``,
    ``MP2Violation``, ``MP3Violation``, ``NotAnAction`` (unit or composition
    law of either action), each carrying a witness.
    """
    if isinstance(raw, MatchedPair):
        return raw
    try:
        C = validate_category(raw["C"])
        D = validate_category(raw["D"])
        act_L, act_R = raw["act_L"], raw["act_R"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"matched-pair description lacks {exc}") from None
    return MatchedPair(C, D, act_L, act_R, name=name or raw.get("name"))


def trivial_pair(C, name=None):
    """``(C, C^0)``: D is discrete, ``c |> s(c) = r(c)`` and ``c <| s(c) = c``."""
    from .category import discrete_category

    D = discrete_category(C.objects)
    act_L = [(C.morphism_ids[c], C.objects[C.src[c]], C.objects[C.dst[c]])
             for c in range(C.n_morphisms)]
    act_R = [(C.morphism_ids[c], C.objects[C.src[c]], C.morphism_ids[c])
             for c in range(C.n_morphisms)]
    return MatchedPair(C, D, act_L, act_R, name=name or f"trivial({C.name or 'C'})")


def product_pair(S, R, name=None):
    """Pair ``(S, R)`` of one-object categories with trivial actions, so
    the product is ``S x R``."""
    act_L = [(S.morphism_ids[s], R.morphism_ids[r], R.morphism_ids[r])
             for s in range(S.n_morphisms) for r in range(R.n_morphisms)]
    act_R = [(S.morphism_ids[s], R.morphism_ids[r], S.morphism_ids[s])
             for s in range(S.n_morphisms) for r in range(R.n_morphisms)]
    return MatchedPair(S, R, act_L, act_R, name=name or "product")


# ---------------------------------------------------------------------------
# factorisation rules
# ---------------------------------------------------------------------------

@dataclass
class FactorisationRule:
    """``table[(c, d)] = (d', c')`` on identifiers."""

    C: FiniteCategory
    D: FiniteCategory
    table: dict

    def __eq__(self, other):
        return (isinstance(other, FactorisationRule) and self.C == other.C and self.D == other.D
                and self.table == other.table)


def to_factorisation_rule(mp):
    cid, did = mp.C.morphism_ids, mp.D.morphism_ids
    return FactorisationRule(mp.C, mp.D, {(cid[c], did[d]): (did[mp.L[c, d]], cid[mp.R[c, d]])
                                          for c, d in mp.pairs()})


def from_factorisation_rule(fr, name=None):
    """Matched pair of a factorisation rule after checking FR1 and FR2."""
    C, D = fr.C, fr.D
    if C.objects != D.objects:
        raise ObjectMismatch("C and D must have the same ordered object list")
    tab = {}
    for (c, d), (d2, c2) in fr.table.items():
        tab[C.index(c), D.index(d)] = (D.index(d2), C.index(c2))
    cid, did = C.morphism_ids, D.morphism_ids
    for c in range(C.n_morphisms):
        for d in D.by_dst[C.src[c]]:
            if (c, d) not in tab:
                raise FR1Violation(f"rule undefined at ({cid[c]}, {did[d]})", witness=(cid[c], did[d]))
            d2, c2 = tab[c, d]
            if D.src[d2] != C.dst[c2]:
                raise FR1Violation(f"c |><| d = ({did[d2]}, {cid[c2]}) is not composable",
                                   witness=(cid[c], did[d]))
            if D.dst[d2] != C.dst[c] or C.src[c2] != D.src[d]:
                raise FR1Violation(f"r/s mismatch at ({cid[c]}, {did[d]})", witness=(cid[c], did[d]))
    for c1 in range(C.n_morphisms):
        for c2, c12 in C._comp[c1].items():
            for d in D.by_dst[C.src[c2]]:
                dA, cA = tab[c2, d]
                dB, cB = tab[c1, dA]
                if tab[c12, d] != (dB, C.comp(cB, cA)):
                    raise FR2Violation("left diagram fails", witness=(cid[c1], cid[c2], did[d]))
    for c in range(C.n_morphisms):
        for d1 in D.by_dst[C.src[c]]:
            for d2, d12 in D._comp[d1].items():
                dA, cA = tab[c, d1]
                dB, cB = tab[cA, d2]
                if tab[c, d12] != (D.comp(dA, dB), cB):
                    raise FR2Violation("right diagram fails", witness=(cid[c], did[d1], did[d2]))
    act_L = {k: v[0] for k, v in fr.table.items()}
    act_R = {k: v[1] for k, v in fr.table.items()}
    return MatchedPair(C, D, act_L, act_R, name=name)


# ---------------------------------------------------------------------------
# Zappa--Szep product
# ---------------------------------------------------------------------------

class ZappaSzepCategory(FiniteCategory):
    """``C |><| D`` with ``pairs[i] = (d, c)`` for morphism ``i``."""

    mp = None
    pairs = ()
    pair_index = None

    def embed_C(self, c):
        return self.pair_index[self.mp.D.identity[self.mp.C.dst[c]], c]

    def embed_D(self, d):
        return self.pair_index[d, self.mp.C.identity[self.mp.D.src[d]]]


def zappa_szep(mp, sep="|"):
    """The product category together with the embeddings of C and D.

    Returns ``(ZS, embed_C, embed_D)`` where the embeddings are dicts from
    C (resp. D) identifiers to product identifiers; ``(d, c)`` is called
    ``"d|c"``.  The product is validated from scratch, which re-checks
    associativity independently of the matched-pair axioms.
    """
    C, D = mp.C, mp.D
    pairs = [(d, c) for d in range(D.n_morphisms) for c in C.by_dst[D.src[d]]]
    names = [f"{D.morphism_ids[d]}{sep}{C.morphism_ids[c]}" for d, c in pairs]
    if len(set(names)) != len(names):
        names = [f"({d}{sep}{c})" for d, c in pairs]
    index = {p: i for i, p in enumerate(pairs)}
    morphisms = [(names[i], C.objects[C.src[c]], D.objects[D.dst[d]]) for i, (d, c) in enumerate(pairs)]
    identities = {x: names[index[D.identity[i], C.identity[i]]] for i, x in enumerate(C.objects)}
    L, R = mp.L, mp.R
    compose = []
    for i, (d1, c1) in enumerate(pairs):
        for d2 in D.by_dst[C.src[c1]]:
            dl, cr = L[c1, d2], R[c1, d2]
            d12 = D.comp(d1, dl)
            for c2 in C.by_dst[D.src[d2]]:
                j = index[d2, c2]
                compose.append((names[i], names[j], names[index[d12, C.comp(cr, c2)]]))
    Z = ZappaSzepCategory(C.objects, morphisms, identities, compose,
                          name=f"ZS({mp.name})" if mp.name else "ZS")
    Z.mp, Z.pairs, Z.pair_index = mp, pairs, index
    embed_C = {C.morphism_ids[c]: names[Z.embed_C(c)] for c in range(C.n_morphisms)}
    embed_D = {D.morphism_ids[d]: names[Z.embed_D(d)] for d in range(D.n_morphisms)}
    return Z, embed_C, embed_D


def zs_category(mp):
    """Cached product category of ``mp`` (index-level helper)."""
    Z = getattr(mp, "_zs", None)
    if Z is None:
        Z = zappa_szep(mp)[0]
        mp._zs = Z
    return Z


def tuple_action(mp, m, n, cap=None):
    """Tables of the action of ``C^m`` on ``D^n``.

    Returns ``(act_L, act_R)`` dicts keyed by ``(ct, dt)`` index tuples with
    values in ``D^n`` and ``C^m`` respectively.  ``C^m`` acts through the
    crossing of the whole tuples, which for ``m = n = 1`` is the original
    pair of tables.
    """
    if m < 1 or n < 1:
        raise ValueError("tuple actions need m, n >= 1")
    key = (m, n)
    memo = mp.__dict__.setdefault("_tuple_tables", {})
    if key in memo:
        return memo[key]
    C, D = mp.C, mp.D
    by_r = {}
    for dt in D.tuples(n, cap):
        by_r.setdefault(D.dst[dt[0]], []).append(dt)
    act_L, act_R = {}, {}
    for ct in C.tuples(m, cap):
        for dt in by_r.get(C.src[ct[-1]], ()):
            d2, c2 = mp.cross(ct, dt)
            act_L[ct, dt] = d2
            act_R[ct, dt] = c2
    memo[key] = (act_L, act_R)
    return act_L, act_R


# ---------------------------------------------------------------------------
# strict factorisations, model pairs
# ---------------------------------------------------------------------------

def _subcategory(G, ids, name):
    idx = sorted({G.index(i) for i in ids})
    keep = set(idx)
    for x in range(G.n_objects):
        if G.identity[x] not in keep:
            raise FactorisationError(f"{name} is not wide: misses identity of {G.objects[x]}")
    compose = []
    for f in idx:
        for g, h in G._comp[f].items():
            if g in keep:
                if h not in keep:
                    raise FactorisationError(f"{name} is not closed under composition",
                                             witness=(G.morphism_ids[f], G.morphism_ids[g]))
                compose.append((G.morphism_ids[f], G.morphism_ids[g], G.morphism_ids[h]))
    return FiniteCategory(G.objects, [(G.morphism_ids[f], G.objects[G.src[f]], G.objects[G.dst[f]])
                                      for f in idx],
                          {G.objects[x]: G.morphism_ids[G.identity[x]] for x in range(G.n_objects)},
                          compose, name=name)


def from_strict_factorisation(G, C_ids, D_ids, name=None):
    """Matched pair ``(C, D)`` from wide subcategories with every morphism
    of ``G`` factoring uniquely as ``d c``.

    The actions are found by searching for the unique factorisation of each
    composite ``c d``; failure or ambiguity raises ``FactorisationError``
    naming the offending ``cd``.
    """
    C = _subcategory(G, C_ids, "C")
    D = _subcategory(G, D_ids, "D")
    gC = [G.index(m) for m in C.morphism_ids]
    gD = [G.index(m) for m in D.morphism_ids]
    fact = {}
    for d in range(D.n_morphisms):
        for c in C.by_dst[D.src[d]]:
            fact.setdefault(G.comp(gD[d], gC[c]), []).append((d, c))
    for f in range(G.n_morphisms):
        n = len(fact.get(f, ()))
        if n != 1:
            kind = "no" if n == 0 else "more than one"
            raise FactorisationError(f"{G.morphism_ids[f]} has {kind} factorisation dc",
                                     witness=G.morphism_ids[f])
    act_L, act_R = [], []
    for c in range(C.n_morphisms):
        for d in D.by_dst[C.src[c]]:
            cd = G.comp(gC[c], gD[d])
            d2, c2 = fact[cd][0]
            act_L.append((C.morphism_ids[c], D.morphism_ids[d], D.morphism_ids[d2]))
            act_R.append((C.morphism_ids[c], D.morphism_ids[d], C.morphism_ids[c2]))
    return MatchedPair(C, D, act_L, act_R, name=name)


def _obj(p, q):
    return f"({p},{q})"


def gamma_category(n):
    """The poset category ``Gamma_n``: pairs ``(a, b)`` of points of
    ``X_n = {(p, q): p + q <= n}`` with ``a_L <= b_L`` and ``a_R >= b_R``,
    ``r = a``, ``s = b``, ``(a, b)(b, c) = (a, c)``."""
    X = [(p, q) for p in range(n + 1) for q in range(n + 1 - p)]
    rel = [(a, b) for a in X for b in X if a[0] <= b[0] and a[1] >= b[1]]
    mid = {ab: f"<{_obj(*ab[0])}{_obj(*ab[1])}>" for ab in rel}
    morphisms = [(mid[a, b], _obj(*b), _obj(*a)) for a, b in rel]
    identities = {_obj(*a): mid[a, a] for a in X}
    compose = [(mid[a, b], mid[b2, c], mid[a, c]) for a, b in rel for b2, c in rel if b2 == b]
    return FiniteCategory([_obj(*a) for a in X], morphisms, identities, compose, name=f"Gamma_{n}")


@dataclass
class ModelPair:
    """Model pair ``(E_n, F_n)``, its poset realisation ``Gamma_n`` and the
    isomorphism ``iso`` from product identifiers to ``Gamma_n`` identifiers."""

    n: int
    mp: MatchedPair
    gamma: FiniteCategory
    iso: dict
    points: dict  # object id -> (p, q)


def model_pair(n):
    """``(E_n*, F_n*)``: ``e_{p,q}: (p+1,q) -> (p,q)`` and
    ``f_{p,q}: (p,q) -> (p,q+1)``, edge ids ``e{p}_{q}`` and ``f{p}_{q}``.

    >>> M = model_pair(1)
    >>> M.gamma.n_morphisms
    6
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    X = [(p, q) for p in range(n + 1) for q in range(n + 1 - p)]
    verts = [_obj(*x) for x in X]
    e_edges = [(f"e{p}_{q}", _obj(p + 1, q), _obj(p, q)) for p, q in X if p + q < n]
    f_edges = [(f"f{p}_{q}", _obj(p, q), _obj(p, q + 1)) for p, q in X if p + q < n]
    E = path_category(verts, e_edges, name=f"E_{n}")
    F = path_category(verts, f_edges, name=f"F_{n}")
    pts = {_obj(*x): x for x in X}

    def span(cat, m):
        return pts[cat.objects[cat.dst[m]]], pts[cat.objects[cat.src[m]]]

    E_by = {span(E, m): m for m in range(E.n_morphisms)}
    F_by = {span(F, m): m for m in range(F.n_morphisms)}
    act_L, act_R = [], []
    for c in range(E.n_morphisms):
        for d in F.by_dst[E.src[c]]:
            a = pts[E.objects[E.dst[c]]]
            b = pts[F.objects[F.src[d]]]
            m = (a[0], b[1])
            act_L.append((E.morphism_ids[c], F.morphism_ids[d], F.morphism_ids[F_by[a, m]]))
            act_R.append((E.morphism_ids[c], F.morphism_ids[d], E.morphism_ids[E_by[m, b]]))
    mp = MatchedPair(E, F, act_L, act_R, name=f"model_{n}")
    G = gamma_category(n)
    Z = zs_category(mp)
    iso = {}
    for i, (d, c) in enumerate(Z.pairs):
        a = pts[F.objects[F.dst[d]]]
        b = pts[E.objects[E.src[c]]]
        iso[Z.morphism_ids[i]] = f"<{_obj(*a)}{_obj(*b)}>"
    return ModelPair(n, mp, G, iso, pts)


@dataclass
class MatchedPairMorphism:
    """Functor tables ``hL: E_n -> C`` and ``hR: F_n -> D`` (index level),
    plus the object map."""

    model: ModelPair
    target: MatchedPair
    hL: list
    hR: list
    objects: list

    def on_product(self, m):
        """Image in ``target``'s product of a model product morphism index."""
        Zm = zs_category(self.model.mp)
        Zt = zs_category(self.target)
        d, c = Zm.pairs[m]
        return Zt.pair_index[self.hR[d], self.hL[c]]

    def on_object(self, x):
        return self.objects[x]


def induced_morphism(mp, gamma, cap=None):
    """The matched-pair morphism ``h_gamma: (E_n, F_n) -> (C, D)``.

    ``gamma`` is a composable tuple of product morphism indices
    ``(d_0 c_0, ..., d_{n-1} c_{n-1})``, or an object index for ``n = 0``.
    ``h_gamma(e_{k, n-1-k}) = c_k``, ``h_gamma(f_{k, n-1-k}) = d_k`` and
    ``d_{p,q} = c_{p,q+1} |> d_{p+1,q}``, ``c_{p,q} = c_{p,q+1} <| d_{p+1,q}``.
    The result is checked to intertwine the actions.
    """
    Z = zs_category(mp)
    C, D = mp.C, mp.D
    if isinstance(gamma, int):
        model = model_pair(0)
        obj = [gamma]
        return MatchedPairMorphism(model, mp, [C.identity[gamma]], [D.identity[gamma]], obj)
    gamma = tuple(gamma)
    for a, b in zip(gamma, gamma[1:]):
        if Z.src[a] != Z.dst[b]:
            raise NotComposable("gamma is not a composable tuple",
                                witness=(Z.morphism_ids[a], Z.morphism_ids[b]))
    n = len(gamma)
    model = model_pair(n)
    E, F = model.mp.C, model.mp.D
    cval, dval = {}, {}
    for k, g in enumerate(gamma):
        d, c = Z.pairs[g]
        cval[k, n - 1 - k] = c
        dval[k, n - 1 - k] = d
    for total in range(n - 2, -1, -1):
        for p in range(total + 1):
            q = total - p
            c_up, d_right = cval[p, q + 1], dval[p + 1, q]
            dval[p, q] = mp.L[c_up, d_right]
            cval[p, q] = mp.R[c_up, d_right]
    # object map from edge ranges/sources
    pts = model.points
    obj_map = {}
    for (p, q), c in cval.items():
        obj_map[p, q] = C.dst[c]
        obj_map[p + 1, q] = C.src[c]
    for (p, q), d in dval.items():
        obj_map[p, q] = D.src[d]
        obj_map[p, q + 1] = D.dst[d]
    objects = [obj_map[pts[x]] for x in E.objects]

    def extend(cat, table, gens, target):
        out = []
        for m in range(cat.n_morphisms):
            mid = cat.morphism_ids[m]
            if cat.is_identity(m):
                out.append(target.identity[objects[cat.src[m]]])
                continue
            val = None
            for e in mid.split("."):
                p, q = (int(v) for v in e[1:].split("_"))
                g = gens[p, q]
                val = g if val is None else target.comp(val, g)
            out.append(val)
        return out

    hL = extend(E, None, cval, C)
    hR = extend(F, None, dval, D)
    h = MatchedPairMorphism(model, mp, hL, hR, objects)
    for c, d in model.mp.pairs():
        if mp.L[hL[c], hR[d]] != hR[model.mp.L[c, d]] or mp.R[hL[c], hR[d]] != hL[model.mp.R[c, d]]:
            raise ValidationError("induced morphism does not intertwine the actions",
                                  witness=(E.morphism_ids[c], F.morphism_ids[d]))
    return h


def is_left_cancellative(mp):
    """``(True, None)`` if ``f g = f h`` implies ``g = h`` in the product,
    else ``(False, (f, g, h))`` with identifiers."""
    Z = zs_category(mp)
    for f in range(Z.n_morphisms):
        seen = {}
        for g, fg in Z._comp[f].items():
            if fg in seen:
                ids = Z.morphism_ids
                return False, (ids[f], ids[seen[fg]], ids[g])
            seen[fg] = g
    return True, None


def semidirect_s3():
    """``S_3`` as ``Z/2 |><| Z/3``: ``a |> d = d^{-1}``, trivial right action."""
    from .category import cyclic_group_category

    C = cyclic_group_category(2)
    D = monoid_category_rename(3, "h")
    act_L, act_R = [], []
    for c in range(2):
        for d in range(3):
            act_L.append((f"g{c}", f"h{d}", f"h{(-d) % 3 if c else d}"))
            act_R.append((f"g{c}", f"h{d}", f"g{c}"))
    return MatchedPair(C, D, act_L, act_R, name="S3")


def monoid_category_rename(n, prefix):
    from .category import monoid_category

    names = [f"{prefix}{k}" for k in range(n)]
    return monoid_category(names, [[(a + b) % n for b in range(n)] for a in range(n)],
                           unit=names[0], name=f"Z/{n}")


def all_pairs_product(C, D):
    """Iterate over ``C x D`` index pairs (helper for exhaustive checks)."""
    return _cartesian(range(C.n_morphisms), range(D.n_morphisms))
