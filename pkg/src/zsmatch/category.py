"""Finite small categories.

Conventions used throughout the package:

* ``compose(f, g)`` means "f after g" and is defined exactly when
  ``src(f) == dst(g)``.  In path notation this is the product ``fg`` of a
  composable pair with ``s(f) = r(g)``.
* ``r`` is the range (``dst``) and ``s`` the source (``src``).
* Internally morphisms and objects are referred to by their position in the
  input lists; identifiers are strings and only matter at the boundary.
* A composable k-tuple ``(c1, ..., ck)`` satisfies ``s(ci) = r(c(i+1))``.
  Tuples are listed in lexicographic order of morphism indices.  Degree 0
  is the object set, kept distinct from 1-tuples of identities.
"""

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from itertools import product as _cartesian

from .config import resolve_cap
from .errors import (
    AssociativityViolation,
    CompositionIllTyped,
    CompositionUndefined,
    CyclicGraph,
    DegreeTooLarge,
    MissingIdentity,
    NoUnit,
    NotAssociative,
    ValidationError,
)

__all__ = [
    "FiniteCategory",
    "ComposableTuple",
    "validate_category",
    "composable_tuples",
    "path_category",
    "discrete_category",
    "monoid_category",
    "product_category",
    "cyclic_group_category",
]


def _morphism_record(m):
    if isinstance(m, dict):
        try:
            return str(m["id"]), str(m["src"]), str(m["dst"])
        except KeyError as exc:
            raise ValidationError(f"morphism record lacks field {exc}") from None
    mid, src, dst = m
    return str(mid), str(src), str(dst)


class FiniteCategory:
    """A validated finite category.

    Parameters
    ----------
    objects : sequence of str
    morphisms : sequence of ``(id, src, dst)`` or ``{"id", "src", "dst"}``
    identities : mapping object id -> morphism id
    compose : mapping ``(f, g) -> fg`` or iterable of ``(f, g, fg)`` triples,
        covering exactly the pairs with ``src(f) == dst(g)``.

    The constructor runs the full validation (identity laws, typing,
    totality on composable pairs, associativity); a constructed instance is
    never invalid.

    >>> C = monoid_category(["e", "a"], [["e", "a"], ["a", "e"]])
    >>> C.n_morphisms, len(C.tuples(3))
    (2, 8)
    """

    def __init__(self, objects, morphisms, identities, compose, name=None):
        self.name = name
        self.objects = tuple(str(x) for x in objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValidationError("duplicate object identifiers")
        self._obj_index = {x: i for i, x in enumerate(self.objects)}

        recs = [_morphism_record(m) for m in morphisms]
        self.morphism_ids = tuple(r[0] for r in recs)
        if len(set(self.morphism_ids)) != len(self.morphism_ids):
            raise ValidationError("duplicate morphism identifiers")
        self._mor_index = {m: i for i, m in enumerate(self.morphism_ids)}
        try:
            self.src = tuple(self._obj_index[r[1]] for r in recs)
            self.dst = tuple(self._obj_index[r[2]] for r in recs)
        except KeyError as exc:
            raise ValidationError(f"morphism refers to unknown object {exc}") from None

        ident = []
        for x in self.objects:
            if x not in identities:
                raise MissingIdentity(f"object {x!r} has no identity", witness=x)
            mid = str(identities[x])
            if mid not in self._mor_index:
                raise MissingIdentity(f"identity {mid!r} of {x!r} is not a morphism", witness=x)
            i = self._mor_index[mid]
            xi = self._obj_index[x]
            if self.src[i] != xi or self.dst[i] != xi:
                raise MissingIdentity(f"identity {mid!r} is not a loop at {x!r}", witness=x)
            ident.append(i)
        self.identity = tuple(ident)
        self._is_id = frozenset(ident)

        by_dst = [[] for _ in self.objects]
        by_src = [[] for _ in self.objects]
        for i in range(len(recs)):
            by_dst[self.dst[i]].append(i)
            by_src[self.src[i]].append(i)
        self.by_dst = tuple(tuple(v) for v in by_dst)
        self.by_src = tuple(tuple(v) for v in by_src)

        self._comp = [dict() for _ in recs]
        if hasattr(compose, "items"):
            items = [(k[0], k[1], v) for k, v in compose.items()]
        else:
            items = [tuple(t) for t in compose]
        for item in items:
            if len(item) != 3:
                raise CompositionIllTyped(f"composition entry {item!r} is not a triple", witness=item)
            f, g, h = item
            try:
                fi, gi, hi = (self._mor_index[str(x)] for x in (f, g, h))
            except KeyError as exc:
                raise CompositionIllTyped(f"composition mentions unknown morphism {exc}",
                                          witness=(f, g, h)) from None
            if self.src[fi] != self.dst[gi]:
                raise CompositionIllTyped(f"compose({f},{g}) given but src({f}) != dst({g})",
                                          witness=(f, g))
            if self.dst[hi] != self.dst[fi] or self.src[hi] != self.src[gi]:
                raise CompositionIllTyped(f"compose({f},{g}) = {h} has the wrong type",
                                          witness=(f, g, h))
            old = self._comp[fi].get(gi)
            if old is not None and old != hi:
                raise CompositionIllTyped(f"compose({f},{g}) given twice", witness=(f, g))
            self._comp[fi][gi] = hi
        self._check()
        self._tuple_cache = {}

    # -- validation ---------------------------------------------------------
    def _check(self):
        ids = self.morphism_ids
        for f in range(self.n_morphisms):
            for g in self.by_dst[self.src[f]]:
                if g not in self._comp[f]:
                    raise CompositionUndefined(
                        f"no composite for composable pair ({ids[f]}, {ids[g]})",
                        witness=(ids[f], ids[g]))
        for f in range(self.n_morphisms):
            if self._comp[f][self.identity[self.src[f]]] != f:
                raise MissingIdentity(f"right identity law fails at {ids[f]}", witness=ids[f])
            if self._comp[self.identity[self.dst[f]]][f] != f:
                raise MissingIdentity(f"left identity law fails at {ids[f]}", witness=ids[f])
        comp = self._comp
        for f in range(self.n_morphisms):
            cf = comp[f]
            for g, fg in cf.items():
                cg = comp[g]
                cfg = comp[fg]
                for h, gh in cg.items():
                    if cfg[h] != cf[gh]:
                        w = (ids[f], ids[g], ids[h])
                        raise AssociativityViolation(
                            f"(fg)h != f(gh) for (f,g,h) = {w}", witness=w)

    # -- basic access -------------------------------------------------------
    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.morphism_ids)

    def index(self, mid):
        """Position of the morphism called ``mid``."""
        return self._mor_index[str(mid)]

    def obj_index(self, oid):
        return self._obj_index[str(oid)]

    def r(self, f):
        return self.dst[f]

    def s(self, f):
        return self.src[f]

    def is_identity(self, f):
        return f in self._is_id

    def comp(self, f, g):
        """Index of ``f`` after ``g``; ``KeyError`` if not composable."""
        return self._comp[f][g]

    def compose(self, f, g):
        """Composite by identifier (``f`` after ``g``)."""
        return self.morphism_ids[self._comp[self.index(f)][self.index(g)]]

    def comp_many(self, fs):
        """Composite of a nonempty index sequence ``(f1, ..., fk)``."""
        it = iter(fs)
        acc = next(it)
        for g in it:
            acc = self._comp[acc][g]
        return acc

    def composable_with(self, f):
        """Indices ``g`` with ``compose(f, g)`` defined."""
        return self.by_dst[self.src[f]]

    # -- tuples -------------------------------------------------------------
    def count_tuples(self, k):
        """``|C^k|`` without enumerating."""
        if k == 0:
            return self.n_objects
        # n[x] = number of (k)-tuples whose last entry has source x
        n = [len(v) for v in self.by_src]
        for _ in range(k - 1):
            n = [sum(n[self.dst[g]] for g in self.by_src[x]) for x in range(self.n_objects)]
        return sum(n)

    def tuples(self, k, cap=None):
        """``C^k`` in canonical order: object indices for k = 0, else tuples."""
        if k < 0:
            raise ValueError("degree must be nonnegative")
        if k in self._tuple_cache:
            return self._tuple_cache[k]
        if k == 0:
            out = list(range(self.n_objects))
        else:
            cap = resolve_cap(cap)
            total = self.count_tuples(k)
            if total > cap:
                raise DegreeTooLarge(f"|C^{k}| = {total} exceeds cap {cap}", witness=(k, total))
            if k == 1:
                out = [(f,) for f in range(self.n_morphisms)]
            else:
                prev = self.tuples(k - 1, cap)
                by_dst, src = self.by_dst, self.src
                out = [t + (g,) for t in prev for g in by_dst[src[t[-1]]]]
        self._tuple_cache[k] = out
        return out

    def tuple_r(self, t):
        """Range of a tuple (object index for degree 0)."""
        return t if isinstance(t, int) else self.dst[t[0]]

    def tuple_s(self, t):
        return t if isinstance(t, int) else self.src[t[-1]]

    # -- serialisation ------------------------------------------------------
    def to_dict(self):
        ids = self.morphism_ids
        return {
            "objects": list(self.objects),
            "morphisms": [{"id": ids[i], "src": self.objects[self.src[i]],
                           "dst": self.objects[self.dst[i]]} for i in range(self.n_morphisms)],
            "identities": {x: ids[self.identity[i]] for i, x in enumerate(self.objects)},
            "compose": [[ids[f], ids[g], ids[h]]
                        for f in range(self.n_morphisms)
                        for g, h in sorted(self._comp[f].items())],
        }

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.objects, self.morphism_ids))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteCategory{label}: {self.n_objects} objects, {self.n_morphisms} morphisms>"


@dataclass(frozen=True)
class ComposableTuple:
    """A composable tuple of a category; ``entries == ()`` means an object."""

    category: FiniteCategory
    entries: tuple
    obj: int = None

    @property
    def k(self):
        return len(self.entries)

    @property
    def r(self):
        return self.obj if not self.entries else self.category.dst[self.entries[0]]

    @property
    def s(self):
        return self.obj if not self.entries else self.category.src[self.entries[-1]]

    @property
    def ids(self):
        if not self.entries:
            return (self.category.objects[self.obj],)
        return tuple(self.category.morphism_ids[i] for i in self.entries)

    def __repr__(self):
        return "[" + ", ".join(self.ids) + "]"


def validate_category(raw, name=None):
    """Build a :class:`FiniteCategory` from the JSON-shaped dictionary."""
    if isinstance(raw, FiniteCategory):
        return raw
    try:
        objects = raw["objects"]
        morphisms = raw["morphisms"]
        identities = raw["identities"]
        compose = raw["compose"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"category description lacks {exc}") from None
    return FiniteCategory(objects, morphisms, identities, compose, name=name or raw.get("name"))


def composable_tuples(C, k, cap=None):
    """``C^k`` as :class:`ComposableTuple` records in canonical order."""
    ts = C.tuples(k, cap)
    if k == 0:
        return [ComposableTuple(C, (), x) for x in ts]
    return [ComposableTuple(C, t) for t in ts]


def discrete_category(objects, name=None):
    objects = [str(x) for x in objects]
    return FiniteCategory(objects, [(x, x, x) for x in objects], {x: x for x in objects},
                          [(x, x, x) for x in objects], name=name or "discrete")


def _edge_record(e):
    if isinstance(e, dict):
        return str(e["id"]), str(e["src"]), str(e["dst"])
    return tuple(str(v) for v in e[:3])


def path_category(vertices, edges, sep=".", name=None):
    """Path category of a finite acyclic directed graph.

    Edges are ``(id, src, dst)``.  A path ``e1 e2 ... ek`` (with
    ``s(ei) = r(e(i+1))``) gets the identifier ``"e1.e2...ek"``; the vertex
    path at ``v`` is called ``v`` (or ``"1_v"`` if ``v`` clashes with an edge).

    >>> G2 = path_category(["0", "1", "2"], [("e0", "1", "0"), ("e1", "2", "1")])
    >>> G2.n_morphisms
    6
    """
    vertices = [str(v) for v in vertices]
    edges = [_edge_record(e) for e in edges]
    vset = set(vertices)
    for eid, s, r in edges:
        if s not in vset or r not in vset:
            raise ValidationError(f"edge {eid!r} mentions an unknown vertex", witness=eid)
    deps = {v: set() for v in vertices}
    for _eid, s, r in edges:
        deps[r].add(s)
    try:
        list(TopologicalSorter(deps).static_order())
    except CycleError as exc:
        raise CyclicGraph(f"graph has a cycle through {exc.args[1]}", witness=exc.args[1]) from None

    edge_ids = {e[0] for e in edges}
    vid = {v: (v if v not in edge_ids else f"1_{v}") for v in vertices}
    out_of = {v: [] for v in vertices}  # edges e with r(e) = v, i.e. paths continue from v
    for e in edges:
        out_of[e[2]].append(e)

    # paths as edge tuples, listed by DFS from each vertex (range first)
    paths = []

    def extend(path, at):
        for e in out_of[at]:
            new = path + (e,)
            paths.append(new)
            extend(new, e[1])

    for v in vertices:
        extend((), v)

    morphisms = [(vid[v], v, v) for v in vertices]
    pid = {}
    for p in paths:
        mid = sep.join(e[0] for e in p)
        pid[p] = mid
        morphisms.append((mid, p[-1][1], p[0][2]))
    compose = []
    for v in vertices:
        compose.append((vid[v], vid[v], vid[v]))
    for p in paths:
        compose.append((pid[p], vid[p[-1][1]], pid[p]))
        compose.append((vid[p[0][2]], pid[p], pid[p]))
    for p in paths:
        for q in paths:
            if p[-1][1] == q[0][2]:
                compose.append((pid[p], pid[q], pid[p + q]))
    return FiniteCategory(vertices, morphisms, {v: vid[v] for v in vertices}, compose,
                          name=name or "path")


def monoid_category(elements, table, unit=None, obj="*", name=None):
    """One-object category of a finite monoid.

    ``table[i][j]`` is the product ``elements[i] * elements[j]`` given as an
    element name or index.  ``unit`` defaults to the unique two-sided unit.
    """
    elements = [str(x) for x in elements]
    n = len(elements)
    pos = {x: i for i, x in enumerate(elements)}
    try:
        mul = [[pos[str(table[i][j])] if str(table[i][j]) in pos else int(table[i][j])
                for j in range(n)] for i in range(n)]
    except (IndexError, ValueError, TypeError):
        raise ValidationError("monoid table is not total over the listed elements") from None
    if any(not 0 <= v < n for row in mul for v in row):
        raise ValidationError("monoid table has entries outside the element list")
    for a, b, c in _cartesian(range(n), repeat=3):
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            w = (elements[a], elements[b], elements[c])
            raise NotAssociative(f"(ab)c != a(bc) for {w}", witness=w)
    units = [e for e in range(n) if all(mul[e][x] == x == mul[x][e] for x in range(n))]
    if unit is None:
        if not units:
            raise NoUnit("monoid table has no two-sided unit")
        u = units[0]
    else:
        u = pos.get(str(unit))
        if u is None or u not in units:
            raise NoUnit(f"{unit!r} is not a two-sided unit", witness=unit)
    compose = [(elements[a], elements[b], elements[mul[a][b]]) for a in range(n) for b in range(n)]
    return FiniteCategory([obj], [(x, obj, obj) for x in elements], {obj: elements[u]}, compose,
                          name=name or "monoid")


def cyclic_group_category(n, obj="*"):
    """``Z/n`` as a one-object category; morphism ``"gk"`` is ``k mod n``."""
    names = [f"g{k}" for k in range(n)]
    return monoid_category(names, [[(a + b) % n for b in range(n)] for a in range(n)],
                           unit="g0", obj=obj, name=f"Z/{n}")


def product_category(A, B, name=None):
    """Componentwise product; ids are ``"(a,b)"``."""
    def pair(x, y):
        return f"({x},{y})"

    objects = [pair(x, y) for x in A.objects for y in B.objects]
    morphisms = []
    for f in range(A.n_morphisms):
        for g in range(B.n_morphisms):
            morphisms.append((pair(A.morphism_ids[f], B.morphism_ids[g]),
                              pair(A.objects[A.src[f]], B.objects[B.src[g]]),
                              pair(A.objects[A.dst[f]], B.objects[B.dst[g]])))
    identities = {pair(A.objects[x], B.objects[y]):
                  pair(A.morphism_ids[A.identity[x]], B.morphism_ids[B.identity[y]])
                  for x in range(A.n_objects) for y in range(B.n_objects)}
    compose = []
    for f1 in range(A.n_morphisms):
        for f2, f12 in A._comp[f1].items():
            for g1 in range(B.n_morphisms):
                for g2, g12 in B._comp[g1].items():
                    compose.append((pair(A.morphism_ids[f1], B.morphism_ids[g1]),
                                    pair(A.morphism_ids[f2], B.morphism_ids[g2]),
                                    pair(A.morphism_ids[f12], B.morphism_ids[g12])))
    return FiniteCategory(objects, morphisms, identities, compose, name=name or "product")
