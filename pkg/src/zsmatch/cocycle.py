"""Circle-valued 2-cochains, written additively.

Phases live in ``Q/Z``: ``x`` stands for ``exp(2 pi i x)``, so products of
circle values become sums, complex conjugates become negatives and ``1``
becomes ``0``.  The identities used here, in that transcription:

* categorical 2-cocycle on a category (composable ``a, b, c``)::

      c(a, b) + c(ab, c) = c(b, c) + c(a, bc)

  normalised: ``c(a, b) = 0`` if ``a`` or ``b`` is an identity.
* coboundary of a 1-cochain ``b``: ``(d b)(z, y) = b(y) - b(zy) + b(z)``.
* a total 2-cochain ``phi = (phi20, phi11, phi02)`` lives on ``C^2``,
  ``C * D`` and ``D^2``.  Besides the two cocycle conditions on the factors
  the mixed conditions are, for ``(g, h, l, m)`` composable::

      phi11(h <| l, m) - phi11(h, lm) + phi11(h, l) + phi02(l, m) - phi02(h |> (l, m)) = 0
      phi20((g, h) <| l) - phi20(g, h) - phi11(h, l) + phi11(gh, l) - phi11(g, h |> l) = 0

  with ``c |> d`` in D and ``c <| d`` in C as in :mod:`zsmatch.matched_pair`.
  These are the ``"literal"`` conditions.  The ``"dual"`` conditions say
  ``phi o d^Tot = 0`` on ``Tot_3`` for the total complex built in
  :mod:`zsmatch.complexes`; the two differ by the sign of ``phi11`` (see
  :func:`flip_mixed`).
* transfer to the product: for composable ``(l g, m h)`` in ``C ⋈ D``
  (``l, m`` in D, ``g, h`` in C)::

      Psi2(phi)(l g, m h) = phi20(g <| m, h) + phi11(g, m) + phi02(l, g |> m)
"""

from dataclasses import dataclass, field
from fractions import Fraction
import cmath

from .chain_maps import matched_complexes, psi_map
from .errors import CocycleViolation, ValidationError
from .linalg import mod1, solve_mod1
from .matched_pair import zs_category

__all__ = [
    "Phase",
    "TotalCocycle",
    "categorical_cochain",
    "validate_categorical_2cocycle",
    "validate_total_2cocycle",
    "coboundary",
    "total_coboundary",
    "is_cohomologous",
    "psi2",
    "psi2_via_chain_map",
    "flip_mixed",
    "total_cocycle_basis",
]

MODES = ("literal", "dual")


@dataclass(frozen=True, order=True)
class Phase:
    """An element of ``Q/Z`` stored as a reduced fraction in ``[0, 1)``.

    >>> Phase("3/2") + Phase("3/4")
    Phase('1/4')
    >>> -Phase("1/3")
    Phase('2/3')
    """

    value: Fraction = Fraction(0)

    def __init__(self, value=0):
        if isinstance(value, Phase):
            value = value.value
        object.__setattr__(self, "value", mod1(value))

    def __add__(self, other):
        return Phase(self.value + Phase(other).value)

    __radd__ = __add__

    def __sub__(self, other):
        return Phase(self.value - Phase(other).value)

    def __rsub__(self, other):
        return Phase(other) - self

    def __neg__(self):
        return Phase(-self.value)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Phase(self.value * k)

    __rmul__ = __mul__

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Phase):
            return self.value == other.value
        if isinstance(other, (int, Fraction, str)):
            return self.value == mod1(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Phase('{self.value}')"

    def to_circle(self):
        """``exp(2 pi i x)`` as a complex number."""
        return cmath.exp(2j * cmath.pi * float(self.value))


ZERO = Phase(0)


def _get(table, key):
    return table.get(key, ZERO)


def categorical_cochain(C, entries):
    """Index-keyed table from ``[[f, g, "a/b"], ...]`` or ``{(f, g): value}``
    given by morphism identifiers."""
    items = entries.items() if hasattr(entries, "items") else ((e[:-1], e[-1]) for e in entries)
    out = {}
    for key, v in items:
        try:
            idx = tuple(C.index(x) for x in key)
        except KeyError as exc:
            raise ValidationError(f"cochain mentions unknown morphism {exc}") from None
        if len(idx) == 2 and C.src[idx[0]] != C.dst[idx[1]]:
            raise ValidationError(f"cochain entry {key} is not a composable pair", witness=key)
        out[idx] = Phase(v)
    return out


def _report(violations, raise_on_failure, what):
    rep = {"ok": not violations, "violations": violations}
    if violations and raise_on_failure:
        v = violations[0]
        raise CocycleViolation(f"{what}: {v['condition']} fails at {v['witness']}", witness=v)
    return rep


# ---------------------------------------------------------------------------
# categorical cochains
# ---------------------------------------------------------------------------

def _cat_violations(C, c, label=""):
    ids = C.morphism_ids
    comp = C._comp
    out = []
    for (f, g), v in c.items():
        if v and (C.is_identity(f) or C.is_identity(g)):
            out.append({"condition": f"{label}normalised", "witness": (ids[f], ids[g]),
                        "value": str(v)})
    for a in range(C.n_morphisms):
        for b, ab in comp[a].items():
            for x, bx in comp[b].items():
                lhs = _get(c, (a, b)) + _get(c, (ab, x))
                rhs = _get(c, (b, x)) + _get(c, (a, bx))
                if lhs != rhs:
                    out.append({"condition": f"{label}cocycle", "witness": (ids[a], ids[b], ids[x]),
                                "value": str(lhs - rhs)})
    return out


def validate_categorical_2cocycle(C, c, raise_on_failure=False):
    """Normalisation and the cocycle identity on every composable triple.

    ``c`` maps composable index pairs to phases; missing pairs are 0.
    """
    return _report(_cat_violations(C, c), raise_on_failure, "categorical 2-cocycle")


def coboundary(C, b):
    """``(d b)(z, y) = b(y) - b(zy) + b(z)`` on every composable pair."""
    for f, v in b.items():
        if v and C.is_identity(f):
            raise ValidationError("1-cochain must vanish on identities",
                                  witness=C.morphism_ids[f])
    out = {}
    for z in range(C.n_morphisms):
        for y, zy in C._comp[z].items():
            v = _get(b, y) - _get(b, zy) + _get(b, z)
            if v:
                out[z, y] = v
    return out


def is_cohomologous(C, c1, c2):
    """Find a normalised ``b`` with ``c1 + d b = c2`` over ``Q/Z``.

    Returns ``{"cohomologous": bool, "b": {f: Phase} or None}``.  When no
    ``b`` exists the linear system over ``Q/Z`` is infeasible, which the Smith
    form certifies.
    """
    unknowns = [f for f in range(C.n_morphisms) if not C.is_identity(f)]
    col = {f: j for j, f in enumerate(unknowns)}
    A, rhs = [], []
    for z in range(C.n_morphisms):
        for y, zy in C._comp[z].items():
            row = [0] * len(unknowns)
            for f, s in ((y, 1), (zy, -1), (z, 1)):
                if f in col:
                    row[col[f]] += s
            A.append(row)
            rhs.append((_get(c2, (z, y)) - _get(c1, (z, y))).value)
    if not unknowns:
        ok = not any(rhs)
        return {"cohomologous": ok, "b": {} if ok else None}
    sol = solve_mod1(A, rhs)
    if sol is None:
        return {"cohomologous": False, "b": None}
    return {"cohomologous": True, "b": {f: Phase(sol[col[f]]) for f in unknowns}}


# ---------------------------------------------------------------------------
# total cochains
# ---------------------------------------------------------------------------

@dataclass
class TotalCocycle:
    """Tables keyed by index pairs: ``phi20[g, h]`` (C, C), ``phi11[c, d]``
    (C, D with ``s(c) = r(d)``) and ``phi02[d1, d2]`` (D, D)."""

    phi20: dict = field(default_factory=dict)
    phi11: dict = field(default_factory=dict)
    phi02: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, mp, data):
        C, D = mp.C, mp.D
        out = cls()
        for name, (A, B) in (("phi_20", (C, C)), ("phi_11", (C, D)), ("phi_02", (D, D))):
            table = getattr(out, name.replace("_", ""))
            for entry in data.get(name, []):
                try:
                    x, y, v = entry
                    key = (A.index(x), B.index(y))
                except (KeyError, ValueError, TypeError) as exc:
                    raise ValidationError(f"bad {name} entry {entry!r}: {exc}") from None
                if A.src[key[0]] != B.dst[key[1]]:
                    raise ValidationError(f"{name} entry {entry!r} is not composable", witness=entry)
                table[key] = Phase(v)
        return out

    def to_json(self, mp):
        C, D = mp.C, mp.D

        def rows(table, A, B):
            return [[A.morphism_ids[x], B.morphism_ids[y], str(v)]
                    for (x, y), v in sorted(table.items()) if v]
        return {"phi_20": rows(self.phi20, C, C), "phi_11": rows(self.phi11, C, D),
                "phi_02": rows(self.phi02, D, D)}

    def scaled(self, k):
        return TotalCocycle({a: v * k for a, v in self.phi20.items()},
                            {a: v * k for a, v in self.phi11.items()},
                            {a: v * k for a, v in self.phi02.items()})

    def __add__(self, other):
        def add(a, b):
            out = dict(a)
            for k, v in b.items():
                out[k] = _get(out, k) + v
            return out
        return TotalCocycle(add(self.phi20, other.phi20), add(self.phi11, other.phi11),
                            add(self.phi02, other.phi02))


def flip_mixed(phi):
    """``(phi20, -phi11, phi02)``: converts between the two sign conventions."""
    return TotalCocycle(dict(phi.phi20), {k: -v for k, v in phi.phi11.items()}, dict(phi.phi02))


def _label(mp, part, key):
    """Basis label of the total complex for a table entry."""
    C, D = mp.C, mp.D
    x, y = key
    if part == "phi20":
        return (x, y), (), C.src[y]
    if part == "phi11":
        return (x,), (y,), C.src[x]
    return (), (x, y), D.dst[x]


def _as_vector(mp, phi, tot):
    idx = tot.index(2)
    vec = [ZERO] * tot.dim(2)
    for part in ("phi20", "phi11", "phi02"):
        for key, v in getattr(phi, part).items():
            vec[idx[_label(mp, part, key)]] = v
    return vec


def _from_vector(mp, vec, tot):
    phi = TotalCocycle()
    for lab, v in zip(tot.basis(2), vec):
        ct, dt, _x = lab
        if not v:
            continue
        if len(ct) == 2:
            phi.phi20[ct] = v
        elif len(ct) == 1:
            phi.phi11[ct[0], dt[0]] = v
        else:
            phi.phi02[dt] = v
    return phi


def _literal_mixed(mp, phi):
    C, D, L, R = mp.C, mp.D, mp.L, mp.R
    cid, did = C.morphism_ids, D.morphism_ids
    p20, p11, p02 = phi.phi20, phi.phi11, phi.phi02
    out = []
    # (h, l, m) in C * D * D
    for h in range(C.n_morphisms):
        for l in D.by_dst[C.src[h]]:
            for m, lm in D._comp[l].items():
                hl = mp.l_tuple(h, (l, m))
                v = (_get(p11, (R[h, l], m)) - _get(p11, (h, lm)) + _get(p11, (h, l))
                     + _get(p02, (l, m)) - _get(p02, hl))
                if v:
                    out.append({"condition": "mixed (C*D*D)", "witness": (cid[h], did[l], did[m]),
                                "value": str(v)})
    # (g, h, l) in C * C * D
    for g in range(C.n_morphisms):
        for h, gh in C._comp[g].items():
            for l in D.by_dst[C.src[h]]:
                v = (_get(p20, mp.r_tuple((g, h), l)) - _get(p20, (g, h)) - _get(p11, (h, l))
                     + _get(p11, (gh, l)) - _get(p11, (g, L[h, l])))
                if v:
                    out.append({"condition": "mixed (C*C*D)", "witness": (cid[g], cid[h], did[l]),
                                "value": str(v)})
    return out


def _normalisation_11(mp, phi):
    C, D = mp.C, mp.D
    out = []
    for (c, d), v in phi.phi11.items():
        if v and (C.is_identity(c) or D.is_identity(d)):
            out.append({"condition": "phi11 normalised",
                        "witness": (C.morphism_ids[c], D.morphism_ids[d]), "value": str(v)})
    return out


def _dual_violations(mp, phi, cap=None):
    mc = matched_complexes(mp, 2, cap)
    tot = mc.total
    vec = _as_vector(mp, phi, tot)
    bd = tot.boundary(2)
    out = []
    for j, col in enumerate(bd.cols):
        v = sum((vec[i] * int(a) for i, a in col.items()), ZERO)
        if v:
            out.append({"condition": "phi o d^Tot = 0", "witness": tot.label(3, j),
                        "value": str(v)})
    return out


def _total_violations(mp, phi, mode, cap):
    viol = _cat_violations(mp.C, phi.phi20, "phi20 ")
    viol += _cat_violations(mp.D, phi.phi02, "phi02 ")
    viol += _normalisation_11(mp, phi)
    if mode == "literal":
        viol += _literal_mixed(mp, phi)
    else:
        viol += _dual_violations(mp, phi, cap)
    return viol


def validate_total_2cocycle(mp, phi, mode="literal", raise_on_failure=False, cap=None):
    """Check a total 2-cochain.

    Both modes check that ``phi20`` and ``phi02`` are normalised categorical
    cocycles and that ``phi11`` vanishes when either entry is an identity.
    ``mode="literal"`` then checks the two mixed identities of the module
    docstring as written; ``mode="dual"`` checks ``phi o d^Tot = 0`` on all
    of ``Tot_3``.  The report also says whether the other mode accepts
    ``phi``, so a disagreement is visible rather than hidden.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    viol = _total_violations(mp, phi, mode, cap)
    other = "dual" if mode == "literal" else "literal"
    rep = _report(viol, raise_on_failure, f"total 2-cocycle ({mode})")
    rep["mode"] = mode
    rep["other_mode"] = other
    rep["other_mode_ok"] = not _total_violations(mp, phi, other, cap)
    return rep


def total_coboundary(mp, b_C, b_D, cap=None):
    """``b o d^Tot`` for a 1-cochain given on C (``b_C``) and D (``b_D``)."""
    mc = matched_complexes(mp, 2, cap)
    tot = mc.total
    idx1 = tot.index(1)
    b = [ZERO] * tot.dim(1)
    for c, v in b_C.items():
        b[idx1[(c,), (), mp.C.src[c]]] = Phase(v)
    for d, v in b_D.items():
        b[idx1[(), (d,), mp.D.dst[d]]] = Phase(v)
    bd = tot.boundary(1)
    vec = [sum((b[i] * int(a) for i, a in col.items()), ZERO) for col in bd.cols]
    return _from_vector(mp, vec, tot)


def total_cocycle_basis(mp, mode="dual", cap=None):
    """Generators of the normalised total 2-cocycles with values in ``Q/Z``.

    Returns ``[(order, make)]``: ``make(t)`` is the cocycle ``t * v`` for a
    fixed integer direction ``v``, valid for ``t`` in ``(1/order) Z`` (any
    rational ``t`` when ``order == 0``).  Every cocycle is a sum of such
    terms.  Read off the Smith form of the dual of ``d^Tot``.
    """
    from .linalg import smith_normal_form

    mc = matched_complexes(mp, 2, cap)
    tot = mc.total
    basis = tot.basis(2)
    keep = [i for i, (ct, dt, _x) in enumerate(basis)
            if not any(mp.C.is_identity(c) for c in ct) and not any(mp.D.is_identity(d) for d in dt)]
    if not keep:
        return []
    rows = tot.boundary(2).row_dicts()
    A = [[rows[i].get(j, 0) for i in keep] for j in range(tot.dim(3))] or [[0] * len(keep)]
    snf = smith_normal_form(A)
    V = snf._V
    n = len(keep)
    out = []
    for j in range(n):
        d = snf.diagonal[j] if j < snf.rank else 0
        if d == 1:
            continue
        direction = [(keep[r], V[r][j]) for r in range(n) if V[r][j]]

        def make(t, direction=direction):
            vec = [ZERO] * len(basis)
            for i, a in direction:
                vec[i] = Phase(Fraction(t) * a)
            phi = _from_vector(mp, vec, tot)
            return flip_mixed(phi) if mode == "literal" else phi
        out.append((d, make))
    return out


# ---------------------------------------------------------------------------
# transfer to the product category
# ---------------------------------------------------------------------------

def psi2(mp, phi, convention="dual"):
    """Categorical 2-cochain on ``C ⋈ D`` keyed by index pairs of the product.

    The formula is applied to ``phi`` as given when ``convention="dual"``.
    A cochain in the ``"literal"`` convention is first passed through
    :func:`flip_mixed`; without that its transfer is in general not a cocycle.
    """
    if convention not in MODES:
        raise ValueError(f"convention must be one of {MODES}")
    if convention == "literal":
        phi = flip_mixed(phi)
    Z = zs_category(mp)
    L, R = mp.L, mp.R
    out = {}
    for i, (l, g) in enumerate(Z.pairs):
        for j in Z._comp[i]:
            m, h = Z.pairs[j]
            v = _get(phi.phi20, (R[g, m], h)) + _get(phi.phi11, (g, m)) + _get(phi.phi02, (l, L[g, m]))
            if v:
                out[i, j] = v
    return out


def psi2_via_chain_map(mp, phi, cap=None):
    """``phi o Psi_2`` computed from the chain map matrices (cross-check)."""
    mc = matched_complexes(mp, 2, cap)
    Psi = psi_map(mc, 2)
    tot, bow = mc.total, mc.bowtie
    vec = _as_vector(mp, phi, tot)
    M = Psi.matrix(2)
    out = {}
    for j, col in enumerate(M.cols):
        v = sum((vec[i] * int(a) for i, a in col.items()), ZERO)
        if v:
            out[bow.basis(2)[j]] = v
    return out
