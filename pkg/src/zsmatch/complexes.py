"""Chain complexes of categories and matched pairs.

Labels
------
* categorical complex: an object index in degree 0, a tuple of morphism
  indices in degree k >= 1;
* matched double complex: ``(ct, dt, x)`` with ``ct`` in ``C^p``, ``dt`` in
  ``D^q`` (index tuples, possibly empty) and ``x`` the junction object
  ``s(ct) = r(dt)``, which is the only data left when ``p = q = 0``.

Face maps of a k-tuple (k >= 2): ``0`` drops the first entry, ``0 < i < k``
composes entries ``i-1`` and ``i``, ``k`` drops the last.  On a single
morphism ``c`` the faces are ``s(c)`` and ``r(c)``, so ``d[c] = [s(c)] - [r(c)]``.
Degeneracy ``i`` inserts an identity so that it sits at position ``i``.

In the double complex the horizontal face ``p+1`` pushes the last C-entry
through the whole D-tuple with the left action, the vertical face ``0``
pushes the first D-entry through the whole C-tuple with the right action,
and every vertical face and degeneracy on ``C_{p,*}`` carries ``(-1)^p``.
"""

from .config import resolve_cap
from .errors import DegreeTooLarge, IndexOutOfRange, ShapeMismatch, ValidationError
from .linalg import IntMatrix, block_matrix

__all__ = [
    "ChainComplex",
    "DoubleComplex",
    "categorical_complex",
    "matched_double_complex",
    "diagonal_complex",
    "total_complex",
    "face_map",
    "degeneracy_map",
    "categorical_face",
    "categorical_degeneracy",
]


def _rule_matrix(src, tgt_index, rule):
    """Matrix whose column j is ``rule(src[j])`` (a list of (label, coef))."""
    cols = []
    for lab in src:
        col = {}
        for t, v in rule(lab):
            i = tgt_index[t]
            nv = col.get(i, 0) + v
            if nv:
                col[i] = nv
            else:
                col.pop(i, None)
        cols.append(col)
    return IntMatrix(len(tgt_index), len(src), cols)


class ChainComplex:
    """Bases per degree ``0..max_degree`` and boundaries ``d_k: C_{k+1} -> C_k``.

    ``d_{k} d_{k+1} = 0`` is checked on construction unless ``check=False``.
    """

    def __init__(self, bases, boundaries, name=None, label_str=None, check=True):
        self.bases = [list(b) for b in bases]
        self.boundaries = list(boundaries)
        self.name = name
        self._label_str = label_str or str
        if len(self.boundaries) != len(self.bases) - 1:
            raise ShapeMismatch("need one boundary between each pair of adjacent degrees")
        for k, d in enumerate(self.boundaries):
            if d.shape != (len(self.bases[k]), len(self.bases[k + 1])):
                raise ShapeMismatch(f"d_{k} has shape {d.shape}, expected "
                                    f"{(len(self.bases[k]), len(self.bases[k + 1]))}")
        self._index = [None] * len(self.bases)
        if check:
            self.check()

    @property
    def max_degree(self):
        return len(self.bases) - 1

    def dim(self, k):
        return len(self.bases[k])

    def basis(self, k):
        return self.bases[k]

    def boundary(self, k):
        return self.boundaries[k]

    def index(self, k):
        if self._index[k] is None:
            self._index[k] = {b: i for i, b in enumerate(self.bases[k])}
        return self._index[k]

    def label(self, k, i):
        return self._label_str(self.bases[k][i])

    def check(self):
        for k in range(len(self.boundaries) - 1):
            prod = self.boundaries[k] @ self.boundaries[k + 1]
            if not prod.is_zero():
                _i, j = prod.first_nonzero()
                raise ValidationError(f"d_{k} d_{k + 1} != 0 at {self.label(k + 2, j)}",
                                      witness=(k, self.label(k + 2, j)))

    def truncate(self, M):
        return ChainComplex(self.bases[:M + 1], self.boundaries[:M], self.name,
                            self._label_str, check=False)

    def to_json(self):
        return {
            "name": self.name,
            "bases": [[self._label_str(b) for b in basis] for basis in self.bases],
            "boundaries": [d.to_json() for d in self.boundaries],
        }

    def __repr__(self):
        return f"<ChainComplex {self.name or ''} dims={[len(b) for b in self.bases]}>"


# ---------------------------------------------------------------------------
# categorical complex
# ---------------------------------------------------------------------------

def _cat_face(C, t, i):
    k = 1 if isinstance(t, int) else len(t)
    if isinstance(t, int) or not 0 <= i <= k:
        raise IndexOutOfRange(f"face {i} of a degree-{k} tuple")
    if k == 1:
        return C.src[t[0]] if i == 0 else C.dst[t[0]]
    if i == 0:
        return t[1:]
    if i == k:
        return t[:-1]
    return t[:i - 1] + (C._comp[t[i - 1]][t[i]],) + t[i + 1:]


def _cat_degen(C, t, i):
    if isinstance(t, int):
        if i != 0:
            raise IndexOutOfRange(f"degeneracy {i} of an object")
        return (C.identity[t],)
    k = len(t)
    if not 0 <= i <= k:
        raise IndexOutOfRange(f"degeneracy {i} of a degree-{k} tuple")
    x = C.dst[t[0]] if i == 0 else C.src[t[i - 1]]
    return t[:i] + (C.identity[x],) + t[i:]


def _cat_labeller(C):
    ids, objs = C.morphism_ids, C.objects

    def f(t):
        if isinstance(t, int):
            return objs[t]
        return "[" + ",".join(ids[m] for m in t) + "]"
    return f


def categorical_face(C, k, i, cap=None):
    """``∂^i: C_k -> C_{k-1}`` for ``k >= 1``, ``0 <= i <= k``."""
    if k < 1 or not 0 <= i <= k:
        raise IndexOutOfRange(f"no face {i} out of degree {k}")
    src = C.tuples(k, cap)
    tgt = {t: j for j, t in enumerate(C.tuples(k - 1, cap))}
    return _rule_matrix(src, tgt, lambda t: [(_cat_face(C, t, i), 1)])


def categorical_degeneracy(C, k, i, cap=None):
    """``σ^i: C_k -> C_{k+1}`` for ``0 <= i <= k``."""
    if k < 0 or not 0 <= i <= k:
        raise IndexOutOfRange(f"no degeneracy {i} out of degree {k}")
    src = C.tuples(k, cap)
    tgt = {t: j for j, t in enumerate(C.tuples(k + 1, cap))}
    return _rule_matrix(src, tgt, lambda t: [(_cat_degen(C, t, i), 1)])


def categorical_complex(C, K, cap=None):
    """Degrees ``0..K+1`` of the categorical complex of ``C``.

    >>> from zsmatch.category import cyclic_group_category
    >>> cx = categorical_complex(cyclic_group_category(2), 1)
    >>> cx.boundary(1).to_dense()[1]   # coefficient of [a] in d[a, a]
    [0, 0, 0, 2]
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    bases = [C.tuples(k, cap) for k in range(K + 2)]
    bounds = []
    for k in range(K + 1):
        tgt = {t: j for j, t in enumerate(bases[k])}
        n = k + 1

        def rule(t, n=n):
            return [(_cat_face(C, t, i), -1 if i % 2 else 1) for i in range(n + 1)]
        bounds.append(_rule_matrix(bases[k + 1], tgt, rule))
    return ChainComplex(bases, bounds, name=f"C({C.name or 'C'})", label_str=_cat_labeller(C))


# ---------------------------------------------------------------------------
# matched double complex
# ---------------------------------------------------------------------------

def _tuples_by_end(cat, k, cap, end):
    """Group ``cat^k`` (k >= 1) by range (``end='r'``) or source."""
    out = {}
    for t in cat.tuples(k, cap):
        key = cat.dst[t[0]] if end == "r" else cat.src[t[-1]]
        out.setdefault(key, []).append(t)
    return out


def _counts_by_end(cat, k, end):
    """Number of k-tuples per range/source object, without enumeration."""
    n = cat.n_objects
    if k == 0:
        return [1] * n
    # a[x]: tuples of length j ending (last source) at x / starting at x
    if end == "s":
        a = [len(v) for v in cat.by_src]
        for _ in range(k - 1):
            a = [sum(a[cat.dst[g]] for g in cat.by_src[x]) for x in range(n)]
    else:
        a = [len(v) for v in cat.by_dst]
        for _ in range(k - 1):
            a = [sum(a[cat.src[g]] for g in cat.by_dst[x]) for x in range(n)]
    return a


class DoubleComplex:
    """The matched double complex ``C_{p,q} = Z(C^p * D^q)``.

    Bidegrees are materialised on demand and memoised.  ``d_h(p, q)`` maps
    ``C_{p+1,q} -> C_{p,q}`` and ``d_v(p, q)`` maps ``C_{p,q+1} -> C_{p,q}``.
    ``max_total`` only records the range the constructor checked.
    """

    def __init__(self, mp, K=None, cap=None, check=True):
        self.mp = mp
        self.C, self.D = mp.C, mp.D
        self.cap = resolve_cap(cap)
        self._bases = {}
        self._index = {}
        self._dh = {}
        self._dv = {}
        self.max_total = K + 1 if K is not None else None
        if check and K is not None:
            self.check(K + 1)

    # -- bases ---------------------------------------------------------------
    def count(self, p, q):
        a = _counts_by_end(self.C, p, "s")
        b = _counts_by_end(self.D, q, "r")
        return sum(x * y for x, y in zip(a, b))

    def basis(self, p, q):
        key = (p, q)
        out = self._bases.get(key)
        if out is not None:
            return out
        if p < 0 or q < 0:
            raise IndexOutOfRange(f"no bidegree {(p, q)}")
        n = self.count(p, q)
        if n > self.cap:
            raise DegreeTooLarge(f"|C_{{{p},{q}}}| = {n} exceeds cap {self.cap}", witness=(p, q, n))
        C, D = self.C, self.D
        if q == 0:
            dts = {x: [()] for x in range(C.n_objects)}
        else:
            dts = _tuples_by_end(D, q, self.cap, "r")
        out = []
        if p == 0:
            for x in range(C.n_objects):
                for dt in dts.get(x, ()):
                    out.append(((), dt, x))
        else:
            for ct in C.tuples(p, self.cap):
                x = C.src[ct[-1]]
                for dt in dts.get(x, ()):
                    out.append((ct, dt, x))
        self._bases[key] = out
        return out

    def index(self, p, q):
        key = (p, q)
        idx = self._index.get(key)
        if idx is None:
            idx = {b: i for i, b in enumerate(self.basis(p, q))}
            self._index[key] = idx
        return idx

    def label_str(self, lab):
        ct, dt, x = lab
        ci, di = self.C.morphism_ids, self.D.morphism_ids
        if not ct and not dt:
            return self.C.objects[x]
        return ("[" + ",".join(ci[c] for c in ct) + ";" + ",".join(di[d] for d in dt) + "]")

    # -- elementary maps on labels ----------------------------------------------
    def h_face(self, lab, i):
        """Unsigned ``∂^{h,i}`` of a label in ``C_{p,q}`` (``0 <= i <= p``)."""
        ct, dt, x = lab
        p = len(ct)
        if not 0 <= i <= p or p == 0:
            raise IndexOutOfRange(f"no horizontal face {i} on C_{{{p},{len(dt)}}}")
        if i == p:
            c = ct[-1]
            return ct[:-1], self.mp.l_tuple(c, dt), self.C.dst[c]
        if i == 0:
            return ct[1:], dt, x
        comp = self.C._comp
        return ct[:i - 1] + (comp[ct[i - 1]][ct[i]],) + ct[i + 1:], dt, x

    def v_face(self, lab, j):
        """Unsigned ``∂^{v,j}`` (``0 <= j <= q``); the sign is applied by callers."""
        ct, dt, x = lab
        q = len(dt)
        if not 0 <= j <= q or q == 0:
            raise IndexOutOfRange(f"no vertical face {j} on C_{{{len(ct)},{q}}}")
        if j == 0:
            d = dt[0]
            return self.mp.r_tuple(ct, d), dt[1:], self.D.src[d]
        if j == q:
            return ct, dt[:-1], x
        comp = self.D._comp
        return ct, dt[:j - 1] + (comp[dt[j - 1]][dt[j]],) + dt[j + 1:], x

    def h_degen(self, lab, i):
        ct, dt, x = lab
        p = len(ct)
        if not 0 <= i <= p:
            raise IndexOutOfRange(f"no horizontal degeneracy {i} on C_{{{p},{len(dt)}}}")
        C = self.C
        y = (C.dst[ct[0]] if ct else x) if i == 0 else C.src[ct[i - 1]]
        return ct[:i] + (C.identity[y],) + ct[i:], dt, x

    def v_degen(self, lab, j):
        """Unsigned ``σ^{v,j}``: identity inserted at position ``j`` of ``dt``."""
        ct, dt, x = lab
        q = len(dt)
        if not 0 <= j <= q:
            raise IndexOutOfRange(f"no vertical degeneracy {j} on C_{{{len(ct)},{q}}}")
        y = x if j == 0 else self.D.src[dt[j - 1]]
        return ct, dt[:j] + (self.D.identity[y],) + dt[j:], x

    # -- matrices ------------------------------------------------------------
    def face_h(self, p, q, i):
        """``∂^{h,i}: C_{p,q} -> C_{p-1,q}``."""
        if p < 1 or not 0 <= i <= p:
            raise IndexOutOfRange(f"no horizontal face {i} out of C_{{{p},{q}}}")
        return _rule_matrix(self.basis(p, q), self.index(p - 1, q),
                            lambda b: [(self.h_face(b, i), 1)])

    def face_v(self, p, q, j):
        """``∂^{v,j}: C_{p,q} -> C_{p,q-1}``, sign ``(-1)^p`` included."""
        if q < 1 or not 0 <= j <= q:
            raise IndexOutOfRange(f"no vertical face {j} out of C_{{{p},{q}}}")
        s = -1 if p % 2 else 1
        return _rule_matrix(self.basis(p, q), self.index(p, q - 1),
                            lambda b: [(self.v_face(b, j), s)])

    def degeneracy_h(self, p, q, i):
        """``σ^{h,i}: C_{p,q} -> C_{p+1,q}``."""
        if not 0 <= i <= p:
            raise IndexOutOfRange(f"no horizontal degeneracy {i} out of C_{{{p},{q}}}")
        return _rule_matrix(self.basis(p, q), self.index(p + 1, q),
                            lambda b: [(self.h_degen(b, i), 1)])

    def degeneracy_v(self, p, q, j):
        """``σ^{v,j}: C_{p,q} -> C_{p,q+1}``, sign ``(-1)^p`` included."""
        if not 0 <= j <= q:
            raise IndexOutOfRange(f"no vertical degeneracy {j} out of C_{{{p},{q}}}")
        s = -1 if p % 2 else 1
        return _rule_matrix(self.basis(p, q), self.index(p, q + 1),
                            lambda b: [(self.v_degen(b, j), s)])

    def d_h(self, p, q):
        """``d^h: C_{p+1,q} -> C_{p,q}``."""
        key = (p, q)
        m = self._dh.get(key)
        if m is None:
            n = p + 1

            def rule(b):
                return [(self.h_face(b, i), -1 if i % 2 else 1) for i in range(n + 1)]
            m = _rule_matrix(self.basis(p + 1, q), self.index(p, q), rule)
            self._dh[key] = m
        return m

    def d_v(self, p, q):
        """``d^v: C_{p,q+1} -> C_{p,q}`` (includes the ``(-1)^p``)."""
        key = (p, q)
        m = self._dv.get(key)
        if m is None:
            n = q + 1
            s = -1 if p % 2 else 1

            def rule(b):
                return [(self.v_face(b, j), s * (-1 if j % 2 else 1)) for j in range(n + 1)]
            m = _rule_matrix(self.basis(p, q + 1), self.index(p, q), rule)
            self._dv[key] = m
        return m

    def check(self, N):
        """``d^h d^h = 0``, ``d^v d^v = 0`` and ``d^h d^v + d^v d^h = 0`` for
        all maps between bidegrees of total degree ``<= N``."""
        for n in range(2, N + 1):
            for p in range(n + 1):
                q = n - p
                if p >= 2 and not (self.d_h(p - 2, q) @ self.d_h(p - 1, q)).is_zero():
                    raise ValidationError(f"d^h d^h != 0 out of C_{{{p},{q}}}", witness=(p, q))
                if q >= 2 and not (self.d_v(p, q - 2) @ self.d_v(p, q - 1)).is_zero():
                    raise ValidationError(f"d^v d^v != 0 out of C_{{{p},{q}}}", witness=(p, q))
                if p >= 1 and q >= 1:
                    a = self.d_h(p - 1, q - 1) @ self.d_v(p, q - 1)
                    b = self.d_v(p - 1, q - 1) @ self.d_h(p - 1, q)
                    if not (a + b).is_zero():
                        raise ValidationError(f"d^h d^v != -d^v d^h out of C_{{{p},{q}}}",
                                              witness=(p, q))
        if self.max_total is None or N > self.max_total:
            self.max_total = N

    def __repr__(self):
        return f"<DoubleComplex of {self.mp!r}>"


def matched_double_complex(mp, K, cap=None):
    """Double complex with every bidegree ``p + q <= K + 1`` checked."""
    return DoubleComplex(mp, K, cap=cap)


def _as_double(x, cap=None):
    return x if isinstance(x, DoubleComplex) else DoubleComplex(x, cap=cap)


def diagonal_face(dc, lab, i):
    """Unsigned ``∂^{Δ,i} = ∂^{h,i} ∂^{v,i}`` on a label of ``C_{k,k}``."""
    return dc.h_face(dc.v_face(lab, i), i)


def diagonal_complex(src, K, cap=None, sign="unsigned"):
    """``C^Δ_k = C_{k,k}`` for ``k <= K + 1``.

    ``sign="unsigned"`` uses ``d^Δ = Σ (-1)^i ∂^{h,i} ∂^{v,i}`` with the
    vertical faces taken without their ``(-1)^k``; ``sign="literal"`` keeps
    that factor, which multiplies ``d^Δ_k`` by ``(-1)^{k+1}``.  The two
    complexes are isomorphic (rescale degree ``k`` by a sign) and have the
    same homology; the chain maps of :mod:`zsmatch.chain_maps` use the
    unsigned one.
    """
    if sign not in ("unsigned", "literal"):
        raise ValueError("sign must be 'unsigned' or 'literal'")
    dc = _as_double(src, cap)
    bases = [dc.basis(k, k) for k in range(K + 2)]
    bounds = []
    for k in range(K + 1):
        n = k + 1
        glob = -1 if (sign == "literal" and n % 2) else 1

        def rule(b, n=n, glob=glob):
            return [(diagonal_face(dc, b, i), glob * (-1 if i % 2 else 1)) for i in range(n + 1)]
        bounds.append(_rule_matrix(bases[k + 1], dc.index(k, k), rule))
    cx = ChainComplex(bases, bounds, name="diagonal", label_str=dc.label_str)
    cx.double = dc
    return cx


def total_blocks(dc, k):
    """``[(p, q, size)]`` for the summands of ``Tot_k`` in increasing ``p``."""
    return [(p, k - p, len(dc.basis(p, k - p))) for p in range(k + 1)]


def total_complex(src, K, cap=None):
    """``Tot_k = ⊕_{p+q=k} C_{p,q}`` (blocks in increasing ``p``),
    ``d^Tot = d^h + d^v``, for ``k <= K + 1``."""
    dc = _as_double(src, cap)
    bases = []
    for k in range(K + 2):
        bases.append([lab for p in range(k + 1) for lab in dc.basis(p, k - p)])
    bounds = []
    for k in range(K + 1):
        n = k + 1
        rows = [len(dc.basis(p, k - p)) for p in range(k + 1)]
        cols = [len(dc.basis(p, n - p)) for p in range(n + 1)]
        blocks = {}
        for p in range(n + 1):
            q = n - p
            if p >= 1:
                blocks[p - 1, p] = dc.d_h(p - 1, q)
            if q >= 1:
                blocks[p, p] = dc.d_v(p, q - 1)
        bounds.append(block_matrix(blocks, rows, cols))
    cx = ChainComplex(bases, bounds, name="total", label_str=dc.label_str)
    cx.double = dc
    return cx


def face_map(kind, source, degree, i, cap=None):
    """Dispatch for individual face matrices.

    ``kind`` is ``"categorical"`` (``source`` a category, ``degree`` k),
    ``"h"``/``"v"`` (``source`` a double complex or matched pair,
    ``degree = (p, q)``), or ``"diagonal"`` (unsigned, degree k).
    """
    if kind == "categorical":
        return categorical_face(source, degree, i, cap)
    dc = _as_double(source, cap)
    if kind == "h":
        return dc.face_h(*degree, i)
    if kind == "v":
        return dc.face_v(*degree, i)
    if kind == "diagonal":
        k = degree
        if k < 1 or not 0 <= i <= k:
            raise IndexOutOfRange(f"no diagonal face {i} out of degree {k}")
        return _rule_matrix(dc.basis(k, k), dc.index(k - 1, k - 1),
                            lambda b: [(diagonal_face(dc, b, i), 1)])
    raise ValueError(f"unknown complex kind {kind!r}")


def degeneracy_map(kind, source, degree, i, cap=None):
    """Dispatch for degeneracy matrices (same conventions as :func:`face_map`)."""
    if kind == "categorical":
        return categorical_degeneracy(source, degree, i, cap)
    dc = _as_double(source, cap)
    if kind == "h":
        return dc.degeneracy_h(*degree, i)
    if kind == "v":
        return dc.degeneracy_v(*degree, i)
    if kind == "diagonal":
        k = degree
        if not 0 <= i <= k:
            raise IndexOutOfRange(f"no diagonal degeneracy {i} out of degree {k}")

        def rule(b):
            return [(dc.h_degen(dc.v_degen(b, i), i), 1)]
        return _rule_matrix(dc.basis(k, k), dc.index(k + 1, k + 1), rule)
    raise ValueError(f"unknown complex kind {kind!r}")
