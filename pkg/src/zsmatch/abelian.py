"""Finitely generated abelian groups, homology and induced maps.

Homology is computed in two stages.  First the complex is shrunk by
cancelling pairs ``(a, b)`` where the boundary of ``a`` meets ``b`` with
coefficient ``+1`` or ``-1`` (algebraic Morse reduction).  Each cancellation
is a chain homotopy equivalence; we log enough to replay the projection
``pi`` (original -> reduced) and inclusion ``iota`` (reduced -> original) on
any vector.  The reduced complex is small and is finished off with dense
Smith normal forms, which also give explicit cycle generators.
"""

from dataclasses import dataclass, field
from math import gcd

from .errors import DegreeNotMaterialised, NotAChainMap, ShapeMismatch
from .linalg import IntMatrix, smith_normal_form, solve_integer

__all__ = [
    "AbelianGroup",
    "Homology",
    "InducedMap",
    "homology",
    "homology_groups",
    "induced_map",
    "map_on_homology",
    "presented_homology",
    "is_isomorphism",
    "reduction_stats",
]


def _invariant_factors(orders):
    """Invariant factors ``d1 | d2 | ...`` (all >= 2) of ``sum Z/n``."""
    primes = {}
    for n in orders:
        n = int(n)
        if n < 0:
            n = -n
        if n == 0:
            raise ValueError("use free_rank for Z summands")
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 1
                n //= p
                while n % p == 0:
                    n //= p
                    e *= p
                primes.setdefault(p, []).append(e * p)
            p += 1
        if n > 1:
            primes.setdefault(n, []).append(n)
    if not primes:
        return ()
    length = max(len(v) for v in primes.values())
    out = [1] * length
    for powers in primes.values():
        powers.sort()
        pad = [1] * (length - len(powers)) + powers
        out = [a * b for a, b in zip(out, pad)]
    return tuple(d for d in out if d > 1)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/d1 + Z/d2 + ...`` with ``d1 | d2 | ...``, each ``>= 2``.

    >>> str(AbelianGroup.from_orders(1, [2, 3]))
    'Z + Z/6'
    >>> AbelianGroup.parse("Z^2 + Z/2")
    AbelianGroup(free_rank=2, torsion=(2,))
    """

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not an invariant-factor chain")

    @classmethod
    def from_orders(cls, free_rank, orders):
        """Canonical form of ``Z^r`` plus cyclic groups of the given orders
        (orders equal to 1 are dropped)."""
        return cls(free_rank, _invariant_factors([n for n in orders if abs(n) != 1]))

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in ("0", ""):
            return cls()
        r, orders = 0, []
        for part in text.split("+"):
            part = part.strip()
            if part.startswith("Z/"):
                orders.append(int(part[2:]))
            elif part == "Z":
                r += 1
            elif part.startswith("Z^"):
                r += int(part[2:])
            elif part == "0":
                continue
            else:
                raise ValueError(f"cannot parse group term {part!r}")
        return cls.from_orders(r, orders)

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self):
        """Cardinality, or ``None`` if infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    @property
    def torsion_order(self):
        n = 1
        for d in self.torsion:
            n *= d
        return n

    @property
    def ngens(self):
        return self.free_rank + len(self.torsion)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self, degree=None):
        out = {"free_rank": self.free_rank, "torsion": list(self.torsion)}
        if degree is not None:
            out = {"degree": degree, **out}
        return out

    def __add__(self, other):
        return AbelianGroup.from_orders(self.free_rank + other.free_rank,
                                        self.torsion + other.torsion)

    def tensor(self, other):
        orders = [d for d in self.torsion for _ in range(other.free_rank)]
        orders += [d for d in other.torsion for _ in range(self.free_rank)]
        orders += [gcd(a, b) for a in self.torsion for b in other.torsion]
        return AbelianGroup.from_orders(self.free_rank * other.free_rank, orders)

    def tor(self, other):
        return AbelianGroup.from_orders(0, [gcd(a, b) for a in self.torsion for b in other.torsion])


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

class _Reduction:
    """Unit-pivot cancellation of a truncated chain complex.

    ``cx`` must offer ``max_degree``, ``dim(k)`` and ``boundary(k)``
    (``d_k: C_{k+1} -> C_k``) for ``k < max_degree``.
    """

    def __init__(self, cx):
        M = cx.max_degree
        self.M = M
        dims = [cx.dim(k) for k in range(M + 1)]
        self.dims = dims
        # col[k][a]: boundary of a in C_k, as dict over C_{k-1}
        col = [None]
        row = []
        for k in range(1, M + 1):
            D = cx.boundary(k - 1)
            if D.shape != (dims[k - 1], dims[k]):
                raise ShapeMismatch(f"boundary d_{k - 1} has shape {D.shape}")
            col.append({a: dict(c) for a, c in enumerate(D.cols)})
        for k in range(M):
            rk = [set() for _ in range(dims[k])]
            for a, c in col[k + 1].items():
                for y in c:
                    rk[y].add(a)
            row.append(rk)
        alive = [set(range(d)) for d in dims]
        events = []

        def eliminate(k, a, b, u):
            colk, rowk = col[k], row[k - 1]
            ca = colk[a]
            brow = {x: colk[x][b] for x in rowk[b] if x != a}
            for x, lam in brow.items():
                cx_ = colk[x]
                coef = -lam * u
                for y, v in ca.items():
                    nv = cx_.get(y, 0) + coef * v
                    if nv:
                        if y not in cx_:
                            rowk[y].add(x)
                        cx_[y] = nv
                    else:
                        del cx_[y]
                        rowk[y].discard(x)
            for y in ca:
                rowk[y].discard(a)
            del colk[a]
            alive[k].discard(a)
            if k < M:
                for z in row[k][a]:
                    del col[k + 1][z][a]
                row[k][a] = set()
            if k >= 2:
                for y in col[k - 1][b]:
                    row[k - 2][y].discard(b)
                del col[k - 1][b]
            alive[k - 1].discard(b)
            events.append((k, a, b, u, ca, brow))

        for k in range(1, M + 1):
            colk, rowk = col[k], row[k - 1]
            while True:
                progress = False
                for a in sorted(colk, key=lambda a: len(colk[a])):
                    ca = colk.get(a)
                    if not ca:
                        continue
                    best = None
                    for b, v in ca.items():
                        if v == 1 or v == -1:
                            w = len(rowk[b])
                            if best is None or w < best[0]:
                                best = (w, b, v)
                                if w == 1:
                                    break
                    if best is not None:
                        eliminate(k, a, best[1], best[2])
                        progress = True
                if not progress:
                    break

        self.events = events
        self.cells = [sorted(s) for s in alive]
        self.pos = [{c: i for i, c in enumerate(cells)} for cells in self.cells]
        # dense reduced boundaries dR[k]: R_{k+1} -> R_k
        self.dR = []
        for k in range(M):
            rows, cols = self.cells[k], self.cells[k + 1]
            pos = self.pos[k]
            mat = [[0] * len(cols) for _ in rows]
            for j, a in enumerate(cols):
                for y, v in col[k + 1][a].items():
                    mat[pos[y]][j] = v
            self.dR.append(mat)
        self._by_degree_pi = {}
        self._by_degree_iota = {}
        for ev in events:
            k = ev[0]
            self._by_degree_pi.setdefault(k - 1, []).append(ev)
            self._by_degree_pi.setdefault(k, []).append(ev)
            self._by_degree_iota.setdefault(k, []).append(ev)

    def project(self, k, vec):
        """``pi_k``: original degree-k vector -> reduced coordinates (list)."""
        v = dict(vec)
        for (ek, a, b, u, da, _brow) in self._by_degree_pi.get(k, ()):
            if ek == k + 1:
                beta = v.get(b)
                if beta:
                    f = -beta * u
                    for y, c in da.items():
                        nv = v.get(y, 0) + f * c
                        if nv:
                            v[y] = nv
                        else:
                            v.pop(y, None)
            else:
                v.pop(a, None)
        pos = self.pos[k]
        out = [0] * len(pos)
        for c, x in v.items():
            out[pos[c]] = x
        return out

    def include(self, k, coords):
        """``iota_k``: reduced coordinates -> original degree-k vector."""
        w = {c: x for c, x in zip(self.cells[k], coords) if x}
        for (ek, a, b, u, _da, brow) in reversed(self._by_degree_iota.get(k, ())):
            if len(w) < len(brow):
                c = sum(x * brow[y] for y, x in w.items() if y in brow)
            else:
                c = sum(lam * w[y] for y, lam in brow.items() if y in w)
            if c:
                w[a] = -u * c
        return w


def _reduction(cx):
    red = getattr(cx, "_reduction_cache", None)
    if red is None or red.M != cx.max_degree:
        red = _Reduction(cx)
        try:
            cx._reduction_cache = red
        except AttributeError:
            pass
    return red


def reduction_stats(cx):
    """Sizes of the original and reduced chain groups, per degree."""
    red = _reduction(cx)
    return [(red.dims[k], len(red.cells[k])) for k in range(red.M + 1)]


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

def _matmul_dense(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(r, c) if a) for c in Bt] for r in A]


@dataclass
class Homology:
    """``H_k`` of a complex with explicit cycle generators.

    ``generators[i]`` is a cycle (sparse dict over the degree-k basis)
    representing the i-th summand: first the torsion summands in
    ``group.torsion`` order, then the free ones.
    """

    degree: int
    group: AbelianGroup
    generators: list
    _red: object = field(repr=False, default=None)
    _P: list = field(repr=False, default=None)   # kernel coordinates (z x n)
    _UB: list = field(repr=False, default=None)  # SNF transform on kernel coords
    _comp: list = field(repr=False, default=None)  # (index, modulus or 0)

    @property
    def orders(self):
        """Order of each generator (0 for free)."""
        return [m for _, m in self._comp]

    def coordinates(self, cycle):
        """Coordinates of the class of a cycle in the generator basis."""
        x = self._red.project(self.degree, cycle)
        y = [sum(a * b for a, b in zip(r, x) if a) for r in self._P]
        c = [sum(a * b for a, b in zip(r, y) if a) for r in self._UB]
        return [c[i] % m if m else c[i] for i, m in self._comp]

    def is_boundary(self, cycle):
        return not any(self.coordinates(cycle))


def homology(cx, k):
    """``H_k = ker d_{k-1} / im d_k`` with generators."""
    if k < 0 or k >= cx.max_degree:
        raise DegreeNotMaterialised(
            f"H_{k} needs degrees up to {k + 1}; complex has {cx.max_degree}")
    cache = getattr(cx, "_homology_cache", None)
    if cache is None:
        cache = {}
        try:
            cx._homology_cache = cache
        except AttributeError:
            pass
    if k in cache:
        return cache[k]
    red = _reduction(cx)
    n = len(red.cells[k])
    if k >= 1:
        A = red.dR[k - 1]
        snfA = smith_normal_form(IntMatrix.from_dense(A, n), inverses=True)
        r = snfA.rank
        P = [row for row in snfA._Vi[r:]]
        Z = [row[r:] for row in snfA._V]  # n x z
    else:
        P = [[int(i == j) for j in range(n)] for i in range(n)]
        Z = P
    z = len(P)
    B = red.dR[k]
    Bp = _matmul_dense(P, B) if z else []
    snfB = smith_normal_form(IntMatrix.from_dense(Bp, len(B[0]) if B else 0), inverses=True)
    e = list(snfB.diagonal) + [0] * (z - snfB.rank)
    comp = [(i, d) for i, d in enumerate(e) if d != 1]
    UBi = snfB._Ui
    gens = []
    for i, _d in comp:
        col = [UBi[j][i] for j in range(z)]
        coords = [sum(Z[a][b] * col[b] for b in range(z) if col[b]) for a in range(n)]
        gens.append(red.include(k, coords))
    group = AbelianGroup(sum(1 for _, d in comp if d == 0), tuple(d for _, d in comp if d))
    h = Homology(k, group, gens, red, P, snfB._U, comp)
    cache[k] = h
    return h


def homology_groups(cx, K=None):
    """``[H_0, ..., H_K]`` as :class:`AbelianGroup` values."""
    if K is None:
        K = cx.max_degree - 1
    return [homology(cx, k).group for k in range(K + 1)]


# ---------------------------------------------------------------------------
# induced maps
# ---------------------------------------------------------------------------

@dataclass
class InducedMap:
    """Homomorphism between canonical presentations; ``matrix[i][j]`` is the
    i-th target coordinate of the image of source generator j."""

    degree: int
    source: AbelianGroup
    target: AbelianGroup
    matrix: list
    target_orders: list

    def is_isomorphism(self):
        return is_isomorphism(self)

    def compose(self, other):
        """``self`` after ``other``."""
        if other.target != self.source:
            raise ShapeMismatch("induced maps are not composable")
        prod = _matmul_dense(self.matrix, other.matrix) if other.matrix else \
            [[0] * other.source.ngens for _ in range(self.target.ngens)]
        prod = [[v % m if m else v for v in row] for row, m in zip(prod, self.target_orders)]
        return InducedMap(self.degree, other.source, self.target, prod, self.target_orders)

    def is_identity(self):
        if self.source != self.target:
            return False
        n = self.source.ngens
        return all(self.matrix[i][j] == int(i == j) for i in range(n) for j in range(n))


def induced_map(f, k):
    """``H_k(f)`` for a verified chain map ``f`` (see ``chain_maps.ChainMap``)."""
    if not getattr(f, "verified", False):
        raise NotAChainMap("chain map has not passed verification")
    hs = homology(f.source, k)
    ht = homology(f.target, k)
    Mk = f.matrix(k)
    cols = [ht.coordinates(Mk.apply(g)) for g in hs.generators]
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(ht.group.ngens)]
    return InducedMap(k, hs.group, ht.group, matrix, ht.orders)


def is_isomorphism(h):
    """Decide bijectivity.  Finitely generated abelian groups are Hopfian,
    so a surjection between isomorphic ones is an isomorphism."""
    if h.source != h.target:
        return False
    m = h.target.ngens
    if m == 0:
        return True
    rel = [[(h.target_orders[i] if i == j else 0) for j in range(m)] for i in range(m)]
    aug = [list(h.matrix[i]) + rel[i] for i in range(m)]
    snf = smith_normal_form(aug)
    return snf.rank == m and all(d == 1 for d in snf.diagonal)


def map_on_homology(hs, ht, M):
    """Map ``H(source) -> H(target)`` induced by a matrix that sends cycles to
    cycles and boundaries to boundaries (a chain map up to sign will do)."""
    cols = [ht.coordinates(M.apply(g)) for g in hs.generators]
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(ht.group.ngens)]
    return InducedMap(hs.degree, hs.group, ht.group, matrix, ht.orders)


def _lattice_kernel(G, ncols):
    """Basis (as columns, list of column lists) of ``{x in Z^ncols : G x = 0}``."""
    snf = smith_normal_form(IntMatrix.from_dense(G, ncols), inverses=False)
    V = snf._V
    return [[V[i][j] for i in range(ncols)] for j in range(snf.rank, ncols)]


def presented_homology(f, g, orders_mid, orders_out=()):
    """Homology at ``B`` of ``A --f--> B --g--> C``.

    ``B = Z^n / diag(orders_mid)`` and ``C = Z^m / diag(orders_out)`` with
    order ``0`` meaning a free generator; ``f`` (n rows) and ``g`` (m rows)
    are dense integer matrices on generators, either may be ``None``.
    """
    n = len(orders_mid)
    if g is not None and len(g):
        tors = [i for i, o in enumerate(orders_out) if o]
        aug = [list(row) + [(-orders_out[i] if i == t else 0) for t in tors]
               for i, row in enumerate(g)]
        kern = _lattice_kernel(aug, n + len(tors))
        L = [col[:n] for col in kern]
    else:
        L = [[int(i == j) for i in range(n)] for j in range(n)]
    gens = [list(col) for col in zip(*f)] if f is not None and len(f) and len(f[0]) else []
    gens += [[(o if i == j else 0) for i in range(n)] for j, o in enumerate(orders_mid) if o]
    l = len(L)
    if l == 0:
        return AbelianGroup(0, ())
    Lrows = [[L[j][i] for j in range(l)] for i in range(n)]
    Y = []
    for v in gens:
        y = solve_integer(Lrows, v)
        if y is None:
            raise ShapeMismatch("image does not lie in the kernel; not a complex")
        Y.append(y)
    if not Y:
        return AbelianGroup(l, ())
    Yrows = [[Y[j][i] for j in range(len(Y))] for i in range(l)]
    snf = smith_normal_form(IntMatrix.from_dense(Yrows, len(Y)))
    return AbelianGroup.from_orders(l - snf.rank, [d for d in snf.diagonal if d > 1])
