"""First and second pages of the two spectral sequences of a double complex.

Bidegrees are always ``(p, q)`` with ``p`` the C-degree (horizontal) and
``q`` the D-degree (vertical), whatever the orientation.

* ``hv``: filter by columns.  ``E^1_{p,q} = H_q`` of column ``p`` under
  ``d^v``, ``d^1`` induced by ``d^h``, ``E^2 = H^h H^v``.  Column ``p = 0``
  is the bottom of the filtration.
* ``vh``: filter by rows.  ``E^1_{p,q} = H_p`` of row ``q`` under ``d^h``,
  ``d^1`` induced by ``d^v``, ``E^2 = H^v H^h``.  Row ``q = 0`` is the bottom,
  so with two nonzero rows there are exact sequences
  ``0 -> E^2_{n,0} -> H_n -> E^2_{n-1,1} -> 0``.
"""

from dataclasses import dataclass, field

from .abelian import AbelianGroup, homology, map_on_homology, presented_homology
from .complexes import ChainComplex, DoubleComplex
from .errors import DegreeNotMaterialised

__all__ = ["SpectralPage", "page1", "page2", "ses_compatible", "two_row_check"]

ORIENTATIONS = ("hv", "vh")


@dataclass
class SpectralPage:
    orientation: str
    page: int
    K: int
    groups: dict
    differentials: dict = field(default_factory=dict)

    def group(self, p, q):
        return self.groups[p, q]

    def grid(self):
        """Rows of group strings, highest ``q`` first (the usual picture)."""
        K = self.K
        return [[str(self.groups.get((p, q), "")) for p in range(K + 1)] for q in range(K, -1, -1)]

    def to_text(self):
        width = max([len(s) for row in self.grid() for s in row] + [len(f"p={self.K}")])
        lines = [f"E^{self.page} ({self.orientation})"]
        for q, row in zip(range(self.K, -1, -1), self.grid()):
            lines.append(f"q={q} | " + "  ".join(s.ljust(width) for s in row))
        lines.append("      " + "  ".join(f"p={p}".ljust(width) for p in range(self.K + 1)))
        return "\n".join(lines)

    def to_json(self):
        return {
            "orientation": self.orientation,
            "page": self.page,
            "groups": [{"p": p, "q": q, **g.to_json()} for (p, q), g in sorted(self.groups.items())],
        }


def _line_complex(dc, orientation, fixed, top):
    """Column ``fixed`` (hv) or row ``fixed`` (vh) in degrees ``0..top``."""
    if orientation == "hv":
        bases = [dc.basis(fixed, k) for k in range(top + 1)]
        bounds = [dc.d_v(fixed, k) for k in range(top)]
    else:
        bases = [dc.basis(k, fixed) for k in range(top + 1)]
        bounds = [dc.d_h(k, fixed) for k in range(top)]
    return ChainComplex(bases, bounds, check=False, label_str=dc.label_str)


def _double(src, K):
    return src if isinstance(src, DoubleComplex) else DoubleComplex(src, K + 1)


def _page1_data(dc, orientation, K):
    """Homology objects ``H[(p, q)]`` for ``p + q <= K + 1`` and the maps
    ``d^1: E^1_{p,q} -> E^1_{p-1,q}`` (hv) or ``-> E^1_{p,q-1}`` (vh)."""
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    N = K + 1
    H = {}
    for fixed in range(N + 1):
        line = _line_complex(dc, orientation, fixed, N - fixed + 1)
        for k in range(N - fixed + 1):
            pq = (fixed, k) if orientation == "hv" else (k, fixed)
            H[pq] = homology(line, k)
    D = {}
    for (p, q), h in H.items():
        if orientation == "hv" and p >= 1:
            D[p, q] = map_on_homology(h, H[p - 1, q], dc.d_h(p - 1, q))
        elif orientation == "vh" and q >= 1:
            D[p, q] = map_on_homology(h, H[p, q - 1], dc.d_v(p, q - 1))
    return H, D


def page1(src, orientation, K):
    """``E^1`` for ``p + q <= K + 1`` with its differentials.

    ``src`` is a matched pair or a :class:`DoubleComplex`.  Raises
    ``ValueError`` if ``d^1 d^1 != 0`` somewhere (which would mean the
    double complex is broken).
    """
    if K < 0:
        raise DegreeNotMaterialised("K must be nonnegative")
    dc = _double(src, K)
    H, D = _page1_data(dc, orientation, K)
    for (p, q), f in D.items():
        nxt = (p - 1, q) if orientation == "hv" else (p, q - 1)
        g = D.get(nxt)
        if g is not None and f.matrix and g.matrix:
            h = g.compose(f)
            if any(any(row) for row in h.matrix):
                raise ValueError(f"d^1 d^1 != 0 at {(p, q)}")
    page = SpectralPage(orientation, 1, K + 1, {pq: h.group for pq, h in H.items()}, D)
    page.homology = H
    return page


def page2(src, orientation, K):
    """``E^2_{p,q}`` for ``p + q <= K``."""
    dc = _double(src, K)
    P1 = page1(dc, orientation, K)
    H, D = P1.homology, P1.differentials
    groups = {}
    for n in range(K + 1):
        for p in range(n + 1):
            q = n - p
            here = H[p, q]
            incoming = D.get((p + 1, q) if orientation == "hv" else (p, q + 1))
            outgoing = D.get((p, q))
            f = incoming.matrix if incoming is not None else None
            g = outgoing.matrix if outgoing is not None else None
            out_orders = outgoing.target_orders if outgoing is not None else ()
            groups[p, q] = presented_homology(f, g, here.orders, out_orders)
    return SpectralPage(orientation, 2, K, groups)


def ses_compatible(A, H, B):
    """Necessary conditions for a short exact sequence ``0 -> A -> H -> B -> 0``
    of finitely generated abelian groups: ranks add, ``|tors A|`` divides
    ``|tors H|`` and ``|tors H|`` divides ``|tors A| |tors B|``."""
    if H.free_rank != A.free_rank + B.free_rank:
        return False
    ta, th, tb = A.torsion_order, H.torsion_order, B.torsion_order
    return th % ta == 0 and (ta * tb) % th == 0


def two_row_check(mp, K, cap=None):
    """Compare the ``vh`` second page with ``H^⋈`` when rows ``q >= 2`` vanish.

    Returns ``{"vanishing": bool, "page": E^2, "ses": [(n, ok), ...]}``.
    """
    from .complexes import categorical_complex
    from .matched_pair import zs_category

    P2 = page2(DoubleComplex(mp, K + 1, cap=cap), "vh", K)
    vanishing = all(g.is_trivial for (p, q), g in P2.groups.items() if q >= 2)
    bow = categorical_complex(zs_category(mp), K, cap)
    ses = []
    for n in range(K + 1):
        Hn = homology(bow, n).group
        A = P2.groups[n, 0]
        B = P2.groups[n - 1, 1] if n >= 1 else AbelianGroup(0, ())
        ses.append((n, ses_compatible(A, Hn, B)))
    return {"vanishing": vanishing, "page": P2, "ses": ses}
