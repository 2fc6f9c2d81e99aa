"""Seeded property checks behind ``zsmatch selftest``.

Each check draws its cases from one ``random.Random(seed)`` stream, so a
seed reproduces the exact run.
"""

import random

from .catalog import matched_pairs
from .chain_maps import compare_homology
from .cocycle import Phase, coboundary, is_cohomologous, validate_categorical_2cocycle
from .errors import ZSError
from .matched_pair import zs_category
from .odometer import (
    OdometerPath,
    act,
    act_tuple,
    odometer_homology,
    random_strongly_connected,
    verify_decomposition,
)

__all__ = ["run_selftest"]


def _odometer_action(rng, n):
    bad = 0
    for _ in range(n):
        E = random_strongly_connected(rng.randrange(10**6))
        length = rng.randint(1, 4)
        paths = E.paths(length)
        if not paths:
            continue
        mu = rng.choice(paths)[0]
        xi = OdometerPath(mu, rng.randrange(E.weight(mu)))
        a, b = rng.randrange(20), rng.randrange(20)
        # acting on the whole path is digit-wise action with carries
        whole, carry = act(E, a, xi)
        digits = [OdometerPath((e,), m) for e, m in xi.digits(E)]
        parts, carry2 = act_tuple(E, a, digits)
        same = (carry == carry2 and
                whole.digits(E) == [(p.mu[0], p.m) for p in parts])
        # a then b is a + b
        x1, c1 = act(E, a, xi)
        x2, c2 = act(E, b, x1)
        x3, c3 = act(E, a + b, xi)
        if not same or x2 != x3 or c1 + c2 != c3:
            bad += 1
    return bad


def _odometer_homology(rng, n, cutoff):
    bad = 0
    for _ in range(n):
        E = random_strongly_connected(rng.randrange(10**6), max_weight=3)
        r = odometer_homology(E)
        if r["H2"].free_rank != max(0, -E.euler_characteristic) or r["H2"].torsion:
            bad += 1
        elif not verify_decomposition(E, min(cutoff, 3))["ok"]:
            bad += 1
    return bad


def _coboundaries(rng, n):
    pool = [mp for name, mp in sorted(matched_pairs().items()) if name in ("S3", "klein", "swap")]
    bad = 0
    for _ in range(n):
        Z = zs_category(rng.choice(pool))
        b = {f: Phase(rng.randrange(12) / 12) for f in range(Z.n_morphisms) if not Z.is_identity(f)}
        c = coboundary(Z, b)
        if not validate_categorical_2cocycle(Z, c)["ok"]:
            bad += 1
        elif not is_cohomologous(Z, {}, c)["cohomologous"]:
            bad += 1
    return bad


def _comparison(rng, n):
    names = sorted(matched_pairs())
    bad = 0
    for name in rng.sample(names, min(n, len(names))):
        rows = compare_homology(matched_pairs()[name], 2)
        if not all(r["Pi_iso"] and r["Psi_iso"] and r["nabla_iso"] and r["round_trip_identity"]
                   for r in rows):
            bad += 1
    return bad


def run_selftest(seed=0, cutoff=4, cases=20):
    """Run every check; returns ``[{"name", "cases", "failures", "ok"}]``."""
    rng = random.Random(seed)
    checks = [
        ("odometer action is digit-wise and additive", lambda: _odometer_action(rng, cases), cases),
        ("odometer H_2 rank and decomposition", lambda: _odometer_homology(rng, cases // 4, cutoff),
         cases // 4),
        ("coboundaries are cohomologous to 0", lambda: _coboundaries(rng, cases // 2), cases // 2),
        ("three homology theories agree (K=2)", lambda: _comparison(rng, 3), 3),
    ]
    out = []
    for name, run, n in checks:
        try:
            bad = run()
        except ZSError as exc:
            bad = f"{type(exc).__name__}: {exc}"
        out.append({"name": name, "cases": n, "failures": bad, "ok": bad == 0})
    return out
