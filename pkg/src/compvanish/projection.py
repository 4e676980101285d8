"""Draw candidate matrices near the variety ``AB = 0``.

A uniformly random ``A in S(G)`` is almost always nonsingular, and then
only ``B = 0`` solves ``AB = 0``.  This sampler instead starts from a random
real point, pulls it onto ``{(A, B) : AB = 0}`` with the right patterns by
nonlinear least squares, and then rounds the entries of ``A`` one at a time
to simple rationals, re-projecting after each rounding.  The result is only
a candidate: the caller still runs the exact solve for ``B``, so nothing
numerical ever reaches a certificate.

Scaling ``A -> DAD`` (``D`` diagonal, nonsingular) preserves every
pattern, so the entries on a spanning forest of ``G`` are fixed to 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import least_squares

from .graph import Graph, complement
from .rules import Status

_RESIDUAL_TOL = 1e-11
_MIN_ENTRY = 1e-4
_BARRIER = 0.05
_MAX_NFEV = 3000
_MAX_DENOMINATOR = 1000


def spanning_forest(g: Graph) -> set[tuple[int, int]]:
    """Breadth-first spanning forest as ``(i, j)`` pairs with ``i < j``."""
    seen = 0
    forest = set()
    for root in range(g.n):
        if (seen >> root) & 1:
            continue
        seen |= 1 << root
        queue = [root]
        for v in queue:
            for u in g.neighbors(v):
                if not (seen >> u) & 1:
                    seen |= 1 << u
                    queue.append(u)
                    forest.add((min(u, v), max(u, v)))
    return forest


class _Problem:
    """Coordinates and residuals of the patterned system ``AB = 0``."""

    def __init__(self, g: Graph, status_a: Sequence[Status], status_b: Sequence[Status]):
        self.n = n = g.n
        self.forest = spanning_forest(g)
        self.a_vars = [e for e in g.edges() if e not in self.forest]
        self.a_vars += [(i, i) for i in range(n) if status_a[i] is not Status.ZERO]
        self.b_vars = complement(g).edges()
        self.b_vars += [(i, i) for i in range(n) if status_b[i] is not Status.ZERO]
        na = len(self.a_vars)
        self.size = na + len(self.b_vars)
        # coordinates that must stay away from zero
        self.a_keep = [k for k, (i, j) in enumerate(self.a_vars)
                       if i != j or status_a[i] is Status.NONZERO]
        b_edges = [na + k for k, (i, j) in enumerate(self.b_vars) if i != j]
        self.b_edges = b_edges
        self.keep = self.a_keep + b_edges + [
            na + k for k, (i, j) in enumerate(self.b_vars)
            if i == j and status_b[i] is Status.NONZERO]
        self.fixed: dict[int, float] = {}

    def matrices(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n, na = self.n, len(self.a_vars)
        a = np.zeros((n, n))
        b = np.zeros((n, n))
        for i, j in self.forest:
            a[i, j] = a[j, i] = 1.0
        for k, (i, j) in enumerate(self.a_vars):
            a[i, j] = a[j, i] = x[k]
        for k, (i, j) in enumerate(self.b_vars):
            b[i, j] = b[j, i] = x[na + k]
        return a, b

    def _full(self, y: np.ndarray, free: list[int]) -> np.ndarray:
        x = np.empty(self.size)
        x[free] = y
        for k, v in self.fixed.items():
            x[k] = v
        return x

    def project(self, x0: np.ndarray, barrier: bool) -> tuple[np.ndarray, bool]:
        """Least-squares projection keeping the fixed coordinates."""
        free = [k for k in range(self.size) if k not in self.fixed]
        b_edges = self.b_edges

        def residual(y):
            x = self._full(y, free)
            a, b = self.matrices(x)
            r = list((a @ b).ravel())
            if b_edges:
                r.append(float(np.sum(x[b_edges] ** 2)) - len(b_edges))
            if barrier:
                r += [_BARRIER / (x[k] ** 2 + 1e-3) for k in self.keep]
            # "lm" needs at least as many residuals as unknowns
            r += [0.0] * (len(free) - len(r))
            return r

        if free:
            fit = least_squares(residual, x0[free], method="lm", max_nfev=_MAX_NFEV)
            x = self._full(fit.x, free)
        else:
            x = self._full(np.empty(0), free)
        if barrier:
            return self.project(x, barrier=False)
        a, b = self.matrices(x)
        ok = bool(np.abs(a @ b).max() < _RESIDUAL_TOL) and all(
            abs(x[k]) > _MIN_ENTRY for k in self.keep)
        return x, ok


def _snap_candidates(v: float) -> list[Fraction]:
    cands = {Fraction(round(v * d), d) for d in (1, 2, 3)}
    return sorted(cands, key=lambda c: (abs(float(c) - v), c.denominator))


def projected_sample(g: Graph, status_a: Sequence[Status], status_b: Sequence[Status],
                     rng: np.random.Generator) -> Optional[dict[tuple[int, int], Fraction]]:
    """Rational entries of a candidate ``A in S(G)``, or None if the
    projection fails from this starting point.

    Diagonal entries marked Zero in ``status_a`` are left out, and those
    marked Zero in ``status_b`` are held at zero in the hidden ``B``.
    """
    prob = _Problem(g, status_a, status_b)
    x, ok = prob.project(rng.normal(scale=2.0, size=prob.size), barrier=True)
    if not ok:
        return None
    na = len(prob.a_vars)
    order = list(rng.permutation(na))
    keep = set(prob.a_keep)
    for k in order:
        for c in _snap_candidates(x[k]):
            if c == 0 and k in keep:
                continue
            prob.fixed[k] = float(c)
            trial = x.copy()
            trial[k] = float(c)
            moved, ok = prob.project(trial, barrier=False)
            if ok:
                x = moved
                break
            del prob.fixed[k]
    entries: dict[tuple[int, int], Fraction] = {e: Fraction(1) for e in prob.forest}
    for k, e in enumerate(prob.a_vars):
        value = Fraction(float(x[k])).limit_denominator(_MAX_DENOMINATOR)
        if value:
            entries[e] = value
        elif k in keep:
            return None
    return entries
