"""Exact conic feasibility with Farkas certificates (phase-one simplex over Q)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class ConicResult:
    """Outcome of ``v in cone(generators)``.

    ``weights`` (feasible): nonnegative y with sum_i y_i g_i = v.
    ``certificate`` (infeasible): w with g_i . w >= 0 for all i and v . w < 0.
    """

    feasible: bool
    weights: Optional[tuple[Fraction, ...]] = None
    certificate: Optional[tuple[Fraction, ...]] = None

    def verify(self, generators: Sequence[Sequence], v: Sequence) -> bool:
        gens = [[Fraction(x) for x in g] for g in generators]
        vv = [Fraction(x) for x in v]
        d = len(vv)
        if self.feasible:
            y = self.weights
            if y is None or any(t < 0 for t in y):
                return False
            return all(sum(y[i] * gens[i][c] for i in range(len(gens))) == vv[c] for c in range(d))
        w = self.certificate
        if w is None:
            return False
        if any(sum(g[c] * w[c] for c in range(d)) < 0 for g in gens):
            return False
        return sum(vv[c] * w[c] for c in range(d)) < 0


def conic_feasibility(generators: Sequence[Sequence], v: Sequence) -> ConicResult:
    """Decide whether v is a nonnegative combination of the generators.

    Solves M y = v, y >= 0 (columns of M are the generators) with Bland's
    rule on an exact tableau; artificial variables start as the basis.
    """
    gens = [[Fraction(x) for x in g] for g in generators]
    vv = [Fraction(x) for x in v]
    d = len(vv)
    m = len(gens)
    signs = [(-1 if vv[r] < 0 else 1) for r in range(d)]
    # tableau rows: [y_0..y_{m-1}, a_0..a_{d-1} | rhs]
    width = m + d + 1
    tab = []
    for r in range(d):
        s = signs[r]
        row = [s * gens[i][r] for i in range(m)] + [Fraction(int(r == c)) for c in range(d)] + [s * vv[r]]
        tab.append(row)
    basis = [m + r for r in range(d)]
    # objective: minimise sum of artificials -> reduced costs
    cost = [Fraction(0)] * m + [Fraction(1)] * d + [Fraction(0)]
    red = cost[:]
    for r in range(d):
        red = [x - y for x, y in zip(red, tab[r])]
    while True:
        enter = next((j for j in range(width - 1) if red[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for r in range(d):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:  # pragma: no cover - phase one is bounded below
            break
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        for r in range(d):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[leave])]
        f = red[enter]
        red = [x - f * y for x, y in zip(red, tab[leave])]
        basis[leave] = enter
    objective = -red[-1]
    if objective == 0:
        y = [Fraction(0)] * m
        for r, b in enumerate(basis):
            if b < m:
                y[b] = tab[r][-1]
        return ConicResult(True, weights=tuple(y))
    # duals u_r = cost_a - reduced_cost_a = 1 - red[m + r]; w = -signs * u
    u = [1 - red[m + r] for r in range(d)]
    w = tuple(-signs[r] * u[r] for r in range(d))
    return ConicResult(False, certificate=w)
