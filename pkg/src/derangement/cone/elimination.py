"""The elimination algorithm producing the tau basis of D_n."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

from derangement.algebra.ratfunc import RAT_ONE, RAT_ZERO, RatFunc
from derangement.algebra.sign import Order, ratfunc_cmp_q_gt_1
from derangement.characters import BlockVector, PsiCoeffs, psi_block, to_blocks
from derangement.partitions import Partition


class NoUniformMinimizer(ArithmeticError):
    """No ratio is <= every other ratio for all q > 1."""

    def __init__(self, k: int, j: int, candidates: Sequence[Partition]):
        self.k, self.j, self.candidates = k, j, list(candidates)
        names = ", ".join(str(c) for c in self.candidates)
        super().__init__(f"no uniform minimiser at step k={k}, j={j}; candidates: {names}")


class BudgetExceeded(RuntimeError):
    """A cooperative time budget ran out."""


@dataclass(frozen=True)
class ConeBasis:
    """tau_0..tau_n together with psi_k = sum_j transition[k][j] tau_j."""

    n: int
    taus: tuple[BlockVector, ...]
    transition: tuple[tuple[RatFunc, ...], ...]
    witnesses: tuple[tuple[Optional[Partition], ...], ...] = ()

    def tau_in_psi(self) -> list[PsiCoeffs]:
        """Each tau_k as a psi-combination (inverting the unit lower-triangular transition)."""
        n = self.n
        rows: list[list[RatFunc]] = []
        for k in range(n + 1):
            # tau_k = psi_k - sum_{j<k} a[k][j] tau_j
            row = [RAT_ZERO] * (n + 1)
            row[k] = RAT_ONE
            for j in range(k):
                a = self.transition[k][j]
                if a.is_zero():
                    continue
                row = [x - a * y for x, y in zip(row, rows[j])]
            rows.append(row)
        return [PsiCoeffs(n, tuple(r)) for r in rows]


def uniform_minimum(
    ratios: Sequence[tuple[Partition, RatFunc]],
    cmp: Callable[[RatFunc, RatFunc], Order] = ratfunc_cmp_q_gt_1,
) -> Optional[tuple[Partition, RatFunc]]:
    """The entry whose ratio is <= all others on q > 1, or None.

    A linear scan proposes a champion; if it fails verification every
    entry is tried, so a uniform minimiser is found whenever one exists.
    """
    if not ratios:
        return None
    distinct: dict[RatFunc, Partition] = {}
    for lam, r in ratios:
        distinct.setdefault(r, lam)
    items = [(lam, r) for r, lam in distinct.items()]
    if len(items) == 1:
        return items[0]

    champ = items[0]
    for cand in items[1:]:
        o = cmp(cand[1], champ[1])
        if o is Order.LESS:
            champ = cand

    def beats_all(c) -> bool:
        return all(c is other or cmp(c[1], other[1]) in (Order.LESS, Order.EQUAL) for other in items)

    if beats_all(champ):
        return champ
    for c in items:
        if c is not champ and beats_all(c):
            return c
    return None


def eliminate(n: int, deadline: Optional[Callable[[], None]] = None) -> ConeBasis:
    """Run the elimination algorithm at level n.

    ``deadline`` is called once per diagram-level step and may raise
    :class:`BudgetExceeded`.
    """
    if deadline is None:
        return _eliminate_cached(n)
    return _eliminate(n, deadline)


@lru_cache(maxsize=None)
def _eliminate_cached(n: int) -> ConeBasis:
    return _eliminate(n, None)


def _eliminate(n: int, deadline) -> ConeBasis:
    taus: list[BlockVector] = [psi_block(n, 0)]
    transition: list[tuple[RatFunc, ...]] = [(RAT_ONE,) + (RAT_ZERO,) * n]
    witnesses: list[tuple[Optional[Partition], ...]] = [()]
    for k in range(1, n + 1):
        cur = psi_block(n, k)
        row = [RAT_ZERO] * (n + 1)
        row[k] = RAT_ONE
        wit: list[Optional[Partition]] = []
        for j in range(1, k + 1):
            prev = taus[j - 1]
            ratios = []
            for lam, d in prev.items():
                if deadline is not None:
                    deadline()
                ratios.append((lam, cur[lam] / d))
            best = uniform_minimum(ratios)
            if best is None:
                raise NoUniformMinimizer(k, j - 1, [lam for lam, _ in ratios])
            lam_star, a = best
            wit.append(lam_star)
            row[j - 1] = a
            if not a.is_zero():
                cur = cur - prev.scale(a)
        taus.append(cur)
        transition.append(tuple(row))
        witnesses.append(tuple(wit))
    return ConeBasis(n, tuple(taus), tuple(transition), tuple(witnesses))


def reconstruct_psi(basis: ConeBasis, k: int) -> BlockVector:
    """sum_j transition[k][j] * tau_j, which must equal psi_block(n, k)."""
    acc = BlockVector(basis.n)
    for j, a in enumerate(basis.transition[k]):
        if not a.is_zero():
            acc = acc + basis.taus[j].scale(a)
    return acc


def decompose_in_taus(basis: ConeBasis, f: PsiCoeffs) -> list[RatFunc]:
    """Coordinates of a psi-combination over tau_0..tau_n."""
    n = basis.n
    out = [RAT_ZERO] * (n + 1)
    for k, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        for j, a in enumerate(basis.transition[k]):
            if not a.is_zero():
                out[j] = out[j] + c * a
    return out


def eigendiagrams(basis: Sequence[BlockVector]) -> dict[int, Optional[Partition]]:
    """For each member, the first (canonical order) support diagram unique to it."""
    supports = [f.support() for f in basis]
    out: dict[int, Optional[Partition]] = {}
    for i, f in enumerate(basis):
        others = frozenset().union(*(s for j, s in enumerate(supports) if j != i))
        found = None
        for lam, _ in f.items():
            if lam not in others:
                found = lam
                break
        out[i] = found
    return out
