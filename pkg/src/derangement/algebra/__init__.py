"""Exact arithmetic over Z[q] and Q(q) with sign semantics on q > 1."""

from derangement.algebra.linalg import bareiss_rank, nullspace_ratfunc
from derangement.algebra.poly import (
    ONE,
    ZERO,
    InexactDivision,
    IntPoly,
    signed_q_factorial,
    poly_gcd,
    q_binomial,
)
from derangement.algebra.ratfunc import RAT_ONE, RAT_ZERO, RatFunc
from derangement.algebra.sign import (
    Order,
    PreconditionViolation,
    Sign,
    SignVerdict,
    ratfunc_cmp_q_gt_1,
    ratfunc_sign,
    sign_on_q_gt_1,
)

__all__ = [
    "ONE", "ZERO", "RAT_ONE", "RAT_ZERO", "IntPoly", "RatFunc", "InexactDivision",
    "Order", "PreconditionViolation", "Sign", "SignVerdict", "bareiss_rank",
    "nullspace_ratfunc", "signed_q_factorial", "poly_gcd", "q_binomial",
    "ratfunc_cmp_q_gt_1", "ratfunc_sign", "sign_on_q_gt_1",
]
