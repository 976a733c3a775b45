"""The derangement cone: tau basis, extreme rays and feasibility checks."""

from derangement.cone.analysis import (
    ConeReport,
    analyze,
    branch_tau_check,
    canonical_ray,
    is_extreme,
    is_extreme_psi,
    rank_blocks,
    stable_tau,
    stable_tau_psi,
    tau_star_7,
    tau_star_7_psi,
    tau_star_coefficients,
    unipotent_conjecture_probe,
)
from derangement.cone.dd import NotPointed, extreme_rays
from derangement.cone.elimination import (
    BudgetExceeded,
    ConeBasis,
    NoUniformMinimizer,
    decompose_in_taus,
    eigendiagrams,
    eliminate,
    reconstruct_psi,
)
from derangement.cone.lp import ConicResult, conic_feasibility

__all__ = [
    "BudgetExceeded", "ConeBasis", "ConeReport", "ConicResult", "NoUniformMinimizer",
    "NotPointed", "analyze", "branch_tau_check", "canonical_ray", "conic_feasibility",
    "decompose_in_taus", "eigendiagrams", "eliminate", "extreme_rays", "is_extreme",
    "is_extreme_psi", "rank_blocks", "reconstruct_psi", "stable_tau", "stable_tau_psi",
    "tau_star_7", "tau_star_7_psi", "tau_star_coefficients", "unipotent_conjecture_probe",
]
