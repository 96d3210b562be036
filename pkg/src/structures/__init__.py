"""Structures module initialization."""
from .errors import (
    StructureError, DegenerateError, PreconditionError, LiftRejected, InternalConsistencyError
)
from .report import Grade, CheckResult, VerificationReport, combine, weakest_grade
from .linsolve import solve_linear, solve_interior
from .lcs import LcsData, check_lcs
from .lrj import (
    LrjData, HamiltonianPair, ContactKind, Classification, JacobiBracket,
    check_rho_alpha_condition, check_lrj_D, reeb, decompose, kernel_basis,
    check_module_isos, hamiltonian_ops, jacobi_bracket, check_jacobi_bracket,
    volume_check, check_conformal_exactness, classify
)
from .contact import ContactData, LiftedContact, contact_data_check, lift_constraint, lift_contact

__all__ = [
    "StructureError", "DegenerateError", "PreconditionError", "LiftRejected",
    "InternalConsistencyError",
    "Grade", "CheckResult", "VerificationReport", "combine", "weakest_grade",
    "solve_linear", "solve_interior",
    "LcsData", "check_lcs",
    "LrjData", "HamiltonianPair", "ContactKind", "Classification", "JacobiBracket",
    "check_rho_alpha_condition", "check_lrj_D", "reeb", "decompose", "kernel_basis",
    "check_module_isos", "hamiltonian_ops", "jacobi_bracket", "check_jacobi_bracket",
    "volume_check", "check_conformal_exactness", "classify",
    "ContactData", "LiftedContact", "contact_data_check", "lift_constraint", "lift_contact"
]
