"""Claim registry, verdict reports, divisor-sum checks and induction sequences."""

from .claims import REGISTRY, AuditContext, Claim, claim_ids, get_claim, run_all, run_claim
from .divisors import harmonic_numbers, lagarias_check, robin_check
from .induction import InductionSequence, build_induction_sequence, step_count_bound
from .report import AuditReport, Violation, emit_report, from_json, grade, to_csv, to_json, worst_verdict

__all__ = [
    "REGISTRY", "AuditContext", "Claim", "claim_ids", "get_claim", "run_all", "run_claim",
    "harmonic_numbers", "lagarias_check", "robin_check",
    "InductionSequence", "build_induction_sequence", "step_count_bound",
    "AuditReport", "Violation", "emit_report", "from_json", "grade", "to_csv", "to_json", "worst_verdict",
]
