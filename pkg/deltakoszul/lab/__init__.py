from deltakoszul.lab.generators import GenParams, random_algebra, random_module, random_ses, ses_from_vectors
from deltakoszul.lab.runner import SUITES, AuditReport, ReplayResult, Trial, evaluate_suite, replay, run_audit, run_trial

__all__ = [
    "SUITES",
    "AuditReport",
    "GenParams",
    "ReplayResult",
    "Trial",
    "evaluate_suite",
    "random_algebra",
    "random_module",
    "random_ses",
    "replay",
    "run_audit",
    "run_trial",
    "ses_from_vectors",
]
