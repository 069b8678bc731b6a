"""Pipelines that orchestrate the library modules and write reports."""

from folnerkit.services.construction_service import ConstructionService, thm3_construction_demo
from folnerkit.services.experiment_service import ExperimentService, RunResult, load_config
from folnerkit.services.rate_service import rate_point, rate_report
from folnerkit.services.report_service import ReportService
from folnerkit.services.verification_service import VerificationService, verify_suite

__all__ = [
    "ConstructionService",
    "ExperimentService",
    "ReportService",
    "RunResult",
    "VerificationService",
    "load_config",
    "rate_point",
    "rate_report",
    "thm3_construction_demo",
    "verify_suite",
]
