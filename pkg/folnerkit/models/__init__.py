"""Serialisable records produced by folnerkit."""

from folnerkit.models.construction import ConstructionReport, ConstructionStage
from folnerkit.models.diagnostics import FolnerReport, GrowthRow, RatioRow, TemperednessReport
from folnerkit.models.entropy import CurvePoint, EntropyCurve
from folnerkit.models.experiment import ExperimentConfig
from folnerkit.models.rate import RateReport, RatePoint, VariationalBound
from folnerkit.models.tiling import TilingCertificate, TilingRecord
from folnerkit.models.verification import CheckResult, VerificationSummary

__all__ = [
    "CheckResult",
    "ConstructionReport",
    "ConstructionStage",
    "CurvePoint",
    "EntropyCurve",
    "ExperimentConfig",
    "FolnerReport",
    "GrowthRow",
    "RatePoint",
    "RateReport",
    "RatioRow",
    "TemperednessReport",
    "TilingCertificate",
    "TilingRecord",
    "VariationalBound",
    "VerificationSummary",
]
