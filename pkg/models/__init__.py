"""Data models and schemas for the Rigid Design Toolkit."""

from .schemas import (
    ScalarMode,
    Monomial,
    PointConfiguration,
    DesignVerdict,
    DesignReport,
    PolynomialSystem,
    Assignment,
    RankResult,
    SystemAnalysis,
    FlexResult,
    FlexWitness,
    BoundReport,
    RigidityStatus,
    RigidityCertificate,
    RunConfiguration,
)

__all__ = [
    "ScalarMode",
    "Monomial",
    "PointConfiguration",
    "DesignVerdict",
    "DesignReport",
    "PolynomialSystem",
    "Assignment",
    "RankResult",
    "SystemAnalysis",
    "FlexResult",
    "FlexWitness",
    "BoundReport",
    "RigidityStatus",
    "RigidityCertificate",
    "RunConfiguration",
]
