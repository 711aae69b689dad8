"""
Data models module for type definitions and data structures.
"""

from .data_models import (
    Certificate,
    CommandResult,
    ConservedFamily,
    ConservedTriple,
    ConstantsEstimate,
    ConvergenceStudy,
    EquivalenceReport,
    Grid,
    GridFunction,
    HodographFields,
    InitialDataKind,
    InitialDataSpec,
    KernelBoundsRow,
    KernelSample,
    NormRatio,
    NormReport,
    PhiMinimum,
    PicardReport,
    PropagatorMode,
    PropagatorPlan,
    RunConfig,
    ScaledFields,
    SgState,
    StepperConfig,
    StepperKind,
    StepRule,
    TerminationFlag,
    Trajectory,
    TrajectoryRecord,
    Verdict,
    XFields,
)

__all__ = [
    "Certificate",
    "CommandResult",
    "ConservedFamily",
    "ConservedTriple",
    "ConstantsEstimate",
    "ConvergenceStudy",
    "EquivalenceReport",
    "Grid",
    "GridFunction",
    "HodographFields",
    "InitialDataKind",
    "InitialDataSpec",
    "KernelBoundsRow",
    "KernelSample",
    "NormRatio",
    "NormReport",
    "PhiMinimum",
    "PicardReport",
    "PropagatorMode",
    "PropagatorPlan",
    "RunConfig",
    "ScaledFields",
    "SgState",
    "StepperConfig",
    "StepperKind",
    "StepRule",
    "TerminationFlag",
    "Trajectory",
    "TrajectoryRecord",
    "Verdict",
    "XFields",
]
