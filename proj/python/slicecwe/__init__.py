"""Slice-based cutter-workpiece engagement simulation for flat end mills."""

from ._core import (
    AngularInterval,
    CWERecord,
    CutterLocation,
    EngagementSlice,
    Error,
    GeometryError,
    IoError,
    PerfRecord,
    Region2D,
    SimulationConfig,
    SimulationResult,
    Stock,
    Tool,
    Toolpath,
    ValidationError,
    capsule,
    disk,
    engagement_intervals,
    load_stock,
    load_tool,
    load_toolpath,
    parse_stock,
    parse_tool,
    parse_toolpath,
    run_simulation,
    synthetic_path,
    synthetic_stock,
    synthetic_tool,
    validation_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
