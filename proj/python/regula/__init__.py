"""Commitment protocols with temporal regulations.

Parse protocols and regulation expressions, monitor event traces with
four-valued verdicts, follow commitment lifecycles, and analyze
control, safety and norm-compatibility.
"""

from ._core import (
    EngineError,
    Protocol,
    Regulation,
    TraceSession,
    compatible_check,
    compatible_check_commitment,
    eval_on_trace,
    parse_protocol,
    parse_regulation,
    run_cli,
    safe_hypothetical,
    scenario_files,
    scenario_names,
)

__version__ = "0.1.0"

__all__ = [
    "EngineError",
    "Protocol",
    "Regulation",
    "TraceSession",
    "compatible_check",
    "compatible_check_commitment",
    "eval_on_trace",
    "parse_protocol",
    "parse_regulation",
    "run_cli",
    "safe_hypothetical",
    "scenario_files",
    "scenario_names",
    "__version__",
]
