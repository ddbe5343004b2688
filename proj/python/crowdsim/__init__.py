"""Agent-based simulator of knowledge generation by IT-mediated crowds."""

from ._crowdsim import (
    Agent,
    EventKind,
    FilterPolicy,
    ItForm,
    Report,
    RunResult,
    Scenario,
    ScenarioError,
    Submission,
    Task,
    UsageError,
    ValidationError,
    filter_submissions,
    is_complete,
    load_scenario,
    make_agent,
    make_task,
    parse_report_json,
    parse_scenario,
    run,
    sweep,
    validate,
)

__all__ = [
    "Agent",
    "EventKind",
    "FilterPolicy",
    "ItForm",
    "Report",
    "RunResult",
    "Scenario",
    "ScenarioError",
    "Submission",
    "Task",
    "UsageError",
    "ValidationError",
    "filter_submissions",
    "is_complete",
    "load_scenario",
    "make_agent",
    "make_task",
    "parse_report_json",
    "parse_scenario",
    "run",
    "sweep",
    "validate",
]
