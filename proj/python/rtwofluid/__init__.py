from ._rtwofluid import (
    Config,
    ConfigError,
    SolverError,
    case_names,
    convergence,
    default_config,
    parse_config,
    parse_config_text,
    read_snapshot,
    run,
)

__all__ = [
    "Config",
    "ConfigError",
    "SolverError",
    "case_names",
    "convergence",
    "default_config",
    "parse_config",
    "parse_config_text",
    "read_snapshot",
    "run",
]
