"""
Experiment plan files: YAML or JSON on disk, ExperimentPlan in memory.
"""

import json
from pathlib import Path
from typing import Dict, Union

import yaml

from ..utils.errors import ConfigError
from .schemas.experiment_schema import ExperimentPlan
from .schemas.optimizer_schema import aae_from_dict, ga_from_dict, spsa_from_dict

_PLAN_SECTIONS = ('spsa', 'ga', 'aae')
_PLAN_FORMATS = {'.yaml': 'yaml', '.yml': 'yaml', '.json': 'json'}


class ConfigLoader:
    """
    Loads and validates declarative configurations.

    Supports YAML and JSON formats.
    """

    @staticmethod
    def plan_format(path: Union[str, Path]) -> str:
        """'yaml' or 'json' from the file suffix."""
        suffix = Path(path).suffix.lower()
        if suffix not in _PLAN_FORMATS:
            raise ConfigError(
                f"Experiment plan {path} has suffix {suffix or '(none)'!r}; "
                f"expected one of {', '.join(sorted(_PLAN_FORMATS))}"
            )
        return _PLAN_FORMATS[suffix]

    @classmethod
    def load_file(cls, path: Union[str, Path]) -> Dict:
        """Parse a plan file into a plain mapping; the plan is not validated here."""
        path = Path(path)
        fmt = cls.plan_format(path)
        try:
            text = path.read_text(encoding='utf-8')
        except FileNotFoundError as exc:
            raise ConfigError(f"Experiment plan not found: {path}") from exc
        try:
            config = yaml.safe_load(text) if fmt == 'yaml' else json.loads(text)
        except (yaml.YAMLError, json.JSONDecodeError) as exc:
            raise ConfigError(f"Experiment plan {path} is not valid {fmt}: {exc}") from exc

        if not isinstance(config, dict):
            raise ConfigError(
                f"Experiment plan {path} must be a mapping of plan fields, "
                f"got {type(config).__name__}"
            )
        return config

    @classmethod
    def save_file(cls, config: Dict, path: Union[str, Path]) -> None:
        """Write a plan mapping with sorted keys, creating parent directories."""
        path = Path(path)
        fmt = cls.plan_format(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == 'yaml':
            text = yaml.safe_dump(config, default_flow_style=False, sort_keys=True)
        else:
            text = json.dumps(config, indent=2, sort_keys=True) + "\n"
        path.write_text(text, encoding='utf-8')

    @staticmethod
    def plan_from_dict(config: Dict) -> ExperimentPlan:
        """Build an ExperimentPlan from a nested mapping."""
        if 'input_path' not in config:
            raise ConfigError("Experiment plan needs an input_path")
        known = set(ExperimentPlan.__dataclass_fields__)
        unknown = set(config) - known
        if unknown:
            raise ConfigError(f"Unknown plan field(s): {', '.join(sorted(unknown))}")

        values = {k: v for k, v in config.items() if k not in _PLAN_SECTIONS}
        try:
            return ExperimentPlan(
                spsa=spsa_from_dict(config.get('spsa')),
                ga=ga_from_dict(config.get('ga')),
                aae=aae_from_dict(config.get('aae')),
                **values,
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"Invalid experiment plan: {exc}") from exc

    @classmethod
    def load_experiment_plan(cls, path: Union[str, Path]) -> ExperimentPlan:
        """Load an experiment plan from configuration file."""
        return cls.plan_from_dict(cls.load_file(path))

    @classmethod
    def save_experiment_plan(cls, plan: ExperimentPlan, path: Union[str, Path]) -> None:
        """Save an experiment plan to configuration file."""
        cls.save_file(plan.to_dict(), path)
