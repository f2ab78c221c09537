import os
from dataclasses import dataclass, field
from typing import Optional, Tuple

from dotenv import load_dotenv

from ..utils.errors import ConfigError


@dataclass
class FuelConfig:
    src_fuel: int = 500
    tgt_fuel: int = 20000  # cc adds let/open overhead per source step


@dataclass
class GenCfg:
    seed: int = 0
    max_size: int = 24
    type_target: Optional[object] = None  # SrcType; None picks a random type
    fuel: int = 500  # source steps a campaign program gets to terminate
    max_type_depth: int = 2


@dataclass
class EquivCfg:
    fuel: int = 20000
    samples: int = 4
    value_corpus: Tuple = ()  # (source value, target value, source type)
    tgt_corpus: Tuple = ()    # (target value, target value, target type)
    seed: int = 0

    def __post_init__(self):
        if self.fuel <= 0:
            raise ConfigError(f"fuel must be positive, got {self.fuel}")
        if self.samples < 0:
            raise ConfigError(f"samples must be non-negative, got {self.samples}")


@dataclass
class CampaignConfig:
    count: int = 1000
    workers: int = 1
    shrink: bool = True
    progress: bool = False
    emit_dir: Optional[str] = None
    fuel: FuelConfig = field(default_factory=FuelConfig)


class PipelineConfig:
    PASSES = ('cc', 'hoist', 'cps')
    CAMPAIGN_PASSES = ('cc', 'cc+hoist', 'cps')
    SOURCE_SUFFIX = '.fsrc'
    TARGET_SUFFIX = '.ftgt'


class ReportConfig:
    SCHEMA_VERSION = 1


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == '':
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value <= 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def load_env_overrides(fuel: Optional[FuelConfig] = None) -> FuelConfig:
    """Apply ``FCC_FUEL`` (from the environment or a ``.env`` file)."""
    load_dotenv()
    fuel = fuel or FuelConfig()
    override = _env_int('FCC_FUEL')
    if override is not None:
        fuel.src_fuel = override
    return fuel


def env_log_settings() -> Tuple[str, Optional[str]]:
    load_dotenv()
    return os.environ.get('FCC_LOG_LEVEL', 'WARNING'), os.environ.get('FCC_LOG_FILE') or None
