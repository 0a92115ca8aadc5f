"""
Metric configuration: validated parameter models, presets and config files
"""
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigError
from .models import ChromaVariant, CombineScheme, GradientVariant, PoolingStrategy


class PoolingConfig(BaseModel):
    """Parameters of the similarity map reduction"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    rho: float = Field(1.0, ge=1.0)
    q: float = Field(0.25, gt=0.0)
    o: float = Field(0.25, gt=0.0)
    strategy: PoolingStrategy = PoolingStrategy.DEVIATION


class MetricConfig(BaseModel):
    """All tunable constants and variant switches of the metric"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float = Field(0.6, ge=0.0, le=1.0)
    c1: float = Field(140.0, gt=0.0)
    c2: float = Field(55.0, gt=0.0)
    c3: float = Field(550.0, gt=0.0)
    gradient_variant: GradientVariant = GradientVariant.FUSED
    chroma_variant: ChromaVariant = ChromaVariant.JOINT_CS_HAT
    combine: CombineScheme = CombineScheme.SUMMATION
    gamma: float = Field(0.2, gt=0.0)
    beta: float = Field(0.1, gt=0.0)
    pooling: PoolingConfig = Field(default_factory=PoolingConfig)

    def to_flat_dict(self) -> Dict[str, Any]:
        """Flat key/value view, pooling fields inlined"""
        data = self.model_dump(mode="json")
        pooling = data.pop("pooling")
        data.update(pooling)
        return data

    @classmethod
    def from_flat_dict(cls, values: Mapping[str, Any]) -> "MetricConfig":
        """Build from flat keys; pooling keys may be mixed in with metric keys"""
        metric: Dict[str, Any] = {}
        pooling: Dict[str, Any] = {}
        for key, value in values.items():
            if key in POOLING_KEYS:
                pooling[key] = value
            elif key in METRIC_KEYS:
                metric[key] = value
            else:
                raise ConfigError(f"unknown configuration key '{key}'")
        try:
            return cls.model_validate({**metric, "pooling": pooling})
        except ValidationError as e:
            raise ConfigError(_validation_message(e)) from e

    def with_options(self, **changes: Any) -> "MetricConfig":
        """Validated copy with flat-key overrides applied"""
        merged = self.to_flat_dict()
        merged.update(changes)
        return MetricConfig.from_flat_dict(merged)


POOLING_KEYS = frozenset(PoolingConfig.model_fields)
METRIC_KEYS = frozenset(MetricConfig.model_fields) - {"pooling"}

PRESETS: Dict[str, MetricConfig] = {
    "mdsi": MetricConfig(),
    "mdsi-conventional": MetricConfig(gradient_variant=GradientVariant.CONVENTIONAL),
    "mdsi-plus": MetricConfig(alpha=0.65, c1=175.0, c2=75.0, c3=500.0),
}


def get_preset(name: str) -> MetricConfig:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset '{name}' (known: {known})") from None


def parse_config_text(text: str, default_preset: str = "mdsi") -> MetricConfig:
    """
    Parse flat ``key = value`` text into a MetricConfig

    Blank lines and ``#`` comments are ignored; ``key: value`` is accepted
    too. A ``preset`` key picks the base configuration the other keys
    override. Without one, default_preset is used.

    Args:
        text: Config file contents

    Returns:
        Validated MetricConfig
    """
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for sep in ("=", ":"):
            if sep in line:
                key, value = line.split(sep, 1)
                break
        else:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{raw.strip()}'")
        key = key.strip().lower()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        values[key] = value.strip()

    base = get_preset(values.pop("preset", default_preset))
    merged = base.to_flat_dict()
    merged.update(values)
    return MetricConfig.from_flat_dict(merged)


def load_config_file(path: Union[str, Path], default_preset: str = "mdsi") -> MetricConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    return parse_config_text(text, default_preset)


def _validation_message(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(p) for p in item["loc"])
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)
