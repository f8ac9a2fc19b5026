"""
Pipeline configuration using Pydantic Settings

Values come from CLI flags (highest priority) and a flat key-value config
file. Environment variables are deliberately not a source.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Type, Union

from pydantic import Field, ValidationError, field_validator
from pydantic.fields import FieldInfo
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from app.core.exceptions import ConfigurationException, ImageIOException

Threshold = Union[int, str]


def parse_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Parse `key = value` lines; `#` starts a comment, dashes fold to underscores"""
    values: Dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ImageIOException(str(path), exc.strerror or str(exc)) from exc

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationException(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_").lower()] = value
    return values


class KeyValueFileSource(PydanticBaseSettingsSource):
    """Settings source backed by a flat key-value file"""

    def __init__(self, settings_cls: Type[BaseSettings], path: Optional[Path]):
        super().__init__(settings_cls)
        self._values = parse_config_file(path) if path else {}
        unknown = set(self._values) - set(settings_cls.model_fields)
        if unknown:
            raise ConfigurationException(f"Unknown config keys: {sorted(unknown)}")

    def get_field_value(self, field: FieldInfo, field_name: str) -> Tuple[Any, str, bool]:
        return self._values.get(field_name), field_name, False

    def __call__(self) -> Dict[str, Any]:
        return dict(self._values)


class PipelineSettings(BaseSettings):
    """Segmentation pipeline and runtime settings"""

    model_config = SettingsConfigDict(
        extra="forbid",
        validate_default=True,
        frozen=True,
    )

    # Hierarchy
    method: int = Field(default=1, ge=1, le=2)

    # Preprocessing
    alpha_s: Threshold = Field(default="auto")
    alpha_l: Threshold = Field(default="auto")
    open_radius: int = Field(default=1, ge=1)

    # Structured layers
    beta_layer1: float = Field(default=1.8, ge=0.0)
    beta_layer2: float = Field(default=1.8, ge=0.0)
    iterations: int = Field(default=2, ge=1)

    # Unstructured layer
    k: int = Field(default=3, ge=1)
    beta_u: float = Field(default=1.0, ge=0.0)

    # Runtime
    stride: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0)
    threads: int = Field(default=1, ge=1)
    out: Path = Field(default=Path("out"))
    log_level: str = Field(default="info", pattern="^(debug|info|warning|error)$")
    log_json: bool = Field(default=False)

    @field_validator("alpha_s", "alpha_l", mode="before")
    @classmethod
    def parse_threshold(cls, v):
        if isinstance(v, str):
            v = v.strip().lower()
            if v == "auto":
                return v
            if not v.lstrip("-").isdigit():
                raise ValueError("threshold must be 0..255 or 'auto'")
            v = int(v)
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v <= 255:
            raise ValueError("threshold must be 0..255 or 'auto'")
        return v

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings, KeyValueFileSource(settings_cls, _config_path.get()))

    def with_overrides(self, **overrides: Any) -> "PipelineSettings":
        """Validated copy with some fields replaced"""
        return load_settings(None, **{**self.model_dump(), **overrides})


class _ConfigPath:
    """Holds the config file path for the duration of one settings build"""

    def __init__(self):
        self._path: Optional[Path] = None

    def get(self) -> Optional[Path]:
        return self._path

    def set(self, path: Optional[Path]) -> None:
        self._path = path


_config_path = _ConfigPath()


def load_settings(config_path: Optional[Union[str, Path]] = None, **overrides: Any) -> PipelineSettings:
    """Build settings from an optional config file and explicit overrides"""
    clean = {k: v for k, v in overrides.items() if v is not None}
    _config_path.set(Path(config_path) if config_path else None)
    try:
        return PipelineSettings(**clean)
    except ValidationError as exc:
        errors = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
        )
        raise ConfigurationException(f"Invalid configuration: {errors}") from exc
    finally:
        _config_path.set(None)
