import sys
from pathlib import Path
from typing import Literal

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

from pydantic import Field, computed_field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

_ROOT_DIR = Path(__file__).parent.parent.absolute()
_PACKAGE_DIR = Path(__file__).parent.absolute()


class Settings(BaseSettings):
    """Settings for the chromatic toolkit."""

    model_config = SettingsConfigDict(
        env_prefix="CHROMATIC_",
        env_file=(_ROOT_DIR / "config" / "local.env",),
        extra="ignore",
        env_file_encoding="utf-8",
    )

    # Group arithmetic
    max_order: int = Field(
        default=5000,
        ge=1,
        description="Largest group order a closure may produce before `ClosureExceedsBound` is raised.",
    )

    # Tuple census
    census_cap: int = Field(
        default=10**7,
        ge=1,
        description="Largest number of raw commuting tuples the naive census may materialize.",
    )

    # Concurrency
    threads: int = Field(default=1, ge=1, description="Worker threads for census and cell evaluation.")

    # Logging
    log_level: Literal["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"] = "WARNING"

    # Closed forms
    constants_file: Path = _PACKAGE_DIR / "data" / "constants.json"

    # Verification
    verify_seed: int = Field(default=1729, description="Seed for the randomized checks of `chromatic verify`.")
    verify_max_corpus_order: int = 48

    @computed_field
    @property
    def root_dir(self) -> Path:
        """Get the root directory of the project."""
        return _ROOT_DIR

    @model_validator(mode="after")
    def validate_settings(self) -> Self:
        """Validate the settings."""
        if self.verify_max_corpus_order > self.max_order:
            raise ValueError("verify_max_corpus_order cannot exceed max_order")

        return self


# Create the settings singleton object
settings = Settings()
