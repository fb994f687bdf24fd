from __future__ import annotations

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    ENV: str = "dev"
    LOG_LEVEL: str = "WARNING"

    # Ground field used when an input file has no `field` line: "Q" or "F<p>".
    FIELD: str = "Q"

    # Homological bound for resolutions, certificates and horseshoes.
    N_MAX: int = 8

    # Lab generators
    RESAMPLE_BUDGET: int = 64
    AUDIT_WORKERS: int = 1  # >1 runs trials in a process pool

    JOURNAL_PATH: str = "state/audit_events.jsonl"
    COUNTEREXAMPLE_DIR: str = "state/counterexamples"

    # Fixed render width keeps CLI output byte-stable across terminals.
    CONSOLE_WIDTH: int = 100


def get_settings() -> Settings:
    return Settings()
