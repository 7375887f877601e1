from pydantic_settings import BaseSettings, SettingsConfigDict

ENV_NONE_PATTERN = ["None", "NONE", "none", ""]


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file="../.env",
        env_file_encoding="utf-8",
        env_prefix="FEETIERS_",
        extra="ignore",
    )

    # Output setting
    OUTPUT_DIR: str | None = None

    # Logging setting
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str | None = None

    # Worker setting
    THREADS: int = 1

    def __init__(self, **kwargs) -> None:
        super().__init__(**kwargs)
        if not self.OUTPUT_DIR or self.OUTPUT_DIR in ENV_NONE_PATTERN:
            self.OUTPUT_DIR = None

        if not self.LOG_DIR or self.LOG_DIR in ENV_NONE_PATTERN:
            self.LOG_DIR = None

        if self.THREADS < 1:
            self.THREADS = 1


settings = Settings()
