"""Application settings."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration settings."""

    log_level: str = "INFO"
    output_dir: str = "out"
    seed: int = 0
    solver_tol: float = 1e-8
    compare_tol: float = 1e-9
    solver_maxiter: int = 10000
    dense_solver_limit: int = 600  # dofs up to which the dense eigensolver is used
    tile_catalog_file: str = "data/tiles.conf"

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=False,
        env_prefix="ISOSPEC_",
        extra="ignore",
    )


settings = Settings()
