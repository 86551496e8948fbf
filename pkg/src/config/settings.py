"""Configuration settings for the ranking engine."""
from pydantic_settings import BaseSettings
from src import __version__


class Settings(BaseSettings):
    """Application settings."""

    # Judgment matrix validation
    reciprocity_tolerance: float = 1e-6     # |m_ij * m_ji - 1|
    consistency_tolerance: float = 1e-6     # |m_ij * m_jk * m_ki - 1|
    diagonal_tolerance: float = 1e-9        # relative, m_ii vs 1

    # Dense linear algebra
    singular_threshold: float = 1e-12       # relative to the largest entry magnitude
    power_iteration_tol: float = 1e-10
    power_iteration_max_iter: int = 10000

    # Ranking
    default_method: str = "hre-geom"        # "hre-geom" | "hre-arith" | "ev" | "gm"
    default_base: float = 10.0              # matches the worked examples
    output_precision: int = 6               # significant digits in reports

    # Optimality diagnostics
    definiteness_tolerance: float = 1e-10   # min eigenvalue relative to max eigenvalue
    finite_difference_step: float = 1e-6    # relative to each coordinate

    # Simulation
    scale_bound: float = 9.0                # judgments clamped to [1/S, S]
    simulation_workers: int = 1

    # Server Configuration
    server_host: str = "0.0.0.0"  # nosec B104
    server_port: int = 8000
    debug: bool = False

    # Application metadata
    app_name: str = "HRE Ranking Engine"
    app_version: str = __version__
    app_description: str = (
        "Priority derivation for pairwise comparisons with a reference set:"
        " geometric and arithmetic heuristic rating estimation, classic methods"
        " and consistency diagnostics"
    )

    model_config = {
        "env_file": ".env",
        "env_prefix": "HRE_",
        "case_sensitive": False
    }


settings = Settings()
