from datetime import datetime
from zoneinfo import ZoneInfo
import os
from dotenv import load_dotenv


class Settings:
    """Settings for the SAW modulator toolkit."""

    def __init__(self):
        # Load environment variables from .env file first
        env_file = os.getenv("ENVIRONMENT_FILE", ".env")
        load_dotenv(env_file)

        self.APP_NAME: str = "saw-modulator"
        self.TIMEZONE: str = os.getenv("SAWMOD_TIMEZONE", "UTC")

        self.LOG_LEVEL: str = os.getenv("SAWMOD_LOG_LEVEL", "WARNING").upper()
        self.LOG_FORMAT: str = "%(asctime)s - %(levelname)s - %(message)s"
        self.LOG_FILE: str | None = os.getenv("SAWMOD_LOG_FILE") or None

        # Rayleigh solver
        self.GRID_POINTS: int = int(os.getenv("SAWMOD_GRID_POINTS", 200))
        self.VELOCITY_RTOL: float = float(os.getenv("SAWMOD_VELOCITY_RTOL", 1e-12))
        self.RESIDUAL_THRESHOLD: float = float(
            os.getenv("SAWMOD_RESIDUAL_THRESHOLD", 1e-8)
        )

        # Overlap quadrature
        self.QUADRATURE_ORDER: int = int(os.getenv("SAWMOD_QUADRATURE_ORDER", 64))
        self.QUADRATURE_RTOL: float = float(os.getenv("SAWMOD_QUADRATURE_RTOL", 1e-4))

        # Drive and V_pi conventions
        self.Z0_OHM: float = float(os.getenv("SAWMOD_Z0_OHM", 50.0))
        self.K_OPT_CONVENTION: str = os.getenv("SAWMOD_K_OPT_CONVENTION", "vacuum")

        self.FIT_MAX_NFEV: int = int(os.getenv("SAWMOD_FIT_MAX_NFEV", 2000))
        self.SWEEP_WORKERS: int = int(os.getenv("SAWMOD_SWEEP_WORKERS", 4))

    def get_current_time(self) -> datetime:
        """
        Returns the current time in the specified timezone.
        """
        return datetime.now(ZoneInfo(self.TIMEZONE))


settings = Settings()
