"""Configuration management for the q-Schur engine.

This module handles all configuration settings including:
- Environment variables loading
- Default run parameters (n, r, ell, p)
- Counting and interpolation budgets
- Cache, output and logging settings
"""

import logging
import os
from pathlib import Path
from typing import List, Optional

import sympy

try:
    from dotenv import load_dotenv
    # Load environment variables from .env file
    load_dotenv()
except ImportError:
    # python-dotenv not available, continue without it
    def load_dotenv():
        pass
    load_dotenv()


class ConfigError(ValueError):
    """Raised when run parameters are incompatible."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration or table build exceeds the configured budget."""


class Config:
    """Central configuration class for the q-Schur engine."""

    def __init__(self):
        """Initialize configuration with environment variables and defaults."""
        # Project paths
        self.project_root = Path(__file__).parent.parent
        self.data_dir = self.project_root / "data"
        self.logs_dir = self.data_dir / "logs"
        self.cache_dir = Path(
            os.getenv("QSCHUR_CACHE", str(self.data_dir / "cache"))
        )
        self.outputs_dir = Path(
            os.getenv("QSCHUR_OUTPUT_DIR", str(self.data_dir / "outputs"))
        )

        # Default run parameters
        self.n = int(os.getenv("QSCHUR_N", "2"))
        self.r = int(os.getenv("QSCHUR_R", "2"))
        self.ell = int(os.getenv("QSCHUR_ELL", "2"))
        self.l_choice = os.getenv("QSCHUR_L_CHOICE", "ell")
        self.p = int(os.getenv("QSCHUR_P", "2"))

        # Counting budgets
        self.max_q = int(os.getenv("QSCHUR_MAX_Q", "64"))
        self.enum_budget = int(os.getenv("QSCHUR_ENUM_BUDGET", str(10**7)))
        self.held_out_budget = int(os.getenv("QSCHUR_HELD_OUT_BUDGET", "2000"))
        self.max_r = {
            2: int(os.getenv("QSCHUR_MAX_R_N2", "6")),
            3: int(os.getenv("QSCHUR_MAX_R_N3", "3")),
        }

        # Processing Configuration
        self.max_workers = int(os.getenv("MAX_WORKERS", "1"))

        # Logging
        self.log_level = os.getenv("LOG_LEVEL", "INFO")
        self.log_format = os.getenv("LOG_FORMAT", "json")

    def ensure_dirs(self) -> None:
        """Create the data directories used by the CLI."""
        for dir_path in [self.data_dir, self.logs_dir, self.cache_dir, self.outputs_dir]:
            dir_path.mkdir(parents=True, exist_ok=True)

    def resolve_l(self, ell: int, choice: Optional[str] = None) -> int:
        """Return the cyclotomic index l for a given ell.

        Even ell always uses l = 2*ell; odd ell honours ``choice``
        ("ell" or "2ell"), falling back to ``self.l_choice``.
        """
        if ell < 1:
            raise ConfigError(f"ell must be positive, got {ell}")
        if ell % 2 == 0:
            return 2 * ell
        choice = (choice or self.l_choice).lower()
        if choice not in ("ell", "2ell"):
            raise ConfigError(f"l choice must be 'ell' or '2ell', got {choice!r}")
        return ell if choice == "ell" else 2 * ell

    def validate_run(
        self,
        n: int,
        r: int,
        ell: Optional[int] = None,
        p: Optional[int] = None,
        fm: bool = False,
    ) -> None:
        """Check parameter compatibility for a run.

        Raises:
            ConfigError: on incompatible parameters
        """
        if n < 2:
            raise ConfigError(f"n must be at least 2, got {n}")
        if r < 1:
            raise ConfigError(f"r must be at least 1, got {r}")
        if ell is not None and ell < 1:
            raise ConfigError(f"ell must be positive, got {ell}")
        if fm:
            if n != 2:
                raise ConfigError("Fayers-Martin comparison requires n = 2")
            if p is None or not sympy.isprime(p):
                raise ConfigError(f"Fayers-Martin comparison requires a prime p, got {p}")
            if ell is not None and ell != p:
                raise ConfigError(f"Fayers-Martin comparison requires ell = p, got ell={ell}, p={p}")

    def check_budget(self, n: int, r: int) -> None:
        """Raise if (n, r) is outside the supported table sizes."""
        limit = self.max_r.get(n)
        if limit is None or r > limit:
            raise BudgetExceededError(
                f"S(n={n}, r={r}) is outside the configured budget "
                f"(supported: {', '.join(f'n={k}: r<={v}' for k, v in sorted(self.max_r.items()))})"
            )

    def q_candidates(self) -> List[int]:
        """Ascending prime powers up to ``max_q``."""
        return [q for q in range(2, self.max_q + 1) if len(sympy.factorint(q)) == 1]

    def table_path(self, n: int, r: int) -> Path:
        """Cache file for the structure table of S(n, r)."""
        return self.cache_dir / f"table_n{n}_r{r}.json"

    def setup_logging(self) -> logging.Logger:
        """Setup logging configuration.

        Handlers go on the application logger ``qschur`` and on the ``src``
        package logger, so module loggers created with ``__name__`` share them.
        """
        logger = logging.getLogger("qschur")
        package_logger = logging.getLogger("src")
        level = getattr(logging, self.log_level.upper())
        logger.setLevel(level)
        package_logger.setLevel(level)

        if not logger.handlers:
            self.logs_dir.mkdir(parents=True, exist_ok=True)
            # Create file handler
            log_file = self.logs_dir / "qschur.log"
            file_handler = logging.FileHandler(log_file)

            # Create console handler
            console_handler = logging.StreamHandler()

            # Create formatter
            if self.log_format.lower() == "json":
                formatter = logging.Formatter(
                    '{"timestamp": "%(asctime)s", "level": "%(levelname)s", '
                    '"module": "%(name)s", "message": "%(message)s"}'
                )
            else:
                formatter = logging.Formatter(
                    "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
                )

            file_handler.setFormatter(formatter)
            console_handler.setFormatter(formatter)

            for target in (logger, package_logger):
                target.addHandler(file_handler)
                target.addHandler(console_handler)

        return logger


# Global configuration instance
config = Config()
