from typing import Dict, Any
import os
from dotenv import load_dotenv
import json
import logging

from .limits import DEFAULT_LIMITS, Limits

LIMIT_ENV = {
    'max_m': 'MOMENTS_MAX_M',
    'max_vertices': 'MOMENTS_MAX_VERTICES',
    'max_alternating_n': 'MOMENTS_MAX_ALTERNATING_N',
    'max_poset': 'MOMENTS_MAX_POSET',
}


class Settings:
    """Manages configuration settings for the moments toolkit."""

    def __init__(self, config_path: str = None):
        self.logger = logging.getLogger(__name__)
        self.config: Dict[str, Any] = {}
        self.load_env()
        if config_path:
            self.load_config(config_path)

    def load_env(self):
        """Load environment variables from .env file."""
        load_dotenv()

    def load_config(self, config_path: str):
        """
        Load configuration from a JSON file.

        Args:
            config_path: Path to the configuration file
        """
        try:
            with open(config_path, 'r') as f:
                self.config = json.load(f)
            self.logger.info(f"Successfully loaded configuration from {config_path}")
        except Exception as e:
            self.logger.error(f"Failed to load configuration: {str(e)}")
            raise

    def get_limits(self) -> Limits:
        """
        Get enumeration limits.

        Returns:
            Limits from the 'limits' section, with MOMENTS_MAX_* environment overrides
        """
        section = self.config.get('limits', {})
        values = {}
        for key, env_name in LIMIT_ENV.items():
            raw = os.getenv(env_name, section.get(key, getattr(DEFAULT_LIMITS, key)))
            try:
                values[key] = int(raw)
            except (TypeError, ValueError):
                raise ValueError(f"Limit {key} must be an integer, got {raw!r}")
        return Limits(**values)

    def get_simulation_config(self) -> Dict[str, Any]:
        """
        Get Monte Carlo defaults.

        Returns:
            Dictionary with n, trials, seed and workers
        """
        sim_config = dict(self.config.get('simulation', {}))

        # Override with environment variables
        sim_config.update({
            'n': int(os.getenv('MOMENTS_SIM_N', sim_config.get('n', 200))),
            'trials': int(os.getenv('MOMENTS_SIM_TRIALS', sim_config.get('trials', 200))),
            'seed': int(os.getenv('MOMENTS_SEED', sim_config.get('seed', 42))),
            'workers': int(os.getenv('MOMENTS_WORKERS', sim_config.get('workers', 1))),
        })

        return sim_config

    def get_logging_config(self) -> Dict[str, Any]:
        """
        Get logging configuration.

        Returns:
            Dictionary containing logging configuration parameters
        """
        log_config = dict(self.config.get('logging', {}))

        # Override with environment variables
        log_config.update({
            'level': os.getenv('LOG_LEVEL', log_config.get('level', 'WARNING')),
            'file': os.getenv('LOG_FILE', log_config.get('file', 'logs/moments.log')),
            'format': os.getenv('LOG_FORMAT', log_config.get('format',
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
        })

        return log_config
