import json
import os
from typing import Optional, Dict, Any

from ..core.errors import ProfileError
from ..core.profiles import VarianceProfile, label_profiles_from_config


class ConfigLoader:
    """Load profile and run configuration from JSON, JSON5 or YAML files."""

    def __init__(self, default_config_path: Optional[str] = None):
        self.default_path = default_config_path
        self.yaml_available = False
        self.json5_available = False

        # Optional parsers
        try:
            import yaml
            self.yaml = yaml
            self.yaml_available = True
        except ImportError:
            self.yaml = None
        try:
            import json5
            self.json5 = json5
            self.json5_available = True
        except ImportError:
            self.json5 = None

    def load(self, config_path: Optional[str] = None) -> Dict[str, Any]:
        """
        Load configuration from file.

        Args:
            config_path: Path to config file. If None, use default_path.

        Returns:
            Configuration dictionary

        Raises:
            FileNotFoundError: If config file doesn't exist
            ValueError: If config file format is not supported or invalid
        """
        path = config_path or self.default_path

        if not path:
            raise ValueError("No configuration file path provided")

        if not os.path.exists(path):
            raise FileNotFoundError(f"Configuration file not found: {path}")

        _, ext = os.path.splitext(path)
        ext = ext.lower()

        if ext == '.json':
            return self._load_json(path)
        elif ext == '.json5':
            return self._load_json5(path)
        elif ext in ['.yaml', '.yml']:
            return self._load_yaml(path)
        else:
            raise ValueError(f"Unsupported config file format: {ext}")

    def _load_json(self, path: str) -> Dict[str, Any]:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                config = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid JSON in config file: {e}")
        if not isinstance(config, dict):
            raise ValueError("Config file must contain a JSON object")
        return config

    def _load_json5(self, path: str) -> Dict[str, Any]:
        if not self.json5_available:
            raise ValueError("JSON5 support not available. Install json5: pip install json5")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                config = self.json5.load(f)
        except Exception as e:
            raise ValueError(f"Error loading JSON5 config: {e}")
        if not isinstance(config, dict):
            raise ValueError("Config file must contain a JSON5 object")
        return config

    def _load_yaml(self, path: str) -> Dict[str, Any]:
        if not self.yaml_available:
            raise ValueError("YAML support not available. Install PyYAML: pip install pyyaml")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                config = self.yaml.safe_load(f)
        except Exception as e:
            raise ValueError(f"Error loading YAML config: {e}")
        if not isinstance(config, dict):
            raise ValueError("Config file must contain a YAML mapping/object")
        return config

    def validate_profile(self, config: Dict[str, Any]) -> bool:
        """
        Validate a variance profile document.

        Args:
            config: Profile dictionary {"r": int?, "widths": [...]?, "v": [[...]], "labels": {...}?}

        Returns:
            True if valid

        Raises:
            ProfileError: If a required field is missing or the profile is malformed
        """
        if 'v' not in config:
            raise ProfileError("Required profile field missing: v")
        if not isinstance(config['v'], list) or not all(isinstance(row, list) for row in config['v']):
            raise ProfileError("v must be a list of rows")
        main = VarianceProfile.from_config(config)
        for label, profile in label_profiles_from_config(config).items():
            if profile.widths != main.widths:
                raise ProfileError(f"Profile for label {label} must share the block widths")
        return True

    def load_profile(self, config_path: Optional[str] = None) -> Dict[str, Any]:
        """Load and validate a variance profile file."""
        config = self.load(config_path)
        self.validate_profile(config)
        return config
