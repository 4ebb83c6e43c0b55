import json
import logging
from logging.handlers import RotatingFileHandler
import os
from pathlib import Path
import sys
import tempfile
import unittest
from unittest.mock import patch

from src.config.limits import DEFAULT_LIMITS, Limits
from src.config.loader import ConfigLoader
from src.config.settings import LIMIT_ENV, Settings
from src.core.errors import ProfileError
from src.core.profiles import VarianceProfile, label_profiles_from_config
from src.utils.logging_utils import LoggingUtils

CONFIGS = Path(__file__).resolve().parents[2] / 'configs'
ENV_KEYS = list(LIMIT_ENV.values()) + ['MOMENTS_SIM_N', 'MOMENTS_SIM_TRIALS', 'MOMENTS_SEED', 'MOMENTS_WORKERS',
                                       'LOG_LEVEL', 'LOG_FILE', 'LOG_FORMAT']


class SettingsTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        env = patch.dict(os.environ)
        env.start()
        self.addCleanup(env.stop)
        for key in ENV_KEYS:
            os.environ.pop(key, None)

    def write_config(self, payload):
        path = os.path.join(self.tmp.name, 'config.json')
        with open(path, 'w') as f:
            json.dump(payload, f)
        return path


class TestSettings(SettingsTestCase):
    def test_defaults_without_file(self):
        settings = Settings()
        self.assertEqual(settings.get_limits(), DEFAULT_LIMITS)
        self.assertEqual(settings.get_simulation_config(), {'n': 200, 'trials': 200, 'seed': 42, 'workers': 1})
        self.assertEqual(settings.get_logging_config()['file'], 'logs/moments.log')

    def test_limits_from_file_and_env(self):
        settings = Settings(self.write_config({'limits': {'max_m': 12, 'max_poset': 9}}))
        self.assertEqual(settings.get_limits(), Limits(max_m=12, max_vertices=10, max_alternating_n=6, max_poset=9))
        os.environ['MOMENTS_MAX_M'] = '8'
        self.assertEqual(settings.get_limits().max_m, 8)

    def test_bad_limit_env(self):
        os.environ['MOMENTS_MAX_VERTICES'] = 'many'
        with self.assertRaises(ValueError):
            Settings().get_limits()

    def test_simulation_env_overrides(self):
        settings = Settings(self.write_config({'simulation': {'n': 50, 'trials': 10}}))
        os.environ['MOMENTS_SEED'] = '7'
        os.environ['MOMENTS_WORKERS'] = '3'
        self.assertEqual(settings.get_simulation_config(), {'n': 50, 'trials': 10, 'seed': 7, 'workers': 3})

    def test_logging_env_overrides(self):
        os.environ['LOG_LEVEL'] = 'DEBUG'
        os.environ['LOG_FILE'] = ''
        config = Settings().get_logging_config()
        self.assertEqual(config['level'], 'DEBUG')
        self.assertEqual(config['file'], '')

    def test_missing_file_raises(self):
        with self.assertLogs('src.config.settings', level='ERROR'):
            with self.assertRaises(FileNotFoundError):
                Settings(os.path.join(self.tmp.name, 'absent.json'))

    def test_unbounded_limits(self):
        self.assertGreater(Limits.unbounded().max_m, 10 ** 9)


class TestConfigLoader(SettingsTestCase):
    def test_json_profile(self):
        config = ConfigLoader().load_profile(str(CONFIGS / 'strict_upper_r2.json'))
        self.assertEqual(VarianceProfile.from_config(config), VarianceProfile.create([[0, 1], [0, 0]]))

    def test_json5_profile(self):
        loader = ConfigLoader()
        if not loader.json5_available:
            self.skipTest("json5 not installed")
        profile = VarianceProfile.from_config(loader.load_profile(str(CONFIGS / 'skewed_r3.json5')))
        self.assertEqual(profile.r, 3)
        self.assertEqual(sum(profile.widths), 1)

    def test_yaml_profile_with_labels(self):
        loader = ConfigLoader()
        if not loader.yaml_available:
            self.skipTest("PyYAML not installed")
        config = loader.load_profile(str(CONFIGS / 'two_labels.yaml'))
        labels = label_profiles_from_config(config)
        self.assertEqual(list(labels), [2])
        self.assertEqual(labels[2], VarianceProfile.create([[1, 1], [1, 1]]))

    def test_missing_and_unsupported(self):
        loader = ConfigLoader()
        with self.assertRaises(FileNotFoundError):
            loader.load(os.path.join(self.tmp.name, 'none.json'))
        path = os.path.join(self.tmp.name, 'profile.toml')
        Path(path).write_text('r = 1')
        with self.assertRaises(ValueError):
            loader.load(path)
        with self.assertRaises(ValueError):
            loader.load()

    def test_invalid_json(self):
        path = os.path.join(self.tmp.name, 'broken.json')
        Path(path).write_text('{"v": [[')
        with self.assertRaises(ValueError):
            ConfigLoader().load(path)

    def test_validate_profile(self):
        loader = ConfigLoader()
        self.assertTrue(loader.validate_profile({'r': 1, 'v': [['1']]}))
        with self.assertRaises(ProfileError):
            loader.validate_profile({'r': 1})
        with self.assertRaises(ProfileError):
            loader.validate_profile({'v': '1'})
        with self.assertRaises(ProfileError):
            loader.validate_profile({'r': 2, 'v': [['1']]})
        with self.assertRaises(ProfileError):
            loader.validate_profile({'v': [['0', '1'], ['0', '0']],
                                     'labels': {'2': {'v': [['1', '1'], ['1', '1']], 'widths': ['1/4', '3/4']}}})


class TestVarianceProfile(unittest.TestCase):
    def test_widths_must_sum_to_one(self):
        with self.assertRaises(ProfileError):
            VarianceProfile.create([[1, 1], [1, 1]], widths=['1/2', '1/3'])

    def test_negative_values(self):
        with self.assertRaises(ProfileError):
            VarianceProfile.create([[-1]])

    def test_floats_rejected_in_files(self):
        with self.assertRaises(ProfileError):
            VarianceProfile.from_config({'v': [[0.5]]})

    def test_grid(self):
        self.assertEqual(VarianceProfile.grid('strict-upper', 3).values, ((0, 1, 1), (0, 0, 1), (0, 0, 0)))
        self.assertEqual(VarianceProfile.grid('lower', 2).values, ((0, 0), (1, 0)))

    def test_config_round_trip(self):
        profile = VarianceProfile.create([[0, '1/3'], [2, 0]], widths=['1/4', '3/4'])
        self.assertEqual(VarianceProfile.from_config(profile.to_config()), profile)


class TestLoggingUtils(unittest.TestCase):
    def setUp(self):
        root = logging.getLogger()
        saved = (root.level, list(root.handlers))
        self.addCleanup(self._restore, saved)
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    @staticmethod
    def _restore(saved):
        root = logging.getLogger()
        for handler in root.handlers:
            if handler not in saved[1]:
                handler.close()
        root.handlers[:] = saved[1]
        root.setLevel(saved[0])

    def test_file_and_stderr_handlers(self):
        log_file = os.path.join(self.tmp.name, 'nested', 'moments.log')
        LoggingUtils.setup_logging({'level': 'debug', 'file': log_file})
        handlers = logging.getLogger().handlers
        self.assertEqual(logging.getLogger().level, logging.DEBUG)
        self.assertTrue(any(isinstance(h, RotatingFileHandler) for h in handlers))
        console = [h for h in handlers if not isinstance(h, RotatingFileHandler)]
        self.assertIs(console[0].stream, sys.stderr)
        self.assertTrue(os.path.isdir(os.path.dirname(log_file)))

    def test_empty_file_disables_file_handler(self):
        LoggingUtils.setup_logging({'level': 'INFO', 'file': ''})
        self.assertEqual(len(logging.getLogger().handlers), 1)

    def test_set_level(self):
        LoggingUtils.setup_logging({'level': 'INFO', 'file': ''})
        LoggingUtils.set_level('error')
        self.assertEqual(logging.getLogger().level, logging.ERROR)
        self.assertEqual(LoggingUtils.get_logger('x').name, 'x')


if __name__ == '__main__':
    unittest.main()
