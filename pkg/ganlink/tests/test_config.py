''' testing the config file parser '''
import os

from django.test import SimpleTestCase

from ganlink.config import ConfigError, parse_config, parse_config_text
from ganlink.config import read_sections, render_schema
from ganlink.e2e import ExperimentConfig

DATA = os.path.join(os.path.dirname(__file__), 'data')
ROOT = os.path.dirname(os.path.dirname(os.path.dirname(__file__)))


class ConfigFile(SimpleTestCase):
    def test_empty_file_is_defaults(self):
        self.assertEqual(parse_config_text(''), ExperimentConfig())


    def test_values(self):
        config = parse_config_text(
            '[experiment]\niterations = 3\ncalibrate_noise = false\n'
            '[channel]\nfiber_length = 10e3\n')
        self.assertEqual(config.iterations, 3)
        self.assertFalse(config.calibrate_noise)
        self.assertEqual(config.channel.fiber_length, 10e3)
        self.assertEqual(config.channel.dac_rate, 84e9)


    def test_dotted_keys_and_comments(self):
        config = parse_config_text(
            '# comment\ngan.total_steps = 5  ; trailing\n'
            '[channel]\ntransceiver.messages = 16\n')
        self.assertEqual(config.gan.total_steps, 5)
        self.assertEqual(config.transceiver.messages, 16)


    def test_samples_per_symbol_shared(self):
        config = parse_config_text('[channel]\nsamples_per_symbol = 8\n')
        self.assertEqual(config.gan.samples_per_symbol, 8)


    def test_even_memory(self):
        with self.assertRaises(ConfigError) as error:
            parse_config_text('\n[gan]\nmemory = 4\n')
        self.assertEqual(error.exception.line, 3)
        self.assertIn('m must be odd', str(error.exception))


    def test_nyquist(self):
        with self.assertRaises(ConfigError) as error:
            parse_config_text('[channel]\nlpf_bandwidth = 50e9\n')
        self.assertIn('Nyquist', str(error.exception))
        self.assertEqual(error.exception.line, 2)


    def test_bad_values(self):
        for text in ('[transceiver]\nmessages = 6\n',
                     '[transceiver]\nrx_context = 2\n',
                     '[experiment]\niterations = 0\n',
                     '[experiment]\nchannel_name = coherent\n',
                     '[experiment]\ntarget_ber_low = 0.2\n',
                     '[gan]\ng_lr_end = 1e-3\n',
                     '[pretrain]\nsteps = ten\n'):
            with self.assertRaises(ConfigError):
                parse_config_text(text)


    def test_structure_errors(self):
        for text, line in (('[nothing]\n', 1),
                           ('[gan]\nmemroy = 3\n', 2),
                           ('iterations = 3\n', 1),
                           ('[gan]\nmemory = 3\nmemory = 5\n', 3),
                           ('[gan]\njust words\n', 2),
                           ('[gan\n', 1),
                           ('bogus.key = 1\n', 1)):
            with self.assertRaises(ConfigError) as error:
                read_sections(text)
            self.assertEqual(error.exception.line, line)


    def test_inconsistent_sizes(self):
        with self.assertRaises(ConfigError):
            parse_config_text('[experiment]\nsequences = 1\n'
                              'messages_per_sequence = 5\n')


    def test_missing_file(self):
        with self.assertRaises(ConfigError) as error:
            parse_config(os.path.join(DATA, 'missing.cfg'))
        self.assertIn('missing.cfg', str(error.exception))


    def test_shipped_files(self):
        self.assertEqual(parse_config(os.path.join(ROOT, 'default.cfg')),
                         ExperimentConfig())
        small = parse_config(os.path.join(DATA, 'small.cfg'))
        self.assertEqual(small.channel_name, 'awgn')
        self.assertEqual(small.pretrain.ser_target, 1.0)


class Schema(SimpleTestCase):
    def test_schema_is_default_config(self):
        self.assertEqual(parse_config_text(render_schema()), ExperimentConfig())


    def test_every_key_documented(self):
        schema = render_schema()
        for key in ('[gan]', 'memory = 3', 'calibrate_noise = true',
                    'channel_name = imdd'):
            self.assertIn(key, schema)
