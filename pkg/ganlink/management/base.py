''' shared flags and error handling of the experiment commands '''
import json
import logging
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.core.management.base import CommandParser

from ganlink.config import ConfigError, parse_config
from ganlink.runner import apply_seed

logger = logging.getLogger(__name__)

CONFIG_ERROR = 1
RUNTIME_ERROR = 2


class UsageParser(CommandParser):
    ''' bad arguments count as a config error '''
    def error(self, message):
        if not self.called_from_command_line:
            raise CommandError('Error: %s' % message, returncode=CONFIG_ERROR)
        self.print_usage(sys.stderr)
        self.exit(CONFIG_ERROR, '%s: error: %s\n' % (self.prog, message))


class ExperimentCommand(BaseCommand):
    ''' --config, --seed and --out; config errors exit 1, anything else 2 '''
    requires_system_checks = []
    needs_config = True

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = UsageParser
        return parser

    def add_arguments(self, parser):
        parser.add_argument(
            '--config', default=None,
            help='experiment config file (default: $GANLINK_CONFIG)')
        parser.add_argument(
            '--seed', type=int, default=None,
            help='seed for the run, overriding the config file')
        parser.add_argument(
            '--out', default=None,
            help='output directory (default: $GANLINK_OUTPUT_DIR)')

    def handle(self, *args, **options):
        config = self.load_config(options) if self.needs_config else None
        out_dir = options['out'] or settings.GANLINK_OUTPUT_DIR
        try:
            result = self.run(config, out_dir, options)
        except CommandError:
            raise
        except Exception as err:# pylint: disable=broad-except
            logger.exception(err)
            raise CommandError(str(err), returncode=RUNTIME_ERROR) from err
        if result is not None:
            self.stdout.write(json.dumps(result, indent=2, sort_keys=True))

    def load_config(self, options):
        ''' the parsed config with the seed override applied '''
        path = options['config'] or settings.GANLINK_CONFIG
        try:
            config = parse_config(path)
        except ConfigError as err:
            raise CommandError(str(err), returncode=CONFIG_ERROR) from err
        seed = options['seed']
        if seed is None:
            seed = settings.GANLINK_SEED
        return apply_seed(config, seed)

    def run(self, config, out_dir, options):
        ''' the command itself; a returned dict is printed as json '''
        raise NotImplementedError
