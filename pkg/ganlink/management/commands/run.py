''' the full experiment: pretrain, iterate, compare with receiver-only '''
from django.conf import settings

from ganlink.management.base import ExperimentCommand
from ganlink.runner import run_and_record, start_run


class Command(ExperimentCommand):
    ''' run the experiment inline, or queue it with --queue '''
    help = 'Run the end-to-end optimization and write metrics, ' \
            'checkpoints and figures to --out'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--queue', action='store_true',
            help='run in a celery worker instead of in this process')

    def run(self, config, out_dir, options):
        if options['queue']:
            path = options['config'] or settings.GANLINK_CONFIG
            return {'task_id': start_run(path, config.seed, out_dir)}
        _, report = run_and_record(
            config, out_dir, settings.GANLINK_RECORD_WALLCLOCK)
        return report.serialize()
