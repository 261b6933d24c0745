''' command line entry point: the experiment subcommands and their exit codes '''
import os
import sys

COMMANDS = ['run', 'pretrain', 'train_gan', 'baseline_rx', 'evaluate',
            'report', 'schema']

USAGE = '''usage: manage.py <command> [--config PATH] [--seed N] [--out DIR] ...

commands:
  run          full experiment (add --queue to run it in a celery worker)
  pretrain     pretrain the transceiver on the link model
  train_gan    train the channel model on a dumped dataset
  baseline_rx  receiver-only training on a dumped dataset
  evaluate     BER of a checkpoint over the link
  report       metrics.csv and figures from a run directory
  schema       print the config keys and their defaults

run "manage.py <command> --help" for the options of a command
'''


def main(argv=None):
    ''' dispatch argv[1:] to a management command and return the exit code '''
    argv = list(sys.argv if argv is None else argv)
    if len(argv) < 2 or argv[1] in ('-h', '--help', 'help'):
        sys.stderr.write(USAGE)
        return 0 if len(argv) >= 2 else 1
    # train-gan and train_gan are the same command
    argv[1] = argv[1].replace('-', '_')
    if argv[1] not in COMMANDS:
        sys.stderr.write('Unknown command "%s"\n\n%s' % (argv[1], USAGE))
        return 1

    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ganlink.settings')
    from django.core.management import execute_from_command_line
    try:
        execute_from_command_line(argv)
    except SystemExit as exit_status:
        code = exit_status.code
        return code if isinstance(code, int) else (0 if code is None else 1)
    return 0
