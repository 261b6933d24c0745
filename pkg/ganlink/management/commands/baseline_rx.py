''' receiver-only training on measured data '''
import os

from ganlink import checkpoint
from ganlink.e2e import evaluate_transmission, measured_rows
from ganlink.e2e import receiver_only_update
from ganlink.management.base import ExperimentCommand
from ganlink.runner import load_transmission


class Command(ExperimentCommand):
    ''' fine-tune a checkpoint's receiver on a dumped dataset '''
    help = 'Train only the receiver on the reserved rows of a dataset; ' \
            'the BER is measured on the same dataset'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dataset', required=True,
                            help='dataset file from evaluate --dump-dataset')
        parser.add_argument('--checkpoint', required=True,
                            help='checkpoint holding the starting receiver')

    def run(self, config, out_dir, options):
        transmission = load_transmission(options['dataset'])
        receiver = checkpoint.load_networks(
            options['checkpoint'], ['receiver'])['receiver']
        if receiver is None:
            raise checkpoint.CheckpointError(
                'No receiver in %s' % options['checkpoint'], 'missing')

        rows = measured_rows(transmission, config)
        _, losses = receiver_only_update(
            receiver, rows, config.baseline_steps, config.transceiver_lr)
        evaluation = evaluate_transmission(receiver, transmission)

        path = os.path.join(out_dir, 'baseline_rx.ckpt')
        checkpoint.save_networks(path, {'receiver': receiver})
        return {
            'checkpoint': path,
            'steps': config.baseline_steps,
            'final_loss': losses[-1] if losses else None,
            'ber': evaluation.counts.ber,
            'ser': evaluation.counts.ser,
            'q2_db': evaluation.q2_db,
        }
