''' BER of a stored transceiver over the link '''
from dataclasses import replace

import numpy as np

from ganlink import checkpoint
from ganlink.channel import load_channel
from ganlink.e2e import evaluate_transmission, transmit_and_measure
from ganlink.management.base import ExperimentCommand
from ganlink.runner import noise_sigma_from, transmission_tensors
from ganlink.utils.rng import Rng


class Command(ExperimentCommand):
    ''' transmit fresh sequences with a checkpoint's transceiver '''
    help = 'Evaluate the transmitter and receiver of a checkpoint'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--checkpoint', required=True,
                            help='checkpoint holding transmitter and receiver')
        parser.add_argument('--dump-dataset', default=None,
                            help='also save the measured sequences here')

    def run(self, config, out_dir, options):
        tensors = checkpoint.load_checkpoint(options['checkpoint'])
        transmitter = checkpoint.network_from_tensors(tensors, 'transmitter')
        receiver = checkpoint.network_from_tensors(tensors, 'receiver')

        # a calibrated run stores the noise level it measured with
        channel_config = config.channel
        noise_sigma = noise_sigma_from(tensors)
        if noise_sigma is not None:
            channel_config = replace(
                channel_config, receiver_noise_sigma=noise_sigma)
        oracle = load_channel(config.channel_name, channel_config)

        transmission = transmit_and_measure(
            transmitter, oracle, config.sequences,
            config.messages_per_sequence, Rng(config.seed).child('evaluate'))
        evaluation = evaluate_transmission(receiver, transmission)
        if options['dump_dataset']:
            dump = transmission_tensors(transmission)
            dump['meta.noise_sigma'] = np.array(
                [channel_config.receiver_noise_sigma])
            checkpoint.save_checkpoint(options['dump_dataset'], dump)

        return {
            'ber': evaluation.counts.ber,
            'ser': evaluation.counts.ser,
            'q2_db': evaluation.q2_db,
            'symbols': evaluation.counts.symbols,
            'bit_errors': evaluation.counts.bit_errors,
            'noise_sigma': channel_config.receiver_noise_sigma,
        }
