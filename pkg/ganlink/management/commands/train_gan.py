''' train the channel model on a dumped dataset '''
from dataclasses import replace
import os

import numpy as np

from ganlink import checkpoint
from ganlink.channel import load_channel
from ganlink.channel.sampler import ChannelSampler
from ganlink.e2e import reserved_rows
from ganlink.gan import build_experiment_dataset, discriminator_accuracy
from ganlink.gan import train_gan, validate_generator
from ganlink.gan.validation import MIN_VALIDATION_WINDOWS
from ganlink.management.base import ExperimentCommand
from ganlink.runner import load_transmission, noise_sigma_from
from ganlink.utils.rng import Rng

HELD_OUT = 0.1


class Command(ExperimentCommand):
    ''' standalone GAN training; saves gan.ckpt '''
    help = 'Train the generator and discriminator on a dataset written by ' \
            'evaluate --dump-dataset'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--dataset', required=True,
                            help='dataset file from evaluate --dump-dataset')
        parser.add_argument(
            '--validate', action='store_true',
            help='compare generator draws with draws from the configured '
                 'channel (gan.validation_draws per validation window)')

    def run(self, config, out_dir, options):
        transmission = load_transmission(options['dataset'])
        q = reserved_rows(config.q, transmission.sequences, transmission.length)
        dataset = build_experiment_dataset(
            transmission.messages, transmission.tx_symbols,
            transmission.rx_symbols, config.gan.memory, q)

        rng = Rng(config.seed).child('train-gan')
        train, held_out = dataset.split(HELD_OUT, rng.child('split'))
        pair, history = train_gan(train, config.gan, rng.child('gan'))
        accuracy = discriminator_accuracy(
            pair, held_out.windows, held_out.targets, rng.child('held-out'))

        path = os.path.join(out_dir, 'gan.ckpt')
        checkpoint.save_networks(path, {
            'generator': pair.generator,
            'discriminator': pair.discriminator,
        })
        d_loss, g_loss = history[-1]
        result = {
            'checkpoint': path,
            'rows': len(train),
            'gan_d_loss': d_loss,
            'gan_g_loss': g_loss,
            'held_out_accuracy': float(accuracy),
        }
        if options['validate']:
            result['fidelity'] = self.validate(
                config, options['dataset'], transmission, dataset, pair,
                rng.child('validate'))
        return result

    def validate(self, config, dataset_path, transmission, dataset, pair, rng):
        ''' fidelity of the generator against the channel it imitates '''
        channel_config = config.channel
        noise_sigma = noise_sigma_from(checkpoint.load_checkpoint(dataset_path))
        if noise_sigma is not None:
            channel_config = replace(
                channel_config, receiver_noise_sigma=noise_sigma)
        channel = load_channel(config.channel_name, channel_config)

        size = transmission.tx_symbols.shape[-1]
        # the transmitter's waveforms supply the random context of every draw
        waveforms = np.unique(transmission.tx_symbols.reshape(-1, size), axis=0)
        sampler = ChannelSampler(channel, config.gan.memory,
                                 context_blocks=waveforms, seed=config.seed)
        rows = rng.child('windows').integers(
            0, len(dataset), MIN_VALIDATION_WINDOWS)
        report = validate_generator(
            pair.generator, sampler, dataset.windows[rows], rng.child('draws'),
            draws=config.gan.validation_draws)
        return report.serialize()
