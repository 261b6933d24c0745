''' run an experiment to files, inline or as a celery task '''
from collections import OrderedDict
import logging
import os

import numpy as np
from django.conf import settings

from ganlink import checkpoint
from ganlink.config import parse_config
from ganlink.e2e import ExperimentRecorder, Transmission, run_experiment
from ganlink.nn import onehot
from ganlink.report import MetricsWriter, render_report
from ganlink.tasks import app

logger = logging.getLogger(__name__)

NETWORKS = ('transmitter', 'receiver', 'generator', 'discriminator')


def apply_seed(config, seed):
    ''' one seed for the run and for the link noise '''
    if seed is not None:
        config.seed = int(seed)
        config.channel.seed = int(seed)
    return config


def tx_waveforms(transmitter):
    ''' the n-sample block of every message, in message order '''
    size = transmitter.input_width
    return transmitter(onehot(np.arange(size), size))


def checkpoint_path(out_dir, k):
    ''' where the state after iteration k is kept '''
    return os.path.join(out_dir, 'checkpoints', 'k%03d.ckpt' % k)


def save_state(path, state, record):
    ''' networks, the latest confusion matrix and a few scalars '''
    gan = state.gan
    extra = OrderedDict([
        ('meta.k', np.array([record.k])),
        ('meta.noise_sigma', np.array(
            [np.nan if state.noise_sigma is None else state.noise_sigma])),
        ('confusion', state.evaluations[-1].confusion),
    ])
    checkpoint.save_networks(path, {
        'transmitter': state.transmitter,
        'receiver': state.receiver,
        'generator': gan.generator if gan else None,
        'discriminator': gan.discriminator if gan else None,
    }, extra)


def noise_sigma_from(tensors):
    ''' the calibrated noise level stored with a state, if any '''
    value = tensors.get('meta.noise_sigma')
    if value is None or np.isnan(value[0]):
        return None
    return float(value[0])


def transmission_tensors(transmission):
    ''' a measured transmission as checkpoint tensors '''
    return OrderedDict([
        ('dataset.messages', transmission.messages),
        ('dataset.tx_symbols', transmission.tx_symbols),
        ('dataset.rx_symbols', transmission.rx_symbols),
    ])


def load_transmission(path):
    ''' reverse of transmission_tensors, read from a checkpoint file '''
    tensors = checkpoint.load_checkpoint(path)
    try:
        return Transmission(
            messages=tensors['dataset.messages'].astype(np.int64),
            tx_symbols=tensors['dataset.tx_symbols'].astype(np.float64),
            rx_symbols=tensors['dataset.rx_symbols'].astype(np.float64),
        )
    except KeyError as err:
        raise checkpoint.CheckpointError(
            '%s holds no dataset (missing %s)' % (path, err), 'missing')


class FileRecorder(ExperimentRecorder):
    ''' metrics line and checkpoint after every record, report at the end '''
    def __init__(self, out_dir):
        self.out_dir = out_dir
        self.writer = MetricsWriter(os.path.join(out_dir, 'metrics.jsonl'))

    def on_record(self, state, record):
        self.writer.write(record)
        save_state(checkpoint_path(self.out_dir, record.k), state, record)

    def on_finish(self, state, report):
        render_report(
            state.history, self.out_dir,
            confusions=[evaluation.confusion for evaluation in state.evaluations],
            waveforms=tx_waveforms(state.transmitter),
            summary=report.serialize(),
        )


def run_and_record(config, out_dir, record_wallclock=True):
    ''' the whole experiment with everything written under out_dir '''
    os.makedirs(out_dir, exist_ok=True)
    logger.info('running %d iterations with seed %d into %s',
                config.iterations, config.seed, out_dir)
    return run_experiment(config, FileRecorder(out_dir),
                          record_wallclock=record_wallclock)


def start_run(config_path, seed, out_dir):
    ''' queue a run; returns the task id '''
    result = run_experiment_task.delay(config_path, seed, out_dir)
    logger.info('queued run %s', result.id)
    return result.id


@app.task
def run_experiment_task(config_path, seed, out_dir):
    ''' does the actual experiment in a celery worker '''
    config = apply_seed(parse_config(config_path), seed)
    _, report = run_and_record(
        config, out_dir, settings.GANLINK_RECORD_WALLCLOCK)
    return report.serialize()
