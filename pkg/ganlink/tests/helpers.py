''' shared pieces for the tests '''
import numpy as np

from ganlink.channel import ChannelConfig
from ganlink.e2e import ExperimentConfig, PretrainConfig, PretrainResult
from ganlink.gan import GanConfig
from ganlink.transceiver import TransceiverConfig
from ganlink.transceiver import build_receiver, build_transmitter
from ganlink.utils.rng import Rng


def numeric_gradient(loss, array, indices, epsilon=1e-6):
    ''' central differences of loss() w.r.t. array.flat[indices], in place '''
    flat = array.reshape(-1)
    estimates = []
    for index in indices:
        original = flat[index]
        flat[index] = original + epsilon
        upper = loss()
        flat[index] = original - epsilon
        lower = loss()
        flat[index] = original
        estimates.append((upper - lower) / (2 * epsilon))
    return np.array(estimates)


def relative_error(first, second):
    ''' norm of the difference over the summed norms '''
    first, second = np.ravel(first), np.ravel(second)
    scale = np.linalg.norm(first) + np.linalg.norm(second)
    if scale == 0:
        return 0.0
    return np.linalg.norm(first - second) / scale


def sample_indices(array, count, rng):
    ''' up to count distinct flat indices into array '''
    if array.size <= count:
        return np.arange(array.size)
    return rng.permutation(array.size)[:count]


def small_config(**changes):
    ''' an experiment that runs in a couple of seconds on the awgn channel '''
    config = ExperimentConfig(
        iterations=2,
        sequences=2,
        messages_per_sequence=60,
        q=10,
        baseline_steps=3,
        calibrate_noise=False,
        channel_name='awgn',
        channel=ChannelConfig(receiver_noise_sigma=0.05),
        gan=GanConfig(total_steps=2, batch_size=16, log_interval=1),
        transceiver=TransceiverConfig(messages=4, hidden_width=16),
        pretrain=PretrainConfig(steps=2),
    )
    for name, value in changes.items():
        setattr(config, name, value)
    return config.validate()


def random_pair(config, seed=1):
    ''' an untrained transmitter and receiver for config '''
    n = config.channel.samples_per_symbol
    rng = Rng(seed)
    return PretrainResult(
        build_transmitter(config.transceiver, n, rng.child('tx')),
        build_receiver(config.transceiver, n, rng.child('rx')),
    )
