''' how closely generator draws match channel draws '''
from dataclasses import dataclass
import logging

import numpy as np
from scipy.spatial.distance import cdist

from ganlink.nn import DenseNet, ShapeError
from .networks import generator_forward

logger = logging.getLogger(__name__)

MIN_VALIDATION_WINDOWS = 100


@dataclass
class FidelityReport:
    ''' energy distances per validation window and moment differences '''
    energy_distances: np.ndarray
    baseline_distances: np.ndarray
    permutation_means: np.ndarray
    mean_delta: np.ndarray
    std_delta: np.ndarray

    @property
    def mean_energy_distance(self):
        ''' averaged over validation windows '''
        return float(self.energy_distances.mean())

    @property
    def max_energy_distance(self):
        ''' worst validation window '''
        return float(self.energy_distances.max())

    @property
    def baseline_mean(self):
        ''' channel against an independent set of channel draws '''
        return float(self.baseline_distances.mean())

    @property
    def baseline_p99(self):
        ''' 99th percentile of the mean distance with labels shuffled '''
        return float(np.percentile(self.permutation_means, 99))

    def serialize(self):
        ''' summary numbers for logs and reports '''
        return {
            'mean_energy_distance': self.mean_energy_distance,
            'max_energy_distance': self.max_energy_distance,
            'baseline_mean': self.baseline_mean,
            'baseline_p99': self.baseline_p99,
            'mean_delta': self.mean_delta.tolist(),
            'std_delta': self.std_delta.tolist(),
        }


def energy_distance(first, second):
    ''' 2 E|X - Y| - E|X - X'| - E|Y - Y'| over euclidean norms '''
    first, second = np.atleast_2d(first), np.atleast_2d(second)
    return float(2 * cdist(first, second).mean() - cdist(first, first).mean() \
            - cdist(second, second).mean())


def _draw(generator, window, count, rng, stream_index):
    if isinstance(generator, DenseNet):
        windows = np.broadcast_to(window, (count, len(window)))
        fake, _, _ = generator_forward(generator, windows, rng)
        return fake
    # anything else with the sampler interface, e.g. a channel
    return generator.sample(window, count, stream_index)


def validate_generator(generator, sampler, validation_windows, rng,
                       draws=1000, permutations=5):
    ''' compare draws window by window against the channel's own draws '''
    validation_windows = np.atleast_2d(validation_windows)
    if len(validation_windows) < MIN_VALIDATION_WINDOWS:
        raise ShapeError('Need at least %d validation windows, got %d' % (
            MIN_VALIDATION_WINDOWS, len(validation_windows)))

    distances, baselines = [], []
    mean_deltas, std_deltas = [], []
    shuffled = np.zeros((permutations, len(validation_windows)))
    for index, window in enumerate(validation_windows):
        window_rng = rng.child(index)
        fake = _draw(generator, window, draws, window_rng.child('G'),
                     2 * len(validation_windows) + index)
        real = sampler.sample(window, draws, 2 * index)
        second = sampler.sample(window, draws, 2 * index + 1)
        distances.append(energy_distance(fake, real))
        baselines.append(energy_distance(second, real))
        mean_deltas.append(fake.mean(axis=0) - real.mean(axis=0))
        std_deltas.append(fake.std(axis=0) - real.std(axis=0))

        pooled = np.concatenate([fake, real])
        for round_index in range(permutations):
            order = window_rng.child('perm', round_index).permutation(len(pooled))
            shuffled[round_index, index] = energy_distance(
                pooled[order[:draws]], pooled[order[draws:]])

    report = FidelityReport(
        energy_distances=np.array(distances),
        baseline_distances=np.array(baselines),
        permutation_means=shuffled.mean(axis=1),
        mean_delta=np.mean(mean_deltas, axis=0),
        std_delta=np.mean(std_deltas, axis=0),
    )
    logger.info('generator fidelity: mean energy distance %.4g '
                '(baseline %.4g)', report.mean_energy_distance,
                report.baseline_mean)
    return report
