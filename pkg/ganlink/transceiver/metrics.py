''' symbol and bit error rates, bit mapping and the Q-factor '''
from dataclasses import dataclass, asdict
from itertools import permutations
import logging
from typing import Optional

import numpy as np
from scipy.special import erfc, erfcinv

from ganlink.nn import ShapeError, UsageError

logger = logging.getLogger(__name__)

# exhaustive search up to 8! candidates
EXHAUSTIVE_LIMIT = 8


class DomainError(ValueError):
    ''' a BER with no corresponding Q-factor '''


@dataclass
class BitMapping:
    ''' labels[message - 1] is the bit label of that message '''
    labels: np.ndarray

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if sorted(self.labels.tolist()) != list(range(len(self.labels))):
            raise ValueError('A bit mapping must be a permutation of 0..S-1')

    @classmethod
    def natural(cls, alphabet_size):
        ''' message s gets the binary label of s - 1 '''
        return cls(np.arange(alphabet_size))

    @property
    def bits(self):
        ''' bits per message '''
        return int(np.log2(len(self.labels)))

    def hamming(self):
        ''' label distance between every pair of messages '''
        return hamming_matrix(len(self.labels))[np.ix_(self.labels, self.labels)]


@dataclass
class ErrorCounts:
    ''' the outcome of comparing decisions with the truth '''
    symbols: int
    symbol_errors: int
    bit_errors: int
    ser: float
    ber: float


@dataclass
class MetricsRecord:
    ''' what one iteration of the experiment observed '''
    k: int
    ser: float
    ber: float
    q2_db: Optional[float]
    gan_generator_loss: Optional[float]
    gan_discriminator_loss: Optional[float]
    symbols: int
    bit_errors: int
    wallclock_s: float = 0.0
    seed: int = 0

    def serialize(self):
        ''' the metrics line for this record '''
        return {
            'k': self.k,
            'ser': self.ser,
            'ber': self.ber,
            'q2_db': self.q2_db,
            'gan_d_loss': self.gan_discriminator_loss,
            'gan_g_loss': self.gan_generator_loss,
            'wallclock_s': self.wallclock_s,
            'seed': self.seed,
            'symbols': self.symbols,
            'bit_errors': self.bit_errors,
        }

    @classmethod
    def from_line(cls, data):
        ''' reverse of serialize '''
        return cls(
            k=data['k'],
            ser=data['ser'],
            ber=data['ber'],
            q2_db=data.get('q2_db'),
            gan_generator_loss=data.get('gan_g_loss'),
            gan_discriminator_loss=data.get('gan_d_loss'),
            symbols=data.get('symbols', 0),
            bit_errors=data.get('bit_errors', 0),
            wallclock_s=data.get('wallclock_s', 0.0),
            seed=data.get('seed', 0),
        )

    def as_dict(self):
        ''' every field '''
        return asdict(self)


def hamming_matrix(alphabet_size):
    ''' popcount of label_i xor label_j '''
    labels = np.arange(alphabet_size)
    xor = labels[:, np.newaxis] ^ labels[np.newaxis, :]
    return np.array([[bin(v).count('1') for v in row] for row in xor])


def _check_pair(truth, decisions):
    truth = np.asarray(truth, dtype=np.int64).reshape(-1)
    decisions = np.asarray(decisions, dtype=np.int64).reshape(-1)
    if truth.shape != decisions.shape:
        raise ShapeError('%d true messages but %d decisions' % (
            truth.size, decisions.size))
    return truth, decisions


def confusion_matrix(truth, decisions, alphabet_size):
    ''' entry (i, j) counts message i + 1 decided as j + 1 '''
    truth, decisions = _check_pair(truth, decisions)
    confusion = np.zeros((alphabet_size, alphabet_size), dtype=np.int64)
    np.add.at(confusion, (truth - 1, decisions - 1), 1)
    return confusion


def error_probabilities(confusion):
    ''' P(decided j | sent i), rows without traffic stay zero '''
    confusion = np.asarray(confusion, dtype=np.float64)
    totals = confusion.sum(axis=1, keepdims=True)
    return np.divide(confusion, totals,
                     out=np.zeros_like(confusion), where=totals > 0)


def mapping_cost(confusion, labels):
    ''' expected bit errors per bit for a labelling '''
    confusion = np.asarray(confusion, dtype=np.float64)
    total = confusion.sum()
    if not total:
        return 0.0
    bits = np.log2(len(labels))
    distances = hamming_matrix(len(labels))[np.ix_(labels, labels)]
    return float((confusion * distances).sum() / (bits * total))


def optimize_bit_mapping(confusion):
    ''' the labelling with the fewest expected bit errors '''
    confusion = np.asarray(confusion, dtype=np.float64)
    alphabet_size = confusion.shape[0]
    if alphabet_size > EXHAUSTIVE_LIMIT:
        logger.info('%d messages: using pairwise-swap descent', alphabet_size)
        return BitMapping(_swap_descent(confusion))

    distances = hamming_matrix(alphabet_size)
    # permutations() yields lexicographic order, argmin keeps the first
    candidates = np.array(list(permutations(range(alphabet_size))))
    permuted = distances[candidates[:, :, np.newaxis],
                         candidates[:, np.newaxis, :]]
    costs = (permuted * confusion).sum(axis=(1, 2))
    return BitMapping(candidates[int(np.argmin(costs))])


def _swap_descent(confusion):
    ''' greedy: apply the best improving label swap until none is left '''
    labels = np.arange(confusion.shape[0])
    cost = mapping_cost(confusion, labels)
    while True:
        best = (cost, None)
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                trial = labels.copy()
                trial[[i, j]] = trial[[j, i]]
                trial_cost = mapping_cost(confusion, trial)
                if trial_cost < best[0]:
                    best = (trial_cost, trial)
        if best[1] is None:
            return labels
        cost, labels = best


def compute_ber(truth, decisions, mapping):
    ''' symbol and bit error rates under a bit mapping '''
    truth, decisions = _check_pair(truth, decisions)
    if not truth.size:
        raise UsageError('No symbols to count errors over')
    distances = mapping.hamming()
    bit_errors = int(distances[truth - 1, decisions - 1].sum())
    symbol_errors = int((truth != decisions).sum())
    return ErrorCounts(
        symbols=int(truth.size),
        symbol_errors=symbol_errors,
        bit_errors=bit_errors,
        ser=symbol_errors / truth.size,
        ber=bit_errors / (mapping.bits * truth.size),
    )


def q2_from_ber(ber):
    ''' 20 log10(sqrt(2) erfcinv(2 BER)), in dB '''
    if not 0 < ber < 0.5:
        raise DomainError('Q-factor is only defined for 0 < BER < 0.5, got %r'
                          % ber)
    return float(20 * np.log10(np.sqrt(2) * erfcinv(2 * ber)))


def ber_from_q2(q2_db):
    ''' reverse of q2_from_ber '''
    return float(0.5 * erfc(10 ** (q2_db / 20) / np.sqrt(2)))
