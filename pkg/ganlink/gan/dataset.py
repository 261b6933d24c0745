''' pair transmitted windows with received symbols '''
from dataclasses import dataclass

import numpy as np

from ganlink.nn import ShapeError, UsageError


@dataclass
class ConditioningDataset:
    ''' rows of m*n transmitted samples and the received centre block

    messages/received hold the first q symbol pairs, kept apart from the
    windows for the transceiver update.
    '''
    windows: np.ndarray
    targets: np.ndarray
    messages: np.ndarray
    received: np.ndarray
    centers: np.ndarray
    memory: int

    def __len__(self):
        return len(self.windows)

    @property
    def samples_per_symbol(self):
        ''' block length '''
        return self.targets.shape[1]

    def batch(self, rng, size):
        ''' uniform rows, with replacement '''
        if not len(self):
            raise UsageError('Cannot draw a batch from an empty dataset')
        rows = rng.integers(0, len(self), size)
        return self.windows[rows], self.targets[rows]

    def split(self, fraction, rng):
        ''' a shuffled (train, held-out) split of the window rows '''
        order = rng.permutation(len(self))
        cut = int(round(len(self) * (1.0 - fraction)))
        return self.subset(order[:cut]), self.subset(order[cut:])

    def subset(self, rows):
        ''' the same dataset restricted to some window rows '''
        return ConditioningDataset(
            windows=self.windows[rows],
            targets=self.targets[rows],
            messages=self.messages,
            received=self.received,
            centers=self.centers[rows],
            memory=self.memory,
        )


@dataclass
class TransceiverRows:
    ''' measured messages with their neighbours, for the transceiver update '''
    message_windows: np.ndarray
    received: np.ndarray

    @property
    def messages(self):
        ''' the centre message of each row '''
        return self.message_windows[:, self.message_windows.shape[1] // 2]

    def __len__(self):
        return len(self.message_windows)


def _blocks(symbols):
    symbols = np.asarray(symbols, dtype=np.float64)
    if symbols.ndim != 2:
        raise ShapeError('Expected one row of samples per symbol')
    return symbols


def build_conditioning_dataset(tx_symbols, rx_symbols, memory=3, q=1000,
                               messages=None):
    ''' windows around every centre from q + 2 to T - 1 (1-based, m = 3) '''
    tx_symbols, rx_symbols = _blocks(tx_symbols), _blocks(rx_symbols)
    if tx_symbols.shape != rx_symbols.shape:
        raise ShapeError('Transmitted %s and received %s symbols differ' % (
            tx_symbols.shape, rx_symbols.shape))
    if memory < 1 or memory % 2 == 0:
        raise ValueError('Memory must be odd, got %d' % memory)
    total = len(tx_symbols)
    half = memory // 2
    if total < q + 2 * half + 2 or q < 0:
        raise UsageError('%d symbols are too few for q = %d and m = %d' % (
            total, q, memory))

    centers = np.arange(q + half, total - half)
    offsets = np.arange(-half, half + 1)
    windows = tx_symbols[centers[:, np.newaxis] + offsets].reshape(
        len(centers), -1)
    if messages is None:
        messages = np.zeros(q, dtype=np.int64)
    return ConditioningDataset(
        windows=windows,
        targets=rx_symbols[centers],
        messages=np.asarray(messages)[:q],
        received=rx_symbols[:q],
        centers=centers,
        memory=memory,
    )


def build_experiment_dataset(messages, tx_symbols, rx_symbols, memory=3, q=1000):
    ''' conditioning rows from every measured sequence

    Sequence 0 gives up its first q symbols to the transceiver rows; every
    other sequence only loses its edge symbols.
    '''
    parts = []
    for index in range(len(tx_symbols)):
        part = build_conditioning_dataset(
            tx_symbols[index], rx_symbols[index], memory,
            q if index == 0 else 0, messages[index])
        part.centers = part.centers + index * len(tx_symbols[index])
        parts.append(part)
    return ConditioningDataset(
        windows=np.concatenate([p.windows for p in parts]),
        targets=np.concatenate([p.targets for p in parts]),
        messages=parts[0].messages,
        received=parts[0].received,
        centers=np.concatenate([p.centers for p in parts]),
        memory=memory,
    )


def transceiver_rows(messages, rx_symbols, q, width, context=1):
    ''' message windows of the given width around centres inside the first q '''
    messages = np.asarray(messages)
    rx_symbols = _blocks(rx_symbols)
    half = width // 2
    half_context = context // 2
    centers = np.arange(max(half, half_context), q)
    if not len(centers) or centers[-1] + max(half, half_context) >= len(messages):
        raise UsageError('Not enough symbols for %d transceiver rows' % q)
    message_windows = messages[centers[:, np.newaxis] + np.arange(-half, half + 1)]
    received = rx_symbols[centers[:, np.newaxis] + np.arange(
        -half_context, half_context + 1)].reshape(len(centers), -1)
    return TransceiverRows(message_windows, received)
