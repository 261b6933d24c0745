''' send messages over the oracle and score what comes back '''
from dataclasses import dataclass
import logging
from typing import Optional

import numpy as np

from ganlink.nn import ShapeError, UsageError
from ganlink.transceiver import BitMapping, ErrorCounts
from ganlink.transceiver import compute_ber, confusion_matrix, context_blocks
from ganlink.transceiver import decide, optimize_bit_mapping, q2_from_ber
from ganlink.transceiver import tx_blocks

logger = logging.getLogger(__name__)


@dataclass
class Transmission:
    ''' aligned messages (N, w), sent blocks and received blocks (N, w, n) '''
    messages: np.ndarray
    tx_symbols: np.ndarray
    rx_symbols: np.ndarray

    @property
    def sequences(self):
        ''' N '''
        return self.messages.shape[0]

    @property
    def length(self):
        ''' w '''
        return self.messages.shape[1]


@dataclass
class Evaluation:
    ''' scores for one transmission '''
    counts: ErrorCounts
    confusion: np.ndarray
    mapping: BitMapping
    q2_db: Optional[float]


def transmit_and_measure(transmitter, oracle, sequences, length, rng,
                         stream_offset=0):
    ''' N sequences of w uniform messages, encoded and sent one by one '''
    if sequences < 1 or length < 1:
        raise UsageError('Need at least one sequence of at least one message')
    messages = rng.integers(1, transmitter.input_width + 1, (sequences, length))
    tx_symbols, _ = tx_blocks(transmitter, messages)
    received = [
        oracle.forward(tx_symbols[index].reshape(-1), stream_offset + index)
        for index in range(sequences)
    ]
    rx_symbols = np.stack(received).reshape(tx_symbols.shape)
    return Transmission(messages, tx_symbols, rx_symbols)


def interior(length, context):
    ''' symbol positions with a full context inside the sequence '''
    edge = max(1, context // 2)
    if length <= 2 * edge:
        raise ShapeError('Sequences of %d symbols have no interior' % length)
    return slice(edge, length - edge)


def evaluate_transmission(receiver, transmission):
    ''' decide every interior symbol; confusion, best bit mapping, BER/SER/Q2 '''
    alphabet_size = receiver.output_width
    n = transmission.tx_symbols.shape[-1]
    context = receiver.input_width // n
    keep = interior(transmission.length, context)

    inputs = context_blocks(transmission.rx_symbols, context)[:, keep]
    decisions = decide(receiver(inputs.reshape(-1, context * n)))
    truth = transmission.messages[:, keep].reshape(-1)

    confusion = confusion_matrix(truth, decisions, alphabet_size)
    mapping = optimize_bit_mapping(confusion)
    counts = compute_ber(truth, decisions, mapping)
    q2_db = q2_from_ber(counts.ber) if 0 < counts.ber < 0.5 else None
    return Evaluation(counts, confusion, mapping, q2_db)
