''' k = 0 initialization: train the transceiver on the simplified link model '''
from dataclasses import dataclass, field
import logging
from typing import List

import numpy as np

from ganlink.channel.model import ImddModel
from ganlink.nn import Adam, NumericError, mean_cross_entropy, onehot
from ganlink.transceiver import TransceiverConfig, build_receiver
from ganlink.transceiver import build_transmitter, context_blocks
from ganlink.transceiver import context_blocks_backward, decide, tx_blocks

logger = logging.getLogger(__name__)


class TrainingError(RuntimeError):
    ''' pretraining finished without reaching its target '''
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass
class PretrainConfig:
    ''' step count and model mismatch for the offline initialization '''
    steps: int = 3000
    sequence_length: int = 64
    batch_sequences: int = 16
    learning_rate: float = 1e-3
    # the simplified model differs from the link in these two knobs
    noise_sigma: float = 0.04
    dispersion_scale: float = 0.8
    ser_target: float = 0.2
    eval_sequences: int = 64

    def validate(self):
        ''' positive sizes and rates '''
        for name in ('steps', 'sequence_length', 'batch_sequences',
                     'eval_sequences'):
            if getattr(self, name) < 1:
                raise ValueError('%s must be at least 1' % name)
        if self.learning_rate <= 0:
            raise ValueError('learning_rate must be positive')
        if self.noise_sigma < 0 or self.dispersion_scale < 0:
            raise ValueError('noise_sigma and dispersion_scale can not be '
                             'negative')
        if not 0 < self.ser_target <= 1:
            raise ValueError('ser_target must be in (0, 1]')
        return self


@dataclass
class PretrainResult:
    ''' the initialized pair and how training went '''
    transmitter: object
    receiver: object
    losses: List[float] = field(default_factory=list)
    ser: float = 1.0


def model_step(transmitter, receiver, model, messages, rng):
    ''' loss and gradients for a batch of message sequences sent over model '''
    alphabet_size = transmitter.input_width
    n = transmitter.output_width
    context = receiver.input_width // n
    rows, length = messages.shape

    blocks, tx_cache = tx_blocks(transmitter, messages)
    received, model_cache = model.forward(blocks.reshape(rows, length * n), rng)
    inputs = context_blocks(received.reshape(rows, length, n), context)
    probabilities, rx_cache = receiver.forward(inputs.reshape(-1, context * n))

    labels = onehot(messages.reshape(-1) - 1, alphabet_size)
    loss, grad = mean_cross_entropy(labels, probabilities)
    rx_grads, grad_inputs = receiver.backward(rx_cache, grad)
    grad_received = context_blocks_backward(
        grad_inputs.reshape(rows, length, context * n), context)
    grad_streams = model.backward(model_cache, grad_received.reshape(rows, -1))
    tx_grads, _ = transmitter.backward(tx_cache, grad_streams.reshape(-1, n))
    return loss, tx_grads, rx_grads


def model_ser(transmitter, receiver, model, settings, rng):
    ''' symbol error rate over fresh sequences on the simplified model '''
    n = transmitter.output_width
    context = receiver.input_width // n
    messages = rng.child('messages').integers(
        1, transmitter.input_width + 1,
        (settings.eval_sequences, settings.sequence_length))
    blocks, _ = tx_blocks(transmitter, messages)
    received, _ = model.forward(
        blocks.reshape(len(messages), -1), rng.child('noise'))
    inputs = context_blocks(
        received.reshape(messages.shape + (n,)), context)
    decisions = decide(receiver(inputs.reshape(-1, context * n)))
    return float(np.mean(decisions != messages.reshape(-1)))


def pretrain_transceiver(channel_config, steps, rng, transceiver=None,
                         settings=None, transmitter=None, receiver=None):
    ''' train Tx/Rx jointly through the differentiable model

    Raises TrainingError when the final SER misses settings.ser_target.
    '''
    transceiver = (transceiver or TransceiverConfig()).validate()
    settings = (settings or PretrainConfig()).validate()
    n = channel_config.samples_per_symbol
    model = ImddModel(channel_config, noise_sigma=settings.noise_sigma,
                      dispersion_scale=settings.dispersion_scale)

    if transmitter is None:
        transmitter = build_transmitter(transceiver, n, rng.child('tx-init'))
    if receiver is None:
        receiver = build_receiver(transceiver, n, rng.child('rx-init'))
    tx_optimizer, rx_optimizer = Adam(transmitter), Adam(receiver)

    losses = []
    shape = (settings.batch_sequences, settings.sequence_length)
    for step in range(steps):
        step_rng = rng.child('step', step)
        messages = step_rng.child('messages').integers(
            1, transceiver.messages + 1, shape)
        loss, tx_grads, rx_grads = model_step(
            transmitter, receiver, model, messages, step_rng.child('noise'))
        if not np.isfinite(loss):
            raise NumericError('Nonfinite pretraining loss', step=step)
        tx_optimizer.step(tx_grads, settings.learning_rate)
        rx_optimizer.step(rx_grads, settings.learning_rate)
        losses.append(loss)
        if (step + 1) % max(1, steps // 10) == 0:
            logger.info('pretraining step %d/%d: loss %.4f', step + 1, steps, loss)

    ser = model_ser(transmitter, receiver, model, settings, rng.child('eval'))
    logger.info('pretraining finished with SER %.4f on the model', ser)
    if ser >= settings.ser_target:
        raise TrainingError(
            'Pretraining reached SER %.4f, target is below %.4f' % (
                ser, settings.ser_target),
            diagnostics={
                'ser': ser,
                'steps': steps,
                'first_loss': losses[0] if losses else None,
                'last_loss': losses[-1] if losses else None,
            })
    return PretrainResult(transmitter, receiver, losses, ser)
