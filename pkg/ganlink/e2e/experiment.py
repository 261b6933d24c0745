''' the measured-data optimization loop and the receiver-only baseline

Every iteration trains the generative channel model on the last
transmission, updates the transceiver through the frozen generator, then
transmits again and scores the result. The oracle is only ever called
through its forward interface.
'''
import copy
from dataclasses import dataclass, field, replace
import logging
import time
from typing import List, Optional

import numpy as np

from ganlink.channel import ChannelConfig, load_channel
from ganlink.gan import GanConfig, GanPair, build_experiment_dataset
from ganlink.gan import generator_backward, generator_forward
from ganlink.gan import draw_noise, train_gan, transceiver_rows
from ganlink.nn import Adam, DenseNet, NumericError, UsageError
from ganlink.nn import mean_cross_entropy, onehot
from ganlink.transceiver import MetricsRecord, TransceiverConfig
from ganlink.transceiver import tx_blocks
from ganlink.utils.rng import Rng
from .calibration import calibrate_noise
from .measurement import Evaluation, Transmission
from .measurement import evaluate_transmission, transmit_and_measure
from .pretrain import PretrainConfig, pretrain_transceiver

logger = logging.getLogger(__name__)


class IterationError(RuntimeError):
    ''' one stage of an outer iteration failed; the state was rolled back '''
    def __init__(self, stage, k, cause=None):
        super().__init__('Iteration %d failed during %s: %s' % (k, stage, cause))
        self.stage = stage
        self.k = k


def reserved_rows(q, sequences, length):
    ''' q, capped to a tenth of the data and to what sequence 0 can hold '''
    return min(q, sequences * length // 10, length - 4)


@dataclass
class ExperimentConfig:
    ''' everything one run depends on '''
    iterations: int = 10
    sequences: int = 20
    messages_per_sequence: int = 2000
    q: int = 1000
    inner_transceiver_steps: int = 1
    transceiver_lr: float = 1e-3
    baseline_steps: int = 10
    seed: int = 0
    calibrate_noise: bool = True
    target_ber_low: float = 1e-2
    target_ber_high: float = 5e-2
    channel_name: str = 'imdd'
    channel: ChannelConfig = field(default_factory=ChannelConfig)
    gan: GanConfig = field(default_factory=lambda: GanConfig(total_steps=2000))
    transceiver: TransceiverConfig = field(default_factory=TransceiverConfig)
    pretrain: PretrainConfig = field(default_factory=PretrainConfig)

    @property
    def total_symbols(self):
        ''' N * w '''
        return self.sequences * self.messages_per_sequence

    @property
    def effective_q(self):
        ''' q as it applies to transmissions of this config '''
        return reserved_rows(self.q, self.sequences, self.messages_per_sequence)

    def validate(self):
        ''' raise ValueError for an inconsistent configuration '''
        if self.iterations < 1:
            raise ValueError('iterations must be at least 1')
        for name in ('sequences', 'messages_per_sequence',
                     'inner_transceiver_steps'):
            if getattr(self, name) < 1:
                raise ValueError('%s must be at least 1' % name)
        if self.baseline_steps < 0 or self.q < 1:
            raise ValueError('baseline_steps can not be negative, q must be '
                             'positive')
        if self.transceiver_lr <= 0:
            raise ValueError('transceiver_lr must be positive')
        if self.effective_q < 1 or self.total_symbols <= self.effective_q + 4:
            raise ValueError('N * w = %d symbols leave no room for q = %d' % (
                self.total_symbols, self.q))
        if not 0 < self.target_ber_low < self.target_ber_high < 0.5:
            raise ValueError('need 0 < target_ber_low < target_ber_high < 0.5')
        if self.gan.samples_per_symbol != self.channel.samples_per_symbol:
            raise ValueError('gan and channel disagree on samples_per_symbol')
        self.channel.validate()
        self.gan.validate()
        self.transceiver.validate()
        self.pretrain.validate()
        return self


@dataclass
class ExperimentState:
    ''' the transceiver, its optimizers and what has been observed so far '''
    transmitter: DenseNet
    receiver: DenseNet
    tx_optimizer: Adam
    rx_optimizer: Adam
    rng: Rng
    gan: Optional[GanPair] = None
    transmission: Optional[Transmission] = None
    history: List[MetricsRecord] = field(default_factory=list)
    evaluations: List[Evaluation] = field(default_factory=list)
    noise_sigma: Optional[float] = None
    started: float = 0.0
    record_wallclock: bool = True

    @property
    def completed(self):
        ''' outer iterations finished after the k = 0 evaluation '''
        return len(self.history) - 1


@dataclass
class ExperimentReport:
    ''' the BER trajectory and the comparison with receiver-only training '''
    ber_trajectory: List[float]
    baseline_ber: float
    baseline_q2_db: Optional[float]
    final_q2_db: Optional[float]
    q2_delta_db: Optional[float]
    baseline_steps: int
    noise_sigma: Optional[float]

    def serialize(self):
        ''' plain dict for summary.json '''
        return {
            'ber_trajectory': self.ber_trajectory,
            'initial_ber': self.ber_trajectory[0],
            'final_ber': self.ber_trajectory[-1],
            'baseline_ber': self.baseline_ber,
            'baseline_q2_db': self.baseline_q2_db,
            'final_q2_db': self.final_q2_db,
            'q2_delta_db': self.q2_delta_db,
            'baseline_steps': self.baseline_steps,
            'noise_sigma': self.noise_sigma,
        }


class ExperimentRecorder:
    ''' receives every record as it is made; subclass to persist them '''
    def on_record(self, state, record):
        ''' called after the k = 0 evaluation and after every iteration '''

    def on_finish(self, state, report):
        ''' called once the baseline comparison is done '''


def _check_loss(loss):
    if not np.isfinite(loss):
        raise NumericError('Nonfinite transceiver loss')
    return loss


def surrogate_gradients(transmitter, receiver, generator, rows, memory, noise):
    ''' loss and Tx/Rx gradients with the generator standing in for the link

    noise holds one fixed z batch per receiver context position.
    '''
    if generator is None:
        raise UsageError('The transceiver update needs a trained generator')
    n = transmitter.output_width
    context = receiver.input_width // n
    windows = rows.message_windows
    if windows.shape[1] != memory + context - 1:
        raise UsageError('Transceiver rows of width %d, expected %d' % (
            windows.shape[1], memory + context - 1))

    blocks, tx_cache = tx_blocks(transmitter, windows)
    fakes, caches = [], []
    for offset in range(context):
        window = blocks[:, offset:offset + memory].reshape(len(windows), -1)
        fake, cache, _ = generator_forward(generator, window, noise=noise[offset])
        fakes.append(fake)
        caches.append(cache)

    probabilities, rx_cache = receiver.forward(np.concatenate(fakes, axis=1))
    labels = onehot(rows.messages - 1, transmitter.input_width)
    loss, grad = mean_cross_entropy(labels, probabilities)
    _check_loss(loss)
    rx_grads, grad_inputs = receiver.backward(rx_cache, grad)

    # generator parameter gradients are discarded; only the windows matter
    grad_blocks = np.zeros_like(blocks)
    for offset in range(context):
        _, grad_window = generator_backward(
            generator, caches[offset], grad_inputs[:, offset * n:(offset + 1) * n])
        grad_blocks[:, offset:offset + memory] += grad_window.reshape(
            len(windows), memory, n)
    tx_grads, _ = transmitter.backward(tx_cache, grad_blocks.reshape(-1, n))
    return loss, tx_grads, rx_grads


def transceiver_update_through_generator(transmitter, receiver, generator, rows,
                                         inner_steps, learning_rate, rng,
                                         memory=3, tx_optimizer=None,
                                         rx_optimizer=None,
                                         train_transmitter=True):
    ''' inner_steps joint Adam updates of Tx and Rx through a frozen G '''
    tx_optimizer = tx_optimizer or Adam(transmitter)
    rx_optimizer = rx_optimizer or Adam(receiver)
    n = transmitter.output_width
    context = receiver.input_width // n
    losses = []
    for step in range(inner_steps):
        noise = [draw_noise(rng.child(step, offset), len(rows), memory * n)
                 for offset in range(context)]
        loss, tx_grads, rx_grads = surrogate_gradients(
            transmitter, receiver, generator, rows, memory, noise)
        if train_transmitter:
            tx_optimizer.step(tx_grads, learning_rate)
        rx_optimizer.step(rx_grads, learning_rate)
        losses.append(loss)
    return transmitter, receiver, losses


def receiver_only_update(receiver, rows, steps, learning_rate, rx_optimizer=None):
    ''' full-batch descent on measured (message, received) pairs '''
    if not len(rows):
        raise UsageError('Receiver training needs measured rows')
    rx_optimizer = rx_optimizer or Adam(receiver)
    labels = onehot(rows.messages - 1, receiver.output_width)
    losses = []
    for _ in range(steps):
        probabilities, cache = receiver.forward(rows.received)
        loss, grad = mean_cross_entropy(labels, probabilities)
        _check_loss(loss)
        grads, _ = receiver.backward(cache, grad)
        rx_optimizer.step(grads, learning_rate)
        losses.append(loss)
    return receiver, losses


def measured_rows(transmission, config):
    ''' the q (message window, received) rows of sequence 0 '''
    context = config.transceiver.rx_context
    q = reserved_rows(config.q, transmission.sequences, transmission.length)
    return transceiver_rows(
        transmission.messages[0], transmission.rx_symbols[0],
        q, config.gan.memory + context - 1, context)


def _transmit(state, config, oracle, transmitter, k):
    return transmit_and_measure(
        transmitter, oracle, config.sequences, config.messages_per_sequence,
        state.rng.child('transmit', k), stream_offset=k * config.sequences)


def _record(state, config, k, evaluation, gan_history=None):
    d_loss, g_loss = gan_history[-1] if gan_history else (None, None)
    wallclock = time.perf_counter() - state.started \
            if state.record_wallclock else 0.0
    return MetricsRecord(
        k=k,
        ser=evaluation.counts.ser,
        ber=evaluation.counts.ber,
        q2_db=evaluation.q2_db,
        gan_generator_loss=g_loss,
        gan_discriminator_loss=d_loss,
        symbols=evaluation.counts.symbols,
        bit_errors=evaluation.counts.bit_errors,
        wallclock_s=wallclock,
        seed=config.seed,
    )


def initialize_state(config, oracle, transmitter, receiver, rng,
                     record_wallclock=True):
    ''' the k = 0 transmission and evaluation, before any update '''
    state = ExperimentState(
        transmitter=transmitter,
        receiver=receiver,
        tx_optimizer=Adam(transmitter),
        rx_optimizer=Adam(receiver),
        rng=rng,
        started=time.perf_counter(),
        record_wallclock=record_wallclock,
    )
    state.transmission = _transmit(state, config, oracle, transmitter, 0)
    evaluation = evaluate_transmission(receiver, state.transmission)
    state.evaluations.append(evaluation)
    state.history.append(_record(state, config, 0, evaluation))
    logger.info('k = 0: BER %.4g, SER %.4g', evaluation.counts.ber,
                evaluation.counts.ser)
    return state


def run_iteration(state, config, k, oracle):
    ''' GAN training, transceiver update, transmission and scoring for k

    On failure the state is restored to what it was before the call and
    IterationError names the stage.
    '''
    snapshot = copy.deepcopy(state)
    stage = 'dataset'
    try:
        transmission = state.transmission
        dataset = build_experiment_dataset(
            transmission.messages, transmission.tx_symbols,
            transmission.rx_symbols, config.gan.memory, config.effective_q)
        rows = measured_rows(transmission, config)

        stage = 'gan'
        pair, gan_history = train_gan(
            dataset, config.gan, state.rng.child('gan', k), initial=state.gan)
        state.gan = pair

        stage = 'transceiver'
        _, _, losses = transceiver_update_through_generator(
            state.transmitter, state.receiver, pair.generator, rows,
            config.inner_transceiver_steps, config.transceiver_lr,
            state.rng.child('surrogate', k), config.gan.memory,
            state.tx_optimizer, state.rx_optimizer)

        stage = 'transmit'
        state.transmission = _transmit(
            state, config, oracle, state.transmitter, k)

        stage = 'evaluate'
        evaluation = evaluate_transmission(state.receiver, state.transmission)
    except Exception as err:
        logger.exception('iteration %d failed during %s', k, stage)
        state.__dict__.update(snapshot.__dict__)
        raise IterationError(stage, k, err) from err

    state.evaluations.append(evaluation)
    record = _record(state, config, k, evaluation, gan_history)
    state.history.append(record)
    logger.info('k = %d: BER %.4g, SER %.4g, transceiver loss %.4f',
                k, record.ber, record.ser, losses[-1])
    return state, record


def run_baseline(config, oracle, rng, transmitter, receiver, transmission):
    ''' receiver-only training from the k = 0 state on the k = 0 data

    Scored on the same messages and noise as the final iteration, sent with
    the k = 0 transmitter.
    '''
    receiver = receiver.copy()
    rows = measured_rows(transmission, config)
    receiver_only_update(
        receiver, rows, config.baseline_steps, config.transceiver_lr)
    final = transmit_and_measure(
        transmitter, oracle, config.sequences, config.messages_per_sequence,
        rng.child('transmit', config.iterations),
        stream_offset=config.iterations * config.sequences)
    return evaluate_transmission(receiver, final)


def run_experiment(config, recorder=None, pretrained=None,
                   record_wallclock=True):
    ''' pretrain, calibrate, evaluate k = 0, run K iterations, compare '''
    config.validate()
    recorder = recorder or ExperimentRecorder()
    rng = Rng(config.seed)

    if pretrained is None:
        pretrained = pretrain_transceiver(
            config.channel, config.pretrain.steps, rng.child('pretrain'),
            config.transceiver, config.pretrain)
    transmitter, receiver = pretrained.transmitter, pretrained.receiver

    channel_config = config.channel
    noise_sigma = channel_config.receiver_noise_sigma
    if config.calibrate_noise:
        noise_sigma = calibrate_noise(
            transmitter, receiver, channel_config, rng.child('calibrate'),
            config.channel_name,
            (config.target_ber_low, config.target_ber_high),
            length=config.messages_per_sequence)
        channel_config = replace(channel_config, receiver_noise_sigma=noise_sigma)
    oracle = load_channel(config.channel_name, channel_config)

    initial_tx, initial_rx = transmitter.copy(), receiver.copy()
    state = initialize_state(config, oracle, transmitter, receiver, rng,
                             record_wallclock)
    state.noise_sigma = noise_sigma
    initial_transmission = state.transmission
    recorder.on_record(state, state.history[-1])

    for k in range(1, config.iterations + 1):
        state, record = run_iteration(state, config, k, oracle)
        recorder.on_record(state, record)

    baseline = run_baseline(config, oracle, rng, initial_tx, initial_rx,
                            initial_transmission)
    final_q2 = state.history[-1].q2_db
    q2_delta = final_q2 - baseline.q2_db \
            if final_q2 is not None and baseline.q2_db is not None else None
    report = ExperimentReport(
        ber_trajectory=[record.ber for record in state.history],
        baseline_ber=baseline.counts.ber,
        baseline_q2_db=baseline.q2_db,
        final_q2_db=final_q2,
        q2_delta_db=q2_delta,
        baseline_steps=config.baseline_steps,
        noise_sigma=noise_sigma,
    )
    logger.info('final BER %.4g, receiver-only BER %.4g, Q2 delta %s dB',
                report.ber_trajectory[-1], report.baseline_ber,
                'n/a' if q2_delta is None else '%.3f' % q2_delta)
    recorder.on_finish(state, report)
    return state, report
