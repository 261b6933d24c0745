''' adversarial training: 4 discriminator updates, then 1 generator update '''
from dataclasses import dataclass
import logging
import math

import numpy as np

from ganlink.nn import Adam, NumericError, UsageError
from ganlink.nn import cross_entropy, mean_cross_entropy
from .networks import LABEL_FAKE, LABEL_REAL, build_gan_pair
from .networks import discriminator_inputs, generator_forward, generator_backward

logger = logging.getLogger(__name__)


@dataclass
class GanConfig:
    ''' schedule and sizes for training the channel model '''
    memory: int = 3
    samples_per_symbol: int = 6
    batch_size: int = 1000
    total_steps: int = 10000
    d_updates_per_step: int = 4
    d_learning_rate: float = 1e-3
    g_lr_start: float = 5e-4
    g_lr_end: float = 1e-5
    g_lr_interval: int = 200
    warm_start: bool = False
    log_interval: int = 100
    # generator draws per validation window when validating against the channel
    validation_draws: int = 1000

    def validate(self):
        ''' odd memory, positive sizes, a decaying generator rate '''
        if self.memory < 1 or self.memory % 2 == 0:
            raise ValueError('memory must be odd, got %d' % self.memory)
        for name in ('samples_per_symbol', 'batch_size', 'total_steps',
                     'd_updates_per_step', 'g_lr_interval', 'log_interval',
                     'validation_draws'):
            if getattr(self, name) < 1:
                raise ValueError('%s must be at least 1' % name)
        if self.d_learning_rate <= 0:
            raise ValueError('d_learning_rate must be positive')
        if not self.g_lr_start >= self.g_lr_end > 0:
            raise ValueError('need g_lr_start >= g_lr_end > 0')
        return self


class GanTrainer:
    ''' a GAN pair with one Adam optimizer per network '''
    def __init__(self, pair, config):
        self.pair = pair
        self.config = config
        self.d_optimizer = Adam(pair.discriminator)
        self.g_optimizer = Adam(pair.generator)


def adversarial_losses(p_real, p_fake):
    ''' batch averages of the discriminator and generator cross entropies '''
    p_real, p_fake = np.atleast_2d(p_real), np.atleast_2d(p_fake)
    if not len(p_real) or not len(p_fake):
        raise UsageError('Losses need a nonempty batch')
    real_term = cross_entropy(np.broadcast_to(LABEL_REAL, p_real.shape), p_real)
    fake_term = cross_entropy(np.broadcast_to(LABEL_FAKE, p_fake.shape), p_fake)
    g_term = cross_entropy(np.broadcast_to(LABEL_REAL, p_fake.shape), p_fake)
    return float((real_term + fake_term).mean()), float(g_term.mean())


def discriminator_loss(pair, windows, targets, rng):
    ''' L_D on a batch, with p_real and p_fake '''
    if not len(windows):
        raise UsageError('Losses need a nonempty batch')
    fake, _, _ = generator_forward(pair.generator, windows, rng)
    p_real = pair.discriminator(discriminator_inputs(targets, windows))
    p_fake = pair.discriminator(discriminator_inputs(fake, windows))
    return adversarial_losses(p_real, p_fake)[0], p_real, p_fake


def generator_loss(pair, windows, rng):
    ''' L_G on a batch, with p_fake '''
    if not len(windows):
        raise UsageError('Losses need a nonempty batch')
    fake, _, _ = generator_forward(pair.generator, windows, rng)
    p_fake = pair.discriminator(discriminator_inputs(fake, windows))
    g_term = cross_entropy(np.broadcast_to(LABEL_REAL, p_fake.shape), p_fake)
    return float(g_term.mean()), p_fake


def g_lr_schedule(step, config):
    ''' piecewise constant, geometric from g_lr_start to g_lr_end '''
    intervals = math.ceil(config.total_steps / config.g_lr_interval)
    interval = min(step // config.g_lr_interval, intervals - 1)
    if intervals == 1:
        return config.g_lr_start
    ratio = config.g_lr_end / config.g_lr_start
    return config.g_lr_start * ratio ** (interval / (intervals - 1))


def _check(loss, step, name):
    if not np.isfinite(loss):
        raise NumericError('Nonfinite %s loss' % name, step=step)
    return loss


def update_discriminator(trainer, windows, targets, rng, step=None):
    ''' one Adam step on phi minimizing L_D; theta is untouched '''
    pair = trainer.pair
    fake, _, _ = generator_forward(pair.generator, windows, rng)
    inputs = np.concatenate([
        discriminator_inputs(targets, windows),
        discriminator_inputs(fake, windows),
    ])
    labels = np.concatenate([
        np.broadcast_to(LABEL_REAL, (len(windows), 2)),
        np.broadcast_to(LABEL_FAKE, (len(windows), 2)),
    ])
    probabilities, cache = pair.discriminator.forward(inputs)
    # mean over 2B rows is half of L_D, which sums both terms per row
    loss, grad = mean_cross_entropy(labels, probabilities)
    loss = _check(2.0 * loss, step, 'discriminator')
    grads, _ = pair.discriminator.backward(cache, 2.0 * grad)
    trainer.d_optimizer.step(grads, trainer.config.d_learning_rate)
    return loss


def update_generator(trainer, windows, rng, learning_rate, step=None):
    ''' one Adam step on theta minimizing L_G through a frozen D '''
    pair = trainer.pair
    n = pair.samples_per_symbol
    fake, g_cache, _ = generator_forward(pair.generator, windows, rng)
    probabilities, d_cache = pair.discriminator.forward(
        discriminator_inputs(fake, windows))
    labels = np.broadcast_to(LABEL_REAL, probabilities.shape)
    loss, grad = mean_cross_entropy(labels, probabilities)
    loss = _check(loss, step, 'generator')
    # only the input gradient of D is used; its parameters stay put
    _, grad_inputs = pair.discriminator.backward(d_cache, grad)
    grads, _ = generator_backward(pair.generator, g_cache, grad_inputs[:, :n])
    trainer.g_optimizer.step(grads, learning_rate)
    return loss


def gan_train_step(trainer, dataset, step, rng):
    ''' d_updates_per_step discriminator updates, then one generator update '''
    config = trainer.config
    if not len(dataset):
        raise UsageError('GAN training needs a nonempty dataset')
    d_loss = None
    for update in range(config.d_updates_per_step):
        windows, targets = dataset.batch(rng.child('d', update), config.batch_size)
        d_loss = update_discriminator(
            trainer, windows, targets, rng.child('d-noise', update), step)
    windows, _ = dataset.batch(rng.child('g'), config.batch_size)
    g_loss = update_generator(
        trainer, windows, rng.child('g-noise'), g_lr_schedule(step, config), step)
    return d_loss, g_loss


def train_gan(dataset, config, rng, initial=None):
    ''' total_steps training steps; returns the pair and per-step losses '''
    config.validate()
    if len(dataset) < config.batch_size:
        raise UsageError('%d dataset rows, fewer than the batch size %d' % (
            len(dataset), config.batch_size))
    if config.warm_start and initial is not None:
        pair = initial.copy()
    else:
        pair = build_gan_pair(
            config.samples_per_symbol, config.memory, rng.child('init'))
    trainer = GanTrainer(pair, config)

    history = []
    for step in range(config.total_steps):
        history.append(gan_train_step(trainer, dataset, step, rng.child(step)))
        if (step + 1) % config.log_interval == 0:
            logger.info('GAN step %d/%d: L_D %.4f, L_G %.4f',
                        step + 1, config.total_steps, *history[-1])
    return pair, history


def discriminator_accuracy(pair, windows, targets, rng):
    ''' how often D labels held-out real and fake blocks correctly '''
    _, p_real, p_fake = discriminator_loss(pair, windows, targets, rng)
    correct = (p_real[:, 1] > 0.5).sum() + (p_fake[:, 0] > 0.5).sum()
    return correct / (len(p_real) + len(p_fake))
