''' generator and discriminator of the conditional GAN '''
from dataclasses import dataclass

import numpy as np

from ganlink.nn import Activation, DenseNet, ShapeError, chain

# hidden widths in units of samples per symbol
GENERATOR_WIDTHS = (30, 20, 13, 8, 5)
DISCRIMINATOR_WIDTHS = (16, 10, 6)

# discriminator output labels
LABEL_REAL = np.array([0.0, 1.0])
LABEL_FAKE = np.array([1.0, 0.0])


@dataclass
class GanPair:
    ''' G maps (z, window) to a fake block, D classifies (block, window) '''
    generator: DenseNet
    discriminator: DenseNet
    memory: int
    samples_per_symbol: int

    @property
    def window_width(self):
        ''' m * n '''
        return self.memory * self.samples_per_symbol

    def copy(self):
        ''' independent copy of both networks '''
        return GanPair(self.generator.copy(), self.discriminator.copy(),
                       self.memory, self.samples_per_symbol)


def build_generator(samples_per_symbol, memory, rng):
    ''' 2mn -> ReLU 30n, 20n, 13n, 8n, 5n -> linear n '''
    n = samples_per_symbol
    widths = [w * n for w in GENERATOR_WIDTHS] + [n]
    activations = [Activation.RELU] * len(GENERATOR_WIDTHS) + [Activation.LINEAR]
    return DenseNet.build(chain(2 * memory * n, widths, activations), rng)


def build_discriminator(samples_per_symbol, memory, rng):
    ''' (m+1)n -> ReLU 16n, 10n, 6n -> softmax 2 '''
    n = samples_per_symbol
    widths = [w * n for w in DISCRIMINATOR_WIDTHS] + [2]
    activations = [Activation.RELU] * len(DISCRIMINATOR_WIDTHS) + \
            [Activation.SOFTMAX]
    return DenseNet.build(chain((memory + 1) * n, widths, activations), rng)


def build_gan_pair(samples_per_symbol, memory, rng):
    ''' freshly initialized networks '''
    return GanPair(
        generator=build_generator(samples_per_symbol, memory, rng.child('G')),
        discriminator=build_discriminator(
            samples_per_symbol, memory, rng.child('D')),
        memory=memory,
        samples_per_symbol=samples_per_symbol,
    )


def draw_noise(rng, rows, width):
    ''' z ~ U(0, 1), one row per window '''
    return rng.uniform((rows, width))


def generator_forward(generator, windows, rng=None, noise=None):
    ''' fake received blocks for one window or a batch of windows

    Returns (fake, cache, noise); pass noise to repeat a draw exactly.
    '''
    windows = np.asarray(windows, dtype=np.float64)
    single = windows.ndim == 1
    windows = np.atleast_2d(windows)
    width = generator.input_width // 2
    if windows.shape[1] != width:
        raise ShapeError('Window of length %d, generator expects %d' % (
            windows.shape[1], width))
    if noise is None:
        noise = draw_noise(rng, len(windows), width)
    noise = np.atleast_2d(noise)
    fake, cache = generator.forward(np.concatenate([noise, windows], axis=1))
    return (fake[0] if single else fake), cache, noise


def generator_backward(generator, cache, grad_fake):
    ''' parameter gradients and the gradient w.r.t. the windows '''
    grads, grad_input = generator.backward(cache, np.atleast_2d(grad_fake))
    width = generator.input_width // 2
    return grads, grad_input[:, width:]


def discriminator_inputs(blocks, windows):
    ''' (y, window) rows '''
    return np.concatenate([np.atleast_2d(blocks), np.atleast_2d(windows)], axis=1)
