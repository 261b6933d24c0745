''' draw received blocks for a fixed transmitted window '''
import numpy as np

from ganlink.nn import ShapeError
from ganlink.utils.rng import Rng


class ChannelSampler:
    ''' conditional draws from any channel

    Every draw places the window between freshly drawn context symbols, and
    all draws of one call travel as a single stream, so the channel's own
    scale and offset correction sees statistics close to those of a random
    transmission. Context symbols are rows of context_blocks picked
    uniformly, or uniform samples in [0, 1) when no blocks are given.
    '''
    def __init__(self, channel, memory=3, context_blocks=None,
                 context_symbols=16, seed=0):
        self.channel = channel
        self.memory = memory
        self.context_symbols = context_symbols
        self.seed = seed
        self.context_blocks = None
        if context_blocks is not None:
            self.context_blocks = np.atleast_2d(
                np.asarray(context_blocks, dtype=np.float64))
            if self.context_blocks.shape[1] != channel.samples_per_symbol:
                raise ShapeError('Context blocks of width %d, expected %d' % (
                    self.context_blocks.shape[1], channel.samples_per_symbol))

    def _context(self, count, rng):
        size = self.channel.samples_per_symbol
        if self.context_blocks is None:
            return rng.uniform((count, size))
        picks = rng.integers(0, len(self.context_blocks), count)
        return self.context_blocks[picks]

    def sample(self, window, count, stream_index=0):
        ''' count draws of the centre block given window '''
        size = self.channel.samples_per_symbol
        window = np.asarray(window, dtype=np.float64)
        if window.shape != (self.memory * size,):
            raise ShapeError('Window of shape %s, expected (%d,)' % (
                window.shape, self.memory * size))

        pad = self.context_symbols
        period = self.memory + 2 * pad
        rng = Rng(self.seed).child('context', stream_index)
        blocks = self._context(count * period, rng).reshape(count, period, size)
        blocks[:, pad:pad + self.memory, :] = window.reshape(self.memory, size)

        received = self.channel.forward(blocks.reshape(-1), stream_index)
        received = received.reshape(count, period, size)
        return received[:, pad + self.memory // 2, :]
