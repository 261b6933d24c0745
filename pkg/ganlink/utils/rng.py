''' reproducible random streams '''
import zlib

import numpy as np


class Rng:
    ''' a seeded sample stream; children are independent, derived streams '''
    def __init__(self, seed=0, spawn_key=()):
        self.seed = int(seed)
        self.spawn_key = tuple(spawn_key)
        sequence = np.random.SeedSequence(
            entropy=self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def child(self, *keys):
        ''' a new stream keyed by (seed, parent keys, keys) '''
        return Rng(self.seed, self.spawn_key + tuple(_key(k) for k in keys))

    def uniform(self, size=None, low=0.0, high=1.0):
        ''' samples in [low, high) '''
        return self.generator.uniform(low, high, size)

    def normal(self, size=None, scale=1.0):
        ''' zero mean gaussian samples '''
        return self.generator.normal(0.0, scale, size)

    def integers(self, low, high, size=None):
        ''' integers in [low, high) '''
        return self.generator.integers(low, high, size)

    def permutation(self, count):
        ''' a shuffled arange '''
        return self.generator.permutation(count)

    def __repr__(self):
        return '<Rng seed={!r} key={!r}>'.format(self.seed, self.spawn_key)


def _key(value):
    ''' spawn keys must be non-negative integers '''
    if isinstance(value, str):
        # stable across processes, unlike hash()
        return zlib.crc32(value.encode('utf8'))
    return int(value)
