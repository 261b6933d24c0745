''' functionality outline for a black-box channel '''
from abc import ABC, abstractmethod
from dataclasses import dataclass, asdict

import numpy as np

from ganlink.nn import ShapeError, UsageError
from ganlink.utils.rng import Rng

SPEED_OF_LIGHT = 299792458.0


class ChannelException(ValueError):
    ''' channel parameters that can't be simulated '''


@dataclass
class ChannelConfig:
    ''' physical constants of the simulated link, SI units throughout '''
    samples_per_symbol: int = 6
    dac_rate: float = 84e9
    lpf_bandwidth: float = 32e9
    fiber_length: float = 20e3
    # 17 ps/(nm km)
    dispersion_coefficient: float = 17e-6
    wavelength: float = 1550e-9
    dac_bits: int = 8
    adc_bits: int = 8
    modulator_vpi_normalization: float = 1.0
    receiver_noise_sigma: float = 0.06
    adc_clip_sigmas: float = 4.0
    seed: int = 0

    @property
    def beta2(self):
        ''' group velocity dispersion in s^2/m '''
        return -self.dispersion_coefficient * self.wavelength ** 2 / \
                (2 * np.pi * SPEED_OF_LIGHT)

    def validate(self):
        ''' raise ChannelException for anything out of range '''
        if self.samples_per_symbol < 1:
            raise ChannelException('samples_per_symbol must be at least 1')
        for name in ('dac_rate', 'lpf_bandwidth', 'wavelength',
                     'modulator_vpi_normalization', 'adc_clip_sigmas'):
            if getattr(self, name) <= 0:
                raise ChannelException('%s must be positive' % name)
        if self.fiber_length < 0:
            raise ChannelException('fiber_length can not be negative')
        if self.receiver_noise_sigma < 0:
            raise ChannelException('receiver_noise_sigma can not be negative')
        if self.lpf_bandwidth >= self.dac_rate / 2:
            raise ChannelException(
                'lpf_bandwidth %g Hz is not below the Nyquist frequency %g Hz'
                % (self.lpf_bandwidth, self.dac_rate / 2))
        for name in ('dac_bits', 'adc_bits'):
            if not 1 <= getattr(self, name) <= 16:
                raise ChannelException('%s must be in [1, 16]' % name)
        return self

    def serialize(self):
        ''' plain dict for reports '''
        return asdict(self)


class AbstractChannel(ABC):
    ''' a forward-only channel: sample streams in, sample streams out '''
    def __init__(self, config):
        self._config = config.validate()

    @property
    def samples_per_symbol(self):
        ''' the block length every input must be a multiple of '''
        return self._config.samples_per_symbol

    def forward(self, samples, stream_index=0):
        ''' transmit one sequence; noise depends only on (seed, stream_index) '''
        samples = np.asarray(samples, dtype=np.float64)
        if samples.ndim != 1 or not samples.size:
            raise UsageError('A channel transmits a nonempty 1-d sample stream')
        if samples.size % self.samples_per_symbol:
            raise ShapeError('%d samples is not a whole number of %d-sample '
                             'symbols' % (samples.size, self.samples_per_symbol))
        rng = Rng(self._config.seed).child('channel', stream_index)
        return self.transmit(samples, rng)

    def __call__(self, samples, stream_index=0):
        return self.forward(samples, stream_index=stream_index)

    @abstractmethod
    def transmit(self, samples, rng):
        ''' the channel law itself; same length out as in '''
