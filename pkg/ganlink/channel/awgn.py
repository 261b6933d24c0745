''' memoryless gaussian channel for checking the generative model '''
from .abstract_channel import AbstractChannel
from .stages import awgn_forward


class Channel(AbstractChannel):
    ''' y = x + n, using the configured receiver noise sigma '''
    def transmit(self, samples, rng):
        return awgn_forward(samples, self._config.receiver_noise_sigma, rng)
