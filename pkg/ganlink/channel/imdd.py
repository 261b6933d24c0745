''' software stand-in for the IM/DD test-bed '''
from .abstract_channel import AbstractChannel, ChannelConfig
from .stages import ZERO_VARIANCE, lpf, quantize, mzm_modulate
from .stages import fiber_dispersion, photodetect, normalize


class Channel(AbstractChannel):
    ''' LPF, DAC, MZM, fibre, PIN+TIA, ADC and scale/offset correction '''
    def transmit(self, samples, rng):
        config = self._config
        drive = lpf(samples, config.lpf_bandwidth, config.dac_rate)
        drive = quantize(drive, config.dac_bits, (0.0, 1.0))
        field = mzm_modulate(drive, config.modulator_vpi_normalization)
        field = fiber_dispersion(
            field, config.beta2, config.fiber_length, config.dac_rate)
        current = photodetect(field, config.receiver_noise_sigma, rng)

        spread = current.std()
        if spread > ZERO_VARIANCE:
            clip = config.adc_clip_sigmas * spread
            current = quantize(current, config.adc_bits, (-clip, clip))
        return normalize(current)


def imdd_forward(oracle, tx_samples, stream_index=0):
    ''' send tx samples through the test-bed stand-in '''
    return oracle.forward(tx_samples, stream_index=stream_index)


def build_oracle(config=None):
    ''' an IM/DD channel with the given (or default) constants '''
    return Channel(config or ChannelConfig())
