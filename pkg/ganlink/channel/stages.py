''' signal processing stages of the simulated IM/DD link '''
import numpy as np

from .abstract_channel import ChannelException

# below this spread a stream counts as constant
ZERO_VARIANCE = 1e-12


def lowpass_mask(length, bandwidth, sample_rate):
    ''' brick-wall passband over the fft bins '''
    if bandwidth >= sample_rate / 2:
        raise ChannelException(
            'Filter bandwidth %g Hz is not below Nyquist (%g Hz)' % (
                bandwidth, sample_rate / 2))
    frequencies = np.fft.fftfreq(length, d=1.0 / sample_rate)
    return (np.abs(frequencies) <= bandwidth).astype(np.float64)


def lpf(stream, bandwidth, sample_rate):
    ''' zero every bin above bandwidth; filters along the last axis '''
    stream = np.asarray(stream, dtype=np.float64)
    mask = lowpass_mask(stream.shape[-1], bandwidth, sample_rate)
    return np.real(np.fft.ifft(np.fft.fft(stream, axis=-1) * mask, axis=-1))


def quantize(stream, bits, clip_range):
    ''' mid-rise uniform quantizer with saturation '''
    if not 1 <= bits <= 16:
        raise ChannelException('Quantizer resolution must be 1-16 bits')
    low, high = clip_range
    if not high > low:
        raise ChannelException('Empty quantizer range [%g, %g]' % (low, high))
    levels = 2 ** bits
    step = (high - low) / levels
    index = np.clip(np.floor((np.asarray(stream) - low) / step), 0, levels - 1)
    return low + (index + 0.5) * step


def mzm_modulate(drive, vpi_normalization=1.0):
    ''' field amplitude of a quadrature-biased modulator, drive in [0, 1] '''
    drive = np.clip(np.asarray(drive, dtype=np.float64), 0.0, 1.0)
    return np.sin(0.5 * np.pi * drive / vpi_normalization)


def dispersion_response(length, beta2, fiber_length, sample_rate):
    ''' all-pass quadratic phase over the fft bins '''
    omega = 2 * np.pi * np.fft.fftfreq(length, d=1.0 / sample_rate)
    return np.exp(1j * (beta2 / 2.0) * omega ** 2 * fiber_length)


def fiber_dispersion(field, beta2, length, sample_rate):
    ''' linear, lossless propagation through the fibre '''
    field = np.asarray(field)
    response = dispersion_response(field.shape[-1], beta2, length, sample_rate)
    return np.fft.ifft(np.fft.fft(field, axis=-1) * response, axis=-1)


def photodetect(field, noise_sigma, rng, ac_coupled=True):
    ''' square law plus receiver noise, then mean removal '''
    if noise_sigma < 0:
        raise ChannelException('Noise sigma can not be negative')
    current = np.abs(field) ** 2
    if noise_sigma > 0:
        current = current + rng.normal(current.shape, scale=noise_sigma)
    if ac_coupled:
        current = current - current.mean(axis=-1, keepdims=True)
    return current


def awgn_forward(stream, sigma, rng):
    ''' additive white gaussian noise '''
    stream = np.asarray(stream, dtype=np.float64)
    if sigma < 0:
        raise ChannelException('Noise sigma can not be negative')
    if sigma == 0:
        return stream.copy()
    return stream + rng.normal(stream.shape, scale=sigma)


def normalize(stream):
    ''' scaling and offset correction: zero mean, unit variance '''
    stream = np.asarray(stream, dtype=np.float64)
    centered = stream - stream.mean(axis=-1, keepdims=True)
    spread = centered.std(axis=-1, keepdims=True)
    # constant streams only get the offset correction
    return np.where(spread > ZERO_VARIANCE, centered / np.maximum(
        spread, ZERO_VARIANCE), centered)
