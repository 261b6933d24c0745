''' differentiable, simplified IM/DD model for offline transceiver training '''
from dataclasses import dataclass, replace

import numpy as np

from ganlink.nn import UsageError
from .stages import ZERO_VARIANCE, lowpass_mask, dispersion_response


@dataclass
class ModelCache:
    ''' intermediate signals of one forward pass '''
    drive: np.ndarray
    field: np.ndarray
    received_field: np.ndarray
    normalized: np.ndarray
    spread: np.ndarray


class ImddModel:
    ''' LPF, MZM, dispersion, square law, gaussian noise, normalization

    No converters, a fixed noise level and optionally scaled dispersion: a
    smooth approximation of the link that gradients can pass through.
    Operates on a batch of sequences, one per row.
    '''
    def __init__(self, config, noise_sigma=None, dispersion_scale=1.0):
        self.config = replace(
            config,
            receiver_noise_sigma=config.receiver_noise_sigma \
                    if noise_sigma is None else noise_sigma,
            fiber_length=config.fiber_length * dispersion_scale,
        ).validate()

    def _filters(self, length):
        config = self.config
        mask = lowpass_mask(length, config.lpf_bandwidth, config.dac_rate)
        response = dispersion_response(
            length, config.beta2, config.fiber_length, config.dac_rate)
        return mask, response

    def forward(self, streams, rng):
        ''' received, normalized streams and the cache for backward '''
        streams = np.atleast_2d(np.asarray(streams, dtype=np.float64))
        config = self.config
        mask, response = self._filters(streams.shape[-1])

        drive = np.real(np.fft.ifft(np.fft.fft(streams, axis=-1) * mask, axis=-1))
        field = np.sin(0.5 * np.pi * np.clip(drive, 0.0, 1.0) / \
                config.modulator_vpi_normalization)
        received_field = np.fft.ifft(np.fft.fft(field, axis=-1) * response, axis=-1)
        current = np.abs(received_field) ** 2
        if config.receiver_noise_sigma > 0:
            current = current + rng.normal(
                current.shape, scale=config.receiver_noise_sigma)

        centered = current - current.mean(axis=-1, keepdims=True)
        spread = centered.std(axis=-1, keepdims=True)
        normalized = np.where(
            spread > ZERO_VARIANCE,
            centered / np.maximum(spread, ZERO_VARIANCE),
            centered)
        cache = ModelCache(drive, field, received_field, normalized, spread)
        return normalized, cache

    def backward(self, cache, grad_output):
        ''' gradient of the loss w.r.t. the transmitted streams '''
        if cache is None:
            raise UsageError('backward needs the cache of a forward call')
        config = self.config
        grad = np.atleast_2d(np.asarray(grad_output, dtype=np.float64))
        mask, response = self._filters(grad.shape[-1])

        # normalization
        centered_grad = grad - grad.mean(axis=-1, keepdims=True)
        projection = (grad * cache.normalized).mean(axis=-1, keepdims=True)
        scaled = (centered_grad - cache.normalized * projection) / \
                np.maximum(cache.spread, ZERO_VARIANCE)
        grad_current = np.where(cache.spread > ZERO_VARIANCE, scaled, centered_grad)

        # square law, then the adjoint of the all-pass filter
        grad_received = 2.0 * grad_current * cache.received_field
        grad_field = np.real(np.fft.ifft(
            np.fft.fft(grad_received, axis=-1) * np.conj(response), axis=-1))

        # modulator, saturating outside [0, 1]
        phase_scale = 0.5 * np.pi / config.modulator_vpi_normalization
        inside = (cache.drive > 0.0) & (cache.drive < 1.0)
        grad_drive = grad_field * phase_scale * \
                np.cos(phase_scale * np.clip(cache.drive, 0.0, 1.0)) * inside

        # the brick-wall filter is self-adjoint
        return np.real(np.fft.ifft(np.fft.fft(grad_drive, axis=-1) * mask, axis=-1))
