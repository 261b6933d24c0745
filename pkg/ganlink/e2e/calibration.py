''' set the link's receiver noise so the starting BER is in a useful range '''
from dataclasses import replace
import logging
import math

from ganlink.channel import load_channel
from .measurement import evaluate_transmission, transmit_and_measure

logger = logging.getLogger(__name__)

SIGMA_RANGE = (1e-4, 2.0)


def calibrate_noise(transmitter, receiver, channel_config, rng,
                    channel_name='imdd', ber_range=(1e-2, 5e-2), sequences=4,
                    length=2000, rounds=16):
    ''' bisect log(sigma) until the k = 0 BER falls inside ber_range '''
    low, high = ber_range
    lower, upper = (math.log(s) for s in SIGMA_RANGE)

    sigma = None
    for _ in range(rounds):
        sigma = math.exp(0.5 * (lower + upper))
        oracle = load_channel(channel_name, replace(
            channel_config, receiver_noise_sigma=sigma))
        # same messages and noise pattern every round, only the scale moves
        transmission = transmit_and_measure(
            transmitter, oracle, sequences, length, rng.child('calibration'))
        ber = evaluate_transmission(receiver, transmission).counts.ber
        logger.debug('noise sigma %.4g gives BER %.4g', sigma, ber)
        if low <= ber <= high:
            logger.info('calibrated receiver noise sigma to %.4g (BER %.4g)',
                        sigma, ber)
            return sigma
        if ber < low:
            lower = math.log(sigma)
        else:
            upper = math.log(sigma)

    logger.warning('noise calibration did not reach BER in [%g, %g]; '
                   'using sigma %.4g', low, high, sigma)
    return sigma
