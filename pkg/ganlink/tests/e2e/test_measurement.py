''' testing transmission over the oracle and scoring '''
import numpy as np
from django.test import SimpleTestCase

from ganlink.channel import ChannelConfig, load_channel
from ganlink.e2e import Transmission, evaluate_transmission, calibrate_noise
from ganlink.e2e import transmit_and_measure
from ganlink.e2e.measurement import interior
from ganlink.nn import Activation, DenseNet, LayerSpec, ShapeError
from ganlink.transceiver import TransceiverConfig, build_transmitter
from ganlink.transceiver import q2_from_ber
from ganlink.utils.rng import Rng


def threshold_receiver():
    ''' decides message 2 for a positive sample, message 1 otherwise '''
    net = DenseNet.build([LayerSpec(1, 2, Activation.SOFTMAX)], Rng(0))
    net.set_parameters([np.array([[-10.0], [10.0]]), np.zeros(2)])
    return net


def on_off_transmitter():
    ''' message 1 is (nearly) dark, message 2 (nearly) full power '''
    net = DenseNet.build([LayerSpec(2, 1, Activation.BOUNDED)], Rng(0))
    net.set_parameters([np.array([[-5.0, 5.0]]), np.zeros(1)])
    return net


def midpoint_receiver():
    ''' threshold at 0.5 '''
    net = DenseNet.build([LayerSpec(1, 2, Activation.SOFTMAX)], Rng(0))
    net.set_parameters([np.array([[-10.0], [10.0]]), np.array([5.0, -5.0])])
    return net


class Transmitting(SimpleTestCase):
    def setUp(self):
        self.transmitter = build_transmitter(TransceiverConfig(), 6, Rng(1))


    def test_shapes_and_identity(self):
        transmission = transmit_and_measure(
            self.transmitter, load_channel('identity'), 3, 50, Rng(2))
        self.assertEqual(transmission.messages.shape, (3, 50))
        self.assertEqual(transmission.tx_symbols.shape, (3, 50, 6))
        self.assertEqual(transmission.sequences, 3)
        self.assertEqual(transmission.length, 50)
        np.testing.assert_array_equal(transmission.rx_symbols,
                                      transmission.tx_symbols)


    def test_rx_normalized_per_sequence(self):
        transmission = transmit_and_measure(
            self.transmitter, load_channel('imdd'), 2, 100, Rng(2))
        rx = transmission.rx_symbols.reshape(2, -1)
        np.testing.assert_allclose(rx.mean(axis=1), 0, atol=1e-6)
        np.testing.assert_allclose(rx.var(axis=1), 1, atol=1e-6)


    def test_uniform_messages(self):
        transmission = transmit_and_measure(
            self.transmitter, load_channel('identity'), 4, 2000, Rng(3))
        counts = np.bincount(transmission.messages.reshape(-1), minlength=9)[1:]
        expected = 8000 / 8
        bound = 4 * np.sqrt(8000 * (1 / 8) * (7 / 8))
        self.assertTrue(np.all(np.abs(counts - expected) < bound))


    def test_stream_offset(self):
        oracle = load_channel('awgn', ChannelConfig(receiver_noise_sigma=0.1))
        first = transmit_and_measure(self.transmitter, oracle, 1, 20, Rng(2))
        again = transmit_and_measure(self.transmitter, oracle, 1, 20, Rng(2))
        other = transmit_and_measure(self.transmitter, oracle, 1, 20, Rng(2),
                                     stream_offset=1)
        np.testing.assert_array_equal(first.rx_symbols, again.rx_symbols)
        self.assertFalse(np.array_equal(first.rx_symbols, other.rx_symbols))


class Scoring(SimpleTestCase):
    def setUp(self):
        messages = np.array([[1, 2] * 5])
        self.transmission = Transmission(
            messages=messages,
            tx_symbols=np.zeros((1, 10, 1)),
            rx_symbols=np.where(messages == 2, 1.0, -1.0)[..., np.newaxis],
        )


    def test_interior(self):
        self.assertEqual(interior(10, 1), slice(1, 9))
        self.assertEqual(interior(10, 3), slice(1, 9))
        self.assertEqual(interior(10, 5), slice(2, 8))
        with self.assertRaises(ShapeError):
            interior(2, 1)


    def test_error_free(self):
        evaluation = evaluate_transmission(threshold_receiver(), self.transmission)
        self.assertEqual(evaluation.counts.symbols, 8)
        self.assertEqual(evaluation.counts.ber, 0.0)
        self.assertIsNone(evaluation.q2_db)
        np.testing.assert_array_equal(evaluation.confusion, [[4, 0], [0, 4]])


    def test_one_error(self):
        self.transmission.rx_symbols[0, 3, 0] = -1.0
        evaluation = evaluate_transmission(threshold_receiver(), self.transmission)
        self.assertEqual(evaluation.counts.symbol_errors, 1)
        self.assertEqual(evaluation.counts.ber, 1 / 8)
        self.assertAlmostEqual(evaluation.q2_db, q2_from_ber(1 / 8))
        self.assertEqual(evaluation.confusion[1, 0], 1)


class Calibration(SimpleTestCase):
    def setUp(self):
        self.config = ChannelConfig(samples_per_symbol=1)


    def test_lands_in_range(self):
        sigma = calibrate_noise(
            on_off_transmitter(), midpoint_receiver(), self.config, Rng(0),
            channel_name='awgn', sequences=2, length=2000)
        # on-off keying with a midpoint threshold: BER = Q(0.49 / sigma)
        self.assertTrue(0.18 < sigma < 0.33)
        oracle = load_channel('awgn', ChannelConfig(
            samples_per_symbol=1, receiver_noise_sigma=sigma))
        transmission = transmit_and_measure(
            on_off_transmitter(), oracle, 2, 2000, Rng(0).child('calibration'))
        ber = evaluate_transmission(midpoint_receiver(), transmission).counts.ber
        self.assertTrue(1e-2 <= ber <= 5e-2)


    def test_unreachable_range(self):
        with self.assertLogs('ganlink.e2e.calibration', level='WARNING'):
            sigma = calibrate_noise(
                on_off_transmitter(), midpoint_receiver(), self.config, Rng(0),
                channel_name='awgn', ber_range=(0.6, 0.7), sequences=1,
                length=200, rounds=4)
        self.assertGreater(sigma, 0)
