''' testing the transmitter and receiver networks '''
import numpy as np
from django.test import SimpleTestCase

from ganlink.e2e import model_step
from ganlink.nn import Adam, ShapeError
from ganlink.transceiver import InputError, TransceiverConfig
from ganlink.transceiver import build_receiver, build_transmitter
from ganlink.transceiver import context_blocks, context_blocks_backward
from ganlink.transceiver import decide, message_indices, rx_decode
from ganlink.transceiver import tx_blocks, tx_encode
from ganlink.utils.rng import Rng


class Config(SimpleTestCase):
    def test_defaults(self):
        config = TransceiverConfig().validate()
        self.assertEqual(config.messages, 8)
        self.assertEqual(config.bits, 3)


    def test_invalid(self):
        for values in ({'messages': 6}, {'messages': 1}, {'rx_context': 2},
                       {'hidden_width': 0}):
            with self.assertRaises(ValueError):
                TransceiverConfig(**values).validate()


class Transmitter(SimpleTestCase):
    def setUp(self):
        self.config = TransceiverConfig()
        self.net = build_transmitter(self.config, 6, Rng(0))


    def test_shape(self):
        self.assertEqual(self.net.input_width, 8)
        self.assertEqual(self.net.output_width, 6)
        self.assertEqual(len(self.net.layers), 3)


    def test_samples_bounded(self):
        stream = tx_encode(self.net, Rng(1).integers(1, 9, 500))
        self.assertEqual(stream.shape, (3000,))
        self.assertTrue(np.all((stream >= 0) & (stream <= 1)))


    def test_same_message_same_block(self):
        blocks, _ = tx_blocks(self.net, np.array([[3, 5, 3]]))
        self.assertEqual(blocks.shape, (1, 3, 6))
        np.testing.assert_array_equal(blocks[0, 0], blocks[0, 2])


    def test_encode_concatenates(self):
        blocks, _ = tx_blocks(self.net, np.array([2, 7]))
        np.testing.assert_array_equal(
            tx_encode(self.net, [2, 7]), blocks.reshape(-1))


    def test_messages_outside_alphabet(self):
        for messages in ([0, 1], [9], [1.5]):
            with self.assertRaises(InputError):
                tx_encode(self.net, np.array(messages))


    def test_indices(self):
        np.testing.assert_array_equal(
            message_indices(np.array([1, 8, 4]), 8), [0, 7, 3])


class Receiver(SimpleTestCase):
    def setUp(self):
        self.net = build_receiver(TransceiverConfig(rx_context=3), 6, Rng(2))


    def test_posterior(self):
        probabilities = rx_decode(self.net, Rng(3).normal((10, 18)))
        self.assertEqual(probabilities.shape, (10, 8))
        np.testing.assert_allclose(probabilities.sum(axis=1), np.ones(10))


    def test_wrong_block_length(self):
        with self.assertRaises(ShapeError):
            rx_decode(self.net, np.zeros(6))


    def test_decide_ties_lowest(self):
        self.assertEqual(int(decide(np.array([0.25, 0.25, 0.5, 0.0]))), 3)
        self.assertEqual(int(decide(np.array([0.5, 0.5, 0.0, 0.0]))), 1)


class Context(SimpleTestCase):
    def test_single_block(self):
        blocks = Rng(4).normal((2, 5, 6))
        self.assertIs(context_blocks(blocks, 1), blocks)


    def test_neighbours_circular(self):
        blocks = np.arange(4)[:, np.newaxis] * np.ones((1, 2))
        wide = context_blocks(blocks, 3)
        self.assertEqual(wide.shape, (4, 6))
        np.testing.assert_array_equal(wide[0], [3, 3, 0, 0, 1, 1])
        np.testing.assert_array_equal(wide[3], [2, 2, 3, 3, 0, 0])


    def test_backward_is_adjoint(self):
        rng = Rng(5)
        blocks = rng.normal((3, 7, 6))
        grad = rng.normal((3, 7, 18))
        self.assertAlmostEqual(
            np.sum(context_blocks(blocks, 3) * grad),
            np.sum(blocks * context_blocks_backward(grad, 3)), places=9)


class PassThrough:
    ''' a noiseless link that hands the transmitted streams to the receiver '''
    def forward(self, streams, rng):
        return streams, None

    def backward(self, cache, grad):
        return grad


class Autoencoder(SimpleTestCase):
    def test_closes_on_identity_link(self):
        ''' eight messages, six samples, no errors after 500 adam steps '''
        config = TransceiverConfig()
        transmitter = build_transmitter(config, 6, Rng(30))
        receiver = build_receiver(config, 6, Rng(31))
        tx_optimizer, rx_optimizer = Adam(transmitter), Adam(receiver)
        rng = Rng(32)
        for step in range(500):
            messages = rng.child(step).integers(1, 9, (8, 16))
            _, tx_grads, rx_grads = model_step(
                transmitter, receiver, PassThrough(), messages, rng)
            tx_optimizer.step(tx_grads, 5e-3)
            rx_optimizer.step(rx_grads, 5e-3)

        messages = np.arange(1, 9)
        blocks = tx_encode(transmitter, messages).reshape(8, 6)
        np.testing.assert_array_equal(decide(receiver(blocks)), messages)
