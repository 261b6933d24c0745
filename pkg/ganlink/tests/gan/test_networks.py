''' testing the generator and discriminator networks '''
import numpy as np
from django.test import SimpleTestCase

from ganlink.gan import GanPair, build_gan_pair, build_generator
from ganlink.gan import discriminator_inputs, draw_noise
from ganlink.gan import generator_backward, generator_forward
from ganlink.nn import Activation, ShapeError
from ganlink.utils.rng import Rng


class Widths(SimpleTestCase):
    def test_width_law(self):
        for n in (2, 6, 8):
            pair = build_gan_pair(n, 3, Rng(n))
            generator = [(l.spec.input_width, l.spec.output_width)
                         for l in pair.generator.layers]
            self.assertEqual(generator, [
                (6 * n, 30 * n), (30 * n, 20 * n), (20 * n, 13 * n),
                (13 * n, 8 * n), (8 * n, 5 * n), (5 * n, n)])
            discriminator = [(l.spec.input_width, l.spec.output_width)
                             for l in pair.discriminator.layers]
            self.assertEqual(discriminator, [
                (4 * n, 16 * n), (16 * n, 10 * n), (10 * n, 6 * n), (6 * n, 2)])
            self.assertEqual(pair.window_width, 3 * n)


    def test_activations(self):
        pair = build_gan_pair(6, 3, Rng(0))
        self.assertEqual(pair.generator.layers[-1].activation, Activation.LINEAR)
        self.assertEqual(pair.discriminator.layers[-1].activation,
                         Activation.SOFTMAX)
        self.assertTrue(all(layer.activation == Activation.RELU
                            for layer in pair.generator.layers[:-1]))


    def test_copy_is_independent(self):
        pair = build_gan_pair(6, 3, Rng(0))
        other = pair.copy()
        self.assertIsInstance(other, GanPair)
        other.generator.layers[0].weights[0, 0] += 1.0
        self.assertNotEqual(other.generator.layers[0].weights[0, 0],
                            pair.generator.layers[0].weights[0, 0])


class Generator(SimpleTestCase):
    def setUp(self):
        self.generator = build_generator(6, 3, Rng(1))
        self.windows = Rng(2).uniform((5, 18))


    def test_noise_is_uniform(self):
        noise = draw_noise(Rng(3), 1000, 18)
        self.assertTrue(np.all((noise >= 0) & (noise < 1)))


    def test_fixed_noise_repeats(self):
        fake, _, noise = generator_forward(self.generator, self.windows, Rng(4))
        again, _, _ = generator_forward(self.generator, self.windows, noise=noise)
        self.assertEqual(fake.shape, (5, 6))
        np.testing.assert_array_equal(fake, again)


    def test_single_window(self):
        fake, _, _ = generator_forward(self.generator, self.windows[0], Rng(4))
        self.assertEqual(fake.shape, (6,))


    def test_window_width(self):
        with self.assertRaises(ShapeError):
            generator_forward(self.generator, np.zeros((2, 12)), Rng(0))


    def test_backward_window_gradient(self):
        _, cache, _ = generator_forward(self.generator, self.windows, Rng(5))
        grads, grad_windows = generator_backward(
            self.generator, cache, np.ones((5, 6)))
        self.assertEqual(grad_windows.shape, (5, 18))
        self.assertEqual(len(grads), 2 * len(self.generator.layers))


    def test_discriminator_inputs(self):
        rows = discriminator_inputs(np.ones((4, 6)), np.zeros((4, 18)))
        self.assertEqual(rows.shape, (4, 24))
        np.testing.assert_array_equal(rows[:, :6], np.ones((4, 6)))
