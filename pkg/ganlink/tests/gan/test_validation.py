''' testing generator validation against channel draws '''
import numpy as np
from django.test import SimpleTestCase

from ganlink.channel import ChannelConfig, load_channel
from ganlink.channel.imdd import build_oracle
from ganlink.channel.sampler import ChannelSampler
from ganlink.gan import build_generator, energy_distance, validate_generator
from ganlink.nn import ShapeError
from ganlink.utils.rng import Rng


class EnergyDistance(SimpleTestCase):
    def test_identical_sets(self):
        points = Rng(0).normal((50, 3))
        self.assertAlmostEqual(energy_distance(points, points), 0.0)


    def test_shifted_sets(self):
        points = Rng(0).normal((200, 2))
        near = energy_distance(points, Rng(1).normal((200, 2)))
        far = energy_distance(points, Rng(1).normal((200, 2)) + 3.0)
        self.assertGreater(far, 10 * near)


class Fidelity(SimpleTestCase):
    def setUp(self):
        config = ChannelConfig(receiver_noise_sigma=0.05)
        self.sampler = ChannelSampler(load_channel('awgn', config), memory=3)
        self.windows = Rng(2).uniform((100, 18))


    def test_channel_against_itself(self):
        report = validate_generator(
            self.sampler, self.sampler, self.windows, Rng(3), draws=200,
            permutations=2)
        self.assertLess(report.mean_energy_distance, 1.5 * report.baseline_mean)
        self.assertEqual(report.energy_distances.shape, (100,))
        np.testing.assert_allclose(report.mean_delta, 0.0, atol=0.01)


    def test_constant_generator(self):
        generator = build_generator(6, 3, Rng(4))
        generator.set_parameters(
            [np.zeros_like(p) for p in generator.parameters()])
        report = validate_generator(
            generator, self.sampler, self.windows, Rng(3), draws=200,
            permutations=2)
        self.assertGreater(report.mean_energy_distance, 10 * report.baseline_mean)
        self.assertGreater(report.mean_energy_distance, report.baseline_p99)
        self.assertEqual(set(report.serialize()), {
            'mean_energy_distance', 'max_energy_distance', 'baseline_mean',
            'baseline_p99', 'mean_delta', 'std_delta'})


    def test_too_few_windows(self):
        with self.assertRaises(ShapeError):
            validate_generator(self.sampler, self.sampler, self.windows[:10],
                               Rng(3))


class ImddFidelity(SimpleTestCase):
    def setUp(self):
        levels = np.array([0.0, 1 / 3, 2 / 3, 1.0])
        blocks = np.repeat(levels[:, np.newaxis], 6, axis=1)
        self.sampler = ChannelSampler(build_oracle(), memory=3,
                                      context_blocks=blocks)
        self.windows = blocks[Rng(2).integers(0, 4, (100, 3))].reshape(100, 18)


    def test_channel_against_itself(self):
        report = validate_generator(
            self.sampler, self.sampler, self.windows, Rng(3), draws=100,
            permutations=2)
        self.assertLess(report.mean_energy_distance, 1.5 * report.baseline_mean)


    def test_constant_generator(self):
        ''' zero output is far from the normalized received blocks '''
        generator = build_generator(6, 3, Rng(4))
        generator.set_parameters(
            [np.zeros_like(p) for p in generator.parameters()])
        report = validate_generator(
            generator, self.sampler, self.windows, Rng(3), draws=100,
            permutations=2)
        self.assertGreater(report.mean_energy_distance, 3 * report.baseline_mean)
