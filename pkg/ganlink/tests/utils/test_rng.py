''' testing the random streams '''
import numpy as np
from django.test import SimpleTestCase

from ganlink.utils.rng import Rng


class RandomStreams(SimpleTestCase):
    def test_same_seed_same_samples(self):
        np.testing.assert_array_equal(
            Rng(3).child('a', 1).normal(10), Rng(3).child('a', 1).normal(10))


    def test_children_differ(self):
        rng = Rng(3)
        self.assertFalse(np.array_equal(
            rng.child('a').uniform(10), rng.child('b').uniform(10)))
        self.assertFalse(np.array_equal(
            rng.child(0).uniform(10), rng.child(1).uniform(10)))


    def test_seeds_differ(self):
        self.assertFalse(np.array_equal(Rng(1).uniform(5), Rng(2).uniform(5)))


    def test_child_does_not_consume_parent(self):
        first, second = Rng(4), Rng(4)
        first.child('x').uniform(100)
        np.testing.assert_array_equal(first.uniform(3), second.uniform(3))


    def test_ranges(self):
        values = Rng(0).integers(1, 9, 1000)
        self.assertEqual(values.min(), 1)
        self.assertEqual(values.max(), 8)
        self.assertEqual(sorted(Rng(0).permutation(5).tolist()), list(range(5)))
