''' testing the conditioning dataset '''
import numpy as np
from django.test import SimpleTestCase

from ganlink.gan import build_conditioning_dataset, build_experiment_dataset
from ganlink.gan import transceiver_rows
from ganlink.nn import ShapeError, UsageError
from ganlink.utils.rng import Rng


def ramp(total, n=2):
    ''' symbol i is a block of the value i '''
    return np.repeat(np.arange(total, dtype=np.float64)[:, np.newaxis], n, axis=1)


class Conditioning(SimpleTestCase):
    def test_row_count(self):
        dataset = build_conditioning_dataset(ramp(10), ramp(10) + 0.5, q=2)
        self.assertEqual(len(dataset), 6)
        # 1-based centres 4..9, i.e. q + 2 to T - 1
        np.testing.assert_array_equal(dataset.centers + 1, np.arange(4, 10))
        self.assertEqual(dataset.windows.shape, (6, 6))
        self.assertEqual(dataset.samples_per_symbol, 2)


    def test_ramp_windows(self):
        for total in range(5, 51):
            for q in range(0, total - 3):
                dataset = build_conditioning_dataset(ramp(total), ramp(total), q=q)
                self.assertEqual(len(dataset), total - q - 2)
                centers = dataset.centers
                np.testing.assert_array_equal(
                    dataset.windows[:, ::2],
                    np.stack([centers - 1, centers, centers + 1], axis=1))
                np.testing.assert_array_equal(dataset.targets[:, 0], centers)


    def test_reserved_symbols_kept_apart(self):
        messages = np.arange(1, 21)
        dataset = build_conditioning_dataset(
            ramp(20), ramp(20) * 2, q=5, messages=messages)
        np.testing.assert_array_equal(dataset.messages, [1, 2, 3, 4, 5])
        np.testing.assert_array_equal(dataset.received[:, 0], [0, 2, 4, 6, 8])
        self.assertGreaterEqual(dataset.windows[:, 0].min(), 5)


    def test_wider_memory(self):
        dataset = build_conditioning_dataset(ramp(12), ramp(12), memory=5, q=0)
        self.assertEqual(len(dataset), 8)
        np.testing.assert_array_equal(dataset.windows[0, ::2], [0, 1, 2, 3, 4])


    def test_too_short(self):
        with self.assertRaises(UsageError):
            build_conditioning_dataset(ramp(6), ramp(6), q=3)


    def test_bad_shapes(self):
        with self.assertRaises(ShapeError):
            build_conditioning_dataset(ramp(10), ramp(9), q=0)
        with self.assertRaises(ShapeError):
            build_conditioning_dataset(np.zeros(10), np.zeros(10), q=0)
        with self.assertRaises(ValueError):
            build_conditioning_dataset(ramp(10), ramp(10), memory=4, q=0)


    def test_split_and_batch(self):
        dataset = build_conditioning_dataset(ramp(40), ramp(40), q=0)
        train, held_out = dataset.split(0.1, Rng(0))
        self.assertEqual(len(train) + len(held_out), len(dataset))
        self.assertEqual(len(held_out), 4)
        self.assertFalse(set(train.centers) & set(held_out.centers))
        windows, targets = train.batch(Rng(1), 50)
        self.assertEqual(windows.shape, (50, 6))
        self.assertEqual(targets.shape, (50, 2))


    def test_empty_batch(self):
        dataset = build_conditioning_dataset(ramp(10), ramp(10), q=0)
        with self.assertRaises(UsageError):
            dataset.subset(np.array([], dtype=np.int64)).batch(Rng(0), 3)


class Experiment(SimpleTestCase):
    def test_sequences_pooled(self):
        tx = np.stack([ramp(20), ramp(20) + 100])
        messages = np.ones((2, 20), dtype=np.int64)
        dataset = build_experiment_dataset(messages, tx, tx, q=4)
        # the first sequence loses q symbols, both lose the edges
        self.assertEqual(len(dataset), (20 - 4 - 2) + (20 - 2))
        self.assertEqual(len(dataset.messages), 4)
        self.assertEqual(dataset.centers.max(), 20 + 18)


class Rows(SimpleTestCase):
    def test_windows_and_context(self):
        messages = np.arange(1, 31)
        rows = transceiver_rows(messages, ramp(30), q=10, width=3, context=3)
        self.assertEqual(len(rows), 9)
        np.testing.assert_array_equal(rows.message_windows[0], [1, 2, 3])
        np.testing.assert_array_equal(rows.messages, np.arange(2, 11))
        np.testing.assert_array_equal(rows.received[0, ::2], [0, 1, 2])


    def test_single_block(self):
        rows = transceiver_rows(np.arange(1, 31), ramp(30), q=10, width=1)
        self.assertEqual(len(rows), 10)
        self.assertEqual(rows.received.shape, (10, 2))


    def test_not_enough(self):
        with self.assertRaises(UsageError):
            transceiver_rows(np.arange(1, 5), ramp(4), q=4, width=3)
