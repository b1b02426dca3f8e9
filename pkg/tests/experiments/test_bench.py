# -*- coding: utf-8 -*-
import unittest
import pandas as pd
from strbox.experiments import T2_FRACTIONS, run_t1, run_t2, run_t3, run_t4, scaling_exponent


class TestBench(unittest.TestCase):
    def test_t1(self):
        """Derivation timings are reported per workload"""
        df = run_t1(3, 3, seed=0, repeats=1)
        self.assertEqual(list(df.columns), ['n', 'm', 'workload', 'seconds'])
        self.assertTrue((df['seconds'] >= 0).all())

    def test_t2_nothing_deleted(self):
        """Without deletions the derived relations are the reference"""
        self.assertEqual(run_t2(0, seed=1, n=3, m=5), 1.0)

    def test_t2_range(self):
        """Accuracies are fractions"""
        for fraction in T2_FRACTIONS:
            accuracy = run_t2(fraction, seed=1, n=3, m=6)
            self.assertGreaterEqual(accuracy, 0)
            self.assertLessEqual(accuracy, 1)
        with self.assertRaises(ValueError):
            run_t2(1.0)

    def test_t2_accuracy(self):
        """Averaged over ten seeds, accuracy stays high and does not grow with the deleted fraction"""
        means = []
        for fraction in T2_FRACTIONS:
            accuracies = [run_t2(fraction, seed=seed) for seed in range(10)]
            means.append(sum(accuracies) / len(accuracies))
        self.assertGreaterEqual(means[0], 0.92)
        self.assertGreaterEqual(means[-1], 0.88)
        for smaller, larger in zip(means, means[1:]):
            self.assertGreaterEqual(smaller + 1e-12, larger)

    def test_t3_unconstrained(self):
        """Without ground objects the translated program has exactly one model"""
        result = run_t3(0, seed=0, m=3, repeats=1)
        self.assertEqual(result['models'], 1)
        self.assertEqual(result['verified'], 1)

    def test_t4(self):
        """Scenario search reports one row per trial"""
        df = run_t4(4, seed=2, trials=3, repeats=1)
        self.assertEqual(len(df), 3)
        self.assertTrue((df['models'] >= 0).all())

    def test_scaling_exponent(self):
        """Exponents are fitted on a log-log scale"""
        rows = pd.DataFrame(
            {
                'n': [10, 20, 40],
                'm': [1, 1, 1],
                'workload': ['all_pairs_one_step'] * 3,
                'seconds': [1.0, 4.0, 16.0],
            }
        )
        self.assertAlmostEqual(scaling_exponent(rows), 2.0)
        with self.assertRaises(ValueError):
            scaling_exponent(rows[rows['n'] == 10])


if __name__ == '__main__':
    unittest.main()
