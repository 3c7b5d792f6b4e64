#!/usr/bin/env python3
"""
Performance Benchmarks for Graph Counting

Measures build and counting speed of the BDD pipeline and checks that the
memory-access proxy grows exponentially at the expected rate.

Run with:
    python3 test_performance.py

Or for specific benchmark:
    python3 test_performance.py TestPerformance.test_independent_set_build_speed

The growth-rate check needs GRAPH_COUNTING_SLOW=1.
"""

import os
import time
import unittest

from counting.constraints import ConstraintMode, build_bdd, build_stats
from counting.ensemble_stats import complexity_fit
from counting.experiment import EnsembleConfig, derive_seed, run_ensemble
from counting.graph import random_average_degree, random_regular

SLOW = os.environ.get('GRAPH_COUNTING_SLOW') == '1'


class TestPerformance(unittest.TestCase):
    """Performance benchmarks for counting operations."""

    @classmethod
    def setUpClass(cls):
        """Set up test fixtures."""
        cls.graph20 = random_regular(20, 3, seed=1)
        cls.graph30 = random_regular(30, 3, seed=1)

    def benchmark(self, operation_name: str, operation, iterations: int = 100):
        """
        Run a benchmark and print results.

        Args:
            operation_name: Name of the operation being benchmarked
            operation: Callable to benchmark
            iterations: Number of iterations to run
        """
        start_time = time.time()

        for _ in range(iterations):
            operation()

        total_time = time.time() - start_time
        ops_per_second = iterations / total_time
        time_per_op = total_time / iterations * 1000

        print(f"\n{operation_name}:")
        print(f"  Total time: {total_time:.3f}s")
        print(f"  Operations/second: {ops_per_second:.1f}")
        print(f"  Time per operation: {time_per_op:.3f}ms")

        return ops_per_second

    def test_graph_generation_speed(self):
        """
        Benchmark: random 3-regular graphs on 40 vertices.

        Target: >10 graphs/second
        """
        print("\n" + "=" * 60)
        print("BENCHMARK: Random Regular Graph Generation")
        print("=" * 60)

        seeds = iter(range(10 ** 6))

        def generate():
            return random_regular(40, 3, seed=next(seeds))

        ops_per_second = self.benchmark("Random 3-regular (n=40)", generate, iterations=200)
        self.assertGreater(
            ops_per_second, 10,
            f"Graph generation too slow: {ops_per_second:.1f} ops/sec (target: >10)"
        )

    def test_independent_set_build_speed(self):
        """
        Benchmark: independent-set BDD of a 20-vertex cubic graph.

        Target: >1 build/second
        """
        print("\n" + "=" * 60)
        print("BENCHMARK: Independent-Set BDD Build (n=20)")
        print("=" * 60)

        def build():
            return build_bdd(self.graph20, ConstraintMode.INDEPENDENT_SET).count()

        ops_per_second = self.benchmark("Independent-set build + count", build, iterations=20)
        self.assertGreater(
            ops_per_second, 1,
            f"Build too slow: {ops_per_second:.1f} ops/sec (target: >1)"
        )

    def test_kernel_build_speed(self):
        """
        Benchmark: kernel BDD of a 20-vertex cubic graph.

        Target: >0.5 builds/second
        """
        print("\n" + "=" * 60)
        print("BENCHMARK: Kernel BDD Build (n=20)")
        print("=" * 60)

        def build():
            return build_bdd(self.graph20, ConstraintMode.KERNEL).count()

        ops_per_second = self.benchmark("Kernel build + count", build, iterations=10)
        self.assertGreater(
            ops_per_second, 0.5,
            f"Build too slow: {ops_per_second:.1f} ops/sec (target: >0.5)"
        )

    def test_counting_pass_speed(self):
        """
        Benchmark: counting pass alone over an existing store.

        Target: >2 passes/second
        """
        print("\n" + "=" * 60)
        print("BENCHMARK: Counting Pass (n=30)")
        print("=" * 60)

        f = build_bdd(self.graph30, ConstraintMode.INDEPENDENT_SET)

        ops_per_second = self.benchmark("Counting pass", f.count, iterations=10)
        self.assertGreater(
            ops_per_second, 2,
            f"Counting too slow: {ops_per_second:.1f} ops/sec (target: >2)"
        )

    def test_small_ensemble_run(self):
        """
        Benchmark: 100 samples at n = 16.

        Target: Complete in <30 seconds
        """
        print("\n" + "=" * 60)
        print("BENCHMARK: Ensemble Run (100 samples, n=16)")
        print("=" * 60)

        cfg = EnsembleConfig(sizes=[16], samples_per_size=100, master_seed=0)
        start_time = time.time()
        records = run_ensemble(cfg)
        total_time = time.time() - start_time

        print(f"\nEnsemble run:")
        print(f"  Total time: {total_time:.3f}s")
        print(f"  Samples/second: {len(records) / total_time:.1f}")

        self.assertEqual(len(records), 100)
        self.assertLess(
            total_time, 30.0,
            f"Ensemble run too slow: {total_time:.3f}s (target: <30s)"
        )


@unittest.skipUnless(SLOW, "set GRAPH_COUNTING_SLOW=1 for the growth-rate check")
class TestScalability(unittest.TestCase):
    """Exponential growth of the access proxy with graph size."""

    def _access_counts(self, generate, mode, sizes, samples):
        data = []
        for n in sizes:
            for i in range(samples):
                g = generate(n, derive_seed(0, n, i))
                data.append((n, build_stats(g, mode)['accesses']))
        return data

    def test_independent_set_access_growth(self):
        """
        Accesses ~ c * b^n on random cubic graphs, with b near 1.28.
        """
        print("\n" + "=" * 60)
        print("BENCHMARK: Access Growth (independent sets, 3-regular)")
        print("=" * 60)

        data = self._access_counts(
            lambda n, seed: random_regular(n, 3, seed=seed),
            ConstraintMode.INDEPENDENT_SET,
            sizes=range(20, 37, 4),
            samples=50,
        )
        base, prefactor = complexity_fit(data)

        print(f"\nFitted growth: {prefactor:.1f} * {base:.4f}^n")
        self.assertGreaterEqual(base, 1.20)
        self.assertLessEqual(base, 1.36)

    def test_average_degree_access_growth(self):
        """Growth stays exponential, and below 2^n, on average-degree graphs."""
        data = self._access_counts(
            lambda n, seed: random_average_degree(n, 3, seed=seed),
            ConstraintMode.INDEPENDENT_SET,
            sizes=range(12, 29, 2),
            samples=10,
        )
        base, _ = complexity_fit(data)

        print(f"\nFitted growth (average degree 3): {base:.4f}^n")
        self.assertGreater(base, 1.0)
        self.assertLess(base, 2.0)


def run_all_benchmarks():
    """Run all benchmarks and print summary."""
    print("\n" + "=" * 60)
    print("GRAPH COUNTING - PERFORMANCE BENCHMARKS")
    print("=" * 60)

    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestPerformance))
    suite.addTests(loader.loadTestsFromTestCase(TestScalability))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    print("\n" + "=" * 60)
    print("BENCHMARK SUMMARY")
    print("=" * 60)
    print(f"Tests run: {result.testsRun}")
    print(f"Failures: {len(result.failures)}")
    print(f"Errors: {len(result.errors)}")

    if result.wasSuccessful():
        print("\nAll performance targets met")
    else:
        print("\nSome performance targets not met")

    return 0 if result.wasSuccessful() else 1


if __name__ == '__main__':
    exit(run_all_benchmarks())
