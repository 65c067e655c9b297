#!/usr/bin/env python3
"""
Performance benchmarking script for whtrim.

Verifies synthetic closed-loop pairs under AnyMiss(m, k) with the minimal
acceptor A(m, k), with compressed automata T(m, k, c) and with the
window-reduced over-approximation A(m, k') for k' < k, and compares
iterations, stored entries and wall time.
"""

import sys
import time
import traceback
from pathlib import Path
from typing import List, Optional

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from whtrim.automata import TrimSpec, build_compressed, build_minimal, window_reduced
from whtrim.jsr import JsrOptions, verify_stability
from whtrim.utils import MissStrategy, generate_pair


class BenchmarkResult:
    """Store benchmark results."""

    def __init__(self, name: str, automaton: str, states: int):
        self.name = name
        self.automaton = automaton
        self.states = states
        self.build_time = 0.0
        self.verify_time = 0.0
        self.verdict = ""
        self.lower = 0.0
        self.upper = 0.0
        self.iterations = 0
        self.peak_entries = 0

    def __str__(self) -> str:
        """Format results as string."""
        return (
            f"{self.name:<18} {self.automaton:<16} {self.states:>8,} "
            f"{self.verdict:<22} {self.lower:>10.6f} {self.upper:>10.6f} "
            f"{self.iterations:>5} {self.peak_entries:>14,} "
            f"{(self.build_time + self.verify_time) * 1000:>10.1f}"
        )


def benchmark_operation(
    name: str,
    m: int,
    k: int,
    c: Optional[int],
    seed: int,
    options: JsrOptions,
    reduced_k: Optional[int] = None,
) -> BenchmarkResult:
    """
    Build one automaton and verify one pair on it.

    With ``reduced_k`` set the automaton is A(m, reduced_k) and ``c`` is ignored.
    """
    pair = generate_pair(seed, dim=2, target_sr=0.8, strategy=MissStrategy.HOLD)

    build_start = time.perf_counter()
    if reduced_k is not None:
        automaton = window_reduced(m, k, reduced_k)
        label = f"W({m},{reduced_k})"
    elif c is None:
        automaton = build_minimal(m, k)
        label = f"A({m},{k})"
    else:
        automaton = build_compressed(m, k, c)
        label = str(TrimSpec(m, k, c))
    build_end = time.perf_counter()

    result = BenchmarkResult(name, label, automaton.num_states)
    result.build_time = build_end - build_start

    verify_start = time.perf_counter()
    jsr = verify_stability(pair, automaton, options)
    result.verify_time = time.perf_counter() - verify_start

    result.verdict = jsr.verdict.value
    result.lower = jsr.lower
    result.upper = jsr.upper
    result.iterations = jsr.iterations
    result.peak_entries = jsr.peak_entries
    return result


def run_benchmarks() -> List[BenchmarkResult]:
    """Run all benchmarks."""

    results = []
    options = JsrOptions(max_iterations=30)

    # Test configurations: (m, k, compression factors, reduced windows)
    test_configs = [
        (2, 12, [None, 3, 6, 10], [6, 9]),
        (2, 36, [None, 10, 20, 34], [12, 24]),
        (3, 20, [None, 5, 10, 17], [8, 14]),
    ]
    seeds = [1, 2]

    print("whtrim Performance Benchmark")
    print("=" * 110)
    print(f"delta={options.delta} max_iterations={options.max_iterations}")
    print(f"Python Version: {sys.version.split()[0]}")
    print()

    for m, k, factors, windows in test_configs:
        for seed in seeds:
            name = f"seed={seed} m={m} k={k}"
            for c in factors:
                try:
                    results.append(benchmark_operation(name, m, k, c, seed, options))
                except Exception as e:
                    print(f"[FAIL] {name} c={c}: {e}")
                    traceback.print_exc()
            for reduced_k in windows:
                try:
                    results.append(benchmark_operation(name, m, k, None, seed, options, reduced_k))
                except Exception as e:
                    print(f"[FAIL] {name} k'={reduced_k}: {e}")
                    traceback.print_exc()

    return results


def print_summary(results: List[BenchmarkResult]) -> None:
    """Print summary table of all results."""

    print(
        f"{'Run':<18} {'Automaton':<16} {'States':>8} {'Verdict':<22} {'Lower':>10} "
        f"{'Upper':>10} {'Iter':>5} {'Peak entries':>14} {'Time (ms)':>10}"
    )
    print("-" * 110)
    for result in results:
        print(result)

    # Compressed and window-reduced runs against the exact run of the same pair
    exact = {r.name: r for r in results if r.automaton.startswith("A(")}
    print("\n" + "=" * 110)
    print("STORAGE AGAINST THE MINIMAL ACCEPTOR")
    print("=" * 110)
    for result in results:
        base = exact.get(result.name)
        if base is None or result is base or base.peak_entries == 0:
            continue
        ratio = result.peak_entries / base.peak_entries
        print(f"{result.name:<18} {result.automaton:<16} peak entries x{ratio:.3f}")


def main() -> None:
    """Main entry point."""

    try:
        results = run_benchmarks()
        print_summary(results)

        print("\n" + "=" * 110)
        print("Benchmark completed successfully!")
        print("=" * 110)

    except KeyboardInterrupt:
        print("\n\nBenchmark interrupted by user.")
        sys.exit(1)
    except Exception as e:
        print(f"\n\nBenchmark failed: {e}")
        traceback.print_exc()
        sys.exit(1)


if __name__ == "__main__":
    main()
