"""Monte Carlo runs of both restart rules against the exact distributions."""
import time

from phfanon import RestartVariant, SimConfig, compare_to_exact, measures, run
from phfanon.fixtures import example_array

array = example_array("example1")
for variant in RestartVariant:
    start = time.perf_counter()
    result = run(array, SimConfig(variant, trials=10**6, seed=42))
    elapsed = time.perf_counter() - start
    summary = compare_to_exact(result, measures(array, variant.scheme), array)
    print(f"{variant.value} ({variant.scheme.value} scheme): {elapsed:.2f}s, "
          f"{result.cycles_total / result.trials_completed:.3f} cycles per trial")
    print(f"  max deviation {summary.max_deviation:.5f} vs tolerance {summary.tolerance:.5f}, "
          f"{summary.cells_exceeding} of {summary.cells_checked} cells over")
