#!/usr/bin/env python3
"""
Random-corpus verification script for RecurrentGF.

Generates seeded random Cauchy problems and runs the full verification on
each one over the box [0, 8]^n.

Usage:
    python run_corpus.py [COUNT] [START_SEED]
"""

import logging
import os
import sys
import time

# Add the current directory to the path to import from app
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from app.__version__ import __title__, __version__
from app.core.errors import EngineError
from app.models.genfun import verify
from app.models.random_problem import random_problem


def run_seed(seed: int, box: int = 8) -> bool:
    """Verify one random problem; returns True when every check passes."""
    problem, _ = random_problem(seed, with_ray=seed % 5 == 0)
    eq = problem.equation
    try:
        report = verify(eq, problem.data, (box,) * eq.dim)
    except EngineError as e:
        print(f"❌ seed {seed}: {e.code}: {e}")
        return False
    if report.passed:
        print(f"✅ seed {seed}: n={eq.dim} m={eq.m} ({report.elapsed:.2f}s)")
        return True
    for check in report.failures:
        print(f"❌ seed {seed}: {check.name}: {check.detail} at {check.first_failure}")
    return False


def main():
    """Run the corpus."""
    logging.basicConfig(level=logging.WARNING)
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 50
    start = int(sys.argv[2]) if len(sys.argv) > 2 else 0

    print(f"{__title__} v{__version__} corpus")
    print("==============================")
    started = time.time()
    results = [run_seed(seed) for seed in range(start, start + count)]

    print("\n=== Corpus Summary ===")
    passed = sum(results)
    print(f"{passed}/{count} problems verified in {time.time() - started:.1f}s")
    if passed != count:
        print("❌ Some problems failed verification.")
        sys.exit(3)
    print("✅ All problems verified!")


if __name__ == "__main__":
    main()
