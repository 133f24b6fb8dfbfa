#!/usr/bin/env python3
"""Scan evolution seeds on the bundled 6-city model.

Reports, per seed, the best fitness reached and the first generation at
which a circuit-preserving operator with productivity >= 6 appeared.
Used to choose the seeds frozen in fixtures/rediscovery_seeds.json.
"""

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from noodle import EvolutionConfig, evolve, load_model

ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=list(range(1, 11)))
    ap.add_argument("--pop", type=int, default=200)
    ap.add_argument("--gens", type=int, default=60)
    ap.add_argument("--model", default=str(ROOT / "fixtures" / "tsp6.json"))
    args = ap.parse_args()

    model = load_model(Path(args.model).read_text())
    hits = []
    for seed in args.seeds:
        config = EvolutionConfig(population_size=args.pop, generations=args.gens, seed=seed)
        started = time.perf_counter()
        report = evolve(model, config)
        elapsed = time.perf_counter() - started
        first_hit = None
        for gen, stat in enumerate(report.generations):
            f = stat.best_fitness
            if f.tier == "VALID" and f.preserved >= 1 and f.productivity >= 6:
                first_hit = gen
                break
        best = report.best_fitness
        print(
            json.dumps(
                {
                    "seed": seed,
                    "elapsed_s": round(elapsed, 1),
                    "best": best.to_json(),
                    "first_hit_generation": first_hit,
                    "best_program": report.best_program,
                }
            ),
            flush=True,
        )
        if first_hit is not None:
            hits.append((seed, first_hit))
    print(json.dumps({"hits": hits}), flush=True)


if __name__ == "__main__":
    main()
