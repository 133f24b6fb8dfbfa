#!/usr/bin/env python3
"""Regenerate the bundled model and operator fixtures deterministically.

The 6-city instance places seeded random points in the plane and uses
rounded Euclidean distances.  Its variable domains exclude the variable's
own position: a tour successor is never the city itself, and the tighter
domains let the interpreter's domain checks kill degenerate derivation
branches (self-redirects) instead of emitting broken tours.
"""

import json
import math
import random
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def metric_matrix(n: int, seed: int, scale: float = 100.0) -> list[list[float]]:
    rng = random.Random(seed)
    points = [(rng.uniform(0, scale), rng.uniform(0, scale)) for _ in range(n)]
    return [
        [0.0 if i == j else round(math.dist(points[i], points[j]), 3) for j in range(n)]
        for i in range(n)
    ]


def tsp_model(name: str, n: int, matrix, exclude_self: bool) -> dict:
    variables = []
    for i in range(1, n + 1):
        if exclude_self:
            domain = {"set": [v for v in range(1, n + 1) if v != i]}
        else:
            domain = {"lo": 1, "hi": n}
        variables.append({"name": f"n{i}", "domain": domain})
    return {
        "name": name,
        "variables": variables,
        "groups": {"next": [f"n{i}" for i in range(1, n + 1)]},
        "constraints": [{"kind": "circuit", "scope": "next", "alias": "all_diff_next"}],
        "structural": 0,
        "objective": {"kind": "next_cost", "matrix": matrix},
    }


def circuit_model(name: str, n: int) -> dict:
    return {
        "name": name,
        "variables": [{"name": f"v{i}", "domain": {"lo": 1, "hi": n}} for i in range(1, n + 1)],
        "groups": {"next": [f"v{i}" for i in range(1, n + 1)]},
        "constraints": [{"kind": "circuit", "scope": "next"}],
        "structural": 0,
        "objective": {"kind": "none"},
    }


def coloring_model(name: str, vertices: list[str], edges: list[tuple[str, str]], colors: int) -> dict:
    return {
        "name": name,
        "variables": [{"name": v, "domain": {"lo": 1, "hi": colors}} for v in vertices],
        "groups": {"colors": vertices},
        "constraints": [{"kind": "not_equal", "scope": [a, b]} for a, b in edges],
        "objective": {"kind": "distinct_count", "group": "colors"},
    }


TWO_OPT = """\
constraint(all_diff_next, t0, t1),
constraint(all_diff_next, t2, t3),
iterate(t4 - t5, t1, (redirect(t5, t4))),
redirect(t0, t2),
constraint(all_diff_next, t0, t5),
redirect(t1, t3)
"""

SINGLE_SWAP = "constraint(all_diff_next, t0, t1), swap_values(t0, t1)\n"

SWAP_PAIR = "constraint(circuit, t0, t1), swap_values(t0, t1)\n"

# swap-only 2-opt formulation from an earlier, resolution-based runtime;
# kept as a front-end compatibility fixture (parses and analyzes cleanly,
# but under this interpreter's iterate semantics it induces no moves)
LEGACY_TWO_OPT = (
    "constraint(all_diff_next,t0,t1), iterate(t3 - t4, t0, "
    "(constraint(all_diff_next,t4,t1), swap_values(t1,t0), swap_values(t4,t0)))\n"
)


def dump(name: str, payload) -> None:
    path = FIXTURES / name
    if isinstance(payload, str):
        path.write_text(payload, encoding="utf-8")
    else:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    tsp4_matrix = [
        [0, 1, 2, 1],
        [1, 0, 1, 2],
        [2, 1, 0, 1],
        [1, 2, 1, 0],
    ]
    dump("tsp4.json", tsp_model("tsp4", 4, tsp4_matrix, exclude_self=False))
    matrix6 = metric_matrix(6, seed=7)
    dump("tsp6.json", tsp_model("tsp6", 6, matrix6, exclude_self=True))
    dump("tsp6_full.json", tsp_model("tsp6_full", 6, matrix6, exclude_self=False))
    dump("circuit3.json", circuit_model("circuit3", 3))
    dump(
        "coloring_triangle.json",
        coloring_model("triangle", ["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")], colors=3),
    )
    path_vertices = [f"v{i}" for i in range(1, 6)]
    path_edges = [(f"v{i}", f"v{i+1}") for i in range(1, 5)]
    dump("coloring_path5.json", coloring_model("path5", path_vertices, path_edges, colors=5))
    dump("tour6.json", {"values": [2, 3, 4, 5, 6, 1]})
    dump("tour3.json", {"values": [2, 3, 1]})
    dump("two_opt.ndl", TWO_OPT)
    dump("single_swap.ndl", SINGLE_SWAP)
    dump("swap_pair.ndl", SWAP_PAIR)
    dump("legacy_two_opt.ndl", LEGACY_TWO_OPT)


if __name__ == "__main__":
    main()
