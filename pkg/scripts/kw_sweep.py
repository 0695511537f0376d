"""Compare the Kostant-Wallach zero fiber with strong nilpotency over many seeds and sizes."""
import argparse
import json
from dataclasses import dataclass, field

from gtvariety.kw import kw_campaign


@dataclass
class SweepConfig:
    count: int = 2_000
    seeds: list[int] = field(default_factory=lambda: [0, 1, 2])
    sizes: list[int] = field(default_factory=lambda: [2, 3, 4])
    bound: int = 10


def sweep(config: SweepConfig) -> list[dict]:
    rows = []
    for n in config.sizes:
        for seed in config.seeds:
            for structured in (False, True):
                res = kw_campaign(config.count, seed=seed, n=n, structured=structured, bound=config.bound)
                rows.append({"n": n, "seed": seed, "structured": structured,
                             "in_fiber": res.in_fiber, "disagreements": res.disagreements})
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=2_000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--bound", type=int, default=10)
    a = ap.parse_args(argv)
    rows = sweep(SweepConfig(a.count, a.seeds, a.sizes, a.bound))
    print(json.dumps(rows, indent=2))
    return 1 if any(r["disagreements"] for r in rows) else 0


if __name__ == "__main__":
    raise SystemExit(main())
