"""Level-two gl_3 experiment: containment, sampling, split covering and a bounded direct dimension."""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from gtvariety.groebner import Budget, BudgetExceeded, krull_dimension
from gtvariety.varieties import build_gts_ideal, covering_by_splitting, listed_components, verify_decomposition
from gtvariety.yangian import YangianParams


@dataclass
class Y2Config:
    samples: int = 100
    seed: int = 0
    covering_budget: int = 20_000
    direct_budget: int = 2_000
    order: str = "degrevlex"
    skip_direct: bool = False


def run(config: Y2Config) -> dict:
    I = build_gts_ideal(YangianParams(3, 2), simplified=True)
    comps = listed_components(2)
    out = {"config": asdict(config)}

    t = time.perf_counter()
    rep = verify_decomposition(I, comps, mode="containment-only", expected_dim=6,
                               samples_per_component=config.samples, seed=config.seed, target="Y2gl3")
    out["containment"] = {"verdict": rep.verdict, "dims": rep.dims, "samples": rep.samples,
                          "seconds": round(time.perf_counter() - t, 2)}

    t = time.perf_counter()
    try:
        covered = covering_by_splitting(I, comps, Budget(reductions=config.covering_budget))
        status = "pass" if covered else "fail"
    except BudgetExceeded:
        status = "budget"
    out["split_covering"] = {"status": status, "seconds": round(time.perf_counter() - t, 2)}

    if not config.skip_direct:
        t = time.perf_counter()
        try:
            dim = krull_dimension(I, config.order, Budget(reductions=config.direct_budget)).dim
        except BudgetExceeded as exc:
            dim = f"budget: {exc}"
        out["direct_dim"] = {"result": dim, "seconds": round(time.perf_counter() - t, 2)}
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--covering-budget", type=int, default=20_000)
    ap.add_argument("--direct-budget", type=int, default=2_000)
    ap.add_argument("--order", default="degrevlex")
    ap.add_argument("--skip-direct", action="store_true")
    a = ap.parse_args(argv)
    config = Y2Config(a.samples, a.seed, a.covering_budget, a.direct_budget, a.order, a.skip_direct)
    print(json.dumps(run(config), indent=2, default=str))


if __name__ == "__main__":
    main()
