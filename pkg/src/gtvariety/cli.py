"""Command-line front end: ``gtvariety <subcommand> [flags]``.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import kw
from .groebner import SCHEMA_VERSION, Budget, BudgetExceeded, Ideal, ImproperIdeal, krull_dimension
from .poly import Inhomogeneous
from .varieties import (
    build_gts_ideal,
    build_subvariety,
    check_complete_intersection,
    gts_piece,
    listed_components,
    sigma_ideal,
    verify_decomposition,
    weak_decomposition,
)
from .yangian import (
    FAMILIES,
    YangianParams,
    closed_form_d_gl3,
    family,
    gamma_generators,
    gt_generators,
    qdet_coeffs_young,
    qdet_graded_coeffs,
    rewriting_witnesses,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
ORDERS = ("degrevlex", "wdegrevlex", "lex")
DECOMP_TARGETS = ("Y1gl3", "Y2gl3", "gts-pieces", "weak")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    p: int | None = None
    family: str | None = None
    variety: str | None = None
    target: str | None = None
    order: str = "degrevlex"
    budget: int = 10**6
    seed: int = 0
    out: str | None = None
    format: str = "text"
    mode: str | None = None
    covering: str | None = None
    samples: int | None = None
    matrix: str | None = None
    random: int = 0
    structured: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        known = cls.__dataclass_fields__
        return cls(**{k: v for k, v in vars(args).items() if k in known})

    def budget_caps(self) -> Budget:
        return Budget(reductions=self.budget)


# -- helpers -------------------------------------------------------------------


def _need(config: RunConfig, *names):
    missing = [f"--{name}" for name in names if getattr(config, name) is None]
    if missing:
        raise UsageError(f"{config.subcommand} needs {', '.join(missing)}")


_FAMILY_PARAMS = {"d": ("n", "p"), "d-young": ("n", "p"), "p-gl3": ("p",), "d-closed-gl3": ("p",),
                  "sigma": ("n",), "gamma": ("n",)}


def resolve_ideal(config: RunConfig) -> tuple[str, Ideal]:
    """The ideal named by ``--variety`` (or ``--family``), with a printable label."""
    if config.family:
        _need(config, *_FAMILY_PARAMS.get(config.family, ()))
        return f"family {config.family}", Ideal(family(config.family, config.n, config.p))
    _need(config, "variety")
    v = config.variety
    if v in ("gts", "gts-simplified"):
        _need(config, "n", "p")
        return f"GT ideal n={config.n} p={config.p}", build_gts_ideal(YangianParams(config.n, config.p), v == "gts-simplified")
    if v == "sigma":
        _need(config, "n")
        return f"V_{config.n}", sigma_ideal(config.n)
    if v == "gamma":
        _need(config, "n")
        return f"gl_{config.n} GT ideal", Ideal(gamma_generators(config.n))
    _need(config, "n", *(() if v.startswith("V_") else ("p",)))
    comp = build_subvariety(v, YangianParams(config.n, config.p or 1))
    return comp.name, comp.ideal()


def identity_checks(p: int):
    """``(label, lhs, rhs)`` for every exact identity checked at level ``p`` with ``n = 3``."""
    checks = []
    for n in range(1, 4):
        params = YangianParams(n, p)
        table = params.table()
        for k, (a, b) in enumerate(zip(qdet_graded_coeffs(params, table), qdet_coeffs_young(params, table)), start=1):
            checks.append((f"Young formula d_{n},{k}", a, b))
    params = YangianParams(3, p)
    table = params.table()
    for k, (a, b) in enumerate(zip(closed_form_d_gl3(p, table), gt_generators(params, table)), start=1):
        checks.append((f"closed form #{k}", a, b))
    for w in rewriting_witnesses(p, table):
        checks.append((f"rewriting {w.label}", w.lhs, w.rhs))
    return checks


# -- subcommands ---------------------------------------------------------------


def cmd_gen(config: RunConfig):
    if config.family not in FAMILIES:
        raise UsageError(f"--family must be one of {', '.join(FAMILIES)}")
    label, I = resolve_ideal(config)
    polys = [str(g) for g in I.gens]
    report = {"family": config.family, "n": config.n, "p": config.p, "count": len(polys), "polynomials": polys}
    text = f"# family={config.family} n={config.n} p={config.p} count={len(polys)}\n" + "\n".join(polys)
    return EXIT_PASS, report, text


def cmd_verify_identities(config: RunConfig):
    p = config.p or 1
    if config.n not in (None, 3):
        raise UsageError("verify-identities runs at n = 3")
    failures, total = [], 0
    for label, lhs, rhs in identity_checks(p):
        total += 1
        if lhs != rhs:
            failures.append({"identity": label, "difference": str(lhs - rhs)})
    report = {"p": p, "checked": total, "failures": failures, "verdict": "fail" if failures else "pass"}
    lines = [f"identities at n=3 p={p}: {total} checked, {len(failures)} failed"]
    lines += [f"  FAIL {f['identity']}: lhs - rhs = {f['difference']}" for f in failures]
    return (EXIT_FAIL if failures else EXIT_PASS), report, "\n".join(lines)


def cmd_dim(config: RunConfig):
    label, I = resolve_ideal(config)
    try:
        dim = krull_dimension(I, config.order, config.budget_caps())
    except ImproperIdeal:
        report = {"target": label, "dim": None, "empty": True}
        return EXIT_PASS, report, f"{label}: empty variety"
    report = {"target": label} | dim.to_report()
    return EXIT_PASS, report, f"{label}: dim {dim.dim} in {dim.nvars} variables (independent set {', '.join(dim.witness)})"


def cmd_check_ci(config: RunConfig):
    label, I = resolve_ideal(config)
    try:
        res = check_complete_intersection(I, config.order, config.budget_caps())
    except Inhomogeneous as exc:
        raise UsageError(str(exc)) from exc
    report = {"target": label, "verdict": "pass" if res.is_ci else "fail"} | res.to_report()
    if res.is_ci:
        text = f"{label}: complete intersection, dim {res.dimension.dim} = {res.nvars} - {res.ngens}"
    else:
        text = f"{label}: NOT a complete intersection, dim {res.dimension.dim} but {res.nvars} - {res.ngens} = {res.expected_dim}"
    return (EXIT_PASS if res.is_ci else EXIT_FAIL), report, text


def _decomp_setup(config: RunConfig):
    t = config.target
    if t == "Y1gl3":
        return build_gts_ideal(YangianParams(3, 1), True), listed_components(1), 3, ("full", "intersection", 0)
    if t == "Y2gl3":
        return build_gts_ideal(YangianParams(3, 2), True), listed_components(2), 6, ("containment-only", "split", 100)
    _need(config, "p")
    params = YangianParams(3, config.p)
    if t == "gts-pieces":
        comps = [gts_piece(params, s) for s in range(1, config.p + 2)]
        return build_gts_ideal(params, True), comps, None, ("full", "split", 0)
    if t == "weak":
        return gts_piece(params, 1).ideal(), weak_decomposition(params), 3 * config.p, ("full", "split", 0)
    raise UsageError(f"--target must be one of {', '.join(DECOMP_TARGETS)}")


def cmd_verify_decomp(config: RunConfig):
    I, comps, expected, (mode, covering, samples) = _decomp_setup(config)
    report = verify_decomposition(
        I,
        comps,
        config.mode or mode,
        covering=config.covering or covering,
        expected_dim=expected,
        budget=config.budget_caps(),
        samples_per_component=samples if config.samples is None else config.samples,
        seed=config.seed,
        target=config.target,
    )
    code = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "budget": EXIT_BUDGET}[report.verdict]
    return code, report.to_report(), report.render()


def cmd_kw_check(config: RunConfig):
    report: dict = {"seed": config.seed}
    lines = []
    ok = True
    if config.matrix:
        X = kw.MatrixPoint.parse(config.matrix)
        value = kw.kw_map(X)
        fib, nil = kw.fiber_membership(X), kw.is_strongly_nilpotent(X)
        ok &= fib == nil
        report["matrix"] = {
            "point": X.format(),
            "kw_map": [[str(x) for x in block] for block in value.chi],
            "fiber_membership": fib,
            "strongly_nilpotent": nil,
        }
        lines.append(f"{X.format()}: in zero fiber {fib}, strongly nilpotent {nil}")
    for name, count, structured in (("random", config.random, False), ("structured", config.structured, True)):
        if count:
            res = kw.kw_campaign(count, config.seed, config.n, structured)
            ok &= res.ok
            report[name] = res.to_report()
            lines.append(f"{name}: {res.samples} samples, {res.in_fiber} in the zero fiber, {res.disagreements} disagreements")
    if len(report) == 1:
        raise UsageError("kw-check needs --matrix, --random N or --structured N")
    report["verdict"] = "pass" if ok else "fail"
    return (EXIT_PASS if ok else EXIT_FAIL), report, "\n".join(lines)


COMMANDS = {
    "gen": cmd_gen,
    "verify-identities": cmd_verify_identities,
    "dim": cmd_dim,
    "check-ci": cmd_check_ci,
    "verify-decomp": cmd_verify_decomp,
    "kw-check": cmd_kw_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtvariety", description="Gelfand-Tsetlin variety checks for restricted Yangians")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(sp):
        sp.add_argument("--n", type=int)
        sp.add_argument("--p", type=int)
        sp.add_argument("--order", choices=ORDERS, default="degrevlex")
        sp.add_argument("--budget", type=int, default=10**6, help="max S-pair reductions per Groebner basis")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write the report here instead of stdout")

    sp = sub.add_parser("gen", help="print a generator family")
    common(sp)
    sp.add_argument("--family", required=True, choices=FAMILIES)

    sp = sub.add_parser("verify-identities", help="exact identity suites at n = 3")
    common(sp)

    for name, text in (("dim", "Krull dimension"), ("check-ci", "complete-intersection test")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        sp.add_argument("--variety", help="gts, gts-simplified, sigma, gamma or a catalogue name (GTs_1, W^p, W_1,2, V_<=, C_3, ...)")
        sp.add_argument("--family", choices=FAMILIES)

    sp = sub.add_parser("verify-decomp", help="check a decomposition into components")
    common(sp)
    sp.add_argument("--target", required=True, choices=DECOMP_TARGETS)
    sp.add_argument("--mode", choices=("full", "containment-only"))
    sp.add_argument("--covering", choices=("intersection", "split"))
    sp.add_argument("--samples", type=int, help="sample points per component")

    sp = sub.add_parser("kw-check", help="Kostant-Wallach fiber versus strong nilpotency")
    common(sp)
    sp.add_argument("--matrix", help="row-major rationals, rows separated by ';'")
    sp.add_argument("--random", type=int, default=0, metavar="N")
    sp.add_argument("--structured", type=int, default=0, metavar="N")
    return parser


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit code, rendered report)."""
    try:
        code, report, text = COMMANDS[config.subcommand](config)
    except BudgetExceeded as exc:
        code, report, text = EXIT_BUDGET, {"verdict": "budget", "error": str(exc)}, f"budget exceeded: {exc}"
    except (UsageError, ValueError) as exc:
        code, report, text = EXIT_USAGE, {"verdict": "usage", "error": str(exc)}, f"error: {exc}"
    if config.format == "json":
        settings = {k: v for k, v in asdict(config).items() if k != "out"}
        payload = {"schema_version": SCHEMA_VERSION, "command": config.subcommand, "config": settings} | report
        payload["schema_version"] = SCHEMA_VERSION
        text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    return code, text


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig.from_args(args)
    code, text = run(config)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        stream = sys.stderr if code == EXIT_USAGE and config.format == "text" else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
