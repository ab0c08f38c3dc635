"""Command line entry point: ``tsalloc {gen,offline,factor-check,run,bench}``."""

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

import pandas as pd

from tsalloc import set_verbosity
from tsalloc.dataset.synthetic import RandomInstanceGenerator
from tsalloc.experiment.config import ALGORITHMS, FORMATS, ConfigError, ExperimentConfig
from tsalloc.experiment.report import FLOAT_FORMAT, emit_report
from tsalloc.experiment.runner import OracleInfeasibleError, compute_oracles, run_experiment
from tsalloc.offline.expected import StrongFeasibilityError, measure_of_feasibility, tau_of
from tsalloc.offline.factor import factor_revealing_t, sensitivity_check

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ORACLE = 2


class _Parser(argparse.ArgumentParser):
    """Argument errors are configuration errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, "{}: error: {}\n".format(self.prog, message))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON experiment configuration")
    common.add_argument("--instance", help="JSON instance file, replaces the configured source")
    common.add_argument("--epsilon", type=float, help="error parameter in (0, 1)")
    common.add_argument("--seed", type=int, help="base seed")
    common.add_argument("--out", help="output path, stdout when omitted")
    common.add_argument("--format", choices=FORMATS, help="report format")
    common.add_argument("--gamma-c", dest="gamma_c", type=float, help="regime threshold constant")
    common.add_argument("--verbosity", default="INFO", help="logging level")

    trials = _Parser(add_help=False)
    trials.add_argument("--alg", choices=ALGORITHMS, help="online algorithm")
    trials.add_argument("--trials", type=int, help="number of trials")
    trials.add_argument("--workers", type=int, help="worker processes")
    trials.add_argument("--xi", type=float, help="measure of feasibility given to algA1")
    trials.add_argument("--gamma1", type=float, help="gamma1 override")
    trials.add_argument("--gamma2", type=float, help="gamma2 override")
    trials.add_argument("--warm-start", dest="warm_start", action="store_true", default=None)

    parser = _Parser(prog="tsalloc", description="Online allocation with two-sided resource constraints")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    gen = commands.add_parser("gen", parents=[common], help="write a generated instance")
    gen.add_argument("--resources", type=int, default=2)
    gen.add_argument("--types", type=int, default=2)
    gen.add_argument("--channels", type=int, default=2)
    gen.add_argument("--horizon", type=int, default=1000)
    gen.add_argument("--lower-margin", dest="lower_margin", type=float, default=0.2)
    gen.add_argument("--upper-margin", dest="upper_margin", type=float, default=0.2)

    commands.add_parser("offline", parents=[common], help="offline oracles")
    commands.add_parser("factor-check", parents=[common], help="factor-revealing bound and sensitivity")
    commands.add_parser("run", parents=[common, trials], help="Monte Carlo run of one algorithm")
    bench = commands.add_parser("bench", parents=[common, trials], help="sweep epsilon and T")
    bench.add_argument("--epsilons", type=float, nargs="+")
    bench.add_argument("--horizons", type=int, nargs="+")
    return parser


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Configuration file values overridden by every flag given on the command line."""
    config = ExperimentConfig.from_json(args.config) if args.config else ExperimentConfig()
    overrides = dict(
        epsilon=args.epsilon,
        seed=args.seed,
        output=args.out,
        format=args.format,
        gamma_c=args.gamma_c,
        algorithm=getattr(args, "alg", None),
        trials=getattr(args, "trials", None),
        workers=getattr(args, "workers", None),
        xi=getattr(args, "xi", None),
        gamma1=getattr(args, "gamma1", None),
        gamma2=getattr(args, "gamma2", None),
        warm_start=getattr(args, "warm_start", None),
        epsilons=getattr(args, "epsilons", None),
        horizons=getattr(args, "horizons", None),
    )
    if args.instance:
        overrides.update(instance=args.instance)
        config.generator = None
    return config.updated(**overrides)


def _write_json(document: Dict, path: Optional[str]):
    text = json.dumps(document, indent=1)
    if path:
        with open(path, "w") as f:
            f.write(text + "\n")
        logger.info("Written to {}".format(path))
    else:
        print(text)


def _gen(args, config: ExperimentConfig):
    params = dict(
        n_resources=args.resources,
        n_types=args.types,
        n_channels=args.channels,
        T=args.horizon,
        lower_margin=args.lower_margin,
        upper_margin=args.upper_margin,
    )
    seed = config.seed
    if config.generator is not None:
        params.update(config.generator)
        seed = params.pop("seed", seed)
    try:
        generated = RandomInstanceGenerator(**params).generate(seed)
    except (TypeError, ValueError) as error:
        raise ConfigError("Cannot generate an instance: {}".format(error))
    logger.info("Generated instance with xi* >= {:.4f}".format(generated.xi_lower_bound))
    _write_json(generated.instance.to_dict(), config.output)


def _offline(args, config: ExperimentConfig):
    config.validate()
    inst = config.load_instance()
    oracles = compute_oracles(inst, config.epsilon, config.gamma_c)
    _write_json(dict(epsilon=config.epsilon, **oracles), config.output)


def _factor_check(args, config: ExperimentConfig):
    config.validate()
    inst = config.load_instance()
    tau = tau_of(config.epsilon)
    measure = measure_of_feasibility(inst)
    t_star = factor_revealing_t(inst, config.epsilon)
    check = sensitivity_check(inst, config.epsilon)
    _write_json(
        dict(
            epsilon=config.epsilon,
            tau=tau,
            xi_star=measure.xi_star,
            t_star=t_star,
            tau_over_xi_star=tau / measure.xi_star,
            t_star_ok=bool(t_star <= tau / measure.xi_star + 1e-8),
            W_tau=check.W_tau,
            W_E=check.W_E,
            bound_ok=check.bound_ok,
        ),
        config.output,
    )


def _run(args, config: ExperimentConfig):
    report = run_experiment(config)
    if config.output:
        emit_report(report, config.output, config.format)
    else:
        print(json.dumps(report.aggregates, indent=1))


def bench_table(config: ExperimentConfig) -> pd.DataFrame:
    """One aggregate row per (epsilon, T) pair of the sweep."""
    config.validate()
    epsilons = config.epsilons or [config.epsilon]
    base_T = config.load_instance().T
    horizons = config.horizons or [base_T]
    rows: List[Dict] = []
    for epsilon in epsilons:
        for T in horizons:
            instance = config.load_instance(T=T)
            report = run_experiment(config.updated(epsilon=epsilon), instance=instance)
            rows.append(report.aggregates)
    return pd.DataFrame(rows)


def _bench(args, config: ExperimentConfig):
    table = bench_table(config)
    if config.output and config.format == "json":
        table.to_json(config.output, orient="records", double_precision=15)
    elif config.output:
        table.to_csv(config.output, index=False, float_format=FLOAT_FORMAT)
    else:
        print(table.to_string(index=False))


_COMMANDS = {
    "gen": _gen,
    "offline": _offline,
    "factor-check": _factor_check,
    "run": _run,
    "bench": _bench,
}


def main(argv: List[str] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        set_verbosity(args.verbosity.upper())
    except ValueError:
        parser.error("unknown verbosity {}".format(args.verbosity))
    try:
        config = load_config(args)
        _COMMANDS[args.command](args, config)
    except ConfigError as error:
        logger.error(str(error))
        return EXIT_CONFIG
    except (OracleInfeasibleError, StrongFeasibilityError) as error:
        logger.error(str(error))
        return EXIT_ORACLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
