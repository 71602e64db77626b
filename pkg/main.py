import argparse
import logging
import os
import sys

import utils
from cde import CDE_METHODS, default_grid, write_curves
from greeks import KINDS
from harness import ExperimentConfig, erf_table, cde_table, emit_csv, is_power_of_two
from metrics import AverageMeter
from models import SV_KINDS
from problems import BasketProblem, SvProblem, GreekProblem, CleProblem, CdeProblem, \
    FINANCE_METHODS, CLE_METHODS
from utils.errors import CasError, ConfigError

logger = logging.getLogger('main')


def _common_options(parser):
    # Sampling Options
    parser.add_argument("--n", type=int, default=2 ** 14,
                        help="samples per replicate, a power of 2 (default: 2^14)")
    parser.add_argument("--reps", type=int, default=50,
                        help="independent replicates (default: 50)")
    parser.add_argument("--m-grad", type=int, default=256,
                        help="gradient samples for C_hat, a power of 2 (default: 256)")
    parser.add_argument("--eps-fd", type=float, default=1e-6,
                        help="finite difference step (default: 1e-6)")
    parser.add_argument("--seed", type=int, default=0,
                        help="base seed (default: 0)")

    # Output Options
    parser.add_argument("--out", type=str, default=None,
                        help="write the report as CSV to this path")
    parser.add_argument("--workers", type=int, default=1,
                        help="replicates run concurrently (default: 1)")
    parser.add_argument("--config", type=str, default=None,
                        help="file of 'key = value' lines, flags take precedence")
    parser.add_argument("--log-level", type=str, default='INFO',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument("--quiet", action='store_true', default=False,
                        help="hide progress bars")


def _steps_option(parser):
    parser.add_argument("--steps", type=int, default=None,
                        help="time steps d (default: preset)")


def _methods_option(parser, methods):
    parser.add_argument("--methods", type=str, nargs='+', default=None, choices=list(methods),
                        help="methods to run, MC is always added (default: all of %s)" % ', '.join(methods))


def _rho_option(parser):
    parser.add_argument("--rho", type=float, action='append', default=None,
                        help="correlation, repeatable (default: -0.5 and 0.5)")


def _strike_option(parser, presets):
    parser.add_argument("--strike", type=float, action='append', default=None,
                        help="strike, repeatable (default: %s)" % ', '.join('%g' % k for k in presets))


def get_argparser():
    parser = argparse.ArgumentParser(description="Error reduction factors of RQMC estimators with "
                                                 "constrained active subspaces and pre-integration")
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    spread = subparsers.add_parser('spread', help="spread option on two correlated assets")
    _common_options(spread)
    _methods_option(spread, FINANCE_METHODS)
    _rho_option(spread)
    _strike_option(spread, (-10, 0, 10))
    _steps_option(spread)

    sv = subparsers.add_parser('sv', help="Asian call under stochastic volatility")
    _common_options(sv)
    _methods_option(sv, FINANCE_METHODS)
    _rho_option(sv)
    _strike_option(sv, (90, 100, 110))
    _steps_option(sv)
    sv.add_argument("--model", type=str, default='heston', choices=list(SV_KINDS),
                    help="volatility model (default: heston)")

    greeks = subparsers.add_parser('greeks', help="Greeks of an arithmetic Asian call")
    _common_options(greeks)
    _methods_option(greeks, FINANCE_METHODS)
    _strike_option(greeks, (90, 100, 110))
    _steps_option(greeks)
    greeks.add_argument("--kind", type=str, default='delta', choices=list(KINDS),
                        help="sensitivity (default: delta)")

    cle = subparsers.add_parser('cle', help="P(X_T <= K) for the chemical Langevin isomerization")
    _common_options(cle)
    _methods_option(cle, CLE_METHODS)
    _strike_option(cle, (90, 100, 110))
    _steps_option(cle)

    cde = subparsers.add_parser('cde', help="density of a sum of correlated log-normals")
    _common_options(cde)
    _methods_option(cde, CDE_METHODS)
    _rho_option(cde)
    cde.add_argument("--dim", type=int, default=10,
                     help="number of log-normal terms (default: 10)")
    cde.add_argument("--grid-points", type=int, default=200)
    cde.add_argument("--grid-min", type=float, default=0.1)
    cde.add_argument("--grid-max", type=float, default=50.0)
    cde.add_argument("--curves-out", type=str, default=None,
                     help="write mean and variance curves as CSV, one file per (rho, method)")
    cde.set_defaults(n=2 ** 10)
    return parser


def _subparser(parser, name):
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[name]
    raise KeyError(name)


def get_problems(opts):
    """ Problem settings of the chosen experiment family """
    kwargs = {} if getattr(opts, 'steps', None) is None else {'d': opts.steps}
    rhos = getattr(opts, 'rho', None)
    strikes = getattr(opts, 'strike', None)
    if opts.command == 'spread':
        return BasketProblem.settings(**_given(rhos=rhos, strikes=strikes), **kwargs)
    if opts.command == 'sv':
        return SvProblem.settings(opts.model, **_given(rhos=rhos, strikes=strikes), **kwargs)
    if opts.command == 'greeks':
        return GreekProblem.settings(opts.kind, **_given(strikes=strikes), **kwargs)
    if opts.command == 'cle':
        return CleProblem.settings(**_given(strikes=strikes), **kwargs)
    grid = default_grid(opts.grid_points, opts.grid_min, opts.grid_max)
    return CdeProblem.settings(**_given(rhos=rhos), grid=grid, d=opts.dim)


def _given(**lists):
    return {k: tuple(v) for k, v in lists.items() if v}


def _curves_path(path, problem, method):
    root, ext = os.path.splitext(path)
    rho = 'na' if problem.param_rho is None else '%g' % problem.param_rho
    return "%s_rho%s_%s%s" % (root, rho, method, ext or '.csv')


def main(argv=None):
    parser = get_argparser()
    opts = parser.parse_args(argv)
    sub = _subparser(parser, opts.command)
    utils.setup_logging(opts.log_level)

    try:
        if opts.config is not None:
            opts = utils.apply_config(sub, opts, utils.read_config(opts.config))
            utils.setup_logging(opts.log_level)
        if not is_power_of_two(opts.n):
            sub.error("--n must be a power of 2, got %d" % opts.n)
        if opts.reps < 2:
            sub.error("--reps must be at least 2, got %d" % opts.reps)
        if getattr(opts, 'steps', None) is not None and opts.steps < 1:
            sub.error("--steps must be positive, got %d" % opts.steps)

        config = ExperimentConfig(problems=get_problems(opts), methods=opts.methods, n=opts.n, reps=opts.reps,
                                  M=opts.m_grad, eps=opts.eps_fd, base_seed=opts.seed, workers=opts.workers,
                                  progress=not opts.quiet)
        print("Problem: %s, settings: %d, n: %d, reps: %d" % (opts.command, len(config.problems),
                                                               config.n, config.reps))
        if opts.command == 'cde':
            report, estimates = cde_table(config)
            if opts.curves_out is not None:
                for (i, method), estimate in estimates.items():
                    write_curves(estimate, _curves_path(opts.curves_out, config.problems[i], method))
        else:
            report = erf_table(config, AverageMeter())
        print(report.to_str())
        if opts.out is not None:
            emit_csv(report, opts.out)
    except ConfigError as e:
        logger.error("%s", e)
        return 2
    except (CasError, OSError) as e:
        logger.error("%s", e)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
