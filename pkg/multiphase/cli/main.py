#!/usr/bin/env python

"""Command-line interface for Multiphase."""

import os
import sys
import argparse

from multiphase import common
from multiphase.cli import utilities, commands

log = common.logger(__name__)


def main(args=None):
    """Process command-line arguments and run the program."""
    from multiphase import CLI, VERSION, DESCRIPTION

    # Shared options
    debug = argparse.ArgumentParser(add_help=False)
    debug.add_argument('-V', '--version', action='version', version=VERSION)
    group = debug.add_mutually_exclusive_group()
    group.add_argument('-v', '--verbose', action='count', default=0,
                       help="enable verbose logging")
    group.add_argument('-q', '--quiet', action='store_const', const=-1,
                       dest='verbose', help="only display errors and results")
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument('-o', '--out', metavar='PATH',
                        help="write the result to a file (.json, .yml, .txt)")
    output.add_argument('-f', '--format', choices=('text', 'json'),
                        help="format of the result on standard output")
    chart = argparse.ArgumentParser(add_help=False)
    chart.add_argument('-c', '--chart', metavar='PATH',
                       help="chart document (default: the embedded chart)")
    shared = {'formatter_class': common.HelpFormatter, 'parents': [debug]}

    # Build main parser
    parser = argparse.ArgumentParser(prog=CLI, description=DESCRIPTION,
                                     **shared)
    parser.add_argument('-X', '--no-cross-check', action='store_true',
                        help="do not rebuild classified fields from their "
                             "generators")

    # Build sub-parsers
    subs = parser.add_subparsers(help="", dest='command', metavar="<command>")
    shared = {'formatter_class': common.HelpFormatter,
              'parents': [debug, output]}
    _classify(subs, shared, chart)
    _construct(subs, shared, chart)
    _solve(subs, shared, chart)
    _verify(subs, shared)
    _show(subs, shared, chart)

    # Parse arguments
    args = parser.parse_args(args=args)
    if not args.command:
        parser.error("a command is required")

    # Configure logging
    utilities.configure_logging(args.verbose)

    # Configure settings
    utilities.configure_settings(args)

    # Run the program
    function = commands.get(args.command)
    try:
        code = function(args, os.getcwd(), parser.error)
    except KeyboardInterrupt:
        log.debug("command cancelled")
        code = 1
    if code:
        log.debug("command failed with exit code {}".format(code))
        sys.exit(code)
    else:
        log.debug("command succeeded")


def _classify(subs, shared, chart):
    """Configure the `multiphase classify` subparser."""
    info = "decide whether a vector field is hamiltonian"
    sub = subs.add_parser('classify', description=info.capitalize() + '.',
                          help=info, parents=shared['parents'] + [chart],
                          formatter_class=shared['formatter_class'])
    sub.add_argument('-F', '--field', metavar='PATH', required=True,
                     help="vector field document")


def _construct(subs, shared, chart):
    """Configure the `multiphase construct` subparser."""
    info = "build the hamiltonian vector field of a set of generators"
    sub = subs.add_parser('construct', description=info.capitalize() + '.',
                          help=info, parents=shared['parents'] + [chart],
                          formatter_class=shared['formatter_class'])
    sub.add_argument('-d', '--data', metavar='PATH', required=True,
                     help="generators document (X^mu, X^i, f0)")


def _solve(subs, shared, chart):
    """Configure the `multiphase solve` subparser."""
    info = "find the vector field of a hamiltonian form or section"
    sub = subs.add_parser('solve', description=info.capitalize() + '.',
                          help=info, parents=shared['parents'] + [chart],
                          formatter_class=shared['formatter_class'])
    sub.add_argument('-F', '--form', metavar='PATH', required=True,
                     help="(n-1)-form (extended) or section (ordinary) "
                          "document")


def _verify(subs, shared):
    """Configure the `multiphase verify` subparser."""
    info = "run the seeded randomized verification suites"
    sub = subs.add_parser('verify', description=info.capitalize() + '.',
                          help=info, **shared)
    sub.add_argument('-s', '--suite', default='all',
                     choices=('kernel', 'multisymplectic', 'polysymplectic',
                              'all'),
                     help="suite to run (default: all)")
    sub.add_argument('-t', '--trials', type=utilities.non_negative_int,
                     help="number of trials per suite")
    sub.add_argument('-S', '--seed', type=int, help="root seed")
    sub.add_argument('-D', '--max-degree', type=utilities.non_negative_int,
                     help="maximum total degree of random polynomials")
    sub.add_argument('-T', '--max-terms', type=utilities.positive_int,
                     help="maximum number of terms of random polynomials")
    sub.add_argument('-z', '--sizes', metavar='n,N', nargs='+',
                     type=utilities.chart_size,
                     help="chart sizes to draw from")
    sub.add_argument('-j', '--jobs', type=utilities.positive_int,
                     help="number of worker processes")


def _show(subs, shared, chart):
    """Configure the `multiphase show` subparser."""
    info = "display a canonical form of a chart"
    sub = subs.add_parser('show', description=info.capitalize() + '.',
                          help=info, parents=shared['parents'] + [chart],
                          formatter_class=shared['formatter_class'])
    sub.add_argument('name',
                     choices=('omega', 'theta', 'omega_hat', 'theta_hat'),
                     help="canonical form to display")


if __name__ == '__main__':  # pragma: no cover (manual test)
    main()
