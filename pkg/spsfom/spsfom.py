#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""spsfom -- figures of merit of cavity-coupled single-photon sources.

A program for computing, validating and optimizing the
indistinguishability and efficiency of a solid-state emitter coupled to
a lossy (plasmonic or hybrid) cavity.

Example:
    Run the command

        $ python3 spsfom.py --help

    to see a list of examples.

"""

import sys
import os
import logging
import argparse
from spsfom import fommode, sweepmode, optimizemode, psbmode, validatemode
from spsfom.markovian import METHODS
from spsfom.utils import SpsfomError, ConfigError, error_prefix
import spsfom.defaults as defaults


def _add_common_args(parser):
    """Adds the arguments shared by all run modes."""
    parser.add_argument("-c", "--config", type=str, action="store", dest="config", default=None, help="path to the configuration file", metavar="PATH")
    parser.add_argument("-o", "--out", type=str, action="store", dest="out", default=None, help="output file (CSV, or HDF5 for .hdf5/.h5 where supported)", metavar="PATH")
    parser.add_argument("-s", "--seed", type=int, action="store", dest="seed", default=None, help="random seed (default: {})".format(defaults.seed), metavar="SEED")
    parser.add_argument("-m", "--method", type=str, action="store", dest="method", default=None, choices=METHODS, help="figure-of-merit method, overrides the 'method' config key (default: {})".format(defaults.method))
    parser.add_argument("-t", "--threads", type=int, action="store", dest="threads", default=None, help="worker threads for oracle evaluation (default: ${} or {})".format(defaults.threads_env, defaults.threads), metavar="N")
    parser.add_argument("-v", "--verbose", action="count", dest="verbose", default=0, help="more log output (-v info, -vv debug)")


def _add_psb_args(parser):
    """Adds arguments specific to the 'psb' mode."""
    parser.add_argument("-ec", "--export-coefficients", type=str, action="store", dest="export_coefficients", default=None, help="write the spectrum coefficients as CSV", metavar="PATH")


def _add_validate_args(parser):
    """Adds arguments specific to the 'validate' mode."""
    parser.add_argument("-n", "--samples", type=int, action="store", dest="samples", default=None, help="number of random parameter sets (default: validate.samples or {})".format(defaults.validate_samples), metavar="N")


def _resolve_threads(args):
    """--threads, else the environment variable, else the default."""
    if args.threads is not None:
        threads = args.threads
    elif os.environ.get(defaults.threads_env):
        try:
            threads = int(os.environ[defaults.threads_env])
        except ValueError:
            raise ConfigError("{} must be an integer, got '{}'".format(
                defaults.threads_env, os.environ[defaults.threads_env]))
    else:
        threads = defaults.threads
    if threads < 1:
        raise ConfigError("The number of threads must be at least 1")
    return threads


def main(argv=None):
    """The spsfom main function.

    This function parses the command line arguments using argparse and runs
    spsfom in the requested mode.

    Args:
        argv (list of str, optional): Arguments; defaults to sys.argv[1:].

    Returns:
        (int): 0 on success, 1 for a failed validation or runtime error,
            2 for a configuration error and 3 for an output error.

    """

    # Get the script name
    prog_name = os.path.basename(sys.argv[0])

    # Top-level parser
    parser = argparse.ArgumentParser(
        prog=prog_name,
        description="spsfom -- figures of merit of cavity-coupled single-photon sources",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
modes:
  spsfom fom        beta, I and I*beta of one emitter-cavity configuration
  spsfom sweep      figures of merit on a 1D or 2D parameter grid, written to file
  spsfom optimize   maximize I*beta over the cavity, or run the Q_max / detuning scans
  spsfom psb        Debye-Waller factor, cavity filtering and validity of a sideband spectrum
  spsfom validate   compare the closed forms with the numerical Bloch-equation solution

examples:
  spsfom fom --config configs/siv_hybrid.cfg

  spsfom fom --config configs/siv_hybrid.cfg --method oracle

  spsfom sweep --config tests/single_mode_quench.cfg --out iq_map.csv --threads 4

  spsfom optimize --config tests/single_mode_quench.cfg

  spsfom psb --config configs/siv_hybrid.cfg --out spectrum.csv --export-coefficients sample5.csv

  spsfom validate --samples 100 --seed 1234

"""
    )
    subparsers = parser.add_subparsers(dest="mode")

    # Parser for "fom" mode
    parser_fommode = subparsers.add_parser("fom")
    parser_fommode.set_defaults(func=fommode.run)
    _add_common_args(parser_fommode)

    # Parser for "sweep" mode
    parser_sweepmode = subparsers.add_parser("sweep")
    parser_sweepmode.set_defaults(func=sweepmode.run)
    _add_common_args(parser_sweepmode)

    # Parser for "optimize" mode
    parser_optimizemode = subparsers.add_parser("optimize")
    parser_optimizemode.set_defaults(func=optimizemode.run)
    _add_common_args(parser_optimizemode)

    # Parser for "psb" mode
    parser_psbmode = subparsers.add_parser("psb")
    parser_psbmode.set_defaults(func=psbmode.run)
    _add_common_args(parser_psbmode)
    _add_psb_args(parser_psbmode)

    # Parser for "validate" mode
    parser_validatemode = subparsers.add_parser("validate")
    parser_validatemode.set_defaults(func=validatemode.run)
    _add_common_args(parser_validatemode)
    _add_validate_args(parser_validatemode)

    # Parse the arguments
    args = parser.parse_args(argv)

    # Print help if no mode is given
    if args.mode is None:
        parser.print_help()
        return 0

    level = logging.WARNING
    if args.verbose == 1:
        level = logging.INFO
    elif args.verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        args.threads = _resolve_threads(args)
        args.func(args)

    except SpsfomError as e:
        print("{} {}".format(error_prefix, e), file=sys.stderr)
        return e.exit_code

    except BaseException as e:
        print("{} Unexpected error:".format(error_prefix), file=sys.stderr)
        print(file=sys.stderr)
        raise e

    return 0


if __name__ == "__main__":
    sys.exit(main())
