# -*- coding: utf-8 -*-
import numpy as np
from spsfom import config, sweep
from spsfom.utils import ConfigError, ParameterDomainError, check_output_path
import spsfom.defaults as defaults


def run(args):
    """The main function for the 'sweep' run mode.

    Evaluates the figures of merit on the grid given by the sweep.* keys
    and writes one row per grid point to the output file.

    Args:
        args (argparse.Namespace): The parsed command-line arguments.

    """
    if args.out is None:
        raise ConfigError("The sweep mode needs an output file (--out PATH)")
    check_output_path(args.out)

    cfg = config.read_config(args.config)
    context = config.build_context(cfg, args.method, args.threads)
    spec = config.build_sweep_spec(cfg, context)
    try:
        result = sweep.run_sweep(spec, config.provenance(cfg))
    except ParameterDomainError as e:
        raise ConfigError(str(e))
    result.write(args.out)

    n_failed = int(np.sum(result["failed"])) if "failed" in result.columns else 0
    name = sweep.objective_name(context)
    print("Evaluated {} grid point(s) with method {}".format(len(result), context.method))
    if n_failed:
        print("{} point(s) failed and are written as nan".format(n_failed))
    if name in result.columns and len(result) > n_failed:
        i = result.argmax(name)
        print("Largest {}: {}  at {}".format(
            name, defaults.ff.format(result[name][i]).strip(),
            ", ".join("{} = {}".format(q, defaults.ff.format(result[q][i]).strip())
                      for q in (spec.x_axis.quantity, spec.y_axis and spec.y_axis.quantity) if q)))
    print("Wrote {}".format(args.out))
