# coding: utf8

import argparse
import sys

from colorama import Fore

from infostruct.tools.iotools import RunConfig

CATEGORIES = {
    'INPUT': '%sInput data%s' % (Fore.BLUE, Fore.RESET),
    'PROCESS': '%sProcess parameters%s' % (Fore.BLUE, Fore.RESET),
    'RANDOM': '%sRandom sampling%s' % (Fore.BLUE, Fore.RESET),
    'OPTIMIZATION': '%sOptimization parameters%s' % (Fore.BLUE, Fore.RESET),
    'COMPUTATIONAL': '%sComputational resources%s' % (Fore.BLUE, Fore.RESET),
    'OUTPUT': '%sOutput options%s' % (Fore.BLUE, Fore.RESET),
}

TASKS = ["measure", "process", "markov", "bounds", "prove", "maximize", "estimate", "sample"]

# Exit status of a run whose computation succeeded with a negative answer
NEGATIVE_RESULT = 2


class InfoStructParser(argparse.ArgumentParser):
    """Argument parser printing the help of the failing (sub-)command and exiting with status 1."""

    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(1, '%s: error: %s\n' % (self.prog, message))


def int_list(text):
    try:
        return [int(value) for value in text.split(",") if value.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("'%s' is not a comma-separated list of integers." % text)


def run_config(args):
    """RunConfig of a parsed command line, used to record a run next to its output."""
    arguments = {key: value for key, value in vars(args).items() if key not in ("func", "verbose", "task")}
    inputs = [arguments.pop(key) for key in ("joint", "transition", "data") if key in arguments]
    inputs = [path for path in inputs if path is not None]
    output = output_path(args)
    arguments.pop("out", None)
    arguments.pop("emit_certificate", None)
    fmt = arguments.pop("format", "json")
    config = RunConfig(args.task, inputs=inputs, output=output, fmt=fmt)
    numeric = {key: arguments.pop(key) for key in ("seed", "n", "k", "m", "nmax", "samples", "restarts", "tol")
               if key in arguments}
    return config.write(**numeric, **arguments)


def output_path(args):
    if getattr(args, "emit_certificate", None) is not None:
        return args.emit_certificate
    return getattr(args, "out", None)


# Functions to dispatch command line options to the corresponding function
def measure_func(args):
    from .measures import measure_report
    from .tools.data import read_joint
    from .tools.iotools import emit, return_logger, write_output

    logger = return_logger(args.verbose, "measure")
    joint = read_joint(args.joint)
    logger.info("Measuring a table of %i variables over %i symbols" % (joint.n_vars, joint.alphabet_size))
    report = measure_report(joint, ordering=args.ordering)
    write_output(emit(report, args.format), args.out)
    return 0


def process_func(args):
    from .tools.data import ProcessSpec, SubsetMask, build_process, write_joint

    spec = ProcessSpec(
        kind=args.kind,
        n=args.n,
        k=args.k,
        m=args.m,
        bit_set=SubsetMask.from_indices(args.bits) if args.bits is not None else None,
        config=tuple(args.config) if args.config is not None else None,
        seed=args.seed
    )
    write_joint(build_process(spec), args.out)
    return 0


def _markov_model(args):
    from .markov import markov_model, symmetric_chain
    from .tools.data import read_transition

    if args.epsilon is not None:
        return symmetric_chain(args.epsilon)
    return markov_model(read_transition(args.transition))


def markov_func(args):
    from .markov import identity_checks, rate_report
    from .tools.iotools import emit, return_logger, write_output

    logger = return_logger(args.verbose, "markov")
    model = _markov_model(args)
    rates = rate_report(model)
    checks = identity_checks(model, args.nmax, logger=logger)
    if args.format == "json":
        report = {
            "alphabet_size": model.k,
            "stationary": list(model.stationary),
            "rates": rates.to_dict(),
            "identity_checks": checks.to_dict(),
        }
    else:
        report = checks.table.assign(**rates.to_dict())
    write_output(emit(report, args.format), args.out)
    return 0


def bounds_func(args):
    from .bounds import check_bounds, corner_points, dump_violations, sample_bounds, tightness_witnesses, violations
    from .tools.data import read_joint
    from .tools.iotools import emit, return_logger, write_output

    logger = return_logger(args.verbose, "bounds")

    if args.corners:
        witnesses = tightness_witnesses(args.n, args.k)
        report = {
            "n_vars": args.n,
            "alphabet_size": args.k,
            "corners": [corner.to_dict() for corner in corner_points(args.n, args.k)],
            "tight": {name: label for name, (label, _) in witnesses.items()},
        }
        if args.format == "csv":
            import pandas as pd

            report = pd.DataFrame(report["corners"])
        write_output(emit(report, args.format), args.out)
        return 0

    if args.random:
        frame = sample_bounds(args.n, args.k, args.samples, seed=args.seed, logger=logger)
        write_output(emit(frame, args.format), args.out)
        violations_path = args.violations
        if violations_path is None and args.out not in (None, "-"):
            violations_path = args.out + ".violations.csv"
        if violations_path is None:
            n_violating = len(violations(frame))
        else:
            n_violating = dump_violations(frame, violations_path, logger=logger)
        if n_violating > 0:
            logger.warning("%i of %i samples violate a bound" % (n_violating, args.samples))
            return NEGATIVE_RESULT
        return 0

    report = check_bounds(read_joint(args.joint))
    write_output(emit(report, args.format), args.out)
    if not report.satisfied:
        violated = [record.name for record in report.records if not record.satisfied]
        logger.warning("Violated bounds: %s" % ", ".join(violated))
        return NEGATIVE_RESULT
    return 0


def prove_func(args):
    from .prover import prove_target, verify_certificate, verify_refutation
    from .tools.exceptions import InconsistentResult
    from .tools.iotools import emit, return_logger, write_output

    logger = return_logger(args.verbose, "prove")
    target, result = prove_target(args.target, args.n, cone=args.cone, logger=logger)
    if result.proven:
        checked = verify_certificate(target, result)
    else:
        checked = verify_refutation(target, result)
    if not checked:
        raise InconsistentResult("The %s answer for '%s' at N=%i does not verify."
                                 % (result.to_dict()["status"], args.target, args.n))

    report = {"target": args.target, "functional": str(target), **result.to_dict()}
    text = emit(report, "json")
    write_output(text)
    if args.emit_certificate is not None:
        write_output(text, args.emit_certificate)
    return 0 if result.proven else NEGATIVE_RESULT


def maximize_func(args):
    from .maximize import MaximizerConfig, classify_optimum, maximize
    from .tools.data import write_joint
    from .tools.iotools import emit, return_logger, write_output

    logger = return_logger(args.verbose, "maximize")
    config = MaximizerConfig(
        restarts=args.restarts,
        max_iters=args.max_iters,
        tol=args.tol,
        seed=args.seed,
        patience=args.patience,
        n_threads=args.nproc,
        log_dir=args.log_dir
    )
    result = maximize(args.objective, args.n, args.k, config=config, logger=logger)
    summary = result.to_dict()
    summary["diagnosis"] = classify_optimum(result.best_table).to_dict()

    if args.out in (None, "-"):
        summary["probs"] = list(result.best_table.probs)
    else:
        write_joint(result.best_table, args.out)
    if args.format == "csv":
        import pandas as pd

        summary.pop("restart_values")
        summary.update(summary.pop("diagnosis"))
        summary.pop("probs", None)
        summary = pd.DataFrame([summary])
    write_output(emit(summary, args.format))
    return 0


def estimate_func(args):
    from .estimate import estimated_rates, read_sequence
    from .tools.iotools import emit, return_logger, write_output

    logger = return_logger(args.verbose, "estimate")
    sequence = read_sequence(args.data, args.k, logger=logger)
    report = estimated_rates(sequence, args.nmax, logger=logger)
    write_output(emit(report, args.format), args.out)
    return 0


def sample_func(args):
    from .estimate import write_sequence
    from .markov import sample_sequence
    from .tools.iotools import return_logger

    logger = return_logger(args.verbose, "sample")
    model = _markov_model(args)
    symbols = sample_sequence(model, args.length, seed=args.seed)
    logger.info("Sampled %i symbols over %i states with seed %i" % (args.length, model.k, args.seed))
    write_sequence(symbols, args.out)
    return 0


def add_output_arguments(parser, formats=True):
    output_group = parser.add_argument_group(CATEGORIES["OUTPUT"])
    output_group.add_argument(
        '--out', '-o',
        help='Output file, written atomically. (default=standard output)',
        type=str, default=None)
    if formats:
        output_group.add_argument(
            '--format',
            help='Format of the report. (default=json)',
            choices=['json', 'csv'], default='json')
    return output_group


def add_chain_arguments(parser):
    chain_group = parser.add_argument_group(CATEGORIES["INPUT"])
    chain_source = chain_group.add_mutually_exclusive_group(required=True)
    chain_source.add_argument(
        '--transition',
        help='File holding K, then the K rows of the transition matrix.',
        type=str, default=None)
    chain_source.add_argument(
        '--epsilon',
        help='Use the binary symmetric chain flipping with probability epsilon.',
        type=float, default=None)
    return chain_group


def parse_command_line():
    parser = InfoStructParser(
        prog='infostruct',
        description='Information measures, bounds, proofs and estimates for discrete random variables')

    parent_parser = argparse.ArgumentParser(add_help=False)
    parent_parser.add_argument('--verbose', '-v', action='count', default=0)

    subparser = parser.add_subparsers(
        title='''Task to execute with infostruct:''',
        description='''What kind of task do you want to use with infostruct?
            (%s).''' % ", ".join(TASKS),
        dest='task',
        help='''****** Tasks proposed by infostruct ******''')

    subparser.required = True

    # Measure - information measures of one joint table
    measure_parser = subparser.add_parser(
        'measure',
        parents=[parent_parser],
        help='Compute H, I, B, residual entropy and the PIR profile of a joint table.')
    measure_input_group = measure_parser.add_argument_group(CATEGORIES["INPUT"])
    measure_input_group.add_argument(
        '--joint',
        help='Joint table file ("N K" then K^N probabilities). (default=standard input)',
        type=str, default='-')
    measure_input_group.add_argument(
        '--ordering',
        help='Permutation of 1..N for the PIR profile, e.g. 1,3,2.',
        type=int_list, default=None)
    add_output_arguments(measure_parser)
    measure_parser.set_defaults(func=measure_func)

    # Process - canonical joint tables
    process_parser = subparser.add_parser(
        'process',
        parents=[parent_parser],
        help='Write the joint table of a canonical process.')
    process_group = process_parser.add_argument_group(CATEGORIES["PROCESS"])
    process_group.add_argument(
        '--kind',
        help='Process to build.',
        choices=["modulo", "parity", "giant_bit", "independent_uniform", "known_state", "random_simplex"],
        required=True)
    process_group.add_argument(
        '--n',
        help='Number of variables.',
        type=int, required=True)
    process_group.add_argument(
        '--k',
        help='Alphabet size. (default=2)',
        type=int, default=2)
    process_group.add_argument(
        '--m',
        help='Residue of the modulo process. (default=0)',
        type=int, default=0)
    process_group.add_argument(
        '--bits',
        help='Variables tied to the giant bit, e.g. 1,3. (default=all)',
        type=int_list, default=None)
    process_group.add_argument(
        '--config',
        help='Configuration of the known-state process, e.g. 0,1,0.',
        type=int_list, default=None)
    process_group.add_argument(
        '--seed',
        help='Seed of the random simplex draw. (default=0)',
        type=int, default=0)
    add_output_arguments(process_parser, formats=False)
    process_parser.set_defaults(func=process_func)

    # Markov - rates of a stationary chain
    markov_parser = subparser.add_parser(
        'markov',
        parents=[parent_parser],
        help='Compute the entropy, multi-information, residual and PIR rates of a Markov chain.')
    add_chain_arguments(markov_parser)
    markov_parser.add_argument(
        '--nmax',
        help='Largest block length of the identity checks. (default=8)',
        type=int, default=8)
    add_output_arguments(markov_parser)
    markov_parser.set_defaults(func=markov_func)

    # Bounds - check the bounds on a table or on random tables
    bounds_parser = subparser.add_parser(
        'bounds',
        parents=[parent_parser],
        help='Check the bounds relating H, I and B.')
    bounds_input_group = bounds_parser.add_argument_group(CATEGORIES["INPUT"])
    bounds_source = bounds_input_group.add_mutually_exclusive_group()
    bounds_source.add_argument(
        '--joint',
        help='Joint table file. (default=standard input)',
        type=str, default='-')
    bounds_source.add_argument(
        '--random',
        help='Check tables drawn uniformly from the simplex instead of a file.',
        action='store_true', default=False)
    bounds_source.add_argument(
        '--corners',
        help='List the corner points of the (H, I, B) region and the processes attaining each bound.',
        action='store_true', default=False)
    bounds_random_group = bounds_parser.add_argument_group(CATEGORIES["RANDOM"])
    bounds_random_group.add_argument(
        '--n',
        help='Number of variables of the random tables. (default=3)',
        type=int, default=3)
    bounds_random_group.add_argument(
        '--k',
        help='Alphabet size of the random tables. (default=2)',
        type=int, default=2)
    bounds_random_group.add_argument(
        '--samples',
        help='Number of random tables. (default=1000)',
        type=int, default=1000)
    bounds_random_group.add_argument(
        '--seed',
        help='Root seed of the batch. (default=0)',
        type=int, default=0)
    bounds_output_group = add_output_arguments(bounds_parser)
    bounds_output_group.add_argument(
        '--violations',
        help='CSV file receiving the violating samples. (default=OUT.violations.csv)',
        type=str, default=None)
    bounds_parser.set_defaults(func=bounds_func)

    # Prove - exact proofs of linear entropy inequalities
    prove_parser = subparser.add_parser(
        'prove',
        parents=[parent_parser],
        help='Prove or refute that a linear combination of B, I and H is nonnegative.')
    prove_parser.add_argument(
        '--target',
        help='Target such as "(N-1)B-I", "I-B" or "2H(1)-H(1,2)".',
        type=str, required=True)
    prove_parser.add_argument(
        '--n',
        help='Number of variables.',
        type=int, required=True)
    prove_parser.add_argument(
        '--cone',
        help='Cone of Shannon inequalities used. (default=auto)',
        choices=["auto", "symmetric", "elemental"], default='auto')
    prove_parser.add_argument(
        '--emit-certificate',
        help='Also write the certificate or the refutation to this JSON file.',
        dest='emit_certificate', type=str, default=None)
    prove_parser.set_defaults(func=prove_func)

    # Maximize - numerical optimization of B or I
    maximize_parser = subparser.add_parser(
        'maximize',
        parents=[parent_parser],
        help='Maximize binding information or multi-information over joint tables.')
    maximize_opt_group = maximize_parser.add_argument_group(CATEGORIES["OPTIMIZATION"])
    maximize_opt_group.add_argument(
        '--objective',
        help='Quantity to maximize.',
        choices=["binding", "multi"], required=True)
    maximize_opt_group.add_argument(
        '--n',
        help='Number of variables.',
        type=int, required=True)
    maximize_opt_group.add_argument(
        '--k',
        help='Alphabet size. (default=2)',
        type=int, default=2)
    maximize_opt_group.add_argument(
        '--restarts',
        help='Number of random restarts. (default=20)',
        type=int, default=20)
    maximize_opt_group.add_argument(
        '--seed',
        help='Root seed of the restarts. (default=0)',
        type=int, default=0)
    maximize_opt_group.add_argument(
        '--tol',
        help='Stationarity tolerance. (default=1e-6)',
        type=float, default=1e-6)
    maximize_opt_group.add_argument(
        '--max_iters',
        help='Maximum number of accepted steps per restart. (default=2000)',
        type=int, default=2000)
    maximize_opt_group.add_argument(
        '--patience',
        help='Steps without improvement before a restart stops. (default=100)',
        type=int, default=100)
    maximize_comput_group = maximize_parser.add_argument_group(CATEGORIES["COMPUTATIONAL"])
    maximize_comput_group.add_argument(
        '-np', '--nproc',
        help='Number of threads running restarts. (default=1)',
        type=int, default=1)
    maximize_output_group = add_output_arguments(maximize_parser)
    maximize_output_group.add_argument(
        '--log_dir',
        help='TensorBoard directory receiving the objective curve of every restart.',
        type=str, default=None)
    maximize_output_group.description = ('--out receives the best table in joint format; '
                                         'the summary always goes to the standard output.')
    maximize_parser.set_defaults(func=maximize_func)

    # Estimate - plug-in estimation from a symbol sequence
    estimate_parser = subparser.add_parser(
        'estimate',
        parents=[parent_parser],
        help='Estimate block entropies and rates from an observed symbol sequence.')
    estimate_input_group = estimate_parser.add_argument_group(CATEGORIES["INPUT"])
    estimate_input_group.add_argument(
        '--data',
        help='File of whitespace-separated symbols in 0..K-1. (default=standard input)',
        type=str, default='-')
    estimate_input_group.add_argument(
        '--k',
        help='Alphabet size.',
        type=int, required=True)
    estimate_input_group.add_argument(
        '--nmax',
        help='Largest block length. (default=4)',
        type=int, default=4)
    add_output_arguments(estimate_parser)
    estimate_parser.set_defaults(func=estimate_func)

    # Sample - draw a sequence from a Markov chain
    sample_parser = subparser.add_parser(
        'sample',
        parents=[parent_parser],
        help='Draw a stationary sequence from a Markov chain.')
    add_chain_arguments(sample_parser)
    sample_parser.add_argument(
        '--length',
        help='Number of symbols.',
        type=int, required=True)
    sample_parser.add_argument(
        '--seed',
        help='Seed of the draw. (default=0)',
        type=int, default=0)
    add_output_arguments(sample_parser, formats=False)
    sample_parser.set_defaults(func=sample_func)

    return parser
