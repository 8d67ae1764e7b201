# coding: utf8
import logging
import sys

LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]

SIGNIFICANT_DIGITS = 12
FLOAT_FORMAT = "%.12g"


class StdLevelFilter(logging.Filter):
    def __init__(self, err=False):
        super().__init__()
        self.err = err

    def filter(self, record):
        if record.levelno <= logging.INFO:
            return not self.err
        return self.err


class StderrHandler(logging.StreamHandler):
    """Stream handler bound to whatever sys.stderr is at emission time."""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def return_logger(verbosity, name_fn):
    logger = logging.getLogger(name_fn)
    if verbosity < len(LOG_LEVELS):
        logger.setLevel(LOG_LEVELS[verbosity])
    else:
        logger.setLevel(logging.DEBUG)
    if logger.handlers:
        return logger

    # stdout carries results, so both streams of messages go to stderr
    info = StderrHandler()
    info.addFilter(StdLevelFilter())
    warn = StderrHandler()
    warn.addFilter(StdLevelFilter(err=True))
    info.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(message)s"))
    warn.setFormatter(logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s"))
    logger.addHandler(info)
    logger.addHandler(warn)
    logger.propagate = False

    return logger


class RunConfig:
    """ Class to define and record the parameters of one command line run"""

    def __init__(self, task: str, inputs: list = None, output: str = None, fmt: str = "json"):
        """
        Parameters:
        task: sub-command executed (measure, process, markov, bounds, prove,
        maximize, estimate, sample).
        inputs: paths of the input files ('-' is the standard input).
        output: path of the output file, None for the standard output.
        fmt: output format, json or csv.
        """
        self.task = task
        self.inputs = list(inputs) if inputs is not None else []
        self.output = output
        self.fmt = fmt

    def write(
            self,
            seed: int = 0,
            n: int = None,
            k: int = None,
            m: int = 0,
            nmax: int = None,
            samples: int = None,
            restarts: int = None,
            tol: float = None,
            **extra
    ):
        """
        Optional numeric parameters of the run.
        seed: root seed of every random draw of the run.
        n: number of variables (or block length).
        k: alphabet size.
        m: residue of the modulo process.
        nmax: largest block length for rate computations.
        samples: number of random distributions drawn by the bounds batch.
        restarts: number of restarts of the maximizer.
        tol: convergence tolerance of the maximizer.
        extra: sub-command specific values, recorded verbatim.
        """
        self.seed = seed
        self.n = n
        self.k = k
        self.m = m
        self.nmax = nmax
        self.samples = samples
        self.restarts = restarts
        self.tol = tol
        for key, value in extra.items():
            setattr(self, key, value)
        return self

    def to_dict(self):
        return dict(sorted(vars(self).items()))


def rounded(value):
    """Rounds floats (also nested in lists and dicts) to the printed precision."""
    import numpy as np
    from fractions import Fraction

    if isinstance(value, Fraction):
        return "%i/%i" % (value.numerator, value.denominator)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(FLOAT_FORMAT % value)
    if isinstance(value, dict):
        return {str(key): rounded(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [rounded(item) for item in value]
    return value


def emit(report, fmt="json"):
    """
    Serializes a report as text.

    Args:
        report: object exposing to_dict() (json) and to_frame() (csv), a plain
            dict or a pandas DataFrame.
        fmt: (str) 'json' or 'csv'.

    Returns:
        (str) JSON object with the key order of the report, or CSV with a header
        row. Floats carry 12 significant digits and rationals are written as
        'p/q' strings.
    """
    import json
    import pandas as pd

    if fmt == "json":
        if isinstance(report, pd.DataFrame):
            data = report.to_dict(orient="records")
        elif isinstance(report, dict):
            data = report
        else:
            data = report.to_dict()
        return json.dumps(rounded(data), indent=2) + "\n"
    elif fmt == "csv":
        if isinstance(report, pd.DataFrame):
            frame = report
        elif isinstance(report, dict):
            frame = pd.DataFrame([report])
        else:
            frame = report.to_frame()
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT)
    else:
        raise ValueError("Format %s must be in ['json', 'csv']." % fmt)


def write_output(text, output_path=None):
    """Writes text to output_path atomically, or to the standard output."""
    import os
    import tempfile

    if output_path is None or output_path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    directory = os.path.dirname(os.path.abspath(output_path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp_path, output_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def commandline_to_json(run_config, output_path):
    """
    Writes the run configuration next to an output file.
    This helps to reproduce a run bit for bit.

    :param run_config: a RunConfig instance
    :param output_path: path of the main output of the run

    :return: path of the json file
    """
    import json

    json_path = output_path + ".commandline.json"
    write_output(json.dumps(rounded(run_config.to_dict()), skipkeys=True, indent=4) + "\n", json_path)
    return json_path
