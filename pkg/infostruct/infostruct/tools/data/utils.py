# coding: utf8

"""Text formats shared by the sub-commands: joint tables and transition matrices."""
import errno
import os
import sys

import numpy as np

from ..exceptions import EmptyFile, MalformedFile
from ..iotools import FLOAT_FORMAT, write_output
from .joint import Shape, make_joint


def read_tokens(path):
    """
    Reads the whitespace-separated tokens of a text file.

    Args:
        path: (str) path of the file, '-' or None for the standard input.

    Returns:
        (list of str) tokens in file order.

    Raises:
        FileNotFoundError: the file does not exist.
        EmptyFile: the file holds no token.
    """
    if path is None or path == "-":
        text = sys.stdin.read()
        path = "<stdin>"
    else:
        if not os.path.isfile(path):
            raise FileNotFoundError(errno.ENOENT, os.strerror(errno.ENOENT), path)
        with open(path, "r") as f:
            text = f.read()

    tokens = text.split()
    if len(tokens) == 0:
        raise EmptyFile("File %s is empty." % path)
    return tokens


def _parse_int(token, what, path):
    try:
        value = float(token)
    except ValueError:
        raise MalformedFile("%s of %s must be an integer, got '%s'." % (what, path, token))
    if not value.is_integer():
        raise MalformedFile("%s of %s must be an integer, got '%s'." % (what, path, token))
    return int(value)


def _parse_floats(tokens, path):
    try:
        return np.array([float(token) for token in tokens], dtype=np.float64)
    except ValueError as e:
        raise MalformedFile("Cannot read the probabilities of %s: %s" % (path, e))


def parse_joint(tokens, path="<input>"):
    if len(tokens) < 2:
        raise MalformedFile("The header of %s must be 'N K'." % path)
    n_vars = _parse_int(tokens[0], "N", path)
    alphabet_size = _parse_int(tokens[1], "K", path)
    shape = Shape(n_vars, alphabet_size)
    return make_joint(shape, _parse_floats(tokens[2:], path))


def read_joint(path):
    """
    Reads a joint table: header line 'N K', then K^N probabilities in index order.

    Args:
        path: (str) path of the file, '-' or None for the standard input.

    Returns:
        (JointTable) validated table.
    """
    return parse_joint(read_tokens(path), path or "<stdin>")


def format_joint(joint):
    """Joint-table text: header 'N K' then one probability per line."""
    lines = ["%i %i" % (joint.n_vars, joint.alphabet_size)]
    lines += [FLOAT_FORMAT % p for p in joint.probs]
    return "\n".join(lines) + "\n"


def write_joint(joint, output_path=None):
    write_output(format_joint(joint), output_path)


def read_transition(path):
    """
    Reads a transition matrix file: K, then K rows of K probabilities.

    The matrix is returned as floats; stochasticity is checked by the markov module.
    """
    tokens = read_tokens(path)
    k = _parse_int(tokens[0], "K", path)
    if k < 1:
        raise MalformedFile("K must be positive in %s, got %i." % (path, k))
    if len(tokens) - 1 != k * k:
        raise MalformedFile("Expected %i transition probabilities in %s, got %i."
                            % (k * k, path, len(tokens) - 1))
    return _parse_floats(tokens[1:], path).reshape((k, k))
