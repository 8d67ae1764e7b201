# coding: utf8

import numpy as np


class EarlyStopping(object):
    """
    Stops a run whose monitored value has not improved for `patience` steps.

    In 'max' mode a value improves on the best one when it exceeds it by more
    than min_delta (absolute, in bits); 'min' mode is the mirror image.
    """

    def __init__(self, mode='max', min_delta=0, patience=10):
        self.mode = mode
        self.min_delta = min_delta
        self.patience = patience
        self.best = None
        self.num_bad_steps = 0
        self.is_better = None
        self._init_is_better(mode, min_delta)

        if patience == 0:
            self.is_better = lambda a, b: True
            self.step = lambda a: False

    def step(self, value):
        if self.best is None:
            self.best = value
            return False

        if np.isnan(value):
            return True

        if self.is_better(value, self.best):
            self.num_bad_steps = 0
            self.best = value
        else:
            self.num_bad_steps += 1

        return self.num_bad_steps >= self.patience

    def _init_is_better(self, mode, min_delta):
        if mode not in {'min', 'max'}:
            raise ValueError('mode ' + mode + ' is unknown!')

        if mode == 'min':
            self.is_better = lambda a, best: a < best - min_delta
        if mode == 'max':
            self.is_better = lambda a, best: a > best + min_delta


def restart_seeds(seed, restarts):
    """Independent generator per restart, all derived from one root seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(restarts)]


def local_norm(p, gradient):
    """
    Stationarity measure of a gradient on the simplex at p.

    Norm of the tangent component g - <p, g> in the metric weighted by p, the
    natural geometry of exponentiated updates; zero at every KKT point with full
    support and vanishing with the mass of off-support configurations.
    """
    centered = gradient - float(p @ gradient)
    return float(np.sqrt(p @ (centered * centered)))
