# coding: utf8

import numpy as np
import pytest

from infostruct.measures import binding_information, entropy_triple, multi_information
from infostruct.tools.data import (ProcessSpec, Shape, SubsetMask, build_process, giant_bit_process,
                                   independent_uniform, index_of, known_state, modulo_process, random_simplex)
from infostruct.tools.exceptions import InvalidResidue, InvalidShape


def support_of(joint):
    return set(joint.support())


@pytest.mark.parametrize("n, k, m, support", [
    (3, 2, 0, {(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)}),
    (2, 2, 1, {(0, 1), (1, 0)}),
    (2, 3, 0, {(0, 0), (1, 2), (2, 1)}),
])
def test_modulo_process(n, k, m, support):
    joint = modulo_process(n, k, m)
    assert support_of(joint) == support
    assert np.allclose(joint.probs[joint.probs > 0], 1.0 / len(support))


def test_modulo_process_residue():
    with pytest.raises(InvalidResidue):
        modulo_process(3, 2, 2)


@pytest.mark.parametrize("n, k", [(2, 2), (3, 2), (4, 2), (3, 3), (2, 4)])
def test_modulo_measures(n, k):
    for m in range(k):
        h, i, b = entropy_triple(modulo_process(n, k, m))
        assert h == pytest.approx((n - 1) * np.log2(k), abs=1e-9)
        assert i == pytest.approx(np.log2(k), abs=1e-9)
        assert b == pytest.approx((n - 1) * np.log2(k), abs=1e-9)


@pytest.mark.parametrize("n, b_set, support", [
    (6, None, {(1,) * 6, (0,) * 6}),
    (2, [1], {(1, 0), (0, 1)}),
    (3, [], {(0, 0, 0), (1, 1, 1)}),
])
def test_giant_bit_process(n, b_set, support):
    mask = SubsetMask.from_indices(b_set) if b_set is not None else None
    joint = giant_bit_process(n, mask)
    assert support_of(joint) == support
    assert np.allclose(joint.probs[joint.probs > 0], 0.5)


def test_giant_bit_measures():
    joint = giant_bit_process(6, SubsetMask.from_indices([2, 5]))
    assert multi_information(joint) == pytest.approx(5.0, abs=1e-9)
    assert binding_information(joint) == pytest.approx(1.0, abs=1e-9)


def test_independent_uniform():
    assert np.allclose(independent_uniform(1, 2).probs, [0.5, 0.5])
    assert np.allclose(independent_uniform(2, 3).probs, 1 / 9)
    h, i, b = entropy_triple(independent_uniform(6, 2))
    assert (h, i, b) == pytest.approx((6.0, 0.0, 0.0), abs=1e-9)


def test_known_state():
    assert np.allclose(known_state(1, 3, (2,)).probs, [0, 0, 1])
    joint = known_state(6, 2, (0,) * 6)
    assert entropy_triple(joint) == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)
    assert joint.probability((0,) * 6) == 1.0


def test_random_simplex_is_seeded():
    first = random_simplex(3, 2, seed=7)
    assert random_simplex(3, 2, seed=7) == first
    assert random_simplex(3, 2, seed=8) != first
    assert first.probs.sum() == pytest.approx(1.0)


def test_random_simplex_mean():
    # Dirichlet(1, ..., 1) has mean 1/K^N in every coordinate
    mean = np.mean([random_simplex(2, 2, seed).probs for seed in range(2000)], axis=0)
    assert np.allclose(mean, 0.25, atol=0.02)


@pytest.fixture(params=['parity', 'giant_bit', 'known_state', 'random_simplex'])
def process_specs(request):
    if request.param == 'parity':
        spec = ProcessSpec('parity', 6)
        expected = modulo_process(6, 2, 0)
    elif request.param == 'giant_bit':
        spec = ProcessSpec('giant_bit', 4, bit_set=SubsetMask.from_indices([1, 3]))
        expected = giant_bit_process(4, SubsetMask.from_indices([1, 3]))
    elif request.param == 'known_state':
        spec = ProcessSpec('known_state', 3, k=3, config=(0, 1, 2))
        expected = known_state(3, 3, (0, 1, 2))
    elif request.param == 'random_simplex':
        spec = ProcessSpec('random_simplex', 3, seed=11)
        expected = random_simplex(3, 2, 11)
    return spec, expected


def test_build_process(process_specs):
    spec, expected = process_specs
    assert build_process(spec) == expected


def test_process_spec_rejects():
    with pytest.raises(ValueError):
        ProcessSpec('unknown', 3)
    with pytest.raises(InvalidShape):
        ProcessSpec('giant_bit', 3, k=3)
    with pytest.raises(InvalidShape):
        ProcessSpec('known_state', 3)


def test_known_state_index():
    shape = Shape(3, 3)
    joint = known_state(3, 3, (0, 1, 2))
    assert joint.probs[index_of(shape, (0, 1, 2))] == 1.0
