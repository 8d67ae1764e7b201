# coding: utf8

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from infostruct.measures import entropy_triple
from infostruct.tools.data import (Shape, SubsetMask, config_of, format_joint, index_of, make_joint, marginalize,
                                   modulo_process, random_simplex, read_joint, read_transition, relabel,
                                   write_joint)
from infostruct.tools.data.joint import NEGATIVE_NOISE
from infostruct.tools.exceptions import (EmptyFile, EmptySubset, InvalidShape, InvalidSymbol, MalformedFile,
                                         NotADistribution, ShapeMismatch, ShapeTooLarge)


@pytest.fixture(params=['fair_bit', 'giant_bit_pair'])
def valid_tables(request):
    if request.param == 'fair_bit':
        shape, probs = Shape(1, 2), [0.5, 0.5]
    elif request.param == 'giant_bit_pair':
        shape, probs = Shape(2, 2), [0.5, 0, 0, 0.5]
    return shape, probs


def test_make_joint(valid_tables):
    shape, probs = valid_tables
    joint = make_joint(shape, probs)
    assert joint.n_vars == shape.n_vars
    assert np.allclose(joint.probs, probs)
    assert abs(joint.probs.sum() - 1) < 1e-12


def test_make_joint_rejects():
    with pytest.raises(NotADistribution):
        make_joint(Shape(2, 2), [0.7, 0.7, 0, 0])
    with pytest.raises(NotADistribution):
        make_joint(Shape(1, 2), [1.1, -0.1])
    with pytest.raises(ShapeMismatch):
        make_joint(Shape(2, 2), [0.5, 0.5])


def test_make_joint_clamps_noise():
    joint = make_joint(Shape(1, 2), [1.0 + 1e-16, -1e-16])
    assert joint.probs.min() >= 0
    assert joint.probs[0] == pytest.approx(1.0)
    assert make_joint(Shape(1, 2), [1.0, -NEGATIVE_NOISE]).probs[1] == 0.0
    with pytest.raises(NotADistribution):
        make_joint(Shape(1, 2), [1.0, -1e-12])


def test_table_is_read_only():
    joint = make_joint(Shape(1, 2), [0.5, 0.5])
    with pytest.raises(ValueError):
        joint.probs[0] = 1.0


def test_shape_limits():
    with pytest.raises(InvalidShape):
        Shape(0, 2)
    with pytest.raises(InvalidShape):
        Shape(3, 1)
    with pytest.raises(ShapeTooLarge):
        Shape(29, 2)
    assert Shape(28, 2).state_count == 2 ** 28


@pytest.mark.parametrize("shape, config, index", [
    (Shape(3, 2), (1, 0, 0), 1),
    (Shape(3, 2), (0, 0, 1), 4),
    (Shape(2, 3), (2, 1), 5),
])
def test_index_of(shape, config, index):
    assert index_of(shape, config) == index
    assert config_of(shape, index) == config


def test_index_of_rejects():
    with pytest.raises(InvalidSymbol):
        index_of(Shape(2, 2), (0, 2))
    with pytest.raises(InvalidSymbol):
        index_of(Shape(2, 2), (0,))
    with pytest.raises(InvalidSymbol):
        config_of(Shape(2, 2), 4)


@given(st.integers(1, 6), st.integers(2, 4), st.data())
def test_index_config_bijection(n, k, data):
    shape = Shape(n, k)
    index = data.draw(st.integers(0, shape.state_count - 1))
    assert index_of(shape, config_of(shape, index)) == index


def test_marginalize():
    pair = make_joint(Shape(2, 2), [0.5, 0, 0, 0.5])
    assert np.allclose(marginalize(pair, SubsetMask.from_indices([1])).probs, [0.5, 0.5])

    parity = modulo_process(3, 2, 0)
    assert np.allclose(marginalize(parity, SubsetMask.from_indices([1, 2])).probs, [0.25] * 4)
    assert marginalize(parity, SubsetMask.full(3)) == parity

    with pytest.raises(EmptySubset):
        marginalize(parity, SubsetMask.empty())
    with pytest.raises(InvalidShape):
        marginalize(parity, SubsetMask.from_indices([4]))


def test_marginalize_keeps_order():
    # p(x1, x2) with x1 = 0 always and x2 uniform
    joint = make_joint(Shape(2, 2), [0.5, 0, 0.5, 0])
    assert np.allclose(marginalize(joint, SubsetMask.from_indices([1])).probs, [1, 0])
    assert np.allclose(marginalize(joint, SubsetMask.from_indices([2])).probs, [0.5, 0.5])


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4), st.integers(2, 3), st.integers(0, 2 ** 32 - 1), st.data())
def test_marginal_sums(n, k, seed, data):
    joint = random_simplex(n, k, seed)
    bits = data.draw(st.integers(1, (1 << n) - 1))
    marginal = marginalize(joint, SubsetMask(bits))
    assert marginal.probs.sum() == pytest.approx(1.0, abs=1e-12)
    assert marginal.n_vars == len(SubsetMask(bits))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 5), st.integers(2, 3), st.integers(0, 2 ** 32 - 1), st.data())
def test_marginalize_composes(n, k, seed, data):
    joint = random_simplex(n, k, seed)
    outer = SubsetMask(data.draw(st.integers(1, (1 << n) - 1)))
    # positions within the marginal, which renumbers the kept variables 1..|outer|
    positions = SubsetMask(data.draw(st.integers(1, (1 << len(outer)) - 1)))
    kept = outer.indices
    inner = SubsetMask.from_indices(kept[p - 1] for p in positions)

    twice = marginalize(marginalize(joint, outer), positions)
    direct = marginalize(joint, inner)
    assert twice.n_vars == direct.n_vars == len(positions)
    assert np.allclose(twice.probs, direct.probs, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2 ** 32 - 1), st.data())
def test_relabel_invariance(n, seed, data):
    k = 3
    joint = random_simplex(n, k, seed)
    permutations = [data.draw(st.permutations(range(k))) for _ in range(n)]
    relabeled = relabel(joint, permutations)
    assert np.allclose(entropy_triple(joint), entropy_triple(relabeled), atol=1e-9)


def test_subset_mask():
    a = SubsetMask.from_indices([1, 3])
    b = SubsetMask.from_indices([3])
    assert a.indices == (1, 3)
    assert len(a) == 2
    assert 3 in a and 2 not in a
    assert (a - b).indices == (1,)
    assert (a | SubsetMask.from_indices([2])) == SubsetMask.full(3)
    assert b.issubset(a)
    assert not a.isdisjoint(b)
    assert not SubsetMask.empty()
    with pytest.raises(InvalidShape):
        SubsetMask.from_indices([0])


def test_joint_file_format(tmp_path):
    joint = modulo_process(2, 2, 1)
    path = str(tmp_path / "xor.txt")
    write_joint(joint, path)
    with open(path) as f:
        assert f.read() == format_joint(joint)
    assert format_joint(joint).splitlines()[0] == "2 2"
    assert read_joint(path) == joint


def test_read_joint_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_joint(str(tmp_path / "missing.txt"))

    empty = tmp_path / "empty.txt"
    empty.write_text("\n")
    with pytest.raises(EmptyFile):
        read_joint(str(empty))

    malformed = tmp_path / "malformed.txt"
    malformed.write_text("2 2\n0.5 0.5 x 0\n")
    with pytest.raises(MalformedFile):
        read_joint(str(malformed))

    short = tmp_path / "short.txt"
    short.write_text("2 2\n0.5 0.5\n")
    with pytest.raises(ShapeMismatch):
        read_joint(str(short))


def test_read_transition(tmp_path):
    path = tmp_path / "chain.txt"
    path.write_text("2\n0.9 0.1\n0.2 0.8\n")
    assert np.allclose(read_transition(str(path)), [[0.9, 0.1], [0.2, 0.8]])

    path.write_text("2\n0.9 0.1 0.2\n")
    with pytest.raises(MalformedFile):
        read_transition(str(path))
    path.write_text("0\n")
    with pytest.raises(MalformedFile):
        read_transition(str(path))
