"""
test_kernels.py

Unit and property tests for the differentiable kernels.

Tests:
- matmul shapes, errors and agreement with a scalar loop.
- softmax_rows normalization, extreme inputs and non-finite rejection.
- relu / sigmoid ranges (sigmoid strictly inside (0, 1)).
- maxpool_over_rows values, tie-breaking, gradient routing and empty input.
- dropout identity in eval mode, inverted scaling and seeded determinism.
- gather_rows range checks and scatter-add gradients.
- cross_entropy value and gradient.

Features:
- Uses `hypothesis` for kernel invariants over generated matrices.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from dual_comatch.errors.exceptions import EmptySequenceError, NonFiniteError, ShapeError, VocabularyError
from dual_comatch.numerics.kernels import (
    candidate_softmax,
    concat,
    cross_entropy,
    dropout,
    elementwise,
    gather_rows,
    matmul,
    maxpool_over_rows,
    relu,
    sigmoid,
    softmax_rows,
    stack_rows,
    sum_all,
)
from dual_comatch.numerics.tensor import Tape, Tensor, constant, parameter

finite = st.floats(min_value=-1e4, max_value=1e4, allow_nan=False, allow_infinity=False)
matrices = arrays(
    np.float64,
    st.tuples(st.integers(1, 6), st.integers(1, 6)),
    elements=finite,
)


def test_matmul_matches_scalar_loop(rng):
    """
    Test the matrix product against the scalar-loop reference.

    Expected Outcome:
    - Entrywise agreement within 1e-12.
    """
    a, b = rng.normal(size=(3, 4)), rng.normal(size=(4, 2))
    out = matmul(constant(a), constant(b))

    np.testing.assert_allclose(out.data, oracles.matmul(a.tolist(), b.tolist()), atol=1e-12)


def test_matmul_vector_forms(rng):
    """
    Test vector-matrix, matrix-vector and vector-vector products.

    Expected Outcome:
    - Shapes (n,), (m,) and () respectively.
    """
    m = constant(rng.normal(size=(3, 2)))
    assert matmul(constant(np.ones(3)), m).shape == (2,)
    assert matmul(m, constant(np.ones(2))).shape == (3,)
    assert matmul(constant(np.ones(2)), constant(np.ones(2))).shape == ()


def test_matmul_rejects_inner_mismatch():
    """
    Test shape validation.

    Expected Outcome:
    - ShapeError naming both shapes.
    """
    with pytest.raises(ShapeError, match=r"\(2, 3\).*\(2, 3\)"):
        matmul(constant(np.ones((2, 3))), constant(np.ones((2, 3))))


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_softmax_rows_are_distributions(m):
    """
    Property: every softmax row is a probability distribution.

    Expected Outcome:
    - Entries in [0, 1], rows sum to 1 within 1e-12, also for entries of magnitude 1e4.
    """
    probs = softmax_rows(constant(m)).data

    assert np.all(probs >= 0.0) and np.all(probs <= 1.0)
    np.testing.assert_allclose(probs.sum(axis=1), 1.0, atol=1e-12)


def test_softmax_rows_single_column_is_one():
    """
    Test the degenerate single-column case.

    Expected Outcome:
    - Every weight is exactly 1.
    """
    probs = softmax_rows(constant([[3.0], [-7.0]])).data
    np.testing.assert_array_equal(probs, [[1.0], [1.0]])


def test_softmax_rows_extreme_inputs():
    """
    Test numerical stability for large logits.

    Expected Outcome:
    - (1e4, 0) gives (1, 0) without overflow.
    """
    probs = softmax_rows(constant([[1e4, 0.0]])).data
    np.testing.assert_allclose(probs, [[1.0, 0.0]], atol=1e-12)


def test_softmax_rows_matches_oracle(rng):
    """
    Test row-wise softmax against the scalar reference.

    Expected Outcome:
    - Agreement within 1e-12.
    """
    m = rng.normal(size=(4, 5)) * 3
    expected = [oracles.softmax(row) for row in m.tolist()]
    np.testing.assert_allclose(softmax_rows(constant(m)).data, expected, atol=1e-12)


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_softmax_rows_rejects_non_finite(bad):
    """
    Test the non-finite input contract.

    Expected Outcome:
    - NonFiniteError for NaN and +/-Inf entries.
    """
    with pytest.raises(NonFiniteError):
        softmax_rows(constant([[0.0, bad]]))


def test_softmax_rows_rejects_vectors():
    """
    Test rank validation.

    Expected Outcome:
    - ShapeError for a 1-D input.
    """
    with pytest.raises(ShapeError):
        softmax_rows(constant([1.0, 2.0]))


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_activation_ranges(m):
    """
    Property: relu is non-negative and sigmoid stays strictly inside (0, 1).

    Expected Outcome:
    - relu >= 0 and relu(x) == x where x > 0; 0 < sigmoid < 1 even for |x| = 1e4.
    """
    r = relu(constant(m)).data
    s = sigmoid(constant(m)).data

    assert np.all(r >= 0.0)
    np.testing.assert_array_equal(r[m > 0], m[m > 0])
    assert np.all(s > 0.0) and np.all(s < 1.0)


def test_sigmoid_matches_oracle(rng):
    """
    Test sigmoid values against the scalar reference.

    Expected Outcome:
    - Agreement within 1e-12 for moderate inputs.
    """
    x = rng.normal(size=(3, 3)) * 4
    expected = [[oracles.sigmoid(v) for v in row] for row in x.tolist()]
    np.testing.assert_allclose(sigmoid(constant(x)).data, expected, atol=1e-12)


def test_elementwise_rejects_unknown_kind():
    """
    Test the activation selector.

    Expected Outcome:
    - ValueError for an unknown kind.
    """
    with pytest.raises(ValueError):
        elementwise(constant([[1.0]]), "tanh")


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_maxpool_dominates_rows(m):
    """
    Property: the pooled vector is the column-wise maximum.

    Expected Outcome:
    - Every pooled entry is >= every row entry and equals one of them.
    """
    pooled = maxpool_over_rows(constant(m)).data

    assert np.all(pooled[None, :] >= m)
    np.testing.assert_array_equal(pooled, m.max(axis=0))


def test_maxpool_gradient_goes_to_lowest_argmax():
    """
    Test gradient routing with tied maxima.

    Expected Outcome:
    - Each column's gradient lands on the first row holding the maximum.
    """
    s = parameter([[1.0, 5.0], [1.0, 2.0], [0.0, 5.0]])
    with Tape() as tape:
        loss = sum_all(maxpool_over_rows(s))
    tape.backward(loss)

    np.testing.assert_array_equal(s.grad, [[1.0, 1.0], [0.0, 0.0], [0.0, 0.0]])


def test_maxpool_rejects_empty_sequence():
    """
    Test the empty-sequence contract.

    Expected Outcome:
    - EmptySequenceError for a 0 x l matrix.
    """
    with pytest.raises(EmptySequenceError):
        maxpool_over_rows(Tensor(np.zeros((0, 3))))


def test_dropout_eval_mode_is_identity():
    """
    Test that evaluation mode never touches the input.

    Expected Outcome:
    - The very same tensor object is returned.
    """
    m = constant([[1.0, 2.0]])
    assert dropout(m, 0.5, mode="eval") is m
    assert dropout(m, 0.0, mode="train", rng=0) is m


def test_dropout_train_mode_scales_survivors():
    """
    Test inverted dropout in training mode.

    Expected Outcome:
    - Every output entry is 0 or input / (1 - rate); same seed, same mask.
    """
    m = constant(np.ones((20, 20)))
    first = dropout(m, 0.25, mode="train", rng=np.random.default_rng(3)).data
    second = dropout(m, 0.25, mode="train", rng=np.random.default_rng(3)).data

    assert set(np.unique(first)) <= {0.0, 1.0 / 0.75}
    np.testing.assert_array_equal(first, second)
    assert 0.1 < np.mean(first == 0.0) < 0.4


def test_dropout_zeroed_fraction():
    """
    Test the dropout rate statistically under a fixed seed.

    Expected Outcome:
    - About 30% of 10 000 entries zeroed; survivors equal original / 0.7.
    """
    m = constant(np.full((100, 100), 2.0))
    out = dropout(m, 0.3, mode="train", rng=np.random.default_rng(11)).data

    assert abs(np.mean(out == 0.0) - 0.3) <= 0.02
    np.testing.assert_allclose(out[out != 0.0], 2.0 / 0.7)


def test_dropout_rejects_bad_rate():
    """
    Test the rate range.

    Expected Outcome:
    - ValueError for rate 1.0.
    """
    with pytest.raises(ValueError):
        dropout(constant([1.0]), 1.0)


def test_gather_rows_scatters_gradients():
    """
    Test embedding lookup gradients with repeated ids.

    Expected Outcome:
    - Repeated ids accumulate gradient into the same row.
    """
    table = parameter(np.arange(8.0).reshape(4, 2))
    with Tape() as tape:
        rows = gather_rows(table, [1, 3, 1])
        loss = sum_all(rows)
    tape.backward(loss)

    np.testing.assert_array_equal(rows.data, [[2.0, 3.0], [6.0, 7.0], [2.0, 3.0]])
    np.testing.assert_array_equal(table.grad, [[0, 0], [2, 2], [0, 0], [1, 1]])


def test_gather_rows_rejects_out_of_range():
    """
    Test id validation.

    Expected Outcome:
    - VocabularyError for an id equal to the row count.
    """
    with pytest.raises(VocabularyError):
        gather_rows(constant(np.zeros((4, 2))), [0, 4])


def test_concat_and_stack_rows_backward():
    """
    Test gradient splitting of concat and stack_rows.

    Expected Outcome:
    - Each input receives its own slice of the upstream gradient.
    """
    a, b = parameter([1.0, 2.0]), parameter([3.0])
    with Tape() as tape:
        loss = matmul(concat([a, b]), constant([10.0, 20.0, 30.0]))
    tape.backward(loss)
    np.testing.assert_array_equal(a.grad, [10.0, 20.0])
    np.testing.assert_array_equal(b.grad, [30.0])

    with pytest.raises(ShapeError):
        stack_rows([constant([1.0]), constant([1.0, 2.0])])


def test_cross_entropy_value_and_gradient():
    """
    Test the candidate cross-entropy.

    Expected Outcome:
    - Zero logits over 4 candidates give ln 4; gradient is softmax minus one-hot.
    """
    logits = parameter(np.zeros(4))
    with Tape() as tape:
        loss = cross_entropy(logits, 2)
    tape.backward(loss)

    assert abs(loss.item() - math.log(4)) < 1e-12
    np.testing.assert_allclose(logits.grad, [0.25, 0.25, -0.75, 0.25], atol=1e-15)
    np.testing.assert_allclose(candidate_softmax(logits), 0.25)


def test_cross_entropy_rejects_bad_target():
    """
    Test target validation.

    Expected Outcome:
    - IndexError for a target outside the logits.
    """
    with pytest.raises(IndexError):
        cross_entropy(constant([0.0, 1.0]), 2)
