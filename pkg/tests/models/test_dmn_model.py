"""
test_dmn_model.py

Unit tests for the assembled dual co-matching model.

Tests:
- End-to-end candidate probabilities against the scalar-loop reference in every variant.
- Seeded construction and snapshot / restore.
- Per-candidate traces and the dropout override.
- Precomputed-encoder models expose only matching parameters.
- The passage-question match is shared by all candidates and cancels exactly.

Author: FOX Techniques <ali.nabbi@fox-techniques.com>
"""

import numpy as np
import pytest

import oracles
from dual_comatch.encoder.precomputed import EmbeddingKey, PrecomputedStore, Role, write_precomputed
from dual_comatch.errors.exceptions import ShapeError
from dual_comatch.models.dmn_model import DualCoMatchModel
from dual_comatch.numerics.gradcheck import analytic_gradients
from dual_comatch.schemas.config_schema import MatchConfig


@pytest.mark.parametrize(
    "update",
    [
        {},
        {"attention_normalization": "literal"},
        {"direction": "unidirectional"},
        {"fusion": "concat"},
        {"use_qa_pair": False},
        {"share_pair_parameters": True},
    ],
)
def test_forward_matches_scalar_reference(small_cfg, tiny_vocab, cat_example, update):
    """
    Test probabilities and loss of a full example.

    Expected Outcome:
    - Agreement with the loop implementation within 1e-12.
    """
    cfg = small_cfg.model_copy(update=update)
    model = DualCoMatchModel.build_lookup(cfg, tiny_vocab, seed=3, zero_classifier=False)
    pairs = {name: oracles.pair_lists(getattr(model.params, name)) for name in ("pq", "pa", "qa")}

    scores = model.forward(cat_example)
    cs = [
        oracles.triplet(
            t.passage.data.tolist(),
            t.question.data.tolist(),
            t.answer.data.tolist(),
            pairs,
            attention=cfg.attention_normalization,
            direction=cfg.direction,
            fusion=cfg.fusion,
            use_qa=cfg.use_qa_pair,
        )
        for t in model.encoder.encode_example(cat_example)
    ]
    probs, loss = oracles.candidate_scores(cs, model.params.V.data.tolist(), cat_example.gold)

    np.testing.assert_allclose(scores.probs, probs, atol=1e-12)
    assert abs(scores.loss.item() - loss) < 1e-12


def test_build_is_seeded(small_cfg, tiny_vocab):
    """
    Test seeded initialization.

    Expected Outcome:
    - Equal seeds give equal parameters, different seeds do not.
    """
    first = DualCoMatchModel.build_lookup(small_cfg, tiny_vocab, seed=1).snapshot()
    second = DualCoMatchModel.build_lookup(small_cfg, tiny_vocab, seed=1).snapshot()
    other = DualCoMatchModel.build_lookup(small_cfg, tiny_vocab, seed=2).snapshot()

    assert all(np.array_equal(first[name], second[name]) for name in first)
    assert not np.array_equal(first["embeddings"], other["embeddings"])


def test_snapshot_and_restore(small_cfg, tiny_vocab):
    """
    Test the parameter copy used for best-epoch selection.

    Expected Outcome:
    - Restore brings back the snapshot values; a bad snapshot raises ShapeError.
    """
    model = DualCoMatchModel.build_lookup(small_cfg, tiny_vocab, seed=1)
    saved = model.snapshot()
    model.params.pq.W.data += 1.0

    model.restore(saved)

    np.testing.assert_array_equal(model.params.pq.W.data, saved["pq.W"])
    with pytest.raises(ShapeError):
        model.restore({name: value for name, value in saved.items() if name != "V"})


def test_traces_and_dropout_override(tiny_vocab, cat_example, rng):
    """
    Test per-candidate traces and the training dropout override.

    Expected Outcome:
    - One trace per candidate; training with dropout 0 equals evaluation.
    """
    cfg = MatchConfig(hidden_size=4, max_seq_len=16, matching_dropout=0.5)
    model = DualCoMatchModel.build_lookup(cfg, tiny_vocab, seed=2, zero_classifier=False)
    traces = []

    evaluated = model.forward(cat_example, traces=traces)
    trained = model.forward(cat_example, train=True, rng=rng, dropout=0.0)

    assert len(traces) == cat_example.num_candidates
    assert traces[0].pair("pq").gate is not None
    np.testing.assert_array_equal(trained.probs, evaluated.probs)


def test_predict_breaks_ties_to_lowest_index(small_cfg, tiny_vocab, cat_example):
    """
    Test chance-level predictions with the zero classifier.

    Expected Outcome:
    - Uniform probabilities and prediction 0.
    """
    model = DualCoMatchModel.build_lookup(small_cfg, tiny_vocab, seed=0)
    scores = model.predict(cat_example)

    np.testing.assert_allclose(scores.probs, 0.25)
    assert scores.prediction == 0


def test_precomputed_model(tmp_path, small_cfg, cat_example, rng):
    """
    Test a model on a frozen encoder.

    Expected Outcome:
    - Only matching parameters are listed; forward produces a distribution.
    """
    records = {
        EmbeddingKey(cat_example.id, Role.PASSAGE): rng.normal(size=(6, 4)),
        EmbeddingKey(cat_example.id, Role.QUESTION): rng.normal(size=(3, 4)),
    }
    for index in range(cat_example.num_candidates):
        records[EmbeddingKey(cat_example.id, Role.ANSWER, index)] = rng.normal(size=(2, 4))
    write_precomputed(tmp_path / "emb.dmne", records)

    model = DualCoMatchModel.build_precomputed(
        small_cfg, PrecomputedStore.open(tmp_path / "emb.dmne"), seed=0
    )

    assert "embeddings" not in model.named_parameters()
    assert model.vocab is None
    assert abs(model.predict(cat_example).probs.sum() - 1.0) < 1e-12


def test_hidden_size_mismatch(small_cfg, tiny_vocab):
    """
    Test the encoder and configuration consistency check.

    Expected Outcome:
    - ShapeError when the encoder width differs from the configured hidden size.
    """
    model = DualCoMatchModel.build_lookup(small_cfg, tiny_vocab, seed=0)
    with pytest.raises(ShapeError):
        DualCoMatchModel(model.encoder, model.params, small_cfg.model_copy(update={"hidden_size": 5}))


def test_passage_question_match_is_shared(small_cfg, tiny_vocab, cat_example):
    """
    Test that M^pq is matched once per example and cancels from the scores.

    Expected Outcome:
    - Every candidate sees the same M^pq tensor and trace.
    - Changing the p-q parameters leaves the loss bit-identical.
    - The analytic p-q gradients are zero up to rounding.
    """
    model = DualCoMatchModel.build_lookup(small_cfg, tiny_vocab, seed=4, zero_classifier=False)
    traces = []
    before = model.forward(cat_example, traces=traces).loss.item()

    assert all(trace.pair("pq") is traces[0].pair("pq") for trace in traces)

    model.params.pq.W.data += 0.7
    model.params.pq.b.data -= 0.3
    assert model.loss(cat_example).item() == before

    params = model.named_parameters()
    grads = analytic_gradients(lambda: model.loss(cat_example), params)
    for name in ("pq.W", "pq.W1", "pq.W2", "pq.W3", "pq.W4", "pq.b"):
        assert np.max(np.abs(grads[name])) < 1e-12
    assert np.max(np.abs(grads["V"][: small_cfg.hidden_size])) == 0.0
