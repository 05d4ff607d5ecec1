"""LSTM/GRU forward passes, dense head, and BPTT gradients against finite differences."""

import math

import numpy as np
import pytest

from forecaster.errors import ArgumentError, ShapeError
from forecaster.model_engine import (
    GRU_GATES,
    LSTM_GATES,
    DenseParams,
    GateParams,
    GruParams,
    LstmParams,
    ModelState,
    backward,
    dense_forward,
    gru_forward,
    init_model_state,
    lstm_forward,
)
from forecaster.numkit import Matrix, Rng, identity, zeros

EPS = 1e-5


def _zero_gate(units: int, **overrides) -> GateParams:
    parts = {"W": zeros(units, 1), "U": zeros(units, units), "b": zeros(units, 1)}
    parts.update({k: Matrix([[v]] if units == 1 else v) for k, v in overrides.items()})
    return GateParams(**parts)


def _zero_lstm(units: int) -> LstmParams:
    return LstmParams({g: _zero_gate(units) for g in LSTM_GATES})


def _zero_gru(units: int) -> GruParams:
    return GruParams({g: _zero_gate(units) for g in GRU_GATES})


def _randomized(kind: str, seed: int, units: int = 4, window: int = 5, horizon: int = 2) -> ModelState:
    """Every parameter (biases included) drawn uniformly so no gradient is trivially zero."""
    rng = Rng(seed)
    state = init_model_state(kind, units, window, horizon, rng)
    state.set_params({k: rng.uniform(-0.8, 0.8, *m.shape) for k, m in state.named_params().items()})
    return state


def _loss(state: ModelState, window: np.ndarray, target: np.ndarray) -> float:
    pred = state.forward(window).values[:, 0]
    return float(np.mean((pred - target) ** 2))


def _finite_difference(state: ModelState, window: np.ndarray, target: np.ndarray):
    base = state.named_params()
    numeric = {}
    for name, m in base.items():
        p = m.to_numpy()
        g = np.zeros_like(p)
        for idx in np.ndindex(p.shape):
            bumped = []
            for delta in (EPS, -EPS):
                q = p.copy()
                q[idx] += delta
                state.set_params({**base, name: Matrix(q)})
                bumped.append(_loss(state, window, target))
            g[idx] = (bumped[0] - bumped[1]) / (2 * EPS)
        numeric[name] = g
    state.set_params(base)
    return numeric


class TestLstmForward:
    def test_zero_parameters_give_zero_state(self):
        hidden, cell, h_w = lstm_forward(_zero_lstm(3), [0.3, -1.2, 4.0, 0.7])
        assert h_w == zeros(3, 1)
        assert all(c == zeros(3, 1) for c in cell)
        assert len(hidden) == 5

    def test_saturated_gates_copy_squashed_input(self):
        params = LstmParams(
            {
                "input": _zero_gate(1, b=50.0),
                "forget": _zero_gate(1, b=-50.0),
                "output": _zero_gate(1, b=50.0),
                "candidate": _zero_gate(1, W=1.0),
            }
        )
        window = [0.2, -0.5, 0.9, 0.1]
        hidden, _, _ = lstm_forward(params, window)
        for x, h in zip(window, hidden[1:]):
            assert h[0, 0] == pytest.approx(math.tanh(math.tanh(x)), abs=1e-12)

    def test_wrong_window_length(self):
        with pytest.raises(ShapeError):
            lstm_forward(_zero_lstm(2), [0.1, 0.2, 0.3, 0.4], window_len=5)

    def test_hidden_bounded(self):
        state = _randomized("lstm", 3, units=6, window=8)
        hidden, _, _ = lstm_forward(state.cell, Rng(4).uniform(-3, 3, 1, 8).data)
        assert all(np.abs(h.values).max() < 1 for h in hidden)

    def test_forward_is_deterministic(self):
        state = _randomized("lstm", 11)
        window = [0.1, 0.4, 0.2, 0.8, 0.5]
        assert state.forward(window) == state.forward(window)


class TestGruForward:
    def test_zero_parameters_give_zero_state(self):
        hidden, h_w = gru_forward(_zero_gru(3), [0.3, -1.2, 4.0])
        assert h_w == zeros(3, 1)
        assert len(hidden) == 4

    def test_closed_update_gate_keeps_initial_state(self):
        params = GruParams(
            {
                "update": _zero_gate(1, b=50.0),
                "reset": _zero_gate(1),
                "candidate": _zero_gate(1, W=3.0),
            }
        )
        _, h_w = gru_forward(params, [0.9, -0.9, 0.5, 1.0])
        assert h_w[0, 0] == pytest.approx(0.0, abs=1e-12)

    def test_wrong_window_length(self):
        with pytest.raises(ShapeError):
            gru_forward(_zero_gru(2), [0.1, 0.2], window_len=3)

    def test_hidden_bounded(self):
        state = _randomized("gru", 3, units=6, window=8)
        hidden, _ = gru_forward(state.cell, Rng(4).uniform(-3, 3, 1, 8).data)
        assert all(np.abs(h.values).max() <= 1 for h in hidden)


class TestDense:
    def test_bias_passthrough(self):
        head = DenseParams(W=zeros(2, 3), b=Matrix([[0.3], [0.7]]))
        np.testing.assert_array_equal(dense_forward(head, [0.5, -0.2, 0.9]).data, [0.3, 0.7])

    def test_identity_weights(self):
        head = DenseParams(W=identity(3), b=zeros(3, 1))
        np.testing.assert_array_equal(dense_forward(head, [0.5, -0.2, 0.9]).data, [0.5, -0.2, 0.9])

    def test_matches_loop(self, rng):
        W, b, h = rng.uniform(-1, 1, 4, 6), rng.uniform(-1, 1, 4, 1), rng.uniform(-1, 1, 6, 1)
        expected = [sum(W[i, j] * h[j, 0] for j in range(6)) + b[i, 0] for i in range(4)]
        np.testing.assert_allclose(dense_forward(DenseParams(W=W, b=b), h).data, expected, rtol=1e-14, atol=1e-15)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            dense_forward(DenseParams(W=zeros(2, 3), b=zeros(2, 1)), [1.0, 2.0])


class TestBackward:
    def _constant_head(self, kind: str, bias):
        state = init_model_state(kind, 3, 4, len(bias), Rng(1))
        named = state.named_params()
        named["head.W"] = zeros(len(bias), 3)
        named["head.b"] = Matrix([[v] for v in bias])
        state.set_params(named)
        return state

    def test_perfect_prediction(self):
        state = self._constant_head("lstm", [0.25, 0.75])
        loss = backward(state, [0.1, 0.2, 0.3, 0.4], [0.25, 0.75])
        assert loss == 0.0
        assert state.grads["head.b"] == zeros(2, 1)

    def test_single_step_loss(self):
        state = self._constant_head("gru", [0.8])
        assert backward(state, [0.1, 0.2, 0.3, 0.4], [0.5]) == pytest.approx(0.09, abs=1e-15)

    def test_target_length_checked(self):
        state = self._constant_head("lstm", [0.1, 0.2])
        with pytest.raises(ShapeError):
            backward(state, [0.1, 0.2, 0.3, 0.4], [0.5])

    def test_gradient_buffers_mirror_parameters(self):
        state = _randomized("gru", 2)
        backward(state, [0.1, 0.2, 0.3, 0.4, 0.5], [0.3, 0.6])
        assert {k: g.shape for k, g in state.grads.items()} == {k: m.shape for k, m in state.named_params().items()}

    def test_overwrite_and_accumulate(self):
        state = _randomized("lstm", 5)
        window, target = [0.1, 0.3, 0.2, 0.6, 0.4], [0.5, 0.1]
        backward(state, window, target)
        once = {k: g.to_numpy() for k, g in state.grads.items()}
        backward(state, window, target)
        for k, g in state.grads.items():
            np.testing.assert_array_equal(g.values, once[k])
        backward(state, window, target, accumulate=True)
        for k, g in state.grads.items():
            np.testing.assert_allclose(g.values, 2 * once[k], rtol=1e-15, atol=0)

    @pytest.mark.parametrize("kind", ["lstm", "gru"])
    def test_batch_gradient_is_mean_of_samples(self, kind):
        state = _randomized(kind, 8)
        rng = Rng(80)
        windows = rng.uniform(0, 1, 5, 3)
        targets = rng.uniform(0, 1, 2, 3)
        batch_loss = state.backward_batch(windows, targets)
        batch_grads = {k: g.to_numpy() for k, g in state.grads.items()}

        losses, per_sample = [], []
        for j in range(3):
            losses.append(backward(state, windows.values[:, j], targets.values[:, j]))
            per_sample.append({k: g.to_numpy() for k, g in state.grads.items()})
        assert batch_loss == pytest.approx(np.mean(losses), rel=1e-12)
        for k, g in batch_grads.items():
            np.testing.assert_allclose(g, np.mean([s[k] for s in per_sample], axis=0), rtol=1e-10, atol=1e-14)

    @pytest.mark.parametrize("kind", ["lstm", "gru"])
    @pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
    def test_gradients_match_finite_differences(self, kind, seed):
        state = _randomized(kind, seed)
        data = Rng(1000 + seed)
        window, target = data.random(5), data.random(2)

        backward(state, window, target)
        analytic = {k: g.to_numpy() for k, g in state.grads.items()}
        numeric = _finite_difference(state, window, target)

        for name, a in analytic.items():
            b = numeric[name]
            # entries that are zero up to rounding get an absolute floor
            denom = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-6)
            rel = np.abs(a - b) / denom
            assert rel.max() < 1e-4, f"{kind} seed {seed}: {name} max relative error {rel.max():.3e}"


class TestInit:
    @pytest.mark.parametrize("kind", ["lstm", "gru"])
    def test_scaled_uniform_weights_zero_biases(self, kind):
        state = init_model_state(kind, 16, 10, 3, Rng(0))
        bound = 1 / math.sqrt(16)
        for name, m in state.named_params().items():
            if name.endswith(".b"):
                assert m == zeros(*m.shape)
            else:
                assert np.abs(m.values).max() <= bound
        assert state.units == 16 and state.horizon == 3 and state.window == 10

    def test_same_seed_same_parameters(self):
        a = init_model_state("gru", 5, 4, 2, Rng(3)).named_params()
        b = init_model_state("gru", 5, 4, 2, Rng(3)).named_params()
        assert all(a[k] == b[k] for k in a)

    def test_unknown_kind(self):
        with pytest.raises(ArgumentError):
            init_model_state("rnn", 4, 4, 1, Rng(0))

    def test_predict_rows_are_windows(self):
        state = _randomized("lstm", 6)
        windows = Rng(60).uniform(0, 1, 7, 5).values
        preds = state.predict(windows)
        assert preds.shape == (7, 2)
        np.testing.assert_allclose(preds[3], state.forward(windows[3]).data, rtol=1e-12)
