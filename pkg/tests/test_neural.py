import numpy as np
import pytest

from heartml import DenseNetworkClassifier, epoch_sweep
from heartml.neural import (
    backprop,
    bce_loss,
    forward_pass,
    init_network,
    predict_network,
    sgd_train,
)

from _oracles import numeric_gradients


def rel_error(a, b):
    return abs(a - b) / (abs(a) + abs(b) + 1e-8)


class TestInit:
    def test_shapes_for_13_8_5_1(self):
        w = init_network([13, 8, 5, 1], seed=0)
        assert [(m.shape, b.shape) for m, b in w] == [
            ((13, 8), (8,)),
            ((8, 5), (5,)),
            ((5, 1), (1,)),
        ]
        assert all((b == 0).all() for _, b in w)

    def test_deterministic(self):
        a = init_network([13, 8, 5, 1], seed=3)
        b = init_network([13, 8, 5, 1], seed=3)
        for (wa, ba), (wb, bb) in zip(a, b):
            assert np.array_equal(wa, wb) and np.array_equal(ba, bb)

    def test_glorot_bounds_over_many_seeds(self):
        sizes = [13, 8, 5, 1]
        for seed in range(30):
            for k, (w, _) in enumerate(init_network(sizes, seed=seed)):
                bound = np.sqrt(6.0 / (sizes[k] + sizes[k + 1]))
                assert np.abs(w).max() <= bound

    def test_invalid_spec_rejected(self):
        with pytest.raises(ValueError):
            init_network([13], seed=0)
        with pytest.raises(ValueError):
            init_network([13, 8, 2], seed=0)  # output must be a single unit


class TestForward:
    def test_zero_weights_output_half(self):
        w = [(np.zeros((4, 3)), np.zeros(3)), (np.zeros((3, 1)), np.zeros(1))]
        assert predict_network(w, np.ones((5, 4))) == pytest.approx(np.full(5, 0.5))

    def test_relu_behaviour_in_hidden_layer(self):
        w = [(np.array([[1.0, 1.0]]), np.array([-3.0, 2.0])), (np.eye(2)[:, :1], np.zeros(1))]
        acts = forward_pass(w, np.array([[0.0]]))
        assert acts[1][0] == pytest.approx([0.0, 2.0])  # relu(-3)=0, relu(2)=2

    def test_hand_built_two_input_net(self):
        w = [(np.array([[1.0], [1.0]]), np.zeros(1))]
        out = predict_network(w, np.array([[0.5, 0.5]]))
        assert out[0] == pytest.approx(1 / (1 + np.exp(-1.0)))
        assert out[0] == pytest.approx(0.7310585786300049)

    def test_output_strictly_inside_unit_interval(self):
        rng = np.random.default_rng(4)
        w = init_network([13, 8, 5, 1], seed=4)
        out = predict_network(w, rng.normal(scale=50.0, size=(200, 13)))
        assert (out > 0.0).all() and (out < 1.0).all()

    def test_dimension_mismatch(self):
        w = init_network([13, 8, 5, 1], seed=0)
        with pytest.raises(ValueError):
            predict_network(w, np.zeros((2, 12)))


class TestBceLoss:
    def test_perfect_prediction_vanishes(self):
        y = np.array([1.0, 0.0, 1.0])
        assert bce_loss(y, y) <= 1e-6

    def test_half_everywhere_is_log_two(self):
        assert bce_loss([0.5] * 4, [1, 0, 1, 0]) == pytest.approx(np.log(2.0))

    def test_non_negative_everywhere(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            p = rng.random(12)
            y = rng.integers(0, 2, 12)
            assert bce_loss(p, y) >= 0.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            bce_loss([0.5, 0.5], [1.0])


def draw_gradient_instance(trial):
    """Random (weights, batch) pair with no relu pre-activation near the kink.

    Central differences straddle the relu non-differentiability when a
    pre-activation sits within h of zero, so such instances are redrawn.
    """
    rng = np.random.default_rng(1000 + trial)
    sizes = [5, 4, 3, 1] if trial % 2 == 0 else [13, 8, 5, 1]
    while True:
        w = init_network(sizes, seed=int(rng.integers(2**31)))
        x = rng.uniform(0.0, 1.0, size=(6, sizes[0]))
        y = rng.integers(0, 2, 6).astype(float)
        a = x
        clear = True
        for wk, bk in w[:-1]:
            z = a @ wk + bk
            clear &= bool((np.abs(z) > 1e-4).all())
            a = np.maximum(z, 0.0)
        if clear:
            return w, x, y


class TestBackprop:
    def test_matches_central_finite_differences(self):
        for trial in range(50):
            w, x, y = draw_gradient_instance(trial)
            analytic = backprop(w, x, y)

            def loss_fn(weights):
                return bce_loss(predict_network(weights, x), y)

            numeric = numeric_gradients(loss_fn, w, h=1e-5)
            worst = 0.0
            for (gw, gb), (nw, nb) in zip(analytic, numeric):
                for a, n in ((gw, nw), (gb, nb)):
                    err = np.abs(a - n) / (np.abs(a) + np.abs(n) + 1e-8)
                    worst = max(worst, float(err.max()))
            assert worst < 1e-4

    def test_output_bias_gradient_is_mean_residual(self):
        w = init_network([4, 3, 1], seed=9)
        rng = np.random.default_rng(9)
        x = rng.uniform(size=(8, 4))
        y = rng.integers(0, 2, 8).astype(float)
        grads = backprop(w, x, y)
        p = predict_network(w, x)
        assert grads[-1][1][0] == pytest.approx(np.mean(p - y), abs=1e-12)

    def test_duplicated_sample_equals_single_sample(self):
        w = init_network([5, 4, 1], seed=10)
        x = np.random.default_rng(10).uniform(size=(1, 5))
        y = np.array([1.0])
        single = backprop(w, x, y)
        batch = backprop(w, np.repeat(x, 8, axis=0), np.repeat(y, 8))
        for (gw, gb), (hw, hb) in zip(single, batch):
            assert gw == pytest.approx(hw, abs=1e-15)
            assert gb == pytest.approx(hb, abs=1e-15)


class TestSgdTrain:
    def test_zero_epochs_is_identity(self):
        w = init_network([4, 3, 1], seed=1)
        x = np.random.default_rng(1).uniform(size=(10, 4))
        y = np.random.default_rng(2).integers(0, 2, 10)
        out, history = sgd_train(w, x, y, epochs=0, batch_size=4, learning_rate=0.1)
        assert history.loss == [] and history.accuracy == []
        for (wa, ba), (wb, bb) in zip(w, out):
            assert np.array_equal(wa, wb) and np.array_equal(ba, bb)

    def test_zero_learning_rate_keeps_weights(self):
        w = init_network([4, 3, 1], seed=2)
        x = np.random.default_rng(3).uniform(size=(10, 4))
        y = np.random.default_rng(4).integers(0, 2, 10)
        out, _ = sgd_train(w, x, y, epochs=5, batch_size=3, learning_rate=0.0)
        for (wa, ba), (wb, bb) in zip(w, out):
            assert np.array_equal(wa, wb) and np.array_equal(ba, bb)

    def test_separable_toy_set_fits_perfectly(self):
        rng = np.random.default_rng(5)
        x0 = rng.uniform(0.0, 0.3, size=(20, 2))
        x1 = rng.uniform(0.7, 1.0, size=(20, 2))
        x = np.vstack([x0, x1])
        y = np.array([0] * 20 + [1] * 20)
        clf = DenseNetworkClassifier(
            hidden_layer_sizes=(8, 5), epochs=500, batch_size=8,
            learning_rate=0.05, random_state=0,
        ).fit(x, y)
        assert (clf.predict(x) == y).all()

    def test_full_batch_small_step_does_not_increase_loss(self):
        w = init_network([6, 4, 1], seed=11)
        rng = np.random.default_rng(11)
        x = rng.uniform(size=(30, 6))
        y = rng.integers(0, 2, 30)
        before = bce_loss(predict_network(w, x), y)
        out, _ = sgd_train(w, x, y, epochs=1, batch_size=30, learning_rate=1e-3, shuffle=False)
        after = bce_loss(predict_network(out, x), y)
        assert after <= before

    def test_bitwise_training_determinism(self):
        x = np.random.default_rng(12).uniform(size=(25, 5))
        y = np.random.default_rng(13).integers(0, 2, 25)
        runs = []
        for _ in range(2):
            w = init_network([5, 4, 1], seed=7)
            out, _ = sgd_train(w, x, y, epochs=20, batch_size=4, learning_rate=0.05, seed=7)
            runs.append(out)
        for (wa, ba), (wb, bb) in zip(*runs):
            assert np.array_equal(wa, wb) and np.array_equal(ba, bb)

    def test_invalid_config(self):
        w = init_network([4, 3, 1], seed=0)
        x, y = np.zeros((4, 4)), np.zeros(4)
        with pytest.raises(ValueError):
            sgd_train(w, x, y, epochs=-1, batch_size=4, learning_rate=0.1)
        with pytest.raises(ValueError):
            sgd_train(w, x, y, epochs=1, batch_size=0, learning_rate=0.1)


class TestEpochSweep:
    @pytest.fixture()
    def splits(self):
        rng = np.random.default_rng(20)
        x = rng.uniform(size=(60, 13))
        y = (x[:, 0] + x[:, 1] > 1.0).astype(int)
        return x[:40], y[:40], x[40:], y[40:]

    def test_single_entry_single_row(self, splits):
        rows = epoch_sweep(*splits, [10], seed=1)
        assert len(rows) == 1 and rows[0]["epochs"] == 10

    def test_reproducible_and_sorted(self, splits):
        a = epoch_sweep(*splits, [25, 10, 50], seed=2)
        b = epoch_sweep(*splits, [10, 25, 50], seed=2)
        assert a == b
        assert [r["epochs"] for r in a] == [10, 25, 50]

    def test_default_list_contains_operating_point(self):
        from heartml.neural import DEFAULT_EPOCH_LIST

        assert 350 in DEFAULT_EPOCH_LIST

    def test_empty_list_rejected(self, splits):
        with pytest.raises(ValueError):
            epoch_sweep(*splits, [])
