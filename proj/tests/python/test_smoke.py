"""Smoke tests for the coralplus Python bindings."""

import numpy as np
import pytest

import coralplus as cp


def test_eigh_two_by_two():
    values, vectors = cp.eigh(np.array([[2.0, 1.0], [1.0, 2.0]]))
    np.testing.assert_allclose(values, [3.0, 1.0], atol=1e-14)
    r = 1.0 / np.sqrt(2.0)
    np.testing.assert_allclose(vectors, [[r, r], [r, -r]], atol=1e-14)


def test_roots_and_simdiag():
    rng = np.random.default_rng(0)
    g = rng.standard_normal((6, 6))
    m = g @ g.T + 0.5 * np.eye(6)
    r = cp.sqrt_psd(m)
    np.testing.assert_allclose(r @ r, m, atol=1e-10)
    w = cp.inv_sqrt_psd(m)
    np.testing.assert_allclose(w @ m @ w, np.eye(6), atol=1e-10)
    psi = np.diag(np.arange(1.0, 7.0))
    b, b_inv, e = cp.simdiag(m, psi)
    np.testing.assert_allclose(b.T @ m @ b, np.eye(6), atol=1e-8)
    np.testing.assert_allclose(b.T @ psi @ b, np.diag(e), atol=1e-8)
    np.testing.assert_allclose(b @ b_inv, np.eye(6), atol=1e-8)


def test_plda_score_matches_numpy_dense_oracle():
    model = cp.PldaModel(np.zeros(2), np.diag([1.0, 0.0]), np.eye(2))
    x = np.array([1.0, 0.0])
    joint = np.array([[2.0, 1.0], [1.0, 2.0]])
    xy = np.array([1.0, 1.0])

    def logn(v, c):
        return -0.5 * (np.linalg.slogdet(c)[1] + v @ np.linalg.solve(c, v)
                       + len(v) * np.log(2 * np.pi))

    expected = logn(xy, joint) - 2 * logn(np.array([1.0]), np.array([[2.0]]))
    assert abs(model.score(x, x) - expected) < 1e-10
    assert abs(cp.score_pair(model, x, x) - expected) < 1e-10


def test_train_adapt_round_trip(tmp_path):
    cfg = cp.SynthConfig()
    cfg.dim = 8
    cfg.n_speakers_ood = 50
    cfg.utts_per_speaker_ood = 5
    cfg.n_unlabeled_in = 200
    data = cp.generate(cfg)
    model = cp.train_plda(data["ood_vectors"], data["ood_speakers"])
    model.validate()
    path = str(tmp_path / "plda-model")
    model.save(path)
    back = cp.PldaModel.load(path)
    assert np.array_equal(back.phi_b, model.phi_b)
    assert np.array_equal(back.mu, model.mu)

    unl = data["in_unlabeled"]
    c_in = np.cov(unl.T, bias=True)
    same, report = cp.coral_plus(model, c_in, unl.mean(0), beta=0.0, gamma=0.0)
    np.testing.assert_allclose(same.phi_b, model.phi_b, atol=1e-12)
    adapted, report = cp.coral_plus(model, c_in, unl.mean(0))
    adapted.validate()
    assert len(report["between_e_minus_one"]) == 8
    # Regularized updates never shrink a covariance.
    assert np.linalg.eigvalsh(adapted.phi_w - model.phi_w).min() > -1e-10

    a = cp.fit_coral(model.total(), c_in)
    np.testing.assert_allclose(a @ model.total() @ a.T, c_in, atol=1e-8)
    mean, proj = cp.fit_lda(data["ood_vectors"], data["ood_speakers"], 4)
    assert proj.shape == (4, 8)


def test_metrics():
    scores = [2.0, 3.0, 1.0, 2.5]
    labels = [True, True, False, False]
    assert cp.compute_eer(scores, labels) == 0.5
    assert cp.compute_min_dcf([2, 3, 0, 1], labels) == 0.0


def test_errors_are_typed():
    with pytest.raises(cp.PreconditionError):
        cp.compute_eer([1.0, 2.0], [True, True])
    with pytest.raises(cp.NumericalError):
        cp.PldaModel(np.zeros(2), np.eye(2), np.zeros((2, 2))).validate()
    with pytest.raises(cp.Error):
        cp.PldaModel.load("/nonexistent/plda-model")


def test_experiment_rows():
    cfg = cp.SynthConfig()
    cfg.dim = 12
    cfg.n_speakers_ood = 40
    cfg.utts_per_speaker_ood = 5
    cfg.n_unlabeled_in = 300
    cfg.n_trial_speakers = 15
    cfg.utts_per_trial_speaker = 4
    rows = cp.run_experiment(cfg, 8)
    assert [r[0] for r in rows] == ["OOD PLDA", "CORAL PLDA", "CORAL+ PLDA",
                                    "w/o reg"]
    assert all(0.0 <= r[1] <= 1.0 for r in rows)
