// coralplus/synth.cc

// Copyright 2026  The coralplus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "coralplus/synth.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "coralplus/error.h"

namespace coralplus {

namespace {

// Between-class spectrum b_k = kBetweenScale * kBetweenDecay^k: speaker
// information concentrates in a few directions.  Within-class spectrum
// w_k = kWithinScale * (0.5 + U(0,1)).  The out-of-domain mean is drawn at
// unit scale, so the domain shift M also moves the mean (M - I) mu on top of
// the explicit offset.
constexpr double kBetweenScale = 0.2;
constexpr double kBetweenDecay = 0.4;
constexpr double kWithinScale = 0.01;
constexpr double kMeanScale = 1.0;

std::string Id(const char *fmt, int a, int b = 0) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, a, b);
  return buf;
}

Matrix GaussianMatrix(GaussianRng *rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; j++)
    for (int i = 0; i < rows; i++) m(i, j) = rng->Normal();
  return m;
}

Vector GaussianVector(GaussianRng *rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; i++) v(i) = rng->Normal();
  return v;
}

// Modified Gram-Schmidt on the columns.
Matrix Orthonormalize(Matrix m) {
  for (Eigen::Index j = 0; j < m.cols(); j++) {
    for (Eigen::Index k = 0; k < j; k++)
      m.col(j) -= m.col(k).dot(m.col(j)) * m.col(k);
    const double norm = m.col(j).norm();
    if (!(norm > 1e-12))
      throw NumericalError("synth: random basis is rank deficient");
    m.col(j) /= norm;
  }
  return m;
}

}  // namespace

void SynthConfig::Validate() const {
  if (dim < 2) throw PreconditionError("synth: dim must be at least 2");
  if (n_speakers_ood < 1 || utts_per_speaker_ood < 1 || n_unlabeled_in < 1 ||
      n_trial_speakers < 1 || utts_per_trial_speaker < 1)
    throw PreconditionError("synth: all counts must be positive");
  if (utts_per_trial_speaker < 2)
    throw PreconditionError(
        "synth: trial speakers need at least 2 utterances (enroll + test)");
  if (!(domain_shift_scale >= 0.0) || !(mean_shift_scale >= 0.0))
    throw PreconditionError("synth: shift scales must be non-negative");
}

double GaussianRng::Uniform() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianRng::Normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

size_t GaussianRng::Index(size_t n) {
  size_t i = static_cast<size_t>(Uniform() * static_cast<double>(n));
  return i < n ? i : n - 1;
}

SynthData Generate(const SynthConfig &cfg) {
  cfg.Validate();
  const int dim = cfg.dim;
  GaussianRng rng(cfg.seed);

  const Matrix basis_b = Orthonormalize(GaussianMatrix(&rng, dim, dim));
  Vector spec_b(dim);
  for (int k = 0; k < dim; k++)
    spec_b(k) = kBetweenScale * std::pow(kBetweenDecay, k);
  const Matrix basis_w = Orthonormalize(GaussianMatrix(&rng, dim, dim));
  Vector spec_w(dim);
  for (int k = 0; k < dim; k++) spec_w(k) = kWithinScale * (0.5 + rng.Uniform());
  const Vector mu = kMeanScale * GaussianVector(&rng, dim);

  Matrix r = GaussianMatrix(&rng, dim, dim);
  const double r_norm =
      std::sqrt(Eigh(SymMatrix(r.transpose() * r), "R^T R").values(0));
  r /= r_norm;
  const Matrix shift =
      Matrix::Identity(dim, dim) + cfg.domain_shift_scale * r;
  Vector direction = GaussianVector(&rng, dim);
  direction.normalize();
  const Vector offset = cfg.mean_shift_scale * direction;

  // Square-root factors of the two covariances.
  const Matrix root_b = basis_b * spec_b.cwiseSqrt().asDiagonal();
  const Matrix root_w = basis_w * spec_w.cwiseSqrt().asDiagonal();

  SynthTruth truth{
      mu, SymMatrix(basis_b * spec_b.asDiagonal() * basis_b.transpose()),
      SymMatrix(basis_w * spec_w.asDiagonal() * basis_w.transpose()), shift,
      offset};

  EmbeddingSet ood(dim);
  for (int s = 0; s < cfg.n_speakers_ood; s++) {
    const std::string spk = Id("ood_s%04d", s);
    const Vector h = root_b * GaussianVector(&rng, dim);
    for (int u = 0; u < cfg.utts_per_speaker_ood; u++) {
      Vector x = root_w * GaussianVector(&rng, dim);
      ood.Add(Id("ood_s%04d_u%03d", s, u), spk, mu + h + x);
    }
  }

  auto to_in_domain = [&](const Vector &phi) -> Vector {
    return shift * phi + offset;
  };

  EmbeddingSet unlabeled(dim);
  for (int i = 0; i < cfg.n_unlabeled_in; i++) {
    Vector h = root_b * GaussianVector(&rng, dim);
    Vector x = root_w * GaussianVector(&rng, dim);
    unlabeled.Add(Id("ind_u%06d", i), std::nullopt,
                  to_in_domain(mu + h + x));
  }

  EmbeddingSet enroll(dim), test(dim);
  std::vector<std::pair<size_t, int>> enroll_index, test_index;  // speaker
  const int n_enroll_per = (cfg.utts_per_trial_speaker + 1) / 2;
  for (int s = 0; s < cfg.n_trial_speakers; s++) {
    const std::string spk = Id("ind_s%04d", s);
    const Vector h = root_b * GaussianVector(&rng, dim);
    for (int u = 0; u < cfg.utts_per_trial_speaker; u++) {
      Vector x = root_w * GaussianVector(&rng, dim);
      Vector phi = to_in_domain(mu + h + x);
      if (u < n_enroll_per) {
        enroll_index.emplace_back(enroll.size(), s);
        enroll.Add(Id("ind_s%04d_u%03d", s, u), spk, std::move(phi));
      } else {
        test_index.emplace_back(test.size(), s);
        test.Add(Id("ind_s%04d_u%03d", s, u), spk, std::move(phi));
      }
    }
  }

  TrialList trials;
  for (const auto &[ei, es] : enroll_index)
    for (const auto &[ti, ts] : test_index)
      if (es == ts)
        trials.push_back({enroll[ei].utt_id, test[ti].utt_id, true});
  const size_t n_targets = trials.size();
  const size_t available =
      enroll.size() * test.size() - n_targets;
  const size_t n_nontargets = std::min(n_targets, available);
  std::set<std::pair<size_t, size_t>> chosen;
  while (chosen.size() < n_nontargets) {
    const size_t e = rng.Index(enroll.size());
    const size_t t = rng.Index(test.size());
    if (enroll_index[e].second == test_index[t].second) continue;
    if (!chosen.emplace(e, t).second) continue;
    trials.push_back({enroll[e].utt_id, test[t].utt_id, false});
  }

  return SynthData{std::move(ood),   std::move(unlabeled), std::move(enroll),
                   std::move(test),  std::move(trials),    std::move(truth)};
}

}  // namespace coralplus
