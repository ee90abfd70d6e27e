// coralplus/plda.cc

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

#include "coralplus/plda.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "coralplus/error.h"

namespace coralplus {

PldaModel::PldaModel(Vector mu, SymMatrix phi_b, SymMatrix phi_w)
    : mu_(std::move(mu)), phi_b_(std::move(phi_b)), phi_w_(std::move(phi_w)) {
  if (phi_b_.dim() != mu_.size() || phi_w_.dim() != mu_.size())
    throw PreconditionError("PldaModel: mu has dim " +
                            std::to_string(mu_.size()) + " but phi_b is " +
                            std::to_string(phi_b_.dim()) + " and phi_w is " +
                            std::to_string(phi_w_.dim()));
}

namespace {

void CheckSpectrum(const SymMatrix &m, const char *name, bool strict) {
  EigenDecomposition ed;
  try {
    ed = Eigh(m, name);
  } catch (const ConvergenceError &e) {
    throw ModelInvalidError(e.what());
  }
  const double lmax = ed.values(0);
  const double lmin = ed.values(ed.values.size() - 1);
  if (strict) {
    if (!(lmax > 0.0) || !(lmin > 0.0))
      throw ModelInvalidError(std::string("PLDA model: ") + name +
                              " is not positive definite");
  } else if (lmin < -kPsdTolerance * std::max(lmax, 0.0) ||
             (lmax <= 0.0 && lmin < 0.0)) {
    throw ModelInvalidError(std::string("PLDA model: ") + name +
                            " is not positive semi-definite");
  }
}

}  // namespace

void PldaModel::Validate() const {
  if (!mu_.allFinite() || !phi_b_.matrix().allFinite() ||
      !phi_w_.matrix().allFinite())
    throw ModelInvalidError("PLDA model: non-finite parameters");
  CheckSpectrum(phi_w_, "phi_w", true);
  CheckSpectrum(phi_b_, "phi_b", false);
  CheckSpectrum(Total(), "total covariance", true);
}

PldaModel TrainPlda(const EmbeddingSet &set) {
  if (!set.labeled())
    throw InsufficientDataError("train_plda: training set must be labeled");
  std::map<std::string, int> counts;
  for (const auto &r : set.records()) counts[*r.speaker_id]++;
  if (counts.size() < 2)
    throw InsufficientDataError("train_plda: need at least 2 speakers");
  if (std::none_of(counts.begin(), counts.end(),
                   [](const auto &kv) { return kv.second >= 2; }))
    throw InsufficientDataError(
        "train_plda: need a speaker with at least 2 utterances");
  ScatterPair scatter = ComputeScatter(set);
  GaussianStats stats = ComputeStats(set);
  SymMatrix within =
      FloorEigenvalues(scatter.within, kWithinFloor, "within-class scatter");
  return PldaModel(std::move(stats.mean), std::move(scatter.between),
                   std::move(within));
}

PldaScorer::PldaScorer(const PldaModel &model) : mu_(model.mu()) {
  // In the basis where phi_w = I and phi_b = diag(s), the trial likelihood
  // factorizes into independent 2-D Gaussians, one per dimension.
  SimDiagResult sd;
  try {
    if (!(Eigh(model.phi_w(), "phi_w").values.minCoeff() > 0.0))
      throw ModelInvalidError("PLDA scoring: phi_w is not positive definite");
    sd = SimDiag(model.phi_w(), model.phi_b(), 0.0);
  } catch (const NumericalError &e) {
    if (dynamic_cast<const ModelInvalidError *>(&e)) throw;
    throw ModelInvalidError(std::string("PLDA scoring: ") + e.what());
  }
  const Eigen::Index d = sd.e.size();
  transform_ = sd.b.transpose();
  cross_.resize(d);
  self_.resize(d);
  offset_ = 0.0;
  for (Eigen::Index k = 0; k < d; k++) {
    const double s = sd.e(k);
    if (!(1.0 + 2.0 * s > 0.0))
      throw ModelInvalidError(
          "PLDA scoring: total covariance is not positive definite");
    cross_(k) = s / (1.0 + 2.0 * s);
    self_(k) = -0.5 * s * s / ((1.0 + s) * (1.0 + 2.0 * s));
    offset_ += 0.5 * std::log1p(s * s / (1.0 + 2.0 * s));
  }
}

double PldaScorer::Score(const Vector &phi1, const Vector &phi2) const {
  if (phi1.size() != mu_.size() || phi2.size() != mu_.size())
    throw PreconditionError("score_pair: vectors have dims " +
                            std::to_string(phi1.size()) + " and " +
                            std::to_string(phi2.size()) + ", model has " +
                            std::to_string(mu_.size()));
  const Vector u = transform_ * (phi1 - mu_);
  const Vector v = transform_ * (phi2 - mu_);
  double score = offset_;
  for (Eigen::Index k = 0; k < u.size(); k++)
    score += cross_(k) * u(k) * v(k) + self_(k) * (u(k) * u(k) + v(k) * v(k));
  return score;
}

double ScorePair(const PldaModel &model, const Vector &phi1,
                 const Vector &phi2) {
  return PldaScorer(model).Score(phi1, phi2);
}

ScoreSet ScoreTrials(const PldaModel &model, const EmbeddingSet &enroll,
                     const EmbeddingSet &test, const TrialList &trials,
                     int num_threads) {
  if (enroll.dim() != model.dim() || test.dim() != model.dim())
    throw PreconditionError("score_trials: embedding dim does not match model");
  std::vector<std::pair<const Vector *, const Vector *>> pairs;
  pairs.reserve(trials.size());
  for (size_t i = 0; i < trials.size(); i++) {
    const EmbeddingRecord *e = enroll.Find(trials[i].enroll_id);
    const EmbeddingRecord *t = test.Find(trials[i].test_id);
    if (e == nullptr || t == nullptr)
      throw ResolutionError(
          "trial line " + std::to_string(i + 1) + ": unknown " +
          (e == nullptr ? "enrollment id '" + trials[i].enroll_id
                        : "test id '" + trials[i].test_id) +
          "'");
    pairs.emplace_back(&e->vector, &t->vector);
  }
  const PldaScorer scorer(model);
  std::vector<double> values(pairs.size());
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; i++)
      values[i] = scorer.Score(*pairs[i].first, *pairs[i].second);
  };
  const size_t n_threads =
      std::clamp<size_t>(num_threads < 1 ? 1 : num_threads, 1,
                         std::max<size_t>(1, pairs.size()));
  if (n_threads == 1) {
    work(0, pairs.size());
  } else {
    std::vector<std::thread> threads;
    const size_t chunk = (pairs.size() + n_threads - 1) / n_threads;
    for (size_t b = 0; b < pairs.size(); b += chunk)
      threads.emplace_back(work, b, std::min(pairs.size(), b + chunk));
    for (auto &th : threads) th.join();
  }
  ScoreSet scores;
  scores.trials.reserve(trials.size());
  for (size_t i = 0; i < trials.size(); i++)
    scores.trials.push_back(
        {trials[i].enroll_id, trials[i].test_id, values[i], trials[i].target});
  return scores;
}

}  // namespace coralplus
