// coralplus/plda.h

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

#ifndef CORALPLUS_PLDA_H_
#define CORALPLUS_PLDA_H_

#include "coralplus/data.h"
#include "coralplus/linalg.h"
#include "coralplus/metrics.h"
#include "coralplus/plda-model.h"

namespace coralplus {

/// phi_w eigenvalues are raised to at least this fraction of its largest.
inline constexpr double kWithinFloor = 1e-8;

/// Moment-based two-covariance training: mu is the sample mean, phi_b and
/// phi_w the between/within scatter of the labeled set.  Requires two or
/// more speakers and at least one speaker with two or more utterances.
PldaModel TrainPlda(const EmbeddingSet &set);

/// Precomputes everything that depends only on the model so that each
/// verification score costs O(d^2).
///
/// With x = phi1 - mu, y = phi2 - mu, C = phi_b + phi_w, the joint density
/// of (x, y) factors along u = (x + y)/sqrt(2) and v = (x - y)/sqrt(2), whose
/// covariances are C + phi_b and C - phi_b = phi_w.  The log-likelihood ratio
/// is therefore
///   -1/4 (x+y)'(C+phi_b)^-1(x+y) - 1/4 (x-y)' phi_w^-1 (x-y)
///   + 1/2 x' C^-1 x + 1/2 y' C^-1 y
///   - 1/2 [log|C+phi_b| + log|phi_w| - 2 log|C|].
class PldaScorer {
 public:
  explicit PldaScorer(const PldaModel &model);

  int dim() const { return static_cast<int>(mu_.size()); }
  double Score(const Vector &phi1, const Vector &phi2) const;

 private:
  Vector mu_;
  Matrix transform_;  // B^T with B^T phi_w B = I, B^T phi_b B = diag(s)
  Vector cross_;      // s / (1 + 2s)
  Vector self_;       // -s^2 / (2 (1 + s) (1 + 2s))
  double offset_;
};

/// Natural-log likelihood ratio of same-speaker vs different-speaker.
double ScorePair(const PldaModel &model, const Vector &phi1,
                 const Vector &phi2);

/// Scores every trial; enroll ids resolve against `enroll`, test ids against
/// `test`.  Output order follows `trials`, whatever `num_threads` is.
ScoreSet ScoreTrials(const PldaModel &model, const EmbeddingSet &enroll,
                     const EmbeddingSet &test, const TrialList &trials,
                     int num_threads = 1);

}  // namespace coralplus

#endif  // CORALPLUS_PLDA_H_
