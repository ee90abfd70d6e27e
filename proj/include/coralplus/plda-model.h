// coralplus/plda-model.h

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

#ifndef CORALPLUS_PLDA_MODEL_H_
#define CORALPLUS_PLDA_MODEL_H_

#include "coralplus/linalg.h"

namespace coralplus {

/// Two-covariance PLDA model: embeddings are Gaussian with mean `mu`,
/// speaker (between-class) covariance `phi_b` and within-class covariance
/// `phi_w`.  Loading matrices are never materialized.
class PldaModel {
 public:
  PldaModel(Vector mu, SymMatrix phi_b, SymMatrix phi_w);

  int dim() const { return static_cast<int>(mu_.size()); }
  const Vector &mu() const { return mu_; }
  const SymMatrix &phi_b() const { return phi_b_; }
  const SymMatrix &phi_w() const { return phi_w_; }

  /// phi_b + phi_w
  SymMatrix Total() const { return phi_b_ + phi_w_; }

  /// Throws ModelInvalidError unless phi_w and the total are SPD and phi_b is
  /// PSD (up to kPsdTolerance relative roundoff).
  void Validate() const;

 private:
  Vector mu_;
  SymMatrix phi_b_;
  SymMatrix phi_w_;
};

}  // namespace coralplus

#endif  // CORALPLUS_PLDA_MODEL_H_
