// coralplus/adapt.h

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

#ifndef CORALPLUS_ADAPT_H_
#define CORALPLUS_ADAPT_H_

#include <ostream>
#include <vector>

#include "coralplus/data.h"
#include "coralplus/linalg.h"
#include "coralplus/plda-model.h"

namespace coralplus {

/// Correlation alignment: a = C_in^{1/2} C_out^{-1/2} (both ZCA roots).
/// Vectors map as phi' = a phi and covariances as a Phi a^T, so that
/// a C_out a^T = C_in.
struct CoralTransform {
  int dim;
  Matrix a;
  SymMatrix c_out_sqrt_inv;
  SymMatrix c_in_sqrt;

  Vector Apply(const Vector &phi) const;
};

struct AdaptConfig {
  double beta = 0.8;   // between-class adaptation weight, in [0, 1]
  double gamma = 0.8;  // within-class adaptation weight, in [0, 1]
  bool regularize = true;
  double eig_floor = kDefaultEigFloor;
  bool recenter = true;

  void Validate() const;
};

/// Values of e - 1 with |e - 1| at most this are treated as zero when
/// counting clipped dimensions.
inline constexpr double kUnitTolerance = 1e-10;

/// Per-dimension view of the simultaneously diagonalized adaptation.
/// e_minus_one values are sorted in descending order.
struct AdaptationReport {
  std::vector<double> between_e_minus_one;
  std::vector<double> within_e_minus_one;
  // Entries with e < 1 are clipped only when the update is regularized.
  bool regularized = true;
  int between_clipped = 0;
  int within_clipped = 0;
};

CoralTransform FitCoral(const SymMatrix &c_out, const SymMatrix &c_in,
                        double floor = kDefaultEigFloor);

EmbeddingSet CoralApply(const CoralTransform &t, const EmbeddingSet &set);

/// a * phi * a^T: the covariance of the transformed vectors.
SymMatrix TransportCov(const CoralTransform &t, const SymMatrix &phi);

/// Model-space CORAL+.  For each of (phi_b, beta) and (phi_w, gamma), with
/// A fitted from the model total to `c_in`, simultaneously diagonalize
/// (Phi, A Phi A^T) -> (B, E) and set
///   Phi+ = Phi + kappa * B^-T D B^-1,
/// D = max(E - I, 0) when regularizing, E - I otherwise.  phi_w+ is floored
/// to stay SPD.  The mean becomes `mu_in` when cfg.recenter is set.
/// When `report` is non-null it receives the diagnostics.
PldaModel CoralPlus(const PldaModel &model, const SymMatrix &c_in,
                    const Vector &mu_in, const AdaptConfig &cfg,
                    AdaptationReport *report = nullptr);

AdaptationReport AdaptationDiagnostics(const PldaModel &model,
                                       const SymMatrix &c_in,
                                       const AdaptConfig &cfg);

/// One line per dimension: "<matrix> <index> <e_minus_one> <clipped:0|1>".
void WriteDiagnostics(const AdaptationReport &report, std::ostream &os);

}  // namespace coralplus

#endif  // CORALPLUS_ADAPT_H_
