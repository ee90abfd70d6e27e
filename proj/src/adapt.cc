// coralplus/adapt.cc

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

#include "coralplus/adapt.h"

#include <algorithm>
#include <string>

#include "coralplus/error.h"
#include "coralplus/plda.h"
#include "text-io.h"

namespace coralplus {

Vector CoralTransform::Apply(const Vector &phi) const {
  if (phi.size() != dim)
    throw PreconditionError("coral_apply: vector has dim " +
                            std::to_string(phi.size()) + ", transform is " +
                            std::to_string(dim));
  return a * phi;
}

void AdaptConfig::Validate() const {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw PreconditionError("adapt: beta must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw PreconditionError("adapt: gamma must lie in [0, 1]");
  if (!(eig_floor >= 0.0 && eig_floor < 1.0))
    throw PreconditionError("adapt: eig_floor must lie in [0, 1)");
}

CoralTransform FitCoral(const SymMatrix &c_out, const SymMatrix &c_in,
                        double floor) {
  if (c_out.dim() != c_in.dim())
    throw PreconditionError("fit_coral: covariance dims differ (" +
                            std::to_string(c_out.dim()) + " vs " +
                            std::to_string(c_in.dim()) + ")");
  SymMatrix whiten = InvSqrtPsd(c_out, floor);
  SymMatrix recolor = SqrtPsd(c_in);
  Matrix a = recolor.matrix() * whiten.matrix();
  return CoralTransform{c_out.dim(), std::move(a), std::move(whiten),
                        std::move(recolor)};
}

EmbeddingSet CoralApply(const CoralTransform &t, const EmbeddingSet &set) {
  if (set.dim() != t.dim)
    throw PreconditionError("coral_apply: set has dim " +
                            std::to_string(set.dim()) + ", transform is " +
                            std::to_string(t.dim));
  EmbeddingSet out(t.dim);
  for (const auto &r : set.records())
    out.Add(r.utt_id, r.speaker_id, t.a * r.vector);
  return out;
}

SymMatrix TransportCov(const CoralTransform &t, const SymMatrix &phi) {
  if (phi.dim() != t.dim)
    throw PreconditionError("transport_cov: matrix has dim " +
                            std::to_string(phi.dim()) + ", transform is " +
                            std::to_string(t.dim));
  return Congruence(t.a, phi);
}

namespace {

struct AdaptedCovariance {
  SymMatrix phi;
  Vector e;
};

// phi + kappa * B^-T D B^-1 in the basis that whitens phi and diagonalizes
// its transported counterpart.
AdaptedCovariance AdaptCovariance(const SymMatrix &phi, const Matrix &a,
                                  double kappa, bool regularize,
                                  double floor) {
  const int dim = phi.dim();
  if (phi.matrix().isZero(0.0)) {
    // Transport of a zero matrix is zero: nothing to adapt.
    return {phi, Vector::Ones(dim)};
  }
  SimDiagResult sd = SimDiag(phi, Congruence(a, phi), floor);
  Vector d = sd.e.array() - 1.0;
  if (regularize) d = d.cwiseMax(0.0);
  if (kappa == 0.0) return {phi, sd.e};
  const Matrix b_inv_t = sd.b_inv.transpose();
  Matrix update = b_inv_t * d.asDiagonal() * sd.b_inv;
  return {SymMatrix(phi.matrix() + kappa * update), sd.e};
}

int CountClipped(const Vector &e) {
  int n = 0;
  for (Eigen::Index i = 0; i < e.size(); i++)
    if (e(i) - 1.0 < -kUnitTolerance) n++;
  return n;
}

std::vector<double> EMinusOne(const Vector &e) {
  std::vector<double> v(e.size());
  for (Eigen::Index i = 0; i < e.size(); i++) v[i] = e(i) - 1.0;
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

}  // namespace

PldaModel CoralPlus(const PldaModel &model, const SymMatrix &c_in,
                    const Vector &mu_in, const AdaptConfig &cfg,
                    AdaptationReport *report) {
  cfg.Validate();
  if (c_in.dim() != model.dim() || mu_in.size() != model.dim())
    throw PreconditionError(
        "coral_plus: in-domain statistics have dim " +
        std::to_string(c_in.dim()) + "/" + std::to_string(mu_in.size()) +
        ", model has " + std::to_string(model.dim()));
  const CoralTransform coral = FitCoral(model.Total(), c_in, cfg.eig_floor);
  AdaptedCovariance between = AdaptCovariance(
      model.phi_b(), coral.a, cfg.beta, cfg.regularize, cfg.eig_floor);
  AdaptedCovariance within = AdaptCovariance(
      model.phi_w(), coral.a, cfg.gamma, cfg.regularize, cfg.eig_floor);
  if (report != nullptr) {
    report->between_e_minus_one = EMinusOne(between.e);
    report->within_e_minus_one = EMinusOne(within.e);
    report->regularized = cfg.regularize;
    report->between_clipped = cfg.regularize ? CountClipped(between.e) : 0;
    report->within_clipped = cfg.regularize ? CountClipped(within.e) : 0;
  }
  SymMatrix phi_w =
      FloorEigenvalues(within.phi, kWithinFloor, "adapted phi_w");
  return PldaModel(cfg.recenter ? mu_in : model.mu(), std::move(between.phi),
                   std::move(phi_w));
}

AdaptationReport AdaptationDiagnostics(const PldaModel &model,
                                       const SymMatrix &c_in,
                                       const AdaptConfig &cfg) {
  AdaptationReport report;
  CoralPlus(model, c_in, model.mu(), cfg, &report);
  return report;
}

void WriteDiagnostics(const AdaptationReport &report, std::ostream &os) {
  auto emit = [&](const char *name, const std::vector<double> &values) {
    for (size_t i = 0; i < values.size(); i++) {
      const bool clipped = report.regularized && values[i] < -kUnitTolerance;
      os << name << ' ' << i << ' ' << internal::FormatDouble(values[i], 9)
         << ' ' << (clipped ? 1 : 0) << '\n';
    }
  };
  emit("phi_b", report.between_e_minus_one);
  emit("phi_w", report.within_e_minus_one);
}

}  // namespace coralplus
