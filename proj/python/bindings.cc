// coralplus/bindings.cc

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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "coralplus/adapt.h"
#include "coralplus/error.h"
#include "coralplus/lda.h"
#include "coralplus/linalg.h"
#include "coralplus/metrics.h"
#include "coralplus/pipeline.h"
#include "coralplus/plda.h"
#include "coralplus/synth.h"

namespace py = pybind11;

namespace coralplus {
namespace {

// Rows of `vectors` become records u0, u1, ...; `speakers` may be empty for
// an unlabeled set.
EmbeddingSet MakeSet(const Matrix &vectors,
                     const std::vector<std::string> &speakers) {
  if (!speakers.empty() &&
      speakers.size() != static_cast<size_t>(vectors.rows()))
    throw PreconditionError("speakers must have one entry per row");
  EmbeddingSet set(static_cast<int>(vectors.cols()));
  for (Eigen::Index i = 0; i < vectors.rows(); i++) {
    std::optional<std::string> spk;
    if (!speakers.empty()) spk = speakers[i];
    set.Add("u" + std::to_string(i), spk, vectors.row(i).transpose());
  }
  return set;
}

Matrix SetMatrix(const EmbeddingSet &set) {
  Matrix m(set.size(), set.dim());
  for (size_t i = 0; i < set.size(); i++) m.row(i) = set[i].vector.transpose();
  return m;
}

std::vector<std::string> SetSpeakers(const EmbeddingSet &set) {
  std::vector<std::string> out;
  for (const auto &r : set.records()) out.push_back(r.speaker_id.value_or(""));
  return out;
}

ScoreSet MakeScores(const std::vector<double> &scores,
                    const std::vector<bool> &labels) {
  if (scores.size() != labels.size())
    throw PreconditionError("scores and labels differ in length");
  ScoreSet s;
  for (size_t i = 0; i < scores.size(); i++)
    s.trials.push_back({"e" + std::to_string(i), "t" + std::to_string(i),
                        scores[i], static_cast<bool>(labels[i])});
  return s;
}

py::dict ReportDict(const AdaptationReport &r) {
  py::dict d;
  d["between_e_minus_one"] = r.between_e_minus_one;
  d["within_e_minus_one"] = r.within_e_minus_one;
  d["between_clipped"] = r.between_clipped;
  d["within_clipped"] = r.within_clipped;
  return d;
}

}  // namespace
}  // namespace coralplus

PYBIND11_MODULE(_coralplus, m) {
  using namespace coralplus;
  m.doc() = "PLDA backend with CORAL and CORAL+ domain adaptation.";

  // Translators run most-recently-registered first, so subclasses follow
  // the base class here.
  auto &error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            error.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", error.ptr());

  // linalg
  m.def("eigh", [](const Matrix &a) {
    EigenDecomposition ed = Eigh(SymMatrix(a));
    return py::make_tuple(ed.values, ed.vectors);
  }, py::arg("m"), "Eigenvalues (descending) and eigenvectors (columns).");
  m.def("sqrt_psd", [](const Matrix &a, double floor) {
    return SqrtPsd(SymMatrix(a), floor).matrix();
  }, py::arg("m"), py::arg("floor") = 0.0);
  m.def("inv_sqrt_psd", [](const Matrix &a, double floor) {
    return InvSqrtPsd(SymMatrix(a), floor).matrix();
  }, py::arg("m"), py::arg("floor") = kDefaultEigFloor);
  m.def("simdiag", [](const Matrix &phi, const Matrix &psi) {
    SimDiagResult r = SimDiag(SymMatrix(phi), SymMatrix(psi));
    return py::make_tuple(r.b, r.b_inv, r.e);
  }, py::arg("phi"), py::arg("psi"), "Returns (b, b_inv, e).");

  // plda
  py::class_<PldaModel>(m, "PldaModel")
      .def(py::init([](const Vector &mu, const Matrix &phi_b,
                       const Matrix &phi_w) {
             return PldaModel(mu, SymMatrix(phi_b), SymMatrix(phi_w));
           }),
           py::arg("mu"), py::arg("phi_b"), py::arg("phi_w"))
      .def_property_readonly("dim", &PldaModel::dim)
      .def_property_readonly("mu", &PldaModel::mu)
      .def_property_readonly("phi_b",
                             [](const PldaModel &p) { return p.phi_b().matrix(); })
      .def_property_readonly("phi_w",
                             [](const PldaModel &p) { return p.phi_w().matrix(); })
      .def("total", [](const PldaModel &p) { return p.Total().matrix(); })
      .def("validate", &PldaModel::Validate)
      .def("score", &ScorePair, py::arg("phi1"), py::arg("phi2"))
      .def("save", [](const PldaModel &p, const std::string &path) {
        SaveModel(p, path);
      })
      .def_static("load", &LoadModel, py::arg("path"));

  m.def("train_plda", [](const Matrix &x, const std::vector<std::string> &spk) {
    return TrainPlda(MakeSet(x, spk));
  }, py::arg("vectors"), py::arg("speakers"));
  m.def("score_pair", &ScorePair, py::arg("model"), py::arg("phi1"),
        py::arg("phi2"));

  // lda
  m.def("fit_lda", [](const Matrix &x, const std::vector<std::string> &spk,
                      int out_dim) {
    LdaTransform t = FitLda(MakeSet(x, spk), out_dim);
    return py::make_tuple(t.mean, t.projection);
  }, py::arg("vectors"), py::arg("speakers"), py::arg("out_dim"),
     "Returns (mean, projection); apply as (x - mean) @ projection.T.");

  // adapt
  m.def("fit_coral", [](const Matrix &c_out, const Matrix &c_in, double floor) {
    return FitCoral(SymMatrix(c_out), SymMatrix(c_in), floor).a;
  }, py::arg("c_out"), py::arg("c_in"), py::arg("floor") = kDefaultEigFloor);
  m.def("coral_plus", [](const PldaModel &model, const Matrix &c_in,
                         const Vector &mu_in, double beta, double gamma,
                         bool regularize, double eig_floor, bool recenter) {
    AdaptConfig cfg;
    cfg.beta = beta;
    cfg.gamma = gamma;
    cfg.regularize = regularize;
    cfg.eig_floor = eig_floor;
    cfg.recenter = recenter;
    AdaptationReport report;
    PldaModel out = CoralPlus(model, SymMatrix(c_in), mu_in, cfg, &report);
    return py::make_tuple(out, ReportDict(report));
  }, py::arg("model"), py::arg("c_in"), py::arg("mu_in"), py::arg("beta") = 0.8,
     py::arg("gamma") = 0.8, py::arg("regularize") = true,
     py::arg("eig_floor") = kDefaultEigFloor, py::arg("recenter") = true,
     "Returns (adapted model, diagnostics dict).");

  // metrics
  m.def("compute_eer", [](const std::vector<double> &s,
                          const std::vector<bool> &labels) {
    return ComputeEer(MakeScores(s, labels));
  }, py::arg("scores"), py::arg("labels"));
  m.def("compute_min_dcf", [](const std::vector<double> &s,
                              const std::vector<bool> &labels, double p_target,
                              double c_miss, double c_fa) {
    return ComputeMinDcf(MakeScores(s, labels),
                         DcfParams{p_target, c_miss, c_fa});
  }, py::arg("scores"), py::arg("labels"), py::arg("p_target") = 0.01,
     py::arg("c_miss") = 1.0, py::arg("c_fa") = 1.0);

  // synth
  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("dim", &SynthConfig::dim)
      .def_readwrite("n_speakers_ood", &SynthConfig::n_speakers_ood)
      .def_readwrite("utts_per_speaker_ood", &SynthConfig::utts_per_speaker_ood)
      .def_readwrite("n_unlabeled_in", &SynthConfig::n_unlabeled_in)
      .def_readwrite("n_trial_speakers", &SynthConfig::n_trial_speakers)
      .def_readwrite("utts_per_trial_speaker",
                     &SynthConfig::utts_per_trial_speaker)
      .def_readwrite("domain_shift_scale", &SynthConfig::domain_shift_scale)
      .def_readwrite("mean_shift_scale", &SynthConfig::mean_shift_scale)
      .def_readwrite("seed", &SynthConfig::seed);

  m.def("generate", [](const SynthConfig &cfg) {
    SynthData d = Generate(cfg);
    py::dict out;
    out["ood_vectors"] = SetMatrix(d.ood_labeled);
    out["ood_speakers"] = SetSpeakers(d.ood_labeled);
    out["in_unlabeled"] = SetMatrix(d.in_unlabeled);
    out["phi_b"] = d.truth.phi_b.matrix();
    out["phi_w"] = d.truth.phi_w.matrix();
    out["mu"] = d.truth.mu;
    out["shift"] = d.truth.shift;
    return out;
  }, py::arg("config"));
  m.def("run_experiment", [](const SynthConfig &cfg, int lda_dim) {
    auto rows = RunExperimentArms(Generate(cfg), lda_dim, AdaptConfig(),
                                  DcfParams());
    std::vector<py::tuple> out;
    for (const auto &r : rows)
      out.push_back(py::make_tuple(r.system, r.eer, r.min_dcf));
    return out;
  }, py::arg("config"), py::arg("lda_dim") = 20,
     "Rows of (system, eer, min_dcf) for the four experiment arms.");
}
