// coralplus/pipeline.cc

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

#include "coralplus/pipeline.h"

#include <cstdio>
#include <filesystem>

#include "coralplus/error.h"
#include "coralplus/lda.h"
#include "coralplus/plda.h"
#include "text-io.h"

namespace coralplus {

namespace fs = std::filesystem;

namespace {

void Require(const std::string &value, const char *flag) {
  if (value.empty())
    throw PreconditionError(std::string("missing required option ") + flag);
}

std::string ModelFile(const PipelineConfig &cfg, const std::string &explicit_path,
                      const char *name) {
  if (!explicit_path.empty()) return explicit_path;
  if (cfg.model_dir.empty())
    throw PreconditionError(std::string("need --model-dir or an explicit ") +
                            name + " path");
  return (fs::path(cfg.model_dir) / name).string();
}

void EnsureDir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
}

ScoreSet ScoreProjected(const PldaModel &model, const LdaTransform &lda,
                        const EmbeddingSet &enroll, const EmbeddingSet &test,
                        const TrialList &trials, int num_threads) {
  return ScoreTrials(model, ApplyLda(lda, enroll), ApplyLda(lda, test), trials,
                     num_threads);
}

}  // namespace

void RunTrain(const PipelineConfig &cfg, std::ostream &log) {
  Require(cfg.train_path, "--train");
  Require(cfg.out_dir, "--out-dir");
  if (cfg.lda_dim < 1) throw PreconditionError("--lda-dim must be at least 1");
  EmbeddingSet train = LoadEmbeddings(cfg.train_path);
  LdaTransform lda =
      cfg.lda_train_path.empty()
          ? FitLda(train, cfg.lda_dim)
          : FitLda(LoadEmbeddings(cfg.lda_train_path), cfg.lda_dim);
  EmbeddingSet projected = ApplyLda(lda, train);
  PldaModel model = TrainPlda(projected);
  model.Validate();
  EnsureDir(cfg.out_dir);
  SaveLda(lda, (fs::path(cfg.out_dir) / kLdaFileName).string());
  SaveModel(model, (fs::path(cfg.out_dir) / kPldaFileName).string());
  log << "speakers " << ComputeScatter(projected).n_speakers << '\n'
      << "utterances " << train.size() << '\n'
      << "input_dim " << lda.in_dim << '\n'
      << "lda_dim " << lda.out_dim << '\n';
}

void RunAdapt(const PipelineConfig &cfg, std::ostream &log) {
  Require(cfg.adapt_path, "--adapt");
  Require(cfg.out_path, "--out");
  cfg.adapt.Validate();
  EmbeddingSet in_domain = LoadEmbeddings(cfg.adapt_path);
  if (cfg.feature_coral) {
    Require(cfg.train_path, "--train");
    EmbeddingSet train = LoadEmbeddings(cfg.train_path);
    CoralTransform coral =
        FitCoral(ComputeStats(train).total_cov,
                 ComputeStats(in_domain).total_cov, cfg.adapt.eig_floor);
    SaveEmbeddings(CoralApply(coral, train), cfg.out_path);
    log << "coral_transformed " << train.size() << '\n';
    return;
  }
  LdaTransform lda = LoadLda(ModelFile(cfg, cfg.lda_path, kLdaFileName));
  PldaModel model = LoadModel(ModelFile(cfg, cfg.plda_path, kPldaFileName));
  model.Validate();
  GaussianStats stats = ComputeStats(ApplyLda(lda, in_domain));
  AdaptationReport report;
  PldaModel adapted =
      CoralPlus(model, stats.total_cov, stats.mean, cfg.adapt, &report);
  adapted.Validate();
  SaveModel(adapted, cfg.out_path);
  if (!cfg.diagnostics_path.empty()) {
    std::ofstream os = internal::OpenForWrite(cfg.diagnostics_path);
    WriteDiagnostics(report, os);
  }
  log << "in_domain_utterances " << stats.count << '\n'
      << "phi_b_clipped " << report.between_clipped << '\n'
      << "phi_w_clipped " << report.within_clipped << '\n';
}

void RunScore(const PipelineConfig &cfg, std::ostream &log) {
  Require(cfg.enroll_path, "--enroll");
  Require(cfg.test_path, "--test");
  Require(cfg.trials_path, "--trials");
  Require(cfg.out_path, "--out");
  LdaTransform lda = LoadLda(ModelFile(cfg, cfg.lda_path, kLdaFileName));
  PldaModel model = LoadModel(ModelFile(cfg, cfg.plda_path, kPldaFileName));
  model.Validate();
  EmbeddingSet enroll = LoadEmbeddings(cfg.enroll_path);
  EmbeddingSet test = LoadEmbeddings(cfg.test_path);
  TrialList trials = LoadTrials(cfg.trials_path);
  ScoreSet scores =
      ScoreProjected(model, lda, enroll, test, trials, cfg.num_threads);
  SaveScores(scores, cfg.out_path);
  log << "trials " << scores.trials.size() << '\n';
}

void RunEval(const PipelineConfig &cfg, std::ostream &out) {
  Require(cfg.scores_path, "--scores");
  ScoreSet scores = LoadScores(cfg.scores_path);
  if (!cfg.trials_path.empty()) AttachLabels(LoadTrials(cfg.trials_path), &scores);
  const double eer = ComputeEer(scores);
  WriteEvalReport(eer, cfg.dcf.p_target, ComputeMinDcf(scores, cfg.dcf), out);
  if (cfg.sre16_average)
    out << "min_dcf_avg "
        << internal::FormatDouble(
               ComputeMinDcfAveraged(scores, cfg.dcf.c_miss, cfg.dcf.c_fa), 6)
        << '\n';
}

void RunSynth(const PipelineConfig &cfg, std::ostream &log) {
  Require(cfg.out_dir, "--out-dir");
  SynthData data = Generate(cfg.synth);
  EnsureDir(cfg.out_dir);
  const fs::path dir(cfg.out_dir);
  SaveEmbeddings(data.ood_labeled, (dir / "ood.emb").string());
  SaveEmbeddings(data.in_unlabeled, (dir / "in_unlabeled.emb").string());
  SaveEmbeddings(data.in_enroll, (dir / "in_enroll.emb").string());
  SaveEmbeddings(data.in_test, (dir / "in_test.emb").string());
  SaveTrials(data.trials, (dir / "trials.txt").string());
  SaveModel(PldaModel(data.truth.mu, data.truth.phi_b, data.truth.phi_w),
            (dir / "truth-plda-model").string());
  log << "ood " << data.ood_labeled.size() << '\n'
      << "in_unlabeled " << data.in_unlabeled.size() << '\n'
      << "in_enroll " << data.in_enroll.size() << '\n'
      << "in_test " << data.in_test.size() << '\n'
      << "trials " << data.trials.size() << '\n';
}

std::vector<ExperimentRow> RunExperimentArms(const SynthData &data,
                                             int lda_dim,
                                             const AdaptConfig &adapt,
                                             const DcfParams &dcf) {
  adapt.Validate();
  const LdaTransform lda = FitLda(data.ood_labeled, lda_dim);
  const PldaModel ood_model = TrainPlda(ApplyLda(lda, data.ood_labeled));
  const GaussianStats in_stats = ComputeStats(ApplyLda(lda, data.in_unlabeled));

  std::vector<ExperimentRow> rows;
  auto evaluate = [&](const char *name, const PldaModel &model) {
    model.Validate();
    ScoreSet scores = ScoreProjected(model, lda, data.in_enroll, data.in_test,
                                     data.trials, 1);
    rows.push_back({name, ComputeEer(scores), ComputeMinDcf(scores, dcf)});
  };

  evaluate("OOD PLDA", ood_model);

  // Feature-space CORAL on the raw embeddings; the LDA stays the one fitted
  // on the untransformed training set.
  const CoralTransform coral =
      FitCoral(ComputeStats(data.ood_labeled).total_cov,
               ComputeStats(data.in_unlabeled).total_cov, adapt.eig_floor);
  const PldaModel coral_model =
      TrainPlda(ApplyLda(lda, CoralApply(coral, data.ood_labeled)));
  evaluate("CORAL PLDA",
           adapt.recenter ? PldaModel(in_stats.mean, coral_model.phi_b(),
                                      coral_model.phi_w())
                          : coral_model);

  AdaptConfig reg = adapt;
  reg.regularize = true;
  evaluate("CORAL+ PLDA",
           CoralPlus(ood_model, in_stats.total_cov, in_stats.mean, reg));
  AdaptConfig noreg = adapt;
  noreg.regularize = false;
  evaluate("w/o reg",
           CoralPlus(ood_model, in_stats.total_cov, in_stats.mean, noreg));
  return rows;
}

void WriteExperimentTable(const std::vector<ExperimentRow> &rows,
                          std::ostream &out) {
  char line[128];
  std::snprintf(line, sizeof(line), "%-14s %8s %8s\n", "system", "EER(%)",
                "MinCost");
  out << line;
  for (const auto &row : rows) {
    std::snprintf(line, sizeof(line), "%-14s %8.2f %8.3f\n",
                  row.system.c_str(), 100.0 * row.eer, row.min_dcf);
    out << line;
  }
}

std::vector<ExperimentRow> RunExperiment(const PipelineConfig &cfg,
                                         std::ostream &out) {
  if (cfg.lda_dim < 1) throw PreconditionError("--lda-dim must be at least 1");
  SynthData data = Generate(cfg.synth);
  auto rows = RunExperimentArms(data, cfg.lda_dim, cfg.adapt, cfg.dcf);
  WriteExperimentTable(rows, out);
  return rows;
}

}  // namespace coralplus
