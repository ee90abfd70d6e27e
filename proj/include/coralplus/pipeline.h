// coralplus/pipeline.h

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

#ifndef CORALPLUS_PIPELINE_H_
#define CORALPLUS_PIPELINE_H_

#include <ostream>
#include <string>
#include <vector>

#include "coralplus/adapt.h"
#include "coralplus/metrics.h"
#include "coralplus/synth.h"

namespace coralplus {

// File names inside a model directory.
inline constexpr const char *kLdaFileName = "lda-transform";
inline constexpr const char *kPldaFileName = "plda-model";

/// Everything a subcommand may need.  Unused fields are ignored.
struct PipelineConfig {
  std::string train_path;      // labeled out-of-domain embeddings
  std::string lda_train_path;  // optional: fit LDA on this set instead
  std::string adapt_path;      // unlabeled in-domain embeddings
  std::string enroll_path;
  std::string test_path;
  std::string trials_path;
  std::string scores_path;
  std::string model_dir;
  std::string lda_path;   // overrides <model_dir>/lda-transform
  std::string plda_path;  // overrides <model_dir>/plda-model
  std::string out_path;
  std::string out_dir;
  std::string diagnostics_path;
  int lda_dim = 0;
  bool feature_coral = false;
  bool sre16_average = false;
  int num_threads = 1;
  AdaptConfig adapt;
  DcfParams dcf;
  SynthConfig synth;
};

/// Fits LDA and trains the PLDA backend; writes lda-transform and
/// plda-model into cfg.out_dir.
void RunTrain(const PipelineConfig &cfg, std::ostream &log);

/// CORAL+ adaptation of a trained model to unlabeled in-domain data, or,
/// with cfg.feature_coral, CORAL transformation of the raw training set.
void RunAdapt(const PipelineConfig &cfg, std::ostream &log);

/// Scores a trial list; writes a score file to cfg.out_path.
void RunScore(const PipelineConfig &cfg, std::ostream &log);

/// Prints the evaluation report for a score file.
void RunEval(const PipelineConfig &cfg, std::ostream &out);

/// Writes a synthetic dataset into cfg.out_dir.
void RunSynth(const PipelineConfig &cfg, std::ostream &log);

struct ExperimentRow {
  std::string system;
  double eer;
  double min_dcf;
};

/// OOD, feature-space CORAL, CORAL+ and CORAL+ without regularization on
/// one dataset, in that order.
std::vector<ExperimentRow> RunExperimentArms(const SynthData &data,
                                             int lda_dim,
                                             const AdaptConfig &adapt,
                                             const DcfParams &dcf);

/// Generates cfg.synth, runs all arms and prints the comparison table.
std::vector<ExperimentRow> RunExperiment(const PipelineConfig &cfg,
                                         std::ostream &out);

void WriteExperimentTable(const std::vector<ExperimentRow> &rows,
                          std::ostream &out);

}  // namespace coralplus

#endif  // CORALPLUS_PIPELINE_H_
