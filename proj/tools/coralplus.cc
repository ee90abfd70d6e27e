// tools/coralplus.cc

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

// Command-line driver: train, adapt, score, eval, synth, experiment.
// Exit codes: 0 success, 1 usage, 2 data/IO/precondition, 3 numerical.

#include <iostream>

#include "CLI11.hpp"
#include "coralplus/error.h"
#include "coralplus/pipeline.h"

namespace {

using coralplus::PipelineConfig;

void AddAdaptFlags(CLI::App *cmd, PipelineConfig *cfg) {
  cmd->add_option("--beta", cfg->adapt.beta,
                  "Between-class adaptation weight in [0,1]")
      ->capture_default_str();
  cmd->add_option("--gamma", cfg->adapt.gamma,
                  "Within-class adaptation weight in [0,1]")
      ->capture_default_str();
  cmd->add_flag_callback(
      "--no-reg", [cfg] { cfg->adapt.regularize = false; },
      "Unregularized update (keeps negative variance changes)");
  cmd->add_flag_callback(
      "--no-recenter", [cfg] { cfg->adapt.recenter = false; },
      "Keep the out-of-domain mean instead of the in-domain mean");
  cmd->add_option("--eig-floor", cfg->adapt.eig_floor,
                  "Relative eigenvalue floor for inverse square roots")
      ->capture_default_str();
}

void AddSynthFlags(CLI::App *cmd, coralplus::SynthConfig *s) {
  cmd->add_option("--dim", s->dim, "Embedding dimension")->capture_default_str();
  cmd->add_option("--n-speakers-ood", s->n_speakers_ood,
                  "Labeled out-of-domain speakers")->capture_default_str();
  cmd->add_option("--utts-per-speaker-ood", s->utts_per_speaker_ood,
                  "Utterances per out-of-domain speaker")
      ->capture_default_str();
  cmd->add_option("--n-unlabeled-in", s->n_unlabeled_in,
                  "Unlabeled in-domain vectors")->capture_default_str();
  cmd->add_option("--n-trial-speakers", s->n_trial_speakers,
                  "In-domain evaluation speakers")
      ->capture_default_str();
  cmd->add_option("--utts-per-trial-speaker", s->utts_per_trial_speaker,
                  "Utterances per evaluation speaker")
      ->capture_default_str();
  cmd->add_option("--domain-shift-scale", s->domain_shift_scale,
                  "Strength of the in-domain linear shift")
      ->capture_default_str();
  cmd->add_option("--mean-shift-scale", s->mean_shift_scale,
                  "Scale of the in-domain mean offset")
      ->capture_default_str();
  cmd->add_option("--seed", s->seed, "Random seed")->capture_default_str();
}

void AddDcfFlags(CLI::App *cmd, PipelineConfig *cfg) {
  cmd->add_option("--p-target", cfg->dcf.p_target, "Target prior")->capture_default_str();
  cmd->add_option("--c-miss", cfg->dcf.c_miss, "Miss cost")->capture_default_str();
  cmd->add_option("--c-fa", cfg->dcf.c_fa, "False-alarm cost")->capture_default_str();
}

}  // namespace

int main(int argc, char **argv) {
  PipelineConfig cfg;
  CLI::App app{"coralplus: PLDA backend with CORAL / CORAL+ domain adaptation"};
  app.require_subcommand(1);

  CLI::App *train = app.add_subcommand("train", "Fit LDA + PLDA on labeled data");
  train->add_option("--train", cfg.train_path, "Labeled embeddings")->required();
  train->add_option("--lda-train", cfg.lda_train_path,
                    "Fit LDA on this set instead of --train");
  train->add_option("--lda-dim", cfg.lda_dim, "LDA output dimension")->required();
  train->add_option("--out-dir", cfg.out_dir, "Model directory")->required();

  CLI::App *adapt =
      app.add_subcommand("adapt", "CORAL+ adaptation (or feature CORAL)");
  adapt->add_option("--model-dir", cfg.model_dir,
                   "Directory holding lda-transform and plda-model");
  adapt->add_option("--lda", cfg.lda_path,
                   "LDA transform (overrides --model-dir)");
  adapt->add_option("--plda", cfg.plda_path,
                   "PLDA model (overrides --model-dir)");
  adapt->add_option("--adapt", cfg.adapt_path, "Unlabeled in-domain embeddings")
      ->required();
  adapt->add_option("--out", cfg.out_path,
                    "Adapted plda-model (or transformed set)")
      ->required();
  adapt->add_option("--diagnostics", cfg.diagnostics_path,
                    "Per-dimension diagnostics output");
  adapt->add_flag("--feature-coral", cfg.feature_coral,
                  "Write the CORAL-transformed --train set instead");
  adapt->add_option("--train", cfg.train_path,
                    "Labeled raw embeddings (with --feature-coral)");
  AddAdaptFlags(adapt, &cfg);

  CLI::App *score = app.add_subcommand("score", "Score a trial list");
  score->add_option("--model-dir", cfg.model_dir,
                   "Directory holding lda-transform and plda-model");
  score->add_option("--lda", cfg.lda_path,
                   "LDA transform (overrides --model-dir)");
  score->add_option("--plda", cfg.plda_path,
                   "PLDA model (overrides --model-dir)");
  score->add_option("--enroll", cfg.enroll_path, "Enrollment embeddings")->required();
  score->add_option("--test", cfg.test_path, "Test embeddings")->required();
  score->add_option("--trials", cfg.trials_path, "Trial list")->required();
  score->add_option("--out", cfg.out_path, "Score file")->required();
  score->add_option("--threads", cfg.num_threads, "Worker threads")->capture_default_str();

  CLI::App *eval = app.add_subcommand("eval", "EER and minDCF of a score file");
  eval->add_option("--scores", cfg.scores_path, "Score file")->required();
  eval->add_option("--trials", cfg.trials_path, "Labels for the score file");
  AddDcfFlags(eval, &cfg);
  eval->add_flag("--sre16-average", cfg.sre16_average,
                 "Also report minDCF averaged over p_target 0.01 and 0.005");

  CLI::App *synth = app.add_subcommand("synth", "Write a synthetic dataset");
  synth->add_option("--out-dir", cfg.out_dir, "Output directory")->required();
  AddSynthFlags(synth, &cfg.synth);

  CLI::App *experiment = app.add_subcommand(
      "experiment", "Compare OOD / CORAL / CORAL+ / w/o reg on synthetic data");
  cfg.lda_dim = 20;
  experiment->add_option("--lda-dim", cfg.lda_dim, "LDA output dimension")->capture_default_str();
  AddSynthFlags(experiment, &cfg.synth);
  AddAdaptFlags(experiment, &cfg);
  AddDcfFlags(experiment, &cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*train) coralplus::RunTrain(cfg, std::cout);
    if (*adapt) coralplus::RunAdapt(cfg, std::cout);
    if (*score) coralplus::RunScore(cfg, std::cout);
    if (*eval) coralplus::RunEval(cfg, std::cout);
    if (*synth) coralplus::RunSynth(cfg, std::cout);
    if (*experiment) coralplus::RunExperiment(cfg, std::cout);
  } catch (const coralplus::NumericalError &e) {
    std::cerr << "coralplus: numerical error: " << e.what() << '\n';
    return 3;
  } catch (const coralplus::Error &e) {
    std::cerr << "coralplus: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
