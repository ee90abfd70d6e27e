// coralplus/synth.h

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

#ifndef CORALPLUS_SYNTH_H_
#define CORALPLUS_SYNTH_H_

#include <cstdint>
#include <random>

#include "coralplus/data.h"
#include "coralplus/linalg.h"

namespace coralplus {

struct SynthConfig {
  int dim = 50;
  int n_speakers_ood = 300;
  int utts_per_speaker_ood = 10;
  int n_unlabeled_in = 2000;
  int n_trial_speakers = 100;
  int utts_per_trial_speaker = 8;
  double domain_shift_scale = 0.5;
  double mean_shift_scale = 1.0;
  uint64_t seed = 42;

  void Validate() const;
};

/// Generator parameters.  Out-of-domain embeddings are mu + h + x with
/// h ~ N(0, phi_b) shared per speaker and x ~ N(0, phi_w) per utterance;
/// in-domain embeddings are shift * (mu + h + x) + mean_offset.
struct SynthTruth {
  Vector mu;
  SymMatrix phi_b;
  SymMatrix phi_w;
  Matrix shift;  // M = I + domain_shift_scale * R, ||R||_2 = 1
  Vector mean_offset;
};

struct SynthData {
  EmbeddingSet ood_labeled;
  EmbeddingSet in_unlabeled;
  EmbeddingSet in_enroll;
  EmbeddingSet in_test;
  TrialList trials;
  SynthTruth truth;
};

/// Portable Gaussian source: std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) feeding Box-Muller.  Uniforms are
/// ((x >> 11) + 0.5) * 2^-53; each Box-Muller step consumes two uniforms
/// u1, u2 and yields sqrt(-2 ln u1) * cos(2 pi u2), caching the matching
/// sine value for the following call.
class GaussianRng {
 public:
  explicit GaussianRng(uint64_t seed) : engine_(seed) {}
  double Uniform();
  double Normal();
  /// Uniform integer in [0, n) as floor(Uniform() * n).
  size_t Index(size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// Draws, in this fixed order: the between-class eigenbasis (dim^2
/// normals, column-major, Gram-Schmidt orthonormalized); the within-class
/// eigenbasis (likewise) and its spectrum (dim uniforms); mu (dim
/// normals); R (dim^2 normals); the mean-shift direction (dim normals);
/// the labeled out-of-domain speakers; the unlabeled in-domain utterances
/// (a fresh speaker each); the in-domain trial speakers; and finally the
/// non-target trial pairs.
///
/// Trial speakers contribute their first ceil(k/2) utterances to the
/// enrollment set and the rest to the test set.  Every same-speaker
/// (enroll, test) pair is a target trial; an equal number of distinct
/// different-speaker pairs is sampled as non-targets.
SynthData Generate(const SynthConfig &cfg);

}  // namespace coralplus

#endif  // CORALPLUS_SYNTH_H_
