// coralplus/metrics.h

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

#ifndef CORALPLUS_METRICS_H_
#define CORALPLUS_METRICS_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "coralplus/data.h"

namespace coralplus {

struct ScoredTrial {
  std::string enroll_id;
  std::string test_id;
  double score;
  std::optional<bool> target;
};

struct ScoreSet {
  std::vector<ScoredTrial> trials;
};

/// Detection cost parameters.  The defaults are the single-prior operating
/// point; the SRE'16-style average over p_target in {0.01, 0.005} is
/// available through ComputeMinDcfAveraged.
struct DcfParams {
  double p_target = 0.01;
  double c_miss = 1.0;
  double c_fa = 1.0;

  void Validate() const;
};

/// Equal error rate in [0, 1].  Thresholds sweep the sorted unique scores
/// (score >= threshold is an accept) and the EER is linearly interpolated
/// between the two operating points where P_miss - P_fa changes sign.
/// Requires at least one labeled target and one labeled non-target.
double ComputeEer(const ScoreSet &scores);

/// Minimum normalized detection cost over all unique-score thresholds plus
/// the accept-all and reject-all sentinels.
double ComputeMinDcf(const ScoreSet &scores, const DcfParams &params);

/// Mean of the minimum normalized costs at p_target = 0.01 and 0.005.
double ComputeMinDcfAveraged(const ScoreSet &scores, double c_miss = 1.0,
                             double c_fa = 1.0);

/// Copies labels from `trials` onto `scores` by (enroll, test) key.
/// Throws ResolutionError for a scored pair absent from the trial list.
void AttachLabels(const TrialList &trials, ScoreSet *scores);

/// Score file: "<enroll> <test> <score>" with 9 significant digits.  The
/// reader also accepts an optional fourth target|nontarget|- column.
void WriteScores(const ScoreSet &scores, std::ostream &os);
ScoreSet ReadScores(std::istream &is, std::string_view source);
void SaveScores(const ScoreSet &scores, const std::string &path);
ScoreSet LoadScores(const std::string &path);

/// "eer <value>" and "min_dcf <p_target> <value>", 6 significant digits.
void WriteEvalReport(double eer, double p_target, double min_dcf,
                     std::ostream &os);

}  // namespace coralplus

#endif  // CORALPLUS_METRICS_H_
