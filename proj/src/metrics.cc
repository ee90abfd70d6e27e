// coralplus/metrics.cc

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

#include "coralplus/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "coralplus/error.h"
#include "text-io.h"

namespace coralplus {

void DcfParams::Validate() const {
  if (!(p_target > 0.0 && p_target < 1.0))
    throw PreconditionError("dcf: p_target must lie in (0, 1)");
  if (!(c_miss > 0.0) || !(c_fa > 0.0))
    throw PreconditionError("dcf: costs must be positive");
}

namespace {

struct OperatingPoint {
  double p_miss;
  double p_fa;
};

// Operating points for thresholds at each unique score in ascending order,
// followed by the reject-all point (1, 0).  The first point is accept-all.
std::vector<OperatingPoint> SweepThresholds(const ScoreSet &scores) {
  std::vector<std::pair<double, bool>> labeled;
  labeled.reserve(scores.trials.size());
  for (const auto &t : scores.trials) {
    if (!t.target)
      throw PreconditionError("metrics: trial " + t.enroll_id + " " +
                              t.test_id + " has no target/nontarget label");
    if (!std::isfinite(t.score))
      throw PreconditionError("metrics: non-finite score for trial " +
                              t.enroll_id + " " + t.test_id);
    labeled.emplace_back(t.score, *t.target);
  }
  std::sort(labeled.begin(), labeled.end());
  size_t n_tar = 0;
  for (const auto &p : labeled) n_tar += p.second ? 1 : 0;
  const size_t n_non = labeled.size() - n_tar;
  if (n_tar == 0 || n_non == 0)
    throw PreconditionError(
        "metrics: need at least one target and one nontarget trial");

  std::vector<OperatingPoint> points;
  size_t tar_below = 0, non_below = 0;
  size_t i = 0;
  while (i < labeled.size()) {
    // Threshold at labeled[i].first: everything before i is rejected.
    points.push_back({static_cast<double>(tar_below) / n_tar,
                      static_cast<double>(n_non - non_below) / n_non});
    const double s = labeled[i].first;
    while (i < labeled.size() && labeled[i].first == s) {
      if (labeled[i].second) {
        tar_below++;
      } else {
        non_below++;
      }
      i++;
    }
  }
  points.push_back({1.0, 0.0});
  return points;
}

}  // namespace

double ComputeEer(const ScoreSet &scores) {
  const auto points = SweepThresholds(scores);
  // points[0] is (0, 1), so the first crossing has k >= 1.
  for (size_t k = 1; k < points.size(); k++) {
    const OperatingPoint &hi = points[k];
    if (hi.p_miss < hi.p_fa) continue;
    const OperatingPoint &lo = points[k - 1];
    const double d_miss = hi.p_miss - lo.p_miss;
    const double d_fa = hi.p_fa - lo.p_fa;
    const double t = (lo.p_fa - lo.p_miss) / (d_miss - d_fa);
    return lo.p_miss + t * d_miss;
  }
  return 1.0;  // unreachable: the last point is (1, 0)
}

double ComputeMinDcf(const ScoreSet &scores, const DcfParams &params) {
  params.Validate();
  const auto points = SweepThresholds(scores);
  const double w_miss = params.c_miss * params.p_target;
  const double w_fa = params.c_fa * (1.0 - params.p_target);
  const double norm = std::min(w_miss, w_fa);
  // points already contains the accept-all and reject-all sentinels.
  double best = std::numeric_limits<double>::infinity();
  for (const auto &p : points)
    best = std::min(best, (w_miss * p.p_miss + w_fa * p.p_fa) / norm);
  return best;
}

double ComputeMinDcfAveraged(const ScoreSet &scores, double c_miss,
                             double c_fa) {
  return 0.5 * (ComputeMinDcf(scores, {0.01, c_miss, c_fa}) +
                ComputeMinDcf(scores, {0.005, c_miss, c_fa}));
}

void AttachLabels(const TrialList &trials, ScoreSet *scores) {
  std::map<std::pair<std::string, std::string>, std::optional<bool>> labels;
  for (const auto &t : trials) labels[{t.enroll_id, t.test_id}] = t.target;
  for (auto &s : scores->trials) {
    auto it = labels.find({s.enroll_id, s.test_id});
    if (it == labels.end())
      throw ResolutionError("scored pair " + s.enroll_id + " " + s.test_id +
                            " is not in the trial list");
    s.target = it->second;
  }
}

void WriteScores(const ScoreSet &scores, std::ostream &os) {
  for (const auto &t : scores.trials)
    os << t.enroll_id << ' ' << t.test_id << ' '
       << internal::FormatDouble(t.score, 9) << '\n';
}

ScoreSet ReadScores(std::istream &is, std::string_view source) {
  internal::LineReader reader(is, std::string(source));
  std::string line;
  ScoreSet scores;
  while (reader.Next(&line)) {
    auto fields = internal::SplitFields(line);
    if (fields.empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(reader.line_no()) + ": ";
    if (fields.size() != 3 && fields.size() != 4)
      throw ParseError(where + "expected '<enroll> <test> <score> [label]'");
    ScoredTrial t{std::string(fields[0]), std::string(fields[1]),
                  internal::ParseDouble(fields[2], source, reader.line_no()),
                  std::nullopt};
    if (fields.size() == 4) {
      if (fields[3] == "target") {
        t.target = true;
      } else if (fields[3] == "nontarget") {
        t.target = false;
      } else if (fields[3] != "-") {
        throw ParseError(where + "invalid label '" + std::string(fields[3]) +
                         "'");
      }
    }
    scores.trials.push_back(std::move(t));
  }
  return scores;
}

void SaveScores(const ScoreSet &scores, const std::string &path) {
  std::ofstream os = internal::OpenForWrite(path);
  WriteScores(scores, os);
  if (!os) throw IoError("error writing '" + path + "'");
}

ScoreSet LoadScores(const std::string &path) {
  std::ifstream is = internal::OpenForRead(path);
  return ReadScores(is, path);
}

void WriteEvalReport(double eer, double p_target, double min_dcf,
                     std::ostream &os) {
  os << "eer " << internal::FormatDouble(eer, 6) << '\n';
  os << "min_dcf " << internal::FormatDouble(p_target, 6) << ' '
     << internal::FormatDouble(min_dcf, 6) << '\n';
}

}  // namespace coralplus
