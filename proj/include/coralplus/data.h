// coralplus/data.h

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

#ifndef CORALPLUS_DATA_H_
#define CORALPLUS_DATA_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coralplus/linalg.h"
#include "coralplus/plda-model.h"

namespace coralplus {

struct EmbeddingRecord {
  std::string utt_id;
  std::optional<std::string> speaker_id;  // empty for unlabeled data
  Vector vector;
};

/// A collection of fixed-length embeddings keyed by unique utterance id.
class EmbeddingSet {
 public:
  explicit EmbeddingSet(int dim);

  /// Throws PreconditionError on a dimension mismatch or a duplicate id.
  void Add(EmbeddingRecord record);
  void Add(std::string utt_id, std::optional<std::string> speaker_id,
           Vector vector);

  int dim() const { return dim_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  /// True iff the set is non-empty and every record carries a speaker id.
  bool labeled() const;

  const std::vector<EmbeddingRecord> &records() const { return records_; }
  const EmbeddingRecord &operator[](size_t i) const { return records_[i]; }
  const EmbeddingRecord *Find(std::string_view utt_id) const;

  /// Records ordered by utterance id; every accumulation over a set uses
  /// this order so results do not depend on insertion order.
  std::vector<const EmbeddingRecord *> SortedById() const;

 private:
  int dim_;
  std::vector<EmbeddingRecord> records_;
  std::unordered_map<std::string, size_t> index_;
};

struct GaussianStats {
  int64_t count;
  Vector mean;
  SymMatrix total_cov;  // biased (1/N) covariance about `mean`
};

struct ScatterPair {
  SymMatrix between;
  SymMatrix within;
  int n_speakers;
};

/// Embedding text format:
///   #dim <d>
///   <utt_id> <speaker_id|-> v1 ... vd
EmbeddingSet ReadEmbeddings(std::istream &is, std::string_view source);
EmbeddingSet LoadEmbeddings(const std::string &path);
void WriteEmbeddings(const EmbeddingSet &set, std::ostream &os);
void SaveEmbeddings(const EmbeddingSet &set, const std::string &path);

/// Sample mean and biased sample covariance.  Requires count >= 2.
GaussianStats ComputeStats(const EmbeddingSet &set);

/// Weighted between-class and within-class scatter, both normalized by the
/// total utterance count, so that between + within equals the total
/// covariance.  Requires a labeled set with at least two speakers.
ScatterPair ComputeScatter(const EmbeddingSet &set);

/// PLDA model text format, version 1.  Round-trips bit-exactly.
void WriteModel(const PldaModel &model, std::ostream &os);
PldaModel ReadModel(std::istream &is, std::string_view source);
void SaveModel(const PldaModel &model, const std::string &path);
PldaModel LoadModel(const std::string &path);

struct Trial {
  std::string enroll_id;
  std::string test_id;
  std::optional<bool> target;  // unset for '-' or a missing third column
};
using TrialList = std::vector<Trial>;

TrialList ReadTrials(std::istream &is, std::string_view source);
TrialList LoadTrials(const std::string &path);
void WriteTrials(const TrialList &trials, std::ostream &os);
void SaveTrials(const TrialList &trials, const std::string &path);

}  // namespace coralplus

#endif  // CORALPLUS_DATA_H_
