// coralplus/data.cc

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

#include "coralplus/data.h"

#include <algorithm>
#include <map>

#include "coralplus/error.h"
#include "text-io.h"

namespace coralplus {

using internal::FormatDouble;
using internal::LineReader;
using internal::SplitFields;

EmbeddingSet::EmbeddingSet(int dim) : dim_(dim) {
  if (dim < 1)
    throw PreconditionError("EmbeddingSet: dim must be positive, got " +
                            std::to_string(dim));
}

void EmbeddingSet::Add(EmbeddingRecord record) {
  if (record.vector.size() != dim_)
    throw PreconditionError("EmbeddingSet: utterance '" + record.utt_id +
                            "' has dim " +
                            std::to_string(record.vector.size()) +
                            ", expected " + std::to_string(dim_));
  if (record.utt_id.empty())
    throw PreconditionError("EmbeddingSet: empty utterance id");
  auto [it, inserted] = index_.emplace(record.utt_id, records_.size());
  if (!inserted)
    throw PreconditionError("EmbeddingSet: duplicate utterance id '" +
                            record.utt_id + "'");
  records_.push_back(std::move(record));
}

void EmbeddingSet::Add(std::string utt_id,
                       std::optional<std::string> speaker_id, Vector vector) {
  Add(EmbeddingRecord{std::move(utt_id), std::move(speaker_id),
                      std::move(vector)});
}

bool EmbeddingSet::labeled() const {
  if (records_.empty()) return false;
  return std::all_of(records_.begin(), records_.end(),
                     [](const EmbeddingRecord &r) {
                       return r.speaker_id.has_value();
                     });
}

const EmbeddingRecord *EmbeddingSet::Find(std::string_view utt_id) const {
  auto it = index_.find(std::string(utt_id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::vector<const EmbeddingRecord *> EmbeddingSet::SortedById() const {
  std::vector<const EmbeddingRecord *> sorted;
  sorted.reserve(records_.size());
  for (const auto &r : records_) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const EmbeddingRecord *a, const EmbeddingRecord *b) {
              return a->utt_id < b->utt_id;
            });
  return sorted;
}

EmbeddingSet ReadEmbeddings(std::istream &is, std::string_view source) {
  LineReader reader(is, std::string(source));
  std::string line;
  std::vector<std::string_view> fields;
  while (reader.Next(&line)) {
    fields = SplitFields(line);
    if (!fields.empty()) break;
  }
  if (fields.size() != 2 || fields[0] != "#dim")
    throw ParseError(std::string(source) + ":" +
                     std::to_string(reader.line_no()) +
                     ": expected header '#dim <d>'");
  const long dim =
      internal::ParseInt(fields[1], source, reader.line_no());
  if (dim < 1)
    throw ParseError(std::string(source) + ":" +
                     std::to_string(reader.line_no()) +
                     ": dimension must be positive");
  EmbeddingSet set(static_cast<int>(dim));
  while (reader.Next(&line)) {
    fields = SplitFields(line);
    if (fields.empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(reader.line_no()) + ": ";
    if (static_cast<long>(fields.size()) != dim + 2)
      throw ParseError(where + "expected " + std::to_string(dim + 2) +
                       " fields (id, speaker, " + std::to_string(dim) +
                       " values), found " + std::to_string(fields.size()));
    Vector v(dim);
    for (long i = 0; i < dim; i++)
      v(i) = internal::ParseDouble(fields[i + 2], source, reader.line_no());
    std::optional<std::string> speaker;
    if (fields[1] != "-") speaker = std::string(fields[1]);
    std::string utt(fields[0]);
    if (set.Find(utt) != nullptr)
      throw ParseError(where + "duplicate utterance id '" + utt + "'");
    set.Add(std::move(utt), std::move(speaker), std::move(v));
  }
  return set;
}

EmbeddingSet LoadEmbeddings(const std::string &path) {
  std::ifstream is = internal::OpenForRead(path);
  return ReadEmbeddings(is, path);
}

void WriteEmbeddings(const EmbeddingSet &set, std::ostream &os) {
  os << "#dim " << set.dim() << '\n';
  for (const auto &r : set.records()) {
    os << r.utt_id << ' ' << (r.speaker_id ? *r.speaker_id : "-");
    for (Eigen::Index i = 0; i < r.vector.size(); i++)
      os << ' ' << FormatDouble(r.vector(i), 17);
    os << '\n';
  }
}

void SaveEmbeddings(const EmbeddingSet &set, const std::string &path) {
  std::ofstream os = internal::OpenForWrite(path);
  WriteEmbeddings(set, os);
  if (!os) throw IoError("error writing '" + path + "'");
}

GaussianStats ComputeStats(const EmbeddingSet &set) {
  if (set.size() < 2)
    throw InsufficientDataError("compute_stats: need at least 2 vectors, got " +
                                std::to_string(set.size()));
  const auto sorted = set.SortedById();
  const int dim = set.dim();
  const double n = static_cast<double>(sorted.size());
  Vector mean = Vector::Zero(dim);
  for (const auto *r : sorted) mean += r->vector;
  mean /= n;
  Matrix cov = Matrix::Zero(dim, dim);
  for (const auto *r : sorted) {
    Vector d = r->vector - mean;
    cov.noalias() += d * d.transpose();
  }
  cov /= n;
  return GaussianStats{static_cast<int64_t>(sorted.size()), std::move(mean),
                       SymMatrix(cov)};
}

ScatterPair ComputeScatter(const EmbeddingSet &set) {
  if (!set.labeled())
    throw PreconditionError(
        "compute_scatter: set must be non-empty and fully labeled");
  std::map<std::string, std::vector<const EmbeddingRecord *>> by_speaker;
  for (const auto *r : set.SortedById()) by_speaker[*r->speaker_id].push_back(r);
  if (by_speaker.size() < 2)
    throw PreconditionError("compute_scatter: need at least 2 speakers, got " +
                            std::to_string(by_speaker.size()));
  const int dim = set.dim();
  const double n_total = static_cast<double>(set.size());
  Vector mean = Vector::Zero(dim);
  for (const auto &[speaker, utts] : by_speaker)
    for (const auto *r : utts) mean += r->vector;
  mean /= n_total;

  Matrix within = Matrix::Zero(dim, dim);
  Matrix between = Matrix::Zero(dim, dim);
  for (const auto &[speaker, utts] : by_speaker) {
    Vector spk_mean = Vector::Zero(dim);
    for (const auto *r : utts) spk_mean += r->vector;
    const double n_spk = static_cast<double>(utts.size());
    spk_mean /= n_spk;
    for (const auto *r : utts) {
      Vector d = r->vector - spk_mean;
      within.noalias() += d * d.transpose();
    }
    Vector d = spk_mean - mean;
    between.noalias() += n_spk * d * d.transpose();
  }
  within /= n_total;
  between /= n_total;
  return ScatterPair{SymMatrix(between), SymMatrix(within),
                     static_cast<int>(by_speaker.size())};
}

namespace {
constexpr std::string_view kModelTag = "plda-model";
constexpr std::string_view kModelVersion = "v1";
}  // namespace

void WriteModel(const PldaModel &model, std::ostream &os) {
  os << kModelTag << ' ' << kModelVersion << '\n';
  os << "dim " << model.dim() << '\n';
  internal::WriteNamedVector(os, "mu", model.mu());
  internal::WriteNamedMatrix(os, "phi_b", model.phi_b().matrix());
  internal::WriteNamedMatrix(os, "phi_w", model.phi_w().matrix());
}

PldaModel ReadModel(std::istream &is, std::string_view source) {
  LineReader reader(is, std::string(source));
  std::string line;
  auto fields = internal::ExpectFields(&reader, &line);
  if (fields.size() != 2 || fields[0] != kModelTag)
    throw CorruptFileError(std::string(source) +
                           ": not a PLDA model file (missing '" +
                           std::string(kModelTag) + "' header)");
  if (fields[1] != kModelVersion)
    throw VersionError(std::string(source) + ": unsupported model version '" +
                       std::string(fields[1]) + "' (expected " +
                       std::string(kModelVersion) + ")");
  const long dim = internal::ReadNamedInt(&reader, "dim");
  if (dim < 1)
    throw CorruptFileError(std::string(source) + ": invalid dim " +
                           std::to_string(dim));
  const int d = static_cast<int>(dim);
  Vector mu = internal::ReadNamedVector(&reader, "mu", d);
  Matrix phi_b = internal::ReadNamedMatrix(&reader, "phi_b", d, d);
  Matrix phi_w = internal::ReadNamedMatrix(&reader, "phi_w", d, d);
  internal::ExpectEnd(&reader);
  return PldaModel(std::move(mu), SymMatrix(phi_b), SymMatrix(phi_w));
}

void SaveModel(const PldaModel &model, const std::string &path) {
  std::ofstream os = internal::OpenForWrite(path);
  WriteModel(model, os);
  if (!os) throw IoError("error writing '" + path + "'");
}

PldaModel LoadModel(const std::string &path) {
  std::ifstream is = internal::OpenForRead(path);
  return ReadModel(is, path);
}

TrialList ReadTrials(std::istream &is, std::string_view source) {
  LineReader reader(is, std::string(source));
  std::string line;
  TrialList trials;
  while (reader.Next(&line)) {
    auto fields = SplitFields(line);
    if (fields.empty()) continue;
    const std::string where =
        std::string(source) + ":" + std::to_string(reader.line_no()) + ": ";
    if (fields.size() != 2 && fields.size() != 3)
      throw ParseError(where + "expected '<enroll> <test> [target|nontarget|-]'");
    Trial t{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (fields.size() == 3) {
      if (fields[2] == "target") {
        t.target = true;
      } else if (fields[2] == "nontarget") {
        t.target = false;
      } else if (fields[2] != "-") {
        throw ParseError(where + "invalid trial label '" +
                         std::string(fields[2]) + "'");
      }
    }
    trials.push_back(std::move(t));
  }
  return trials;
}

TrialList LoadTrials(const std::string &path) {
  std::ifstream is = internal::OpenForRead(path);
  return ReadTrials(is, path);
}

void WriteTrials(const TrialList &trials, std::ostream &os) {
  for (const auto &t : trials) {
    os << t.enroll_id << ' ' << t.test_id << ' '
       << (t.target ? (*t.target ? "target" : "nontarget") : "-") << '\n';
  }
}

void SaveTrials(const TrialList &trials, const std::string &path) {
  std::ofstream os = internal::OpenForWrite(path);
  WriteTrials(trials, os);
  if (!os) throw IoError("error writing '" + path + "'");
}

}  // namespace coralplus
