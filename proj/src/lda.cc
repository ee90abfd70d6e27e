// coralplus/lda.cc

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

#include "coralplus/lda.h"

#include <algorithm>

#include "coralplus/error.h"
#include "text-io.h"

namespace coralplus {

Vector LdaTransform::Apply(const Vector &x) const {
  if (x.size() != in_dim)
    throw PreconditionError("apply_lda: vector has dim " +
                            std::to_string(x.size()) + ", transform expects " +
                            std::to_string(in_dim));
  return projection * (x - mean);
}

LdaTransform FitLda(const EmbeddingSet &set, int out_dim,
                    double within_floor) {
  if (!set.labeled())
    throw PreconditionError("fit_lda: training set must be labeled");
  ScatterPair scatter = ComputeScatter(set);
  const int dim = set.dim();
  const int max_dim = std::min(dim, scatter.n_speakers - 1);
  if (out_dim < 1 || out_dim > max_dim)
    throw PreconditionError("fit_lda: out_dim " + std::to_string(out_dim) +
                            " must lie in [1, " + std::to_string(max_dim) +
                            "] (min of input dim and speakers - 1)");
  const double shrink = within_floor * scatter.within.matrix().trace() / dim;
  SymMatrix within =
      scatter.within + SymMatrix::Identity(dim) * shrink;
  SimDiagResult sd = SimDiag(within, scatter.between);
  LdaTransform t;
  t.in_dim = dim;
  t.out_dim = out_dim;
  t.mean = ComputeStats(set).mean;
  t.projection = sd.b.leftCols(out_dim).transpose();
  return t;
}

EmbeddingSet ApplyLda(const LdaTransform &t, const EmbeddingSet &set) {
  if (set.dim() != t.in_dim)
    throw PreconditionError("apply_lda: set has dim " +
                            std::to_string(set.dim()) +
                            ", transform expects " + std::to_string(t.in_dim));
  EmbeddingSet out(t.out_dim);
  for (const auto &r : set.records())
    out.Add(r.utt_id, r.speaker_id, t.Apply(r.vector));
  return out;
}

namespace {
constexpr std::string_view kLdaTag = "lda-transform";
constexpr std::string_view kLdaVersion = "v1";
}  // namespace

void WriteLda(const LdaTransform &t, std::ostream &os) {
  os << kLdaTag << ' ' << kLdaVersion << '\n';
  os << "in_dim " << t.in_dim << '\n';
  os << "out_dim " << t.out_dim << '\n';
  internal::WriteNamedVector(os, "mean", t.mean);
  internal::WriteNamedMatrix(os, "projection", t.projection);
}

LdaTransform ReadLda(std::istream &is, std::string_view source) {
  internal::LineReader reader(is, std::string(source));
  std::string line;
  auto fields = internal::ExpectFields(&reader, &line);
  if (fields.size() != 2 || fields[0] != kLdaTag)
    throw CorruptFileError(std::string(source) +
                           ": not an LDA transform file");
  if (fields[1] != kLdaVersion)
    throw VersionError(std::string(source) +
                       ": unsupported LDA transform version '" +
                       std::string(fields[1]) + "'");
  LdaTransform t;
  const long in_dim = internal::ReadNamedInt(&reader, "in_dim");
  const long out_dim = internal::ReadNamedInt(&reader, "out_dim");
  if (in_dim < 1 || out_dim < 1 || out_dim > in_dim)
    throw CorruptFileError(std::string(source) + ": invalid dimensions");
  t.in_dim = static_cast<int>(in_dim);
  t.out_dim = static_cast<int>(out_dim);
  t.mean = internal::ReadNamedVector(&reader, "mean", t.in_dim);
  t.projection =
      internal::ReadNamedMatrix(&reader, "projection", t.out_dim, t.in_dim);
  internal::ExpectEnd(&reader);
  return t;
}

void SaveLda(const LdaTransform &t, const std::string &path) {
  std::ofstream os = internal::OpenForWrite(path);
  WriteLda(t, os);
  if (!os) throw IoError("error writing '" + path + "'");
}

LdaTransform LoadLda(const std::string &path) {
  std::ifstream is = internal::OpenForRead(path);
  return ReadLda(is, path);
}

}  // namespace coralplus
