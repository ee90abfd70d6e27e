// coralplus/lda.h

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

#ifndef CORALPLUS_LDA_H_
#define CORALPLUS_LDA_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "coralplus/data.h"
#include "coralplus/linalg.h"

namespace coralplus {

/// Default within-scatter shrinkage, relative to tr(S_w) / d.
inline constexpr double kLdaWithinFloor = 1e-6;

/// Affine projection y = projection * (x - mean).
struct LdaTransform {
  int in_dim;
  int out_dim;
  Vector mean;
  Matrix projection;  // out_dim x in_dim

  Vector Apply(const Vector &x) const;
};

/// Fits LDA on a labeled set.  Rows of the projection are the leading
/// generalized eigenvectors of (S_b, S_w + floor * tr(S_w)/d * I), scaled so
/// that the projected (shrunk) within-class scatter is the identity.
/// Requires 1 <= out_dim <= min(in_dim, n_speakers - 1).
LdaTransform FitLda(const EmbeddingSet &set, int out_dim,
                    double within_floor = kLdaWithinFloor);

/// Projects every record; ids and labels are kept.
EmbeddingSet ApplyLda(const LdaTransform &t, const EmbeddingSet &set);

void WriteLda(const LdaTransform &t, std::ostream &os);
LdaTransform ReadLda(std::istream &is, std::string_view source);
void SaveLda(const LdaTransform &t, const std::string &path);
LdaTransform LoadLda(const std::string &path);

}  // namespace coralplus

#endif  // CORALPLUS_LDA_H_
