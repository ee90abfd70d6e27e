// coralplus/text-io.h

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

// Helpers shared by the line-oriented text formats.  Internal to the library.

#ifndef CORALPLUS_TEXT_IO_H_
#define CORALPLUS_TEXT_IO_H_

#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "coralplus/linalg.h"

namespace coralplus {
namespace internal {

// Splits on spaces and tabs; a trailing '\r' is ignored.
std::vector<std::string_view> SplitFields(std::string_view line);

// Strict decimal parse of the whole token; rejects non-finite values.
// Throws ParseError naming `source` and `line_no`.
double ParseDouble(std::string_view token, std::string_view source,
                   int line_no);
long ParseInt(std::string_view token, std::string_view source, int line_no);

// Shortest-form general notation with `digits` significant digits.
std::string FormatDouble(double value, int digits);

std::ifstream OpenForRead(const std::string &path);
std::ofstream OpenForWrite(const std::string &path);

// Line reader that tracks line numbers for error messages.
class LineReader {
 public:
  LineReader(std::istream &is, std::string source)
      : is_(is), source_(std::move(source)) {}
  // Next line (blank lines included); false at end of input.
  bool Next(std::string *line);
  int line_no() const { return line_no_; }
  const std::string &source() const { return source_; }

 private:
  std::istream &is_;
  std::string source_;
  int line_no_ = 0;
};

// "name v1 v2 ... vd" on one line.
void WriteNamedVector(std::ostream &os, std::string_view name, const Vector &v);
// "name" followed by `rows` lines of `cols` values.
void WriteNamedMatrix(std::ostream &os, std::string_view name, const Matrix &m);

// Readers for the structured model formats; truncation and shape errors
// raise CorruptFileError.
std::vector<std::string_view> ExpectFields(LineReader *reader,
                                           std::string *storage);
Vector ReadNamedVector(LineReader *reader, std::string_view name, int dim);
Matrix ReadNamedMatrix(LineReader *reader, std::string_view name, int rows,
                       int cols);
long ReadNamedInt(LineReader *reader, std::string_view name);
void ExpectEnd(LineReader *reader);

}  // namespace internal
}  // namespace coralplus

#endif  // CORALPLUS_TEXT_IO_H_
