// coralplus/text-io.cc

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

#include "text-io.h"

#include <charconv>
#include <cmath>
#include <ostream>

#include "coralplus/error.h"

namespace coralplus {
namespace internal {

std::vector<std::string_view> SplitFields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) i++;
    if (i == line.size()) break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') j++;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

namespace {

std::string Where(std::string_view source, int line_no) {
  return std::string(source) + ":" + std::to_string(line_no) + ": ";
}

}  // namespace

double ParseDouble(std::string_view token, std::string_view source,
                   int line_no) {
  double value = 0.0;
  const char *begin = token.data();
  const char *end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ParseError(Where(source, line_no) + "invalid number '" +
                     std::string(token) + "'");
  return value;
}

long ParseInt(std::string_view token, std::string_view source, int line_no) {
  long value = 0;
  const char *begin = token.data();
  const char *end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(Where(source, line_no) + "invalid integer '" +
                     std::string(token) + "'");
  return value;
}

std::string FormatDouble(double value, int digits) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                    digits);
  if (ec != std::errc()) throw Error("FormatDouble: conversion failed");
  return std::string(buf, ptr);
}

std::ifstream OpenForRead(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return is;
}

std::ofstream OpenForWrite(const std::string &path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

bool LineReader::Next(std::string *line) {
  if (!std::getline(is_, *line)) return false;
  line_no_++;
  return true;
}

void WriteNamedVector(std::ostream &os, std::string_view name,
                      const Vector &v) {
  os << name;
  for (Eigen::Index i = 0; i < v.size(); i++) os << ' ' << FormatDouble(v(i), 17);
  os << '\n';
}

void WriteNamedMatrix(std::ostream &os, std::string_view name,
                      const Matrix &m) {
  os << name << '\n';
  for (Eigen::Index i = 0; i < m.rows(); i++) {
    for (Eigen::Index j = 0; j < m.cols(); j++) {
      if (j > 0) os << ' ';
      os << FormatDouble(m(i, j), 17);
    }
    os << '\n';
  }
}

std::vector<std::string_view> ExpectFields(LineReader *reader,
                                           std::string *storage) {
  if (!reader->Next(storage))
    throw CorruptFileError(reader->source() + ": unexpected end of file after line " +
                           std::to_string(reader->line_no()));
  return SplitFields(*storage);
}

namespace {

[[noreturn]] void Corrupt(const LineReader &reader, const std::string &what) {
  throw CorruptFileError(Where(reader.source(), reader.line_no()) + what);
}

}  // namespace

Vector ReadNamedVector(LineReader *reader, std::string_view name, int dim) {
  std::string line;
  auto fields = ExpectFields(reader, &line);
  if (fields.empty() || fields[0] != name)
    Corrupt(*reader, "expected '" + std::string(name) + "'");
  if (static_cast<int>(fields.size()) != dim + 1)
    Corrupt(*reader, "expected " + std::to_string(dim) + " values after '" +
                         std::string(name) + "'");
  Vector v(dim);
  for (int i = 0; i < dim; i++)
    v(i) = ParseDouble(fields[i + 1], reader->source(), reader->line_no());
  return v;
}

Matrix ReadNamedMatrix(LineReader *reader, std::string_view name, int rows,
                       int cols) {
  std::string line;
  auto fields = ExpectFields(reader, &line);
  if (fields.size() != 1 || fields[0] != name)
    Corrupt(*reader, "expected '" + std::string(name) + "'");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; i++) {
    fields = ExpectFields(reader, &line);
    if (static_cast<int>(fields.size()) != cols)
      Corrupt(*reader, "expected " + std::to_string(cols) + " values in row " +
                           std::to_string(i) + " of '" + std::string(name) +
                           "'");
    for (int j = 0; j < cols; j++)
      m(i, j) = ParseDouble(fields[j], reader->source(), reader->line_no());
  }
  return m;
}

long ReadNamedInt(LineReader *reader, std::string_view name) {
  std::string line;
  auto fields = ExpectFields(reader, &line);
  if (fields.size() != 2 || fields[0] != name)
    Corrupt(*reader, "expected '" + std::string(name) + " <integer>'");
  return ParseInt(fields[1], reader->source(), reader->line_no());
}

void ExpectEnd(LineReader *reader) {
  std::string line;
  while (reader->Next(&line))
    if (!SplitFields(line).empty()) Corrupt(*reader, "trailing content");
}

}  // namespace internal
}  // namespace coralplus
