// coralplus/error.h

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

#ifndef CORALPLUS_ERROR_H_
#define CORALPLUS_ERROR_H_

#include <stdexcept>
#include <string>

namespace coralplus {

// All errors thrown by the library derive from Error.  The command-line
// driver maps NumericalError to exit code 3 and everything else to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or unreadable files.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input text; the message names the source and line.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid or truncated model/transform files.
class CorruptFileError : public ParseError {
 public:
  using ParseError::ParseError;
};

// A model/transform file written by an unsupported format version.
class VersionError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Caller violated an operation's precondition (dimension mismatch,
// unlabeled data where labels are required, out-of-range parameter...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Not enough data to estimate the requested statistics.
class InsufficientDataError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A trial references an utterance id that cannot be found.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Singular, non-PSD or otherwise degenerate matrix.
class DegenerateMatrixError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The iterative eigensolver hit its sweep cap.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A PLDA model whose covariances cannot be used for scoring.
class ModelInvalidError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace coralplus

#endif  // CORALPLUS_ERROR_H_
