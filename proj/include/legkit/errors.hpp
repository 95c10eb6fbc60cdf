/*
 * Copyright 2026 The legkit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace legkit {

/// Base class for all legkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroParameter : Error {
  explicit ZeroParameter(const std::string& what = "parameter value is zero")
      : Error(what) {}
};

struct NotSkew : Error {
  explicit NotSkew(const std::string& what = "matrix is not skew-symmetric")
      : Error(what) {}
};

struct OddSize : Error {
  explicit OddSize(const std::string& what = "matrix has odd size")
      : Error(what) {}
};

struct SizeMismatch : Error {
  explicit SizeMismatch(const std::string& what = "dimension mismatch")
      : Error(what) {}
};

struct DegenerateSample : Error {
  explicit DegenerateSample(const std::string& what =
                                "sampling produced the zero vector repeatedly")
      : Error(what) {}
};

struct InvalidWeights : Error {
  explicit InvalidWeights(const std::string& what = "invalid weight tuple")
      : Error(what) {}
};

struct InvalidFlavor : Error {
  explicit InvalidFlavor(const std::string& what = "invalid matrix-pair flavor")
      : Error(what) {}
};

struct NotUnimodular : Error {
  explicit NotUnimodular(const std::string& what = "matrix determinant is not 1")
      : Error(what) {}
};

struct FlavorViolation : Error {
  explicit FlavorViolation(const std::string& what =
                               "matrix violates the flavor constraint")
      : Error(what) {}
};

struct SingularInput : Error {
  explicit SingularInput(const std::string& what = "singular input matrix")
      : Error(what) {}
};

struct CenterNotOnVariety : Error {
  explicit CenterNotOnVariety(const std::string& what =
                                  "center does not satisfy the generators")
      : Error(what) {}
};

struct InvalidRange : Error {
  explicit InvalidRange(const std::string& what = "argument out of range")
      : Error(what) {}
};

struct NoRootFound : Error {
  explicit NoRootFound(const std::string& what = "no usable root found")
      : Error(what) {}
};

struct DegenerateSection : Error {
  explicit DegenerateSection(const std::string& what =
                                 "all hyperplane-section trials failed")
      : Error(what) {}
};

struct NoParametrization : Error {
  explicit NoParametrization(const std::string& what =
                                 "no parametrization supplied")
      : Error(what) {}
};

struct Unsupported : Error {
  explicit Unsupported(const std::string& what = "unsupported input")
      : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what = "malformed input") : Error(what) {}
};

}  // namespace legkit
