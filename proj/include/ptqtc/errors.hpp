// Copyright 2026 The ptqtc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace ptqtc {

/// Invalid argument or violated precondition. The CLI maps these to exit 2.
class ParameterError : public std::invalid_argument {
  public:
    explicit ParameterError(const std::string &what)
        : std::invalid_argument(what) {}
};

/// Operation requested outside the regime where it is defined (e.g. a
/// dilation past the exceptional point).
class RegimeError : public ParameterError {
  public:
    explicit RegimeError(const std::string &what) : ParameterError(what) {}
};

/// Base for failures of a well-posed numerical computation. Exit 3 in the CLI.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string &what) : std::runtime_error(what) {}
};

class NormalizationError : public NumericError {
  public:
    explicit NormalizationError(const std::string &what)
        : NumericError(what) {}
};

/// A propagated or post-selected state lost (numerically) all of its norm.
class VanishingNormError : public NumericError {
  public:
    explicit VanishingNormError(const std::string &what)
        : NumericError(what) {}
};

class DegeneracyError : public NumericError {
  public:
    explicit DegeneracyError(const std::string &what) : NumericError(what) {}
};

/// Every shot of a sampling run was rejected by post-selection.
class NoStatisticsError : public NumericError {
  public:
    explicit NoStatisticsError(const std::string &what)
        : NumericError(what) {}
};

} // namespace ptqtc
