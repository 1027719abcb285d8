// Copyright 2026 The qkad developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qkad {

/// Base class for runtime numerical failures (as opposed to contract
/// violations, which throw std::invalid_argument).
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A signal carries no usable information (e.g. zero-power autocorrelation).
class DegenerateSignalError : public NumericalError {
  public:
    explicit DegenerateSignalError(const std::string& what) : NumericalError(what) {}
};

/// An algorithm hit an ill-conditioned intermediate (e.g. a reflection
/// coefficient with magnitude >= 1).
class ConditioningError : public NumericalError {
  public:
    explicit ConditioningError(const std::string& what) : NumericalError(what) {}
};

/// A statistic is undefined for the given sample (e.g. zero variance with a
/// nonzero mean difference in a t-test).
class DegenerateVarianceError : public NumericalError {
  public:
    explicit DegenerateVarianceError(const std::string& what) : NumericalError(what) {}
};

} // namespace qkad
