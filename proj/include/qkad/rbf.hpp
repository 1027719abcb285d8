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

#include <cmath>
#include <span>
#include <stdexcept>

namespace qkad {

/// Classical baseline kernel k(x, y) = exp(-gamma ||x - y||^2).
struct RbfSpec {
    double gamma = 1.0;

    void validate() const {
        if (!(gamma > 0.0)) {
            throw std::invalid_argument("RbfSpec: gamma must be positive");
        }
    }

    /// Dimension-normalized default when no gamma is configured.
    static RbfSpec for_dimension(int d) { return RbfSpec{1.0 / static_cast<double>(d)}; }
};

inline double rbf_kernel(const RbfSpec& spec, std::span<const double> x,
                         std::span<const double> y) {
    spec.validate();
    if (x.size() != y.size()) {
        throw std::invalid_argument("rbf_kernel: dimension mismatch");
    }
    double dist2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - y[i];
        dist2 += diff * diff;
    }
    return std::exp(-spec.gamma * dist2);
}

} // namespace qkad
