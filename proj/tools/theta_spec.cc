// Copyright 2026 The slashsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "theta_spec.h"

#include <charconv>
#include <string>

#include "slash/audit.h"
#include "slash/scenario_io.h"

namespace slash {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t k = text.find(sep, start);
        parts.push_back(text.substr(start, k == std::string_view::npos ? std::string_view::npos : k - start));
        if (k == std::string_view::npos) {
            return parts;
        }
        start = k + 1;
    }
}

}  // namespace

std::vector<double> parse_theta_grid(std::string_view spec) {
    std::vector<double> grid;
    for (std::string_view item : split(spec, ',')) {
        auto range = split(item, ':');
        if (range.size() == 1) {
            grid.push_back(parse_angle(item));
            continue;
        }
        if (range.size() != 3) {
            throw ContractViolation("theta range '" + std::string(item) + "' must look like start:stop:count");
        }
        std::size_t count = 0;
        auto [ptr, ec] = std::from_chars(range[2].data(), range[2].data() + range[2].size(), count);
        if (ec != std::errc() || ptr != range[2].data() + range[2].size() || count == 0) {
            throw ContractViolation("theta range '" + std::string(item) + "' needs a positive integer count");
        }
        for (double t : linear_grid(parse_angle(range[0]), parse_angle(range[1]), count)) {
            grid.push_back(t);
        }
    }
    if (grid.empty()) {
        throw ContractViolation("theta grid is empty");
    }
    return grid;
}

}  // namespace slash
