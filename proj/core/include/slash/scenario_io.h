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

#ifndef SLASH_SCENARIO_IO_H
#define SLASH_SCENARIO_IO_H

#include <string>
#include <string_view>

#include "slash/scenario.h"

/// YAML scenario files.
///
///     name: fig2
///     description: optional text
///     paths:
///       - name: input
///         photon: 0          # optional, default 0
///         port: any          # any | V | H, default any
///         elements:
///           - source: unpolarized   # or epr
///           - calcite
///       - name: A
///         port: H
///         elements: [{detector: A}]
///       - name: B
///         port: V
///         elements: []
///     choice:
///       path: B              # path name or index
///       out: [{detector: B}]
///       in:
///         - nl: {population: inf, model: ansatz}
///
/// Scalar elements: calcite, mirror, filter. Keyed elements: source,
/// polarizer (angle, e.g. 0.5, 45deg, 0.25rad), detector (id), nl (map with
/// population, model = ansatz | cptp | attenuated, p_align, p_noise,
/// attenuation = exponential | inverse_square | step, scale, cutoff, distance).
namespace slash {

/// Malformed scenario file. The message starts with "source:line:column:".
class ScenarioFileError : public ScenarioError {
   public:
    using ScenarioError::ScenarioError;
};

/// Parses and validates. Validation failures are rethrown as
/// ScenarioFileError prefixed with the source name.
Scenario parse_scenario_yaml(std::string_view text, std::string_view source_name = "<string>");

Scenario load_scenario_file(const std::string &path);

/// Emits a document parse_scenario_yaml reads back to an equal Scenario.
std::string to_yaml(const Scenario &s);

/// Angle in radians from "0.5", "0.5rad", "45deg" or "45 deg". Throws
/// ContractViolation on anything else or a non-finite value.
double parse_angle(std::string_view text);

}  // namespace slash

#endif
