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

#ifndef SLASH_MONTECARLO_H
#define SLASH_MONTECARLO_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slash/scenario.h"

namespace slash {

struct CountRecord {
    /// Detector id, or "a&b" for a coincidence.
    std::string id;
    std::uint64_t clicks = 0;
    std::uint64_t trials = 0;
    double rate_estimate = 0;
    /// 1.96 sqrt(p (1 - p) / trials) with p = rate_estimate.
    double ci95_halfwidth = 0;

    bool operator==(const CountRecord &) const = default;
};

/// Throws ContractViolation if trials == 0 or clicks > trials.
CountRecord make_count_record(std::string id, std::uint64_t clicks, std::uint64_t trials);

/// Samples `trials` emitted photons (pairs).
///
/// Trial t draws one Philox block at counter (t, device_in ? 1 : 0) under the
/// seed's key. Word 0 picks the joint detection pattern from
/// joint_outcomes(); words 1-2 are the efficiency draws of the first and
/// second clicked detector. Because every trial owns its counter, splitting
/// the trial range over `workers` threads gives bit-identical counts.
///
/// Records: one per detector in scenario order, then one per coincidence pair
/// (detectors on different photons).
std::vector<CountRecord> sample_counts(const Scenario &s, bool device_in, std::uint64_t trials, std::uint64_t seed,
                                       double detector_efficiency = 1,
                                       const std::optional<NlDevice> &device_override = std::nullopt,
                                       unsigned workers = 1);

struct DistinguishabilityReport {
    /// Remote detector with the largest standardized difference.
    std::string detector;
    double rate_out = 0;
    double rate_in = 0;
    /// sqrt(p_in (1 - p_in) / N + p_out (1 - p_out) / N) from the estimates.
    double standard_error = 0;
    double z = 0;
    /// Two-sided normal tail erfc(|z| / sqrt(2)).
    double p_value_proxy = 1;
    /// |p_in - p_out| > 3 standard errors.
    bool choices_distinguishable = false;
};

/// Can a receiver tell the sender's choice from remote counts alone? Runs
/// both choices with `trials_per_choice` trials each under `device`.
DistinguishabilityReport distinguishability_trials(const Scenario &s, const NlDevice &device,
                                                   std::uint64_t trials_per_choice, std::uint64_t seed,
                                                   double detector_efficiency = 1, unsigned workers = 1);

}  // namespace slash

#endif
