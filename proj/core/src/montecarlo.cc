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

#include "slash/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "slash/philox.h"

namespace slash {

CountRecord make_count_record(std::string id, std::uint64_t clicks, std::uint64_t trials) {
    if (trials == 0) {
        throw ContractViolation("CountRecord: trials must be positive");
    }
    if (clicks > trials) {
        throw ContractViolation("CountRecord: clicks exceed trials");
    }
    CountRecord r;
    r.id = std::move(id);
    r.clicks = clicks;
    r.trials = trials;
    r.rate_estimate = static_cast<double>(clicks) / static_cast<double>(trials);
    r.ci95_halfwidth = 1.96 * std::sqrt(r.rate_estimate * (1 - r.rate_estimate) / static_cast<double>(trials));
    return r;
}

namespace {

struct Sampler {
    std::vector<double> cumulative;
    std::vector<std::vector<std::size_t>> clicked;
    std::size_t detectors = 0;
    /// Detector index pairs counted as coincidences.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double efficiency = 1;
    philox::Key key{};
    std::uint64_t stream = 0;

    /// counts[0..detectors) are singles, then one per pair.
    std::vector<std::uint64_t> run(std::uint64_t begin, std::uint64_t end) const {
        std::vector<std::uint64_t> counts(detectors + pairs.size(), 0);
        std::vector<bool> fired(detectors);
        for (std::uint64_t t = begin; t < end; t++) {
            philox::Counter w = philox::block(philox::counter_for(t, stream), key);
            double u = philox::to_unit(w[0]);
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
            const auto &hit = clicked[k];
            if (hit.empty()) {
                continue;
            }
            std::fill(fired.begin(), fired.end(), false);
            for (std::size_t j = 0; j < hit.size(); j++) {
                // At most one detector per photon clicks, so two draws suffice.
                if (efficiency >= 1 || philox::to_unit(w[1 + j]) < efficiency) {
                    fired[hit[j]] = true;
                    counts[hit[j]]++;
                }
            }
            for (std::size_t p = 0; p < pairs.size(); p++) {
                if (fired[pairs[p].first] && fired[pairs[p].second]) {
                    counts[detectors + p]++;
                }
            }
        }
        return counts;
    }
};

}  // namespace

std::vector<CountRecord> sample_counts(const Scenario &s, bool device_in, std::uint64_t trials, std::uint64_t seed,
                                       double detector_efficiency, const std::optional<NlDevice> &device_override,
                                       unsigned workers) {
    if (trials == 0) {
        throw ContractViolation("sample_counts: trials must be at least 1");
    }
    if (!(detector_efficiency > 0 && detector_efficiency <= 1)) {
        throw ContractViolation("sample_counts: detector efficiency must lie in (0, 1]");
    }
    Evaluation ev = evaluate(s, device_in, device_override);
    auto outcomes = joint_outcomes(ev);

    Sampler sampler;
    sampler.detectors = ev.detectors.size();
    sampler.efficiency = detector_efficiency;
    sampler.key = philox::key_from_seed(seed);
    sampler.stream = device_in ? 1 : 0;
    double total = 0;
    for (const auto &o : outcomes) {
        total += o.probability;
    }
    double acc = 0;
    for (const auto &o : outcomes) {
        acc += o.probability / total;
        sampler.cumulative.push_back(acc);
        sampler.clicked.push_back(o.clicked);
        if (o.clicked.size() > 2) {
            throw ContractViolation("sample_counts: more than two photons per trial");
        }
    }
    for (std::size_t i = 0; i < ev.detectors.size(); i++) {
        for (std::size_t j = i + 1; j < ev.detectors.size(); j++) {
            if (ev.detectors[i].photon != ev.detectors[j].photon) {
                sampler.pairs.emplace_back(i, j);
            }
        }
    }

    std::uint64_t max_workers = std::min<std::uint64_t>(std::max(1u, workers), trials);
    std::vector<std::vector<std::uint64_t>> parts(max_workers);
    if (max_workers == 1) {
        parts[0] = sampler.run(0, trials);
    } else {
        std::vector<std::thread> threads;
        for (std::uint64_t w = 0; w < max_workers; w++) {
            std::uint64_t begin = trials / max_workers * w + std::min(w, trials % max_workers);
            std::uint64_t end = begin + trials / max_workers + (w < trials % max_workers ? 1 : 0);
            threads.emplace_back([&parts, &sampler, w, begin, end] { parts[w] = sampler.run(begin, end); });
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    std::vector<std::uint64_t> counts(sampler.detectors + sampler.pairs.size(), 0);
    for (const auto &p : parts) {
        for (std::size_t k = 0; k < counts.size(); k++) {
            counts[k] += p[k];
        }
    }

    std::vector<CountRecord> records;
    for (std::size_t i = 0; i < ev.detectors.size(); i++) {
        records.push_back(make_count_record(ev.detectors[i].id, counts[i], trials));
    }
    for (std::size_t p = 0; p < sampler.pairs.size(); p++) {
        const auto &[a, b] = sampler.pairs[p];
        records.push_back(
            make_count_record(ev.detectors[a].id + "&" + ev.detectors[b].id, counts[sampler.detectors + p], trials));
    }
    return records;
}

DistinguishabilityReport distinguishability_trials(const Scenario &s, const NlDevice &device,
                                                   std::uint64_t trials_per_choice, std::uint64_t seed,
                                                   double detector_efficiency, unsigned workers) {
    auto out = sample_counts(s, false, trials_per_choice, seed, detector_efficiency, device, workers);
    auto in = sample_counts(s, true, trials_per_choice, seed, detector_efficiency, device, workers);
    DetectorStats remote = run_scenario(s, false, device);

    DistinguishabilityReport best;
    bool have = false;
    const double n = static_cast<double>(trials_per_choice);
    for (const auto &d : remote.singles) {
        if (!d.remote) {
            continue;
        }
        auto find = [&](const std::vector<CountRecord> &records) {
            for (const auto &r : records) {
                if (r.id == d.id) {
                    return r.rate_estimate;
                }
            }
            throw ScenarioError("detector '" + d.id + "' is not present for both choices");
        };
        DistinguishabilityReport r;
        r.detector = d.id;
        r.rate_out = find(out);
        r.rate_in = find(in);
        double diff = std::abs(r.rate_in - r.rate_out);
        r.standard_error = std::sqrt(r.rate_in * (1 - r.rate_in) / n + r.rate_out * (1 - r.rate_out) / n);
        if (r.standard_error > 0) {
            r.z = diff / r.standard_error;
        } else {
            r.z = diff > 0 ? std::numeric_limits<double>::infinity() : 0;
        }
        r.p_value_proxy = std::erfc(r.z / std::sqrt(2.0));
        r.choices_distinguishable = diff > 3 * r.standard_error;
        if (!have || r.z > best.z) {
            best = r;
            have = true;
        }
    }
    if (!have) {
        throw ScenarioError("scenario '" + s.name + "' has no remote detector");
    }
    return best;
}

}  // namespace slash
